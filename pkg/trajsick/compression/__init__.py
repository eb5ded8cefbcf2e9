from ._base import CompressionConfig, CompressionResult
from .douglas_peucker import dp_compress
from .features import (
    WindowAccumulator,
    WindowFeature,
    compress,
    compression_rate,
    delta_rate,
    features_to_frame,
    features_to_jsonl,
    n_windows,
    read_features_csv,
    window_bounds,
    window_grid,
    windowed_features,
    write_features_csv,
    write_features_jsonl,
)
from .opening_window import predict_position, stc_compress
