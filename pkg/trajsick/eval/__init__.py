from .confusion import ConfusionMatrix, confusion
from .metrics import (
    CurvePair,
    curve_area_error,
    evaluation_report,
    mean_point_diff,
    pearson,
    spearman,
)
