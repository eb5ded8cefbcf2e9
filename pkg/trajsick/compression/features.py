"""Windowed compression rates and their changes between consecutive windows."""

from __future__ import annotations  # c.f. PEP 563, PEP 649

import json
import math
from dataclasses import asdict, dataclass
from typing import TYPE_CHECKING

import numpy as np
import pandas as pd

from ..trajectory import Trajectory, slice_window
from ..trajectory.io import format_float, read_csv_columns
from ..utils._checks import check_type, check_value, ensure_path, ensure_positive
from ..utils._docs import fill_doc
from ..utils.logs import logger, verbose
from ._base import DELTA_MODES, CompressionConfig, CompressionResult
from .douglas_peucker import dp_compress
from .opening_window import stc_compress

if TYPE_CHECKING:
    from collections.abc import Sequence
    from pathlib import Path
    from typing import Any, Callable, Optional, Union

FEATURE_COLUMNS: tuple[str, ...] = ("window", "t0", "t1", "rate", "delta", "points")

_COMPRESSORS: dict[str, Callable] = {
    "stc": stc_compress,
    "dp": dp_compress,
}


@fill_doc
def compress(traj: Trajectory, cfg: CompressionConfig) -> CompressionResult:
    """Compress a trajectory with the method selected in the configuration.

    Parameters
    ----------
    %(traj)s
    %(compression_cfg)s

    Returns
    -------
    result : CompressionResult
        The kept and removed points.
    """
    check_type(cfg, (CompressionConfig,), "cfg")
    return _COMPRESSORS[cfg.method](traj, cfg)


def compression_rate(result: CompressionResult) -> float:
    """Fraction of points eliminated by the compression.

    Parameters
    ----------
    result : CompressionResult
        Result of a compression.

    Returns
    -------
    rate : float
        ``removed_count / total_count``, in ``[0, 1]``.
    """
    check_type(result, (CompressionResult,), "result")
    if result.total_count == 0:
        raise ValueError("The compression rate of an empty window is undefined.")
    return result.removed_count / result.total_count


@fill_doc
def delta_rate(
    c_w: float, c_prev: float, delta_mode: str = "ratio"
) -> Optional[float]:
    """Change in compression rate between two consecutive windows.

    Parameters
    ----------
    c_w : float
        Compression rate of the current window.
    c_prev : float
        Compression rate of the previous window.
    %(delta_mode)s

    Returns
    -------
    delta : float | None
        The change, None if undefined, i.e. in ratio mode with ``c_prev = 0``.
    """
    check_value(delta_mode, DELTA_MODES, "delta_mode")
    if delta_mode == "difference":
        return c_w - c_prev
    if c_prev == 0:
        return None
    return c_w / c_prev


@dataclass(frozen=True)
class WindowFeature:
    """Compression-rate feature of a window.

    Parameters
    ----------
    window_index : int
        Index of the window on the grid.
    t0, t1 : float
        Bounds of the half-open window ``[t0, t1)`` in seconds.
    rate : float
        Compression rate of the window.
    delta : float | None
        Change in compression rate from the previous window, None if undefined.
    point_count : int
        Number of points in the window.
    """

    window_index: int
    t0: float
    t1: float
    rate: float
    delta: Optional[float]
    point_count: int

    @property
    def has_delta(self) -> bool:
        """True if the change in compression rate is defined."""
        return self.delta is not None

    def to_dict(self) -> dict[str, Any]:
        """Return the feature as a JSON-serializable dictionary."""
        return asdict(self)


def window_bounds(
    t_first: float, window_index: int, window_s: float
) -> tuple[float, float]:
    """Bounds of a window on the grid anchored at ``t_first``.

    Batch and streaming computations both derive the bounds from this function so
    that they assign every point to the same window.
    """
    return (t_first + window_index * window_s, t_first + (window_index + 1) * window_s)


def n_windows(t_first: float, t_last: float, window_s: float) -> int:
    """Number of windows needed to cover ``[t_first, t_last]``."""
    w = int(math.floor((t_last - t_first) / window_s))
    while window_bounds(t_first, w, window_s)[1] <= t_last:
        w += 1
    while 0 < w and t_last < window_bounds(t_first, w, window_s)[0]:
        w -= 1
    return w + 1


def window_grid(
    t_first: float, t_last: float, window_s: float
) -> list[tuple[float, float]]:
    """Half-open windows covering ``[t_first, t_last]``, in order."""
    return [
        window_bounds(t_first, w, window_s)
        for w in range(n_windows(t_first, t_last, window_s))
    ]


def _window_rate(window: Trajectory, cfg: CompressionConfig) -> float:
    """Compression rate of a window, 0 if it holds less than 2 points."""
    if len(window) < 2:
        return 0.0
    return compression_rate(compress(window, cfg))


@verbose
@fill_doc
def windowed_features(
    traj: Trajectory,
    window_s: float,
    cfg: CompressionConfig,
    *,
    verbose: Optional[Union[bool, str, int]] = None,
) -> list[WindowFeature]:
    """Compute the compression rate of consecutive windows.

    Parameters
    ----------
    %(traj)s
    %(window_s)s
    %(compression_cfg)s
    %(verbose)s

    Returns
    -------
    features : list of WindowFeature
        One feature per window, in order. Each window is compressed independently.
        Windows with less than 2 points have a compression rate of 0.
    """
    check_type(traj, (Trajectory,), "traj")
    window_s = ensure_positive(window_s, "window_s")
    check_type(cfg, (CompressionConfig,), "cfg")
    if len(traj) == 0:
        return list()
    t_first = float(traj.t[0])
    features, c_prev = list(), None
    for w, (t0, t1) in enumerate(window_grid(t_first, float(traj.t[-1]), window_s)):
        window = slice_window(traj, t0, t1)
        rate = _window_rate(window, cfg)
        feature = _make_feature(w, t0, t1, rate, len(window), c_prev, cfg)
        features.append(feature)
        c_prev = feature.rate
    logger.info(
        "Computed the compression rate of %i window(s) of %s s.",
        len(features),
        window_s,
    )
    return features


def _make_feature(
    w: int,
    t0: float,
    t1: float,
    rate: float,
    count: int,
    c_prev: Optional[float],
    cfg: CompressionConfig,
) -> WindowFeature:
    """Assemble a window feature from its rate and the previous window rate."""
    if count < 2:
        logger.debug("Window %i holds %i point(s), its rate is set to 0.", w, count)
    delta = None if c_prev is None else delta_rate(rate, c_prev, cfg.delta_mode)
    return WindowFeature(w, t0, t1, rate, delta, count)


@fill_doc
class WindowAccumulator:
    """Streaming counterpart of :func:`windowed_features`.

    Points are pushed one by one in timestamp order. Only the points of the current
    window and the rate of the previous window are kept in memory. The emitted
    features are identical to the ones computed in batch on the same points.

    Parameters
    ----------
    %(window_s)s
    %(compression_cfg)s
    """

    def __init__(self, window_s: float, cfg: CompressionConfig) -> None:
        self._window_s = ensure_positive(window_s, "window_s")
        check_type(cfg, (CompressionConfig,), "cfg")
        self._cfg = cfg
        self._t_first: Optional[float] = None
        self._t_last: Optional[float] = None
        self._window_index = 0
        self._c_prev: Optional[float] = None
        self._xyz: list[tuple[float, float, float]] = list()
        self._t: list[float] = list()

    def push(self, x: float, y: float, z: float, t: float) -> list[WindowFeature]:
        """Add a point to the stream.

        Parameters
        ----------
        x, y, z : float
            Position in Unity Meters.
        t : float
            Timestamp in seconds, positive and strictly after the previous point.

        Returns
        -------
        features : list of WindowFeature
            Features of the windows closed by this point, possibly empty.
        """
        if not all(np.isfinite(elt) for elt in (x, y, z, t)):
            raise ValueError(f"Non-finite value in point ({x}, {y}, {z}, {t}).")
        if t < 0:
            raise ValueError(f"Negative timestamp {t}, timestamps start at 0.")
        if self._t_last is not None and t <= self._t_last:
            raise ValueError(
                f"Out-of-order timestamp {t}, the previous point was at {self._t_last}."
            )
        if self._t_first is None:
            self._t_first = t
        closed = list()
        while window_bounds(self._t_first, self._window_index, self._window_s)[1] <= t:
            closed.append(self._close())
        self._xyz.append((x, y, z))
        self._t.append(t)
        self._t_last = t
        return closed

    def flush(self) -> list[WindowFeature]:
        """Close the current window at the end of the stream.

        Returns
        -------
        features : list of WindowFeature
            The feature of the last window, or an empty list if no point was pushed.
        """
        if self._t_first is None or len(self._t) == 0:
            return list()
        return [self._close()]

    def _close(self) -> WindowFeature:
        """Close the current window and move to the next one."""
        w = self._window_index
        t0, t1 = window_bounds(self._t_first, w, self._window_s)
        window = Trajectory(np.array(self._xyz).reshape(-1, 3), self._t)
        rate = _window_rate(window, self._cfg)
        feature = _make_feature(w, t0, t1, rate, len(window), self._c_prev, self._cfg)
        self._c_prev = feature.rate
        self._window_index += 1
        self._xyz.clear()
        self._t.clear()
        return feature


def features_to_frame(features: Sequence[WindowFeature]) -> pd.DataFrame:
    """Convert window features to a DataFrame of formatted strings.

    Parameters
    ----------
    features : sequence of WindowFeature
        The features.

    Returns
    -------
    df : DataFrame
        Columns ``window,t0,t1,rate,delta,points``. An undefined delta is an empty
        string.
    """
    return pd.DataFrame(
        {
            "window": [str(f.window_index) for f in features],
            "t0": [format_float(f.t0) for f in features],
            "t1": [format_float(f.t1) for f in features],
            "rate": [format_float(f.rate) for f in features],
            "delta": [
                "" if f.delta is None else format_float(f.delta) for f in features
            ],
            "points": [str(f.point_count) for f in features],
        },
        columns=list(FEATURE_COLUMNS),
    )


def write_features_csv(
    features: Sequence[WindowFeature], fname: Union[str, Path]
) -> None:
    """Write window features to a CSV file.

    Parameters
    ----------
    features : sequence of WindowFeature
        The features.
    fname : path-like
        Path to the CSV file, overwritten if it exists.
    """
    fname = ensure_path(fname, must_exist=False)
    features_to_frame(features).to_csv(
        fname, index=False, lineterminator="\n", encoding="utf-8"
    )


def features_to_jsonl(features: Sequence[WindowFeature]) -> str:
    """Serialize window features to JSON Lines, one sorted JSON object per line."""
    return "".join(
        json.dumps(feature.to_dict(), sort_keys=True) + "\n" for feature in features
    )


def write_features_jsonl(
    features: Sequence[WindowFeature], fname: Union[str, Path]
) -> None:
    """Write window features to a JSON Lines file, one feature per line.

    Parameters
    ----------
    features : sequence of WindowFeature
        The features.
    fname : path-like
        Path to the file, overwritten if it exists.
    """
    fname = ensure_path(fname, must_exist=False)
    with open(fname, "w", encoding="utf-8", newline="\n") as fid:
        fid.write(features_to_jsonl(features))


def read_features_csv(fname: Union[str, Path]) -> list[WindowFeature]:
    """Read window features from a CSV file.

    Parameters
    ----------
    fname : path-like
        Path to the CSV file with the header ``window,t0,t1,rate,delta,points``.

    Returns
    -------
    features : list of WindowFeature
        The features, in file order.
    """
    df = read_csv_columns(
        fname, FEATURE_COLUMNS, ("window", "t0", "t1", "rate", "points")
    )
    features = list()
    for line, row in zip(df.index, df.itertuples(index=False)):
        try:
            delta = None if row.delta == "" else float(row.delta)
        except ValueError:
            raise ValueError(
                f"Malformed row in '{fname}' at line {line}: column 'delta' expects "
                f"a number or an empty field, got '{row.delta}'."
            )
        if not 0 <= row.rate <= 1:
            raise ValueError(
                f"Malformed row in '{fname}' at line {line}: the rate must be in "
                f"[0, 1], got {row.rate}."
            )
        features.append(
            WindowFeature(
                int(row.window), row.t0, row.t1, row.rate, delta, int(row.points)
            )
        )
    return features
