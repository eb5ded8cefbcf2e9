"""Opening-window spatiotemporal compression.

The compressor scans the trajectory with a pair (anchor, last). The position of
each candidate point is extrapolated at constant velocity along the segment
anchor -> last. If the candidate lies within the threshold of its extrapolated
position, the last point is eliminated and the candidate becomes the last point.
Otherwise the last point is kept and the pair restarts from it.
"""

from __future__ import annotations  # c.f. PEP 563, PEP 649

import math
from typing import TYPE_CHECKING

import numpy as np

from ..trajectory import TrajPoint
from ..utils._checks import check_type, ensure_finite
from ..utils._docs import fill_doc
from ..utils.logs import logger
from ._base import CompressionConfig, CompressionResult, _check_compressible

if TYPE_CHECKING:
    from .._typing import ScalarFloatArray
    from ..trajectory import Trajectory


def predict_position(anchor: TrajPoint, last: TrajPoint, t: float) -> ScalarFloatArray:
    """Extrapolate a position at constant velocity.

    Parameters
    ----------
    anchor : TrajPoint
        First point of the pair.
    last : TrajPoint
        Last point of the pair, strictly after the anchor.
    t : float
        Time of the predicted position, at or after the last point.

    Returns
    -------
    pos : array of shape (3,)
        The position
        ``anchor.pos + (t - anchor.t) / (last.t - anchor.t) * (last.pos - anchor.pos)``
        on the line anchor -> last.
    """
    check_type(anchor, (TrajPoint,), "anchor")
    check_type(last, (TrajPoint,), "last")
    t = ensure_finite(t, "t")
    if not anchor.t < last.t <= t:
        raise ValueError(
            "The timestamps must satisfy anchor.t < last.t <= t, got "
            f"{anchor.t}, {last.t} and {t}."
        )
    return np.array(
        _extrapolate(
            (anchor.x, anchor.y, anchor.z),
            anchor.t,
            (last.x, last.y, last.z),
            last.t,
            t,
        )
    )


def _extrapolate(
    pa: tuple[float, float, float],
    ta: float,
    pb: tuple[float, float, float],
    tb: float,
    t: float,
) -> tuple[float, float, float]:
    """Scalar implementation of the constant velocity extrapolation."""
    ratio = (t - ta) / (tb - ta)
    return (
        pa[0] + ratio * (pb[0] - pa[0]),
        pa[1] + ratio * (pb[1] - pa[1]),
        pa[2] + ratio * (pb[2] - pa[2]),
    )


@fill_doc
def stc_compress(traj: Trajectory, cfg: CompressionConfig) -> CompressionResult:
    """Compress a trajectory with the opening-window spatiotemporal compressor.

    Parameters
    ----------
    %(traj)s
        It must contain at least 2 points.
    %(compression_cfg)s

    Returns
    -------
    result : CompressionResult
        The kept and removed points. The first and last points are always kept.

    Notes
    -----
    A candidate is eliminated when its distance to the extrapolated position is
    strictly below ``cfg.epsilon``. A tie at exactly ``epsilon`` keeps the point.
    """
    _check_compressible(traj)
    check_type(cfg, (CompressionConfig,), "cfg")
    epsilon = cfg.epsilon
    # python floats are faster than numpy scalars in the scan
    positions = [tuple(pos) for pos in traj.xyz.tolist()]
    times = traj.t.tolist()
    removable = [False] * len(times)
    a, b = 0, 1
    for c in range(2, len(times)):
        predicted = _extrapolate(
            positions[a], times[a], positions[b], times[b], times[c]
        )
        if math.dist(predicted, positions[c]) < epsilon:
            removable[b] = True
            b = c
        else:
            a, b = b, c
    kept = [k for k, flag in enumerate(removable) if not flag]
    logger.debug(
        "Opening-window compression kept %i / %i points.", len(kept), len(times)
    )
    return CompressionResult(kept, len(times))
