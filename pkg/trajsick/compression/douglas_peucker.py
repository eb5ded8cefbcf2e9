from __future__ import annotations  # c.f. PEP 563, PEP 649

from typing import TYPE_CHECKING

import numpy as np

from ..utils._checks import check_type
from ..utils._docs import fill_doc
from ..utils.logs import logger
from ._base import CompressionConfig, CompressionResult, _check_compressible

if TYPE_CHECKING:
    from .._typing import ScalarFloatArray
    from ..trajectory import Trajectory


def segment_distance(
    points: ScalarFloatArray, start: ScalarFloatArray, end: ScalarFloatArray
) -> ScalarFloatArray:
    """Distance from points to the segment [start, end] in 3D.

    Parameters
    ----------
    points : array of shape (n_points, 3)
        The points.
    start, end : array of shape (3,)
        Extremities of the segment. If they are equal, the distance to ``start`` is
        returned.

    Returns
    -------
    distances : array of shape (n_points,)
        Euclidean distance to the closest point of the segment.
    """
    direction = end - start
    norm2 = np.dot(direction, direction)
    offsets = points - start
    if norm2 == 0:
        return np.linalg.norm(offsets, axis=1)
    proj = np.clip(offsets @ direction / norm2, 0.0, 1.0)
    return np.linalg.norm(offsets - proj[:, np.newaxis] * direction, axis=1)


@fill_doc
def dp_compress(traj: Trajectory, cfg: CompressionConfig) -> CompressionResult:
    """Simplify a trajectory with the Douglas-Peucker algorithm.

    The time dimension is ignored, only the spatial distance of each point to the
    simplified polyline is considered.

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
    A chain is replaced by its chord when all its interior points are strictly
    closer than ``cfg.epsilon`` to the chord. Otherwise, the chain is split at the
    farthest point, the first one in case of ties. The recursion is unrolled on an
    explicit stack.
    """
    _check_compressible(traj)
    check_type(cfg, (CompressionConfig,), "cfg")
    xyz = traj.xyz
    keep = np.zeros(len(traj), dtype=bool)
    keep[[0, -1]] = True
    stack = [(0, len(traj) - 1)]
    while len(stack) != 0:
        first, last = stack.pop()
        if last - first < 2:
            continue
        distances = segment_distance(xyz[first + 1 : last], xyz[first], xyz[last])
        idx = int(np.argmax(distances))
        if distances[idx] < cfg.epsilon:
            continue
        split = first + 1 + idx
        keep[split] = True
        stack.append((split, last))
        stack.append((first, split))
    kept = np.flatnonzero(keep)
    logger.debug("Douglas-Peucker kept %i / %i points.", kept.size, len(traj))
    return CompressionResult(kept, len(traj))
