from __future__ import annotations  # c.f. PEP 563, PEP 649

from dataclasses import asdict, dataclass
from typing import TYPE_CHECKING

import numpy as np

from ..trajectory import Trajectory, validate_trajectory
from ..utils._checks import check_type, check_value, ensure_int, ensure_positive

if TYPE_CHECKING:
    from typing import Any

    from .._typing import ScalarIntArray

DELTA_MODES: tuple[str, ...] = ("ratio", "difference")
METHODS: tuple[str, ...] = ("stc", "dp")


@dataclass(frozen=True)
class CompressionConfig:
    """Parameters of the trajectory compression.

    Parameters
    ----------
    epsilon : float
        Threshold in Unity Meters. A point is eliminated when its distance to the
        reference (extrapolated position or simplified polyline) is below it.
    delta_mode : ``'ratio'`` | ``'difference'``
        Definition of the change in compression rate between consecutive windows.
    method : ``'stc'`` | ``'dp'``
        Compression algorithm used by the windowed features, the opening-window
        spatiotemporal compressor or the Douglas-Peucker baseline.
    """

    epsilon: float = 0.4
    delta_mode: str = "ratio"
    method: str = "stc"

    def __post_init__(self) -> None:
        object.__setattr__(self, "epsilon", ensure_positive(self.epsilon, "epsilon"))
        check_value(self.delta_mode, DELTA_MODES, "delta_mode")
        check_value(self.method, METHODS, "method")

    def to_dict(self) -> dict[str, Any]:
        """Return the configuration as a JSON-serializable dictionary."""
        return asdict(self)


class CompressionResult:
    """Partition of a trajectory between kept and removed points.

    Parameters
    ----------
    kept : array of int
        Strictly increasing indices of the kept points in the input trajectory.
    total_count : int
        Number of points of the input trajectory.
    """

    def __init__(self, kept: Any, total_count: int) -> None:
        kept = np.asarray(kept, dtype=np.int64).reshape(-1)
        total_count = ensure_int(total_count, "total_count")
        if np.any(np.diff(kept) <= 0):
            raise ValueError("The kept indices must be strictly increasing.")
        if kept.size != 0 and (kept[0] < 0 or total_count <= kept[-1]):
            raise ValueError(
                f"The kept indices must be in [0, {total_count}), got "
                f"[{kept[0]}, {kept[-1]}]."
            )
        kept.flags.writeable = False
        self._kept = kept
        self._total_count = total_count

    def __repr__(self) -> str:
        return (
            f"<CompressionResult | {self.kept_count} kept, {self.removed_count} "
            f"removed>"
        )

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, CompressionResult):
            return False
        return self._total_count == other._total_count and np.array_equal(
            self._kept, other._kept
        )

    @property
    def kept(self) -> ScalarIntArray:
        """Indices of the kept points."""
        return self._kept

    @property
    def kept_count(self) -> int:
        """Number of kept points."""
        return int(self._kept.size)

    @property
    def removed_count(self) -> int:
        """Number of eliminated points."""
        return self._total_count - self.kept_count

    @property
    def total_count(self) -> int:
        """Number of points of the input trajectory."""
        return self._total_count

    @property
    def removed(self) -> ScalarIntArray:
        """Indices of the eliminated points."""
        mask = np.ones(self._total_count, dtype=bool)
        mask[self._kept] = False
        return np.flatnonzero(mask)


def _check_compressible(traj: Trajectory) -> None:
    """Check that a trajectory can be compressed."""
    check_type(traj, (Trajectory,), "traj")
    if len(traj) < 2:
        raise ValueError(
            f"The compression requires a trajectory of at least 2 points, got "
            f"{len(traj)}."
        )
    verdict = validate_trajectory(traj)
    if not verdict.ok:
        raise ValueError(
            f"The trajectory is invalid: {verdict.violations[0]} (and "
            f"{len(verdict.violations) - 1} other violation(s))."
        )
