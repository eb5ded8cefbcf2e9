from __future__ import annotations  # c.f. PEP 563, PEP 649

import math
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, NamedTuple

import numpy as np

from ..utils._checks import check_type, ensure_finite, ensure_int, ensure_positive
from ..utils._docs import fill_doc

if TYPE_CHECKING:
    from collections.abc import Iterable, Iterator, Sequence
    from typing import Any, Union

    from .._typing import ScalarFloatArray


@dataclass(frozen=True)
class TrajPoint:
    """A single ``(tid, x, y, z, t)`` sample.

    Parameters
    ----------
    tid : str | int
        Identifier of the moving object. Carried but never interpreted.
    x, y, z : float
        Position in Unity Meters.
    t : float
        Timestamp in seconds.
    """

    tid: Any
    x: float
    y: float
    z: float
    t: float

    @property
    def pos(self) -> ScalarFloatArray:
        """Position as an array of shape (3,)."""
        return np.array([self.x, self.y, self.z], dtype=np.float64)


class Violation(NamedTuple):
    """Invariant violated by a trajectory sample."""

    index: int
    rule: str

    def __str__(self) -> str:  # noqa: D105
        return f"{self.rule} at index {self.index}"


class TrajectoryValidation(NamedTuple):
    """Verdict of :func:`validate_trajectory`."""

    violations: list[Violation]

    @property
    def ok(self) -> bool:
        """True if no invariant is violated."""
        return len(self.violations) == 0

    def __bool__(self) -> bool:  # noqa: D105
        return self.ok


class Trajectory:
    """Ordered sequence of samples of a single moving object.

    The samples are stored as read-only arrays. The constructor checks the shapes
    only, use :func:`validate_trajectory` to check the invariants.

    Parameters
    ----------
    xyz : array of shape (n_points, 3)
        Positions in Unity Meters.
    t : array of shape (n_points,)
        Timestamps in seconds.
    tid : str | int | array of shape (n_points,)
        Object identifier, either shared by all samples or given per sample.
    """

    def __init__(self, xyz: Any, t: Any, tid: Any = 0) -> None:
        xyz = np.array(xyz, dtype=np.float64).reshape(-1, 3)
        t = np.array(t, dtype=np.float64).reshape(-1)
        if xyz.shape[0] != t.size:
            raise ValueError(
                f"The number of positions ({xyz.shape[0]}) and of timestamps "
                f"({t.size}) must match."
            )
        if isinstance(tid, (list, tuple, np.ndarray)):
            tids = np.empty(t.size, dtype=object)
            tids[:] = list(tid)
        else:
            tids = np.full(t.size, tid, dtype=object)
        for arr in (xyz, t, tids):
            arr.flags.writeable = False
        self._xyz = xyz
        self._t = t
        self._tids = tids

    @classmethod
    def from_points(cls, points: Iterable[TrajPoint]) -> Trajectory:
        """Create a trajectory from a sequence of points.

        Parameters
        ----------
        points : iterable of TrajPoint
            The samples, in order.

        Returns
        -------
        traj : Trajectory
            The trajectory.
        """
        points = list(points)
        for point in points:
            check_type(point, (TrajPoint,), "point")
        xyz = [(p.x, p.y, p.z) for p in points]
        return cls(xyz, [p.t for p in points], [p.tid for p in points])

    def __len__(self) -> int:
        return self._t.size

    def __iter__(self) -> Iterator[TrajPoint]:
        for k in range(len(self)):
            yield self[k]

    def __getitem__(self, item: Union[int, slice, Sequence[int]]):
        """Return a point for an integer index, a sub-trajectory otherwise."""
        if isinstance(item, (int, np.integer)):
            x, y, z = self._xyz[item]
            t = float(self._t[item])
            return TrajPoint(self._tids[item], float(x), float(y), float(z), t)
        return Trajectory(self._xyz[item], self._t[item], self._tids[item])

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, Trajectory):
            return False
        return (
            np.array_equal(self._xyz, other._xyz)
            and np.array_equal(self._t, other._t)
            and list(self._tids) == list(other._tids)
        )

    def __repr__(self) -> str:
        if len(self) == 0:
            return "<Trajectory | empty>"
        return (
            f"<Trajectory '{self._tids[0]}' | {len(self)} points, "
            f"{self._t[0]:.2f} - {self._t[-1]:.2f} s>"
        )

    @property
    def xyz(self) -> ScalarFloatArray:
        """Positions, array of shape (n_points, 3)."""
        return self._xyz

    @property
    def t(self) -> ScalarFloatArray:
        """Timestamps, array of shape (n_points,)."""
        return self._t

    @property
    def tids(self) -> np.ndarray:
        """Per-sample object identifiers."""
        return self._tids

    @property
    def tid(self) -> Any:
        """Identifier of the first sample, None if the trajectory is empty."""
        return self._tids[0] if len(self) != 0 else None

    @property
    def duration(self) -> float:
        """Time span between the first and the last sample."""
        return float(self._t[-1] - self._t[0]) if len(self) != 0 else 0.0

    def speeds(self) -> ScalarFloatArray:
        """Speed between consecutive samples in Um/s, shape (n_points - 1,)."""
        if len(self) < 2:
            return np.zeros(0)
        return np.linalg.norm(np.diff(self._xyz, axis=0), axis=1) / np.diff(self._t)


@fill_doc
def validate_trajectory(traj: Trajectory) -> TrajectoryValidation:
    """Check the invariants of a trajectory.

    Parameters
    ----------
    %(traj)s

    Returns
    -------
    verdict : TrajectoryValidation
        Verdict, ``ok`` if all invariants hold, otherwise the list of violations.

    Notes
    -----
    The checked invariants are: finite coordinates and timestamps, non-negative
    timestamps, strictly increasing timestamps and a single object identifier.
    """
    check_type(traj, (Trajectory,), "traj")
    violations = list()
    if len(traj) == 0:
        return TrajectoryValidation(violations)
    finite = np.isfinite(traj.xyz).all(axis=1) & np.isfinite(traj.t)
    for k in np.flatnonzero(~finite):
        violations.append(Violation(int(k), "non-finite value"))
    for k in np.flatnonzero(traj.t < 0):
        violations.append(Violation(int(k), "negative t"))
    for k in np.flatnonzero(~(np.diff(traj.t) > 0)):
        violations.append(Violation(int(k) + 1, "non-increasing t"))
    tid = traj.tids[0]
    for k, other in enumerate(traj.tids):
        if other != tid:
            violations.append(Violation(k, "tid mismatch"))
    violations.sort(key=lambda violation: violation.index)
    return TrajectoryValidation(violations)


@fill_doc
def slice_window(traj: Trajectory, t0: float, t1: float) -> Trajectory:
    """Extract the samples within the half-open window ``[t0, t1)``.

    Parameters
    ----------
    %(traj)s
    t0 : float
        Start of the window in seconds, included.
    t1 : float
        End of the window in seconds, excluded.

    Returns
    -------
    window : Trajectory
        The maximal sub-trajectory with ``t0 <= t < t1``, possibly empty.
    """
    check_type(traj, (Trajectory,), "traj")
    t0 = ensure_finite(t0, "t0")
    t1 = ensure_finite(t1, "t1")
    if t1 <= t0:
        raise ValueError(
            f"The window start 't0' must be strictly before its end 't1', got "
            f"[{t0}, {t1})."
        )
    mask = (t0 <= traj.t) & (traj.t < t1)
    return traj[np.flatnonzero(mask)]


def speed_between(p: TrajPoint, q: TrajPoint) -> float:
    """Average speed between two samples.

    Parameters
    ----------
    p, q : TrajPoint
        The two samples, ``p`` strictly before ``q``.

    Returns
    -------
    speed : float
        Euclidean distance divided by the elapsed time, in Um/s.
    """
    check_type(p, (TrajPoint,), "p")
    check_type(q, (TrajPoint,), "q")
    if q.t <= p.t:
        raise ValueError(
            f"The first point must be strictly before the second one, got t={p.t} "
            f"and t={q.t}."
        )
    return math.dist((p.x, p.y, p.z), (q.x, q.y, q.z)) / (q.t - p.t)


@fill_doc
def heading_changes(traj: Trajectory) -> ScalarFloatArray:
    """Heading change between consecutive displacements on the ground plane.

    Displacements of zero length do not define a heading and are skipped.

    Parameters
    ----------
    %(traj)s

    Returns
    -------
    changes : array
        Signed heading changes in radians, wrapped to ``(-pi, pi]``.
    """
    check_type(traj, (Trajectory,), "traj")
    if len(traj) < 3:
        return np.zeros(0)
    disp = np.diff(traj.xyz[:, :2], axis=0)
    moving = np.hypot(disp[:, 0], disp[:, 1]) > 0
    headings = np.arctan2(disp[moving, 1], disp[moving, 0])
    changes = np.diff(headings)
    # wrap to (-pi, pi]
    changes = -((-changes + np.pi) % (2 * np.pi) - np.pi)
    return changes


def count_turns(
    traj: Trajectory, min_angle: float = np.pi / 4, tol: float = 1e-6
) -> int:
    """Count the turns of a trajectory.

    A turn is a run of consecutive heading changes of the same sign, above ``tol``
    in absolute value, whose accumulated change reaches ``min_angle``.

    Parameters
    ----------
    traj : Trajectory
        Trajectory of ``(tid, x, y, z, t)`` samples.
    min_angle : float
        Minimum accumulated heading change of a turn in radians.
    tol : float
        Heading changes below this value are considered straight motion.

    Returns
    -------
    n_turns : int
        The number of turns.
    """
    min_angle = ensure_positive(min_angle, "min_angle")
    n_turns, accumulated, sign = 0, 0.0, 0
    for change in heading_changes(traj):
        current = 0 if abs(change) <= tol else (1 if change > 0 else -1)
        if current != sign:
            n_turns += int(sign != 0 and accumulated >= min_angle)
            accumulated, sign = 0.0, current
        accumulated += abs(change) if current != 0 else 0.0
    n_turns += int(sign != 0 and accumulated >= min_angle)
    return n_turns


@dataclass(frozen=True)
class DiscomfortReport:
    """Discomfort Score reported at a given time.

    Parameters
    ----------
    t : float
        Time of the report in seconds.
    score : int
        Discomfort Score between 0 and 10.
    """

    t: float
    score: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "t", ensure_finite(self.t, "t"))
        score = ensure_int(self.score, "score")
        if not 0 <= score <= 10:
            raise ValueError(
                f"The Discomfort Score must be between 0 and 10, got {score} instead."
            )
        object.__setattr__(self, "score", score)


@dataclass(frozen=True)
class SessionLog:
    """A user session: trajectory and the Discomfort Scores reported during it.

    Parameters
    ----------
    user : str | int
        Identifier of the user.
    trajectory : Trajectory
        The movement trajectory of the session.
    reports : tuple of DiscomfortReport
        The reports, in order.
    sample_hz : float
        Nominal sampling rate of the trajectory in Hz.
    """

    user: Any
    trajectory: Trajectory
    reports: tuple[DiscomfortReport, ...] = field(default_factory=tuple)
    sample_hz: float = 2.0

    def __post_init__(self) -> None:
        check_type(self.trajectory, (Trajectory,), "trajectory")
        object.__setattr__(self, "reports", tuple(self.reports))
        for report in self.reports:
            check_type(report, (DiscomfortReport,), "report")
        object.__setattr__(
            self, "sample_hz", ensure_positive(self.sample_hz, "sample_hz")
        )

    def validate(self) -> list[str]:
        """Check the invariants of the session.

        Returns
        -------
        problems : list of str
            Description of each violated invariant, empty if the session is valid.
        """
        problems = [str(elt) for elt in validate_trajectory(self.trajectory).violations]
        times = [report.t for report in self.reports]
        for k in range(1, len(times)):
            if times[k] <= times[k - 1]:
                problems.append(f"non-increasing report t at index {k}")
        if len(self.trajectory) != 0:
            tol = 1 / self.sample_hz
            first, last = self.trajectory.t[0], self.trajectory.t[-1]
            for k, t in enumerate(times):
                if not first - tol <= t <= last + tol:
                    problems.append(f"report outside of the trajectory at index {k}")
        return problems

    @property
    def scores(self) -> ScalarFloatArray:
        """Reported scores as an array."""
        return np.array([report.score for report in self.reports], dtype=np.float64)

    @property
    def times(self) -> ScalarFloatArray:
        """Report timestamps as an array."""
        return np.array([report.t for report in self.reports], dtype=np.float64)
