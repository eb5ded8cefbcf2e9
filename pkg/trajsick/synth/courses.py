"""Seeded generators of maze-like and race-like trajectories on the ground plane."""

from __future__ import annotations  # c.f. PEP 563, PEP 649

import math
from dataclasses import asdict, dataclass, fields
from typing import TYPE_CHECKING, NamedTuple

import numpy as np

from ..trajectory import Trajectory
from ..utils._checks import (
    check_type,
    check_value,
    ensure_int,
    ensure_positive,
)
from ..utils.logs import logger

if TYPE_CHECKING:
    from typing import Any

    from .._typing import ScalarFloatArray

COURSE_KINDS: tuple[str, ...] = ("maze", "race")
MAZE_SPEED: float = 2.0
RACE_SPEED_RANGE: tuple[float, float] = (0.5, 10.0)

# unit direction of each maze heading, counter-clockwise from +x
_HEADINGS = np.array([(1.0, 0.0), (0.0, 1.0), (-1.0, 0.0), (0.0, -1.0)])
# integration substeps per sampling interval of the race generator
_RACE_SUBSTEPS: int = 10


@dataclass(frozen=True)
class CourseSpec:
    """Parameters of a generated course.

    Parameters
    ----------
    kind : ``'maze'`` | ``'race'``
        Type of course. A maze is made of straight corridors joined by right-angle
        turns traveled at a constant 2 Um/s. A race is a forward path weaving around
        obstacles at a speed controlled by the player.
    duration_s : float
        Duration of the session in seconds.
    sample_hz : float
        Sampling rate of the positions in Hz.
    seed : int
        Seed of the random number generator.
    turn_count : int
        Number of right-angle turns of a maze.
    turn_duration_s : float
        Duration of a right-angle turn of a maze in seconds.
    min_segment_s : float
        Minimum duration of a maze corridor in seconds. It must span at least 3
        sampling intervals.
    base_speed : float
        Mean speed of a race in Um/s.
    speed_variation : float
        Amplitude of the speed variations of a race in Um/s. The speed is clipped to
        ``[0.5, 10]`` Um/s.
    obstacle_density : float
        Number of weaves around obstacles per 100 Um of a race.
    weave_amplitude : float
        Peak heading deviation of a weave in radians.
    """

    kind: str = "maze"
    duration_s: float = 900.0
    sample_hz: float = 2.0
    seed: int = 0
    turn_count: int = 40
    turn_duration_s: float = 0.5
    min_segment_s: float = 2.0
    base_speed: float = 6.0
    speed_variation: float = 2.5
    obstacle_density: float = 2.0
    weave_amplitude: float = 0.15

    def __post_init__(self) -> None:
        check_value(self.kind, COURSE_KINDS, "kind")
        for name in (
            "duration_s",
            "sample_hz",
            "turn_duration_s",
            "min_segment_s",
            "base_speed",
        ):
            object.__setattr__(self, name, ensure_positive(getattr(self, name), name))
        for name in ("speed_variation", "obstacle_density", "weave_amplitude"):
            value = ensure_positive(getattr(self, name), name, strict=False)
            object.__setattr__(self, name, value)
        object.__setattr__(self, "seed", ensure_int(self.seed, "seed"))
        turn_count = ensure_int(self.turn_count, "turn_count")
        if turn_count < 0:
            raise ValueError(f"'turn_count' must be positive, got {turn_count}.")
        object.__setattr__(self, "turn_count", turn_count)
        if self.n_samples < 2:
            raise ValueError(
                f"A course of {self.duration_s} s at {self.sample_hz} Hz holds less "
                "than 2 samples."
            )
        if self.min_segment_s * self.sample_hz < 3:
            raise ValueError(
                "The minimum corridor duration must span at least 3 sampling "
                f"intervals, got {self.min_segment_s} s at {self.sample_hz} Hz."
            )
        low, high = RACE_SPEED_RANGE
        if not low <= self.base_speed <= high:
            raise ValueError(
                f"The race base speed must be within [{low}, {high}] Um/s, got "
                f"{self.base_speed}."
            )
        if math.pi / 2 <= self.weave_amplitude:
            raise ValueError(
                "The weave amplitude must be below pi / 2 radians, got "
                f"{self.weave_amplitude}."
            )

    @property
    def n_samples(self) -> int:
        """Number of samples of the generated trajectory."""
        return int(round(self.duration_s * self.sample_hz))

    def to_dict(self) -> dict[str, Any]:
        """Return the specification as a JSON-serializable dictionary."""
        return asdict(self)

    @classmethod
    def from_dict(cls, content: dict[str, Any]) -> CourseSpec:
        """Create a specification from a dictionary, e.g. loaded from JSON.

        Unknown keys are rejected.
        """
        check_type(content, (dict,), "content")
        known = {elt.name for elt in fields(cls)}
        unknown = sorted(set(content) - known)
        if len(unknown) != 0:
            raise ValueError(
                f"Unknown course parameter(s) {unknown}. Valid parameters are "
                f"{sorted(known)}."
            )
        return cls(**content)


class _Piece(NamedTuple):
    """Straight corridor (turn 0) or right-angle turn (turn +1/-1) of a maze."""

    start: float
    duration: float
    origin: ScalarFloatArray
    heading: int
    turn: int


def _arc_offset(heading: int, turn: int, tau: float, duration: float) -> np.ndarray:
    """Displacement after ``tau`` seconds in a turn of ``duration`` seconds."""
    omega = turn * (math.pi / 2) / duration
    radius = MAZE_SPEED / omega
    theta = heading * math.pi / 2
    return radius * np.array(
        [
            math.sin(theta + omega * tau) - math.sin(theta),
            math.cos(theta) - math.cos(theta + omega * tau),
        ]
    )


def _turn_end_offset(heading: int, turn: int, duration: float) -> np.ndarray:
    """Displacement over a complete turn, from the exact heading table."""
    radius = MAZE_SPEED * duration / (turn * math.pi / 2)
    (c0, s0), (c1, s1) = _HEADINGS[heading], _HEADINGS[(heading + turn) % 4]
    return radius * np.array([s1 - s0, c0 - c1])


def _maze_pieces(spec: CourseSpec) -> list[_Piece]:
    rng = np.random.default_rng(spec.seed)
    n_turns = spec.turn_count
    slack = (
        spec.duration_s
        - n_turns * spec.turn_duration_s
        - (n_turns + 1) * spec.min_segment_s
    )
    if slack < 0:
        raise ValueError(
            f"A maze of {spec.duration_s} s can not fit {n_turns} turns of "
            f"{spec.turn_duration_s} s separated by corridors of at least "
            f"{spec.min_segment_s} s."
        )
    segments = spec.min_segment_s + slack * rng.dirichlet(np.ones(n_turns + 1))
    turns = rng.choice((-1, 1), size=n_turns)
    pieces, origin, heading, start = list(), np.zeros(2), 0, 0.0
    for k, segment in enumerate(segments):
        pieces.append(_Piece(start, float(segment), origin, heading, 0))
        origin = origin + MAZE_SPEED * segment * _HEADINGS[heading]
        start += segment
        if k == n_turns:
            break
        turn = int(turns[k])
        pieces.append(_Piece(start, spec.turn_duration_s, origin, heading, turn))
        origin = origin + _turn_end_offset(heading, turn, spec.turn_duration_s)
        heading = (heading + turn) % 4
        start += spec.turn_duration_s
    return pieces


def gen_maze_trajectory(spec: CourseSpec) -> Trajectory:
    """Generate a maze-like trajectory.

    The trajectory alternates straight corridors traveled at 2 Um/s with right-angle
    turns of fixed duration traveled along a circular arc at the same speed. The
    corridor durations and turn directions are drawn from the seeded generator.

    Parameters
    ----------
    spec : CourseSpec
        The course parameters, of kind ``'maze'``.

    Returns
    -------
    traj : Trajectory
        Planar trajectory (``z = 0``) sampled at exactly ``k / sample_hz`` seconds.
    """
    check_type(spec, (CourseSpec,), "spec")
    if spec.kind != "maze":
        raise ValueError(f"Expected a maze course, got '{spec.kind}'.")
    pieces = _maze_pieces(spec)
    starts = np.array([piece.start for piece in pieces])
    times = np.arange(spec.n_samples) / spec.sample_hz
    xyz = np.zeros((times.size, 3))
    idx = np.searchsorted(starts, times, side="right") - 1
    for k, (t, piece_idx) in enumerate(zip(times, idx)):
        piece = pieces[piece_idx]
        tau = t - piece.start
        if piece.turn == 0:
            xyz[k, :2] = piece.origin + (MAZE_SPEED * tau) * _HEADINGS[piece.heading]
        else:
            xyz[k, :2] = piece.origin + _arc_offset(
                piece.heading, piece.turn, tau, piece.duration
            )
    logger.info(
        "Generated a maze of %i samples with %i turns (seed %i).",
        times.size,
        spec.turn_count,
        spec.seed,
    )
    return Trajectory(xyz, times, tid=f"maze-{spec.seed}")


def _race_speed(
    spec: CourseSpec, times: ScalarFloatArray, rng: np.random.Generator
) -> ScalarFloatArray:
    """Joystick-controlled speed, two slow seeded oscillations around the base."""
    periods = rng.uniform(10.0, 40.0, size=2)
    phases = rng.uniform(0.0, 2 * np.pi, size=2)
    wobble = np.mean(
        [np.sin(2 * np.pi * times / p + phi) for p, phi in zip(periods, phases)],
        axis=0,
    )
    return np.clip(spec.base_speed + spec.speed_variation * wobble, *RACE_SPEED_RANGE)


def gen_race_trajectory(spec: CourseSpec) -> Trajectory:
    """Generate a race-like trajectory.

    The heading weaves smoothly around the forward direction as a function of the
    traveled distance, while the speed varies slowly. Positions are integrated with
    several substeps per sampling interval.

    Parameters
    ----------
    spec : CourseSpec
        The course parameters, of kind ``'race'``.

    Returns
    -------
    traj : Trajectory
        Planar trajectory (``z = 0``) sampled at exactly ``k / sample_hz`` seconds.
    """
    check_type(spec, (CourseSpec,), "spec")
    if spec.kind != "race":
        raise ValueError(f"Expected a race course, got '{spec.kind}'.")
    rng = np.random.default_rng(spec.seed)
    n_steps = (spec.n_samples - 1) * _RACE_SUBSTEPS
    dt = 1 / (spec.sample_hz * _RACE_SUBSTEPS)
    speed = _race_speed(spec, (np.arange(n_steps) + 0.5) * dt, rng)
    ds = speed * dt
    distance = np.cumsum(ds) - ds / 2
    weave_phase = rng.uniform(0.0, 2 * np.pi)
    heading = spec.weave_amplitude * np.sin(
        2 * np.pi * distance * spec.obstacle_density / 100 + weave_phase
    )
    steps = ds[:, np.newaxis] * np.column_stack((np.cos(heading), np.sin(heading)))
    xy = np.vstack((np.zeros((1, 2)), np.cumsum(steps, axis=0)))[::_RACE_SUBSTEPS]
    xyz = np.column_stack((xy, np.zeros(xy.shape[0])))
    times = np.arange(spec.n_samples) / spec.sample_hz
    logger.info(
        "Generated a race of %i samples, %.1f Um long (seed %i).",
        times.size,
        float(ds.sum()),
        spec.seed,
    )
    return Trajectory(xyz, times, tid=f"race-{spec.seed}")


def gen_trajectory(spec: CourseSpec) -> Trajectory:
    """Generate the trajectory of a course of any kind."""
    check_type(spec, (CourseSpec,), "spec")
    if spec.kind == "maze":
        return gen_maze_trajectory(spec)
    return gen_race_trajectory(spec)
