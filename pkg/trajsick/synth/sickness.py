"""Synthetic sickness model producing Discomfort Scores from the movement."""

from __future__ import annotations  # c.f. PEP 563, PEP 649

import math
from dataclasses import asdict, dataclass
from typing import TYPE_CHECKING

import numpy as np

from ..compression import window_grid
from ..trajectory import (
    DiscomfortReport,
    SessionLog,
    Trajectory,
    heading_changes,
    slice_window,
    validate_trajectory,
)
from ..utils._checks import check_type, ensure_finite, ensure_int, ensure_positive
from ..utils._docs import fill_doc
from ..utils.logs import logger, verbose
from .courses import CourseSpec, gen_trajectory

if TYPE_CHECKING:
    from typing import Any, Optional, Union


@dataclass(frozen=True)
class SicknessModel:
    """Synthetic ground truth linking the movement to the Discomfort Score.

    Over each window, the latent score changes by
    ``turn_gain * sum(|heading change|) + speed_gain * var(speed)
    - recovery_rate * window_s / 60 + noise`` and is clamped to ``[0, 10]``. The
    reported score is the latent score rounded half up.

    Parameters
    ----------
    turn_gain : float
        Discomfort per radian of accumulated heading change.
    speed_gain : float
        Discomfort per (Um/s)² of speed variance within the window.
    recovery_rate : float
        Decrease of the score per minute of session.
    noise_sd : float
        Standard deviation of the Gaussian noise added to each change.
    initial_score : float
        Latent score at the start of the session, in ``[0, 10]``.
    seed : int
        Seed of the noise.
    """

    turn_gain: float = 0.25
    speed_gain: float = 0.05
    recovery_rate: float = 0.5
    noise_sd: float = 0.1
    initial_score: float = 0.0
    seed: int = 0

    def __post_init__(self) -> None:
        for name in ("turn_gain", "speed_gain", "recovery_rate", "noise_sd"):
            value = ensure_positive(getattr(self, name), name, strict=False)
            object.__setattr__(self, name, value)
        initial_score = ensure_finite(self.initial_score, "initial_score")
        if not 0 <= initial_score <= 10:
            raise ValueError(
                f"The initial score must be between 0 and 10, got {initial_score}."
            )
        object.__setattr__(self, "initial_score", initial_score)
        object.__setattr__(self, "seed", ensure_int(self.seed, "seed"))

    def to_dict(self) -> dict[str, Any]:
        """Return the model parameters as a JSON-serializable dictionary."""
        return asdict(self)


def _reported(latent: float) -> int:
    return int(math.floor(latent + 0.5))


@verbose
@fill_doc
def gen_discomfort(
    traj: Trajectory,
    model: SicknessModel,
    window_s: float,
    *,
    verbose: Optional[Union[bool, str, int]] = None,
) -> list[DiscomfortReport]:
    """Generate the Discomfort Scores reported along a trajectory.

    Parameters
    ----------
    %(traj)s
    model : SicknessModel
        The synthetic sickness model.
    %(window_s)s
    %(verbose)s

    Returns
    -------
    reports : list of DiscomfortReport
        One report per window boundary: the initial score at the first timestamp,
        then the score at the end of each window. The last report is moved to one
        sampling interval after the last sample if the last window is incomplete.
    """
    check_type(traj, (Trajectory,), "traj")
    check_type(model, (SicknessModel,), "model")
    window_s = ensure_positive(window_s, "window_s")
    verdict = validate_trajectory(traj)
    if not verdict.ok:
        raise ValueError(f"Invalid trajectory: {verdict.violations[0]}.")
    if len(traj) == 0:
        return list()
    rng = np.random.default_rng(model.seed)
    t_first, t_last = float(traj.t[0]), float(traj.t[-1])
    interval = float(np.median(np.diff(traj.t))) if len(traj) > 1 else window_s
    latent = model.initial_score
    reports = [DiscomfortReport(t_first, _reported(latent))]
    for t0, t1 in window_grid(t_first, t_last, window_s):
        window = slice_window(traj, t0, t1)
        turn = float(np.abs(heading_changes(window)).sum())
        speeds = window.speeds()
        variance = float(np.var(speeds)) if speeds.size != 0 else 0.0
        change = (
            model.turn_gain * turn
            + model.speed_gain * variance
            - model.recovery_rate * window_s / 60
            + rng.normal(0.0, model.noise_sd)
        )
        latent = min(max(latent + change, 0.0), 10.0)
        reports.append(DiscomfortReport(min(t1, t_last + interval), _reported(latent)))
    logger.info(
        "Generated %i reports, final Discomfort Score %i.",
        len(reports),
        reports[-1].score,
    )
    return reports


@verbose
def gen_session(
    spec: CourseSpec,
    model: SicknessModel,
    window_s: float,
    user: str = "synthetic",
    *,
    verbose: Optional[Union[bool, str, int]] = None,
) -> SessionLog:
    """Generate a complete session: trajectory of a course and reported scores.

    Parameters
    ----------
    spec : CourseSpec
        The course parameters.
    model : SicknessModel
        The synthetic sickness model.
    window_s : float
        Duration of the windows in seconds, i.e. the period of the reports.
    user : str
        Identifier of the user.
    verbose : int | str | bool | None
        Sets the verbosity level.

    Returns
    -------
    session : SessionLog
        The session.
    """
    traj = gen_trajectory(spec)
    reports = gen_discomfort(traj, model, window_s)
    return SessionLog(user, traj, tuple(reports), spec.sample_hz)
