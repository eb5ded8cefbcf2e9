from __future__ import annotations  # c.f. PEP 563, PEP 649

import os
from typing import TYPE_CHECKING

import numpy as np
import pytest

from trajsick.synth import CourseSpec, SicknessModel, gen_session
from trajsick.trajectory import (
    Trajectory,
    write_discomfort_csv,
    write_trajectory_csv,
)
from trajsick.utils.logs import logger

if TYPE_CHECKING:
    from pathlib import Path

    from trajsick.trajectory import SessionLog


def pytest_configure(config: pytest.Config) -> None:
    """Configure pytest options."""
    for marker in ("slow",):
        config.addinivalue_line("markers", marker)
    first_kind = (
        "error"
        if os.getenv("TRAJSICK_IGNORE_WARNINGS_IN_TESTS", "") != "true"
        else "always"
    )
    warning_lines = f"    {first_kind}::"
    for warning_line in warning_lines.split("\n"):
        warning_line = warning_line.strip()
        if warning_line and not warning_line.startswith("#"):
            config.addinivalue_line("filterwarnings", warning_line)
    logger.propagate = True


@pytest.fixture()
def collinear() -> Trajectory:
    """Trajectory of 10 points moving at 1 Um/s along the x-axis."""
    t = np.arange(10, dtype=np.float64)
    xyz = np.column_stack((t, np.zeros(10), np.zeros(10)))
    return Trajectory(xyz, t, tid="line")


@pytest.fixture()
def square() -> Trajectory:
    """Trajectory along 3 sides of a square of 4 Um, sampled every second."""
    xy = (
        [(float(k), 0.0) for k in range(5)]
        + [(4.0, float(k)) for k in range(1, 5)]
        + [(float(k), 4.0) for k in range(3, -1, -1)]
    )
    xyz = np.column_stack((np.array(xy), np.zeros(len(xy))))
    return Trajectory(xyz, np.arange(len(xy), dtype=np.float64), tid="square")


@pytest.fixture(scope="session")
def maze_session() -> SessionLog:
    """Maze session of 10 minutes with reports every 2 minutes."""
    spec = CourseSpec(kind="maze", duration_s=600, seed=11, turn_count=30)
    return gen_session(spec, SicknessModel(seed=11), window_s=120)


@pytest.fixture(scope="session")
def race_session() -> SessionLog:
    """Race session of 10 minutes with reports every 2 minutes."""
    spec = CourseSpec(kind="race", duration_s=600, seed=12)
    return gen_session(spec, SicknessModel(seed=12), window_s=120)


def _write_session(session: SessionLog, directory: Path) -> tuple[Path, Path]:
    directory.mkdir(parents=True, exist_ok=True)
    fname_traj = directory / "trajectory.csv"
    fname_disc = directory / "discomfort.csv"
    write_trajectory_csv(session.trajectory, fname_traj)
    write_discomfort_csv(session.reports, fname_disc)
    return fname_traj, fname_disc


@pytest.fixture()
def maze_files(tmp_path: Path, maze_session: SessionLog) -> tuple[Path, Path]:
    """Trajectory and Discomfort CSV files of the maze session."""
    return _write_session(maze_session, tmp_path / "maze")


@pytest.fixture()
def race_files(tmp_path: Path, race_session: SessionLog) -> tuple[Path, Path]:
    """Trajectory and Discomfort CSV files of the race session."""
    return _write_session(race_session, tmp_path / "race")
