from __future__ import annotations  # c.f. PEP 563, PEP 649

import numpy as np
import pytest

from trajsick.eval import spearman
from trajsick.synth import CourseSpec, SicknessModel, gen_discomfort, gen_session
from trajsick.synth.courses import gen_maze_trajectory
from trajsick.trajectory import Trajectory, heading_changes, slice_window


def test_sickness_model():
    """Test the parameters of the sickness model."""
    model = SicknessModel()
    assert model.to_dict() == dict(
        turn_gain=0.25,
        speed_gain=0.05,
        recovery_rate=0.5,
        noise_sd=0.1,
        initial_score=0.0,
        seed=0,
    )
    assert SicknessModel(noise_sd=0).noise_sd == 0
    with pytest.raises(ValueError, match="'turn_gain' must be a positive"):
        SicknessModel(turn_gain=-1)
    with pytest.raises(ValueError, match="between 0 and 10"):
        SicknessModel(initial_score=11)


def test_gen_discomfort():
    """Test the timing and the range of the generated reports."""
    traj = gen_maze_trajectory(CourseSpec(duration_s=590, seed=2))
    reports = gen_discomfort(traj, SicknessModel(seed=2), 120)
    # 5 windows, the last one incomplete
    assert [r.t for r in reports] == [0.0, 120.0, 240.0, 360.0, 480.0, 590.0]
    assert all(0 <= r.score <= 10 for r in reports)
    assert reports[0].score == 0
    assert gen_discomfort(traj, SicknessModel(seed=2), 120) == reports
    assert gen_discomfort(traj, SicknessModel(seed=2), 120, verbose="debug")
    assert gen_discomfort(Trajectory(np.empty((0, 3)), []), SicknessModel(), 60) == []


def test_gen_discomfort_invalid():
    """Test the rejection of an invalid trajectory."""
    traj = Trajectory([[0, 0, 0], [1, 0, 0], [2, 0, 0]], [0.0, 2.0, 1.0])
    with pytest.raises(ValueError, match="non-increasing t at index 2"):
        gen_discomfort(traj, SicknessModel(), 60)
    with pytest.raises(ValueError, match="strictly positive"):
        gen_discomfort(traj, SicknessModel(), 0)


def test_straight_course_recovers():
    """Test that the score never increases without turns."""
    spec = CourseSpec(duration_s=600, turn_count=0)
    model = SicknessModel(noise_sd=0, initial_score=5)
    scores = gen_session(spec, model, 60).scores
    assert np.all(np.diff(scores) <= 0)
    assert scores[-1] == 0
    model = SicknessModel(noise_sd=0, initial_score=5, recovery_rate=0)
    assert np.all(gen_session(spec, model, 60).scores == 5)


def test_turns_increase_discomfort():
    """Test that a window full of turns raises the score."""
    spec = CourseSpec(duration_s=120, turn_count=30)
    model = SicknessModel(noise_sd=0, initial_score=2)
    session = gen_session(spec, model, 120)
    assert session.scores.tolist() == [2, 10]


def test_turns_rank_discomfort():
    """Test the agreement between the turns of a window and the change of score."""
    turns, changes = list(), list()
    for k in range(25):
        spec = CourseSpec(duration_s=240, seed=k, turn_count=k)
        session = gen_session(spec, SicknessModel(recovery_rate=0, seed=k), 120)
        scores = session.scores
        for w, t0 in enumerate((0.0, 120.0)):
            window = slice_window(session.trajectory, t0, t0 + 120)
            turns.append(np.abs(heading_changes(window)).sum())
            changes.append(scores[w + 1] - scores[w])
    assert len(turns) == 50
    assert 0.8 < spearman(turns, changes)


def test_gen_session(maze_session):
    """Test the generated session."""
    assert maze_session.validate() == list()
    assert maze_session.user == "synthetic"
    assert maze_session.sample_hz == 2.0
    assert len(maze_session.reports) == 6
    assert maze_session.trajectory.tid == "maze-11"
    assert maze_session.times.tolist() == [0.0, 120.0, 240.0, 360.0, 480.0, 600.0]
