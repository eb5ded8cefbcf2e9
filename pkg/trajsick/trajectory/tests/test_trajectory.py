import numpy as np
import pytest
from numpy.testing import assert_allclose

from trajsick.trajectory import (
    DiscomfortReport,
    SessionLog,
    Trajectory,
    TrajPoint,
    count_turns,
    heading_changes,
    slice_window,
    speed_between,
    validate_trajectory,
)


def test_trajectory_construction(collinear: Trajectory):
    """Test the construction and the accessors of a trajectory."""
    assert len(collinear) == 10
    assert collinear.tid == "line"
    assert collinear.duration == 9.0
    assert collinear.xyz.shape == (10, 3)
    point = collinear[3]
    assert isinstance(point, TrajPoint)
    assert (point.x, point.y, point.z, point.t) == (3.0, 0.0, 0.0, 3.0)
    assert_allclose(point.pos, [3.0, 0.0, 0.0])
    sub = collinear[2:5]
    assert isinstance(sub, Trajectory)
    assert len(sub) == 3
    assert "10 points" in repr(collinear)
    assert repr(Trajectory(np.zeros((0, 3)), [])) == "<Trajectory | empty>"
    # read-only arrays
    with pytest.raises(ValueError, match="read-only"):
        collinear.t[0] = 1.0
    with pytest.raises(ValueError, match="must match"):
        Trajectory(np.zeros((3, 3)), [0, 1])


def test_from_points(collinear: Trajectory):
    """Test the creation of a trajectory from points."""
    traj = Trajectory.from_points(list(collinear))
    assert traj == collinear
    assert traj != collinear[:5]
    with pytest.raises(TypeError, match="'point' must be an instance"):
        Trajectory.from_points([(0, 0, 0, 0)])


def test_speeds(collinear: Trajectory):
    """Test the speed between consecutive samples."""
    assert_allclose(collinear.speeds(), np.ones(9))
    assert collinear[:1].speeds().size == 0
    p = TrajPoint(0, 0.0, 0.0, 0.0, 1.0)
    q = TrajPoint(0, 3.0, 4.0, 0.0, 3.0)
    assert speed_between(p, q) == 2.5
    with pytest.raises(ValueError, match="strictly before"):
        speed_between(q, p)


def test_validate_trajectory(collinear: Trajectory):
    """Test the detection of the invariant violations."""
    assert validate_trajectory(collinear).ok
    assert validate_trajectory(Trajectory(np.zeros((0, 3)), [])).ok

    t = collinear.t.copy()
    t[4] = t[3]
    verdict = validate_trajectory(Trajectory(collinear.xyz, t))
    assert not verdict
    assert [(v.index, v.rule) for v in verdict.violations] == [(4, "non-increasing t")]
    assert str(verdict.violations[0]) == "non-increasing t at index 4"

    xyz = collinear.xyz.copy()
    xyz[2, 1] = np.nan
    verdict = validate_trajectory(Trajectory(xyz, collinear.t))
    assert verdict.violations[0].rule == "non-finite value"

    verdict = validate_trajectory(Trajectory(collinear.xyz, collinear.t - 1))
    assert verdict.violations[0] == (0, "negative t")

    tids = ["line"] * 9 + ["other"]
    verdict = validate_trajectory(Trajectory(collinear.xyz, collinear.t, tids))
    assert verdict.violations[0] == (9, "tid mismatch")


def test_slice_window(collinear: Trajectory):
    """Test the half-open window extraction."""
    window = slice_window(collinear, 2.0, 5.0)
    assert_allclose(window.t, [2.0, 3.0, 4.0])
    assert len(slice_window(collinear, 100.0, 200.0)) == 0
    assert len(slice_window(collinear, 2.5, 3.0)) == 0
    with pytest.raises(ValueError, match="strictly before"):
        slice_window(collinear, 5.0, 5.0)


def test_heading_changes(square: Trajectory, collinear: Trajectory):
    """Test the heading changes on the ground plane."""
    changes = heading_changes(square)
    assert_allclose(np.abs(changes).sum(), np.pi)
    assert_allclose(changes[np.abs(changes) > 1e-12], [np.pi / 2, np.pi / 2])
    assert_allclose(heading_changes(collinear), 0.0, atol=1e-12)
    assert count_turns(square) == 2
    assert count_turns(collinear) == 0

    # wrap around +/- pi
    xy = np.array([(0.0, 0.0), (-1.0, 0.1), (-2.0, 0.0)])
    traj = Trajectory(np.column_stack((xy, np.zeros(3))), [0.0, 1.0, 2.0])
    (change,) = heading_changes(traj)
    assert_allclose(change, 2 * np.arctan(0.1))

    # pauses do not define a heading
    xy = np.array([(0.0, 0.0), (1.0, 0.0), (1.0, 0.0), (1.0, 1.0)])
    traj = Trajectory(np.column_stack((xy, np.zeros(4))), [0.0, 1.0, 2.0, 3.0])
    assert_allclose(heading_changes(traj), [np.pi / 2])


def test_discomfort_report():
    """Test the validation of a Discomfort Score report."""
    report = DiscomfortReport(120, 3)
    assert report.t == 120.0
    assert report.score == 3
    with pytest.raises(ValueError, match="between 0 and 10"):
        DiscomfortReport(0.0, 11)
    with pytest.raises(TypeError, match="'score' must be an integer"):
        DiscomfortReport(0.0, 2.5)
    with pytest.raises(ValueError, match="finite"):
        DiscomfortReport(np.nan, 2)


def test_session_log(collinear: Trajectory):
    """Test the validation of a session."""
    reports = (DiscomfortReport(0.0, 2), DiscomfortReport(5.0, 3))
    session = SessionLog("u1", collinear, reports, sample_hz=1.0)
    assert session.validate() == list()
    assert_allclose(session.scores, [2.0, 3.0])
    assert_allclose(session.times, [0.0, 5.0])

    reports = (DiscomfortReport(5.0, 2), DiscomfortReport(5.0, 3))
    problems = SessionLog("u1", collinear, reports, 1.0).validate()
    assert problems == ["non-increasing report t at index 1"]

    reports = (DiscomfortReport(0.0, 2), DiscomfortReport(30.0, 3))
    problems = SessionLog("u1", collinear, reports, 1.0).validate()
    assert problems == ["report outside of the trajectory at index 1"]

    with pytest.raises(TypeError, match="'report' must be an instance"):
        SessionLog("u1", collinear, [(0.0, 2)])
