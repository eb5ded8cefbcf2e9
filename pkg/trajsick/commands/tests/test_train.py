from __future__ import annotations  # c.f. PEP 563, PEP 649

import json
import math
from typing import TYPE_CHECKING

import pytest

from trajsick.commands import eval as eval_cmd
from trajsick.commands import predict, train
from trajsick.compression import (
    CompressionConfig,
    windowed_features,
    write_features_csv,
)
from trajsick.predictor import load_model
from trajsick.synth import CourseSpec, SicknessModel, gen_session
from trajsick.trajectory import write_discomfort_csv, write_trajectory_csv

if TYPE_CHECKING:
    from pathlib import Path


def _session_files(
    directory: Path, kind: str, seed: int, window_s: float = 60
) -> tuple[str, str, str]:
    """Generate a session of 11 minutes and write its files."""
    directory.mkdir()
    spec = CourseSpec(kind=kind, duration_s=660, seed=seed)
    session = gen_session(spec, SicknessModel(seed=seed), window_s)
    fnames = (
        directory / "features.csv",
        directory / "discomfort.csv",
        directory / "trajectory.csv",
    )
    features = windowed_features(session.trajectory, window_s, CompressionConfig())
    write_features_csv(features, fnames[0])
    write_discomfort_csv(session.reports, fnames[1])
    write_trajectory_csv(session.trajectory, fnames[2])
    return tuple(str(fname) for fname in fnames)


@pytest.fixture()
def sessions(tmp_path: Path) -> list[tuple[str, str, str]]:
    """Maze and race sessions with windows of 60 s."""
    return [
        _session_files(tmp_path / "maze", "maze", 1),
        _session_files(tmp_path / "race", "race", 2),
    ]


def _train_argv(sessions, model: Path) -> list[str]:
    argv = list()
    for features, discomfort, _ in sessions:
        argv.extend(["--session", features, discomfort])
    return argv + ["-m", str(model), "--epochs", "50"]


def test_train(sessions, tmp_path: Path, capsys: pytest.CaptureFixture):
    """Test training a model on 2 sessions."""
    model_fname = tmp_path / "model.json"
    assert train.run(_train_argv(sessions, model_fname) + ["--user", "u1"]) == 0
    metrics = json.loads(capsys.readouterr().out)
    # 2 sessions of 11 windows, the first window of each has no change
    assert (metrics["n_train"], metrics["n_test"]) == (14, 6)
    assert metrics["head"] == "regression"
    assert math.isfinite(metrics["train_loss"])
    assert math.isfinite(metrics["test_loss"])
    model = load_model(model_fname)
    assert model.user == "u1"
    assert model.window_s == 60
    assert model.compression == CompressionConfig()
    assert model.training.epochs == 50
    # reruns are byte-identical
    other = tmp_path / "model2.json"
    metrics_fname = tmp_path / "metrics.json"
    argv = _train_argv(sessions, other) + ["--user", "u1", "--metrics"]
    assert train.run(argv + [str(metrics_fname)]) == 0
    assert model_fname.read_bytes() == other.read_bytes()
    assert json.loads(metrics_fname.read_text()) == metrics


def test_predict_and_eval(sessions, tmp_path: Path, capsys: pytest.CaptureFixture):
    """Test the prediction of a curve and its evaluation."""
    model_fname = tmp_path / "model.json"
    assert train.run(_train_argv(sessions, model_fname)) == 0
    capsys.readouterr()
    _, discomfort, trajectory = sessions[0]
    assert predict.run([str(model_fname), trajectory, "--anchor", "2"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "window,t,predicted_delta,score"
    rows = [line.split(",") for line in lines[1:]]
    assert len(rows) == 12
    assert rows[0] == ["", "0.0", "", "2.0"]
    assert rows[1] == ["0", "60.0", "", "2.0"]
    assert [row[0] for row in rows[1:]] == [str(k) for k in range(11)]
    assert all(row[2] != "" for row in rows[2:])
    scores = [float(row[3]) for row in rows]
    deltas = [float(row[2]) for row in rows[2:]]
    assert scores[-1] == pytest.approx(2 + math.fsum(deltas))
    # evaluation against the reported scores
    output = tmp_path / "predicted.csv"
    assert predict.run([str(model_fname), trajectory, "-o", str(output)]) == 0
    report_fname = tmp_path / "report.json"
    assert eval_cmd.run([discomfort, str(output), "-o", str(report_fname)]) == 0
    report = json.loads(report_fname.read_text())
    assert {"spearman", "pearson", "area_error", "mean_abs_point_diff"} <= set(report)
    assert report["mean_abs_point_diff"] >= 0


def test_train_classifier(sessions, tmp_path: Path, caplog: pytest.LogCaptureFixture):
    """Test training a classifier, which can not predict a score curve."""
    model_fname = tmp_path / "model.json"
    argv = _train_argv(sessions, model_fname) + ["--head", "classifier"]
    assert train.run(argv + ["--hidden", "3"]) == 0
    model = load_model(model_fname)
    assert model.head == "classifier"
    assert model.net.layer_sizes == (2, 3, 3)
    assert model.target_scaler is None
    assert predict.run([str(model_fname), sessions[0][2]]) == 2
    assert "requires a regression head" in caplog.text


def test_train_invalid(sessions, tmp_path: Path, caplog: pytest.LogCaptureFixture):
    """Test the exit codes on invalid training inputs."""
    model_fname = tmp_path / "model.json"
    # windows of different durations
    features = _session_files(tmp_path / "other", "maze", 3, window_s=120)
    argv = _train_argv([sessions[0], features], model_fname)
    assert train.run(argv) == 2
    assert "last 120.0 s" in caplog.text
    # reports which do not match the windows
    argv = ["--session", sessions[0][0], features[1], "-m", str(model_fname)]
    assert train.run(argv) == 2
    assert "Misaligned window grid" in caplog.text
    empty = tmp_path / "empty.csv"
    empty.write_text("window,t0,t1,rate,delta,points\n")
    argv = ["--session", str(empty), sessions[0][1], "-m", str(model_fname)]
    assert train.run(argv) == 2
    assert "has no window" in caplog.text
    assert not model_fname.exists()
    with pytest.raises(SystemExit) as exc:
        train.run(["-m", str(model_fname)])
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        train.run(_train_argv(sessions, model_fname) + ["--split-fraction", "1.5"])
    assert exc.value.code == 1


def test_train_unwritable_metrics(
    sessions, tmp_path: Path, caplog: pytest.LogCaptureFixture
):
    """Test that the model is not written when the metrics file can not be created."""
    model_fname = tmp_path / "model.json"
    metrics_fname = tmp_path / "missing" / "metrics.json"
    argv = _train_argv(sessions, model_fname) + ["--metrics", str(metrics_fname)]
    assert train.run(argv) == 2
    assert "does not exist" in caplog.text
    assert not model_fname.exists()
    argv = _train_argv(sessions, tmp_path / "missing" / "model.json")
    assert train.run(argv) == 2
