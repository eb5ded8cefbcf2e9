from __future__ import annotations  # c.f. PEP 563, PEP 649

from typing import TYPE_CHECKING

import pandas as pd

from ..compression import windowed_features
from ..predictor import load_model, predict_session
from ..trajectory import read_trajectory_csv, validate_trajectory
from ..trajectory.io import format_float
from ._cli import (
    RunConfig,
    check_output_paths,
    execute,
    make_parser,
    parse,
    resolve_config,
    write_text,
)

if TYPE_CHECKING:
    from collections.abc import Sequence
    from pathlib import Path
    from typing import Optional, Union

    from ..predictor import SessionPrediction

PREDICTION_COLUMNS: tuple[str, ...] = ("window", "t", "predicted_delta", "score")


def cmd_predict(
    model_fname: Union[str, Path], fname: Union[str, Path], cfg: RunConfig
) -> SessionPrediction:
    """Predict the Discomfort Score curve of a trajectory CSV file.

    The windows are computed with the compression parameters and the window
    duration stored in the model.

    Parameters
    ----------
    model_fname : path-like
        Path to the model JSON file, with a regression head.
    fname : path-like
        Path to the trajectory CSV file.
    cfg : RunConfig
        The configuration, ``anchor`` is used.

    Returns
    -------
    prediction : SessionPrediction
        The predicted curve.
    """
    model = load_model(model_fname)
    if model.head != "regression":
        raise ValueError(
            f"The model '{model_fname}' has a {model.head} head, predicting the "
            "Discomfort Score requires a regression head."
        )
    traj = read_trajectory_csv(fname)
    verdict = validate_trajectory(traj)
    if not verdict.ok:
        raise ValueError(
            f"Invalid trajectory in '{fname}', first violation: "
            f"{verdict.violations[0]}."
        )
    features = windowed_features(traj, model.window_s, model.compression)
    return predict_session(model, features, cfg.anchor)


def prediction_to_frame(prediction: SessionPrediction) -> pd.DataFrame:
    """Convert a predicted curve to a DataFrame of formatted strings.

    The first row holds the anchor with empty ``window`` and ``predicted_delta``
    fields. An undefined prediction is an empty field.
    """
    rows = list()
    for k, (t, score) in enumerate(zip(prediction.times, prediction.scores)):
        delta = None if k == 0 else prediction.deltas[k - 1]
        rows.append(
            (
                "" if k == 0 else str(k - 1),
                format_float(t),
                "" if delta is None else format_float(delta),
                format_float(score),
            )
        )
    return pd.DataFrame(rows, columns=list(PREDICTION_COLUMNS))


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Entrypoint for trajsick-predict usage."""
    parser = make_parser(
        "trajsick-predict",
        "Predicts the Discomfort Score curve of a trajectory with a per-user model.",
        "anchor",
    )
    parser.add_argument("model", type=str, help="path to the model JSON file.")
    parser.add_argument("trajectory", type=str, help="path to the trajectory CSV file.")
    parser.add_argument(
        "-o",
        "--output",
        type=str,
        metavar="path",
        help="output CSV file, by default the prediction is printed.",
        default=None,
    )
    args = parse(parser, argv)
    cfg = resolve_config(parser, args)

    def _predict() -> None:
        check_output_paths(args.output)
        prediction = cmd_predict(args.model, args.trajectory, cfg)
        frame = prediction_to_frame(prediction)
        write_text(frame.to_csv(index=False, lineterminator="\n"), args.output)

    return execute(_predict)
