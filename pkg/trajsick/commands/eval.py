from __future__ import annotations  # c.f. PEP 563, PEP 649

from typing import TYPE_CHECKING

import numpy as np

from ..eval import CurvePair, evaluation_report
from ..predictor import LABELS
from ..trajectory.io import read_csv_columns
from ._cli import dumps, execute, make_parser, parse, write_text

if TYPE_CHECKING:
    from collections.abc import Sequence
    from pathlib import Path
    from typing import Any, Optional, Union

    from .._typing import ScalarFloatArray


def read_series(fname: Union[str, Path]) -> tuple[str, ScalarFloatArray, list[Any]]:
    """Read a file of scores (``t,score``) or of direction labels (``t,label``).

    Additional columns are ignored, e.g. the output of ``trajsick-predict`` is a
    valid score file.

    Returns
    -------
    kind : ``'score'`` | ``'label'``
        The type of file.
    times : array
        The timestamps.
    values : list
        The scores as floats or the labels as strings.
    """
    df = read_csv_columns(fname, ("t",), ("t",))
    if "score" in df.columns:
        df = read_csv_columns(fname, ("t", "score"), ("t", "score"))
        return "score", df["t"].to_numpy(), df["score"].tolist()
    if "label" not in df.columns:
        raise ValueError(
            f"The file '{fname}' must have a 'score' or a 'label' column in its "
            "header."
        )
    labels = df["label"].str.strip().tolist()
    for line, label in zip(df.index, labels):
        if label not in LABELS:
            raise ValueError(
                f"Malformed row in '{fname}' at line {line}: unknown direction "
                f"label '{label}', expected one of {LABELS}."
            )
    return "label", df["t"].to_numpy(), labels


def _check_alignment(times: ScalarFloatArray, others: ScalarFloatArray) -> None:
    if times.size != others.size:
        raise ValueError(
            f"The reported and predicted files must have the same number of rows, got "
            f"{times.size} and {others.size}."
        )
    if times.size < 2:
        return
    tol = np.median(np.diff(times)) / 2
    gap = np.abs(times - others).max()
    if tol < gap:
        raise ValueError(
            f"The reported and predicted timestamps are misaligned by up to {gap} s."
        )


def cmd_eval(
    reported_fname: Union[str, Path], predicted_fname: Union[str, Path]
) -> dict[str, Any]:
    """Compare reported and predicted scores or direction labels.

    Parameters
    ----------
    reported_fname : path-like
        Path to the reported scores or labels.
    predicted_fname : path-like
        Path to the predicted scores or labels, on the same timestamps.

    Returns
    -------
    report : dict
        The metrics, see :func:`trajsick.eval.evaluation_report`.
    """
    kind, times, reported = read_series(reported_fname)
    predicted_kind, predicted_times, predicted = read_series(predicted_fname)
    if kind != predicted_kind:
        raise ValueError(
            f"Can not compare a {kind} file with a {predicted_kind} file."
        )
    _check_alignment(times, predicted_times)
    if kind == "label":
        return evaluation_report(labels=reported, predictions=predicted)
    return evaluation_report(CurvePair(times, reported, predicted))


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Entrypoint for trajsick-eval usage."""
    parser = make_parser(
        "trajsick-eval",
        "Compares reported and predicted Discomfort Scores or direction labels.",
    )
    parser.add_argument("reported", type=str, help="path to the reported CSV file.")
    parser.add_argument("predicted", type=str, help="path to the predicted CSV file.")
    parser.add_argument(
        "-o",
        "--output",
        type=str,
        metavar="path",
        help="output JSON file, by default the metrics are printed.",
        default=None,
    )
    args = parse(parser, argv)

    def _eval() -> None:
        write_text(dumps(cmd_eval(args.reported, args.predicted)), args.output)

    return execute(_eval)
