"""Line-oriented streaming processor.

Points ``x,y,z,t`` (or ``tid,x,y,z,t``) are read from the standard input in
timestamp order. At each window boundary, one line ``w,C_w,delta_C_w`` is written to
the standard output, followed by ``predicted_delta,predicted_score`` if a model is
provided. Invalid lines are reported on the standard error and skipped.
"""

from __future__ import annotations  # c.f. PEP 563, PEP 649

import sys
from typing import TYPE_CHECKING

from ..compression import WindowAccumulator
from ..predictor import load_model, predict_delta
from ..trajectory.io import format_float
from ..utils.logs import logger
from ._cli import RunConfig, execute, make_parser, parse, resolve_config

if TYPE_CHECKING:
    from collections.abc import Iterable, Sequence
    from typing import IO, Optional

    from ..compression import WindowFeature
    from ..predictor import UserModel


class StreamProcessor:
    """Turn a stream of points into one output line per closed window.

    Parameters
    ----------
    cfg : RunConfig
        The configuration. ``window_s``, ``epsilon``, ``delta_mode`` and ``method``
        are used without model, ``anchor`` is used with a model.
    model : UserModel | None
        A model with a regression head. If provided, its window duration and
        compression parameters replace the ones of the configuration.
    """

    def __init__(self, cfg: RunConfig, model: Optional[UserModel] = None) -> None:
        if model is not None and model.head != "regression":
            raise ValueError(
                f"The streaming processor requires a regression model, got a "
                f"{model.head} head."
            )
        self._model = model
        if model is None:
            self._accumulator = WindowAccumulator(cfg.window_s, cfg.compression())
        else:
            self._accumulator = WindowAccumulator(model.window_s, model.compression)
        self._score = cfg.anchor

    def push_line(self, line: str) -> list[str]:
        """Parse a line and push the point.

        Returns
        -------
        lines : list of str
            Output lines of the windows closed by this point.
        """
        fields = [field.strip() for field in line.split(",")]
        if len(fields) == 5:
            fields = fields[1:]
        if len(fields) != 4:
            raise ValueError(
                f"Expected 4 fields 'x,y,z,t' or 5 fields 'tid,x,y,z,t', got "
                f"{len(fields)}."
            )
        try:
            x, y, z, t = (float(field) for field in fields)
        except ValueError:
            raise ValueError(f"Expected numbers, got '{line.strip()}'.")
        return [self._format(feature) for feature in self._accumulator.push(x, y, z, t)]

    def finish(self) -> list[str]:
        """Close the last window at the end of the stream."""
        return [self._format(feature) for feature in self._accumulator.flush()]

    def _format(self, feature: WindowFeature) -> str:
        fields = [
            str(feature.window_index),
            format_float(feature.rate),
            "" if feature.delta is None else format_float(feature.delta),
        ]
        if self._model is not None:
            delta = predict_delta(self._model, feature)
            self._score += 0.0 if delta is None else delta
            fields.append("" if delta is None else format_float(delta))
            fields.append(format_float(self._score))
        return ",".join(fields)


def cmd_stream(
    cfg: RunConfig,
    lines: Iterable[str],
    out: IO[str],
    model: Optional[UserModel] = None,
) -> int:
    """Process a stream of points.

    Parameters
    ----------
    cfg : RunConfig
        The configuration.
    lines : iterable of str
        The input lines.
    out : file-like
        Where the output lines are written, flushed after each window.
    model : UserModel | None
        Optional model with a regression head.

    Returns
    -------
    n_errors : int
        Number of skipped input lines.
    """
    processor = StreamProcessor(cfg, model)
    n_errors = 0
    for lineno, line in enumerate(lines, start=1):
        if len(line.strip()) == 0:
            continue
        try:
            closed = processor.push_line(line)
        except ValueError as error:
            n_errors += 1
            logger.error("Line %i skipped: %s", lineno, error)
            continue
        for output in closed:
            out.write(output + "\n")
            out.flush()
    for output in processor.finish():
        out.write(output + "\n")
    out.flush()
    return n_errors


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Entrypoint for trajsick-stream usage."""
    parser = make_parser(
        "trajsick-stream",
        "Computes window features, and optionally predictions, from points read on "
        "the standard input.",
        "epsilon",
        "window_s",
        "delta_mode",
        "method",
        "anchor",
    )
    parser.add_argument(
        "--model",
        type=str,
        metavar="path",
        help="model JSON file with a regression head.",
        default=None,
    )
    args = parse(parser, argv)
    cfg = resolve_config(parser, args)

    def _stream() -> None:
        model = None if args.model is None else load_model(args.model)
        cmd_stream(cfg, sys.stdin, sys.stdout, model)

    return execute(_stream)
