"""Shared plumbing of the command line tools: parser, configuration and exit codes."""

from __future__ import annotations  # c.f. PEP 563, PEP 649

import argparse
import json
import sys
from dataclasses import asdict, dataclass, fields, replace
from typing import TYPE_CHECKING

from ..compression import CompressionConfig
from ..predictor import TrainingConfig
from ..utils._checks import ensure_finite, ensure_path, ensure_positive
from ..utils.logs import logger, set_log_level

if TYPE_CHECKING:
    from collections.abc import Sequence
    from pathlib import Path
    from typing import Any, Callable, NoReturn, Optional, Union

EXIT_OK: int = 0
EXIT_USAGE: int = 1
EXIT_DATA: int = 2

PRESETS: dict[str, dict[str, Any]] = {
    "exp-a": dict(window_s=120.0),
    "exp-b": dict(window_s=60.0),
}


class ArgumentParser(argparse.ArgumentParser):
    """Argument parser exiting with the usage error code."""

    def error(self, message: str) -> NoReturn:  # noqa: D102
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass(frozen=True)
class RunConfig:
    """Parameters shared by the command line tools.

    The values are resolved from the defaults, then the preset, then the JSON
    configuration file and finally the command line flags.
    """

    epsilon: float = 0.4
    window_s: float = 120.0
    delta_mode: str = "ratio"
    method: str = "stc"
    hidden: tuple[int, ...] = (4,)
    head: str = "regression"
    seed: int = 0
    learning_rate: float = 0.1
    epochs: int = 2000
    split_fraction: float = 0.7
    anchor: float = 0.0

    def compression(self) -> CompressionConfig:
        """Compression parameters."""
        return CompressionConfig(self.epsilon, self.delta_mode, self.method)

    def training(self) -> TrainingConfig:
        """Training parameters."""
        return TrainingConfig(
            self.learning_rate, self.epochs, self.seed, self.split_fraction
        )

    def to_dict(self) -> dict[str, Any]:
        """Return the configuration as a JSON-serializable dictionary."""
        content = asdict(self)
        content["hidden"] = list(self.hidden)
        return content


# attribute: (flag, type, help)
_FLAGS: dict[str, tuple[str, Callable, str]] = {
    "epsilon": ("--epsilon", float, "compression threshold in Unity Meters."),
    "window_s": ("--window-s", float, "window duration in seconds."),
    "delta_mode": (
        "--delta-mode",
        str,
        "change in compression rate between windows, 'ratio' or 'difference'.",
    ),
    "method": ("--method", str, "compression method, 'stc' or 'dp'."),
    "hidden": ("--hidden", int, "number of units of the hidden layer(s)."),
    "head": ("--head", str, "output layer, 'regression' or 'classifier'."),
    "seed": ("--seed", int, "seed of the weight initialization and of the split."),
    "learning_rate": ("--learning-rate", float, "learning rate of the training."),
    "epochs": ("--epochs", int, "number of training epochs."),
    "split_fraction": (
        "--split-fraction",
        float,
        "share of the samples used for training.",
    ),
    "anchor": ("--anchor", float, "Discomfort Score at the start of the session."),
}


def make_parser(prog: str, description: str, *options: str) -> ArgumentParser:
    """Create a parser with the common flags and the selected configuration flags.

    Parameters
    ----------
    prog : str
        Name of the command.
    description : str
        Description of the command.
    *options : str
        Attributes of :class:`RunConfig` exposed as flags.

    Returns
    -------
    parser : ArgumentParser
        The parser.
    """
    parser = ArgumentParser(prog=prog, description=description)
    parser.add_argument(
        "--verbose",
        type=str,
        metavar="LEVEL",
        help="logging level, e.g. 'INFO' or 'DEBUG'.",
        default=None,
    )
    if len(options) == 0:
        return parser
    parser.add_argument(
        "--config",
        type=str,
        metavar="path",
        help="JSON file with configuration values, overridden by the flags.",
        default=None,
    )
    parser.add_argument(
        "--preset",
        choices=sorted(PRESETS),
        help="experiment preset, 'exp-b' uses windows of 60 s.",
        default=None,
    )
    for option in options:
        flag, type_, help_ = _FLAGS[option]
        kwargs = dict(nargs="+") if option == "hidden" else dict()
        parser.add_argument(
            flag, dest=option, type=type_, help=help_, default=None, **kwargs
        )
    return parser


def _normalize(values: dict[str, Any]) -> dict[str, Any]:
    if "hidden" in values:
        hidden = values["hidden"]
        values["hidden"] = tuple(hidden) if isinstance(hidden, list) else (hidden,)
    return values


def resolve_config(parser: ArgumentParser, args: argparse.Namespace) -> RunConfig:
    """Resolve the configuration of a command.

    A configuration error is reported as a usage error.
    """
    cfg = RunConfig()
    if getattr(args, "preset", None) is not None:
        cfg = replace(cfg, **PRESETS[args.preset])
    if getattr(args, "config", None) is not None:
        try:
            fname = ensure_path(args.config, must_exist=True)
            with open(fname, encoding="utf-8") as fid:
                content = json.load(fid)
        except (OSError, json.JSONDecodeError) as error:
            parser.error(f"invalid configuration file: {error}")
        if not isinstance(content, dict):
            parser.error("the configuration file must contain a JSON object.")
        known = {elt.name for elt in fields(RunConfig)}
        unknown = sorted(set(content) - known)
        if len(unknown) != 0:
            parser.error(f"unknown configuration key(s) {unknown}.")
        cfg = replace(cfg, **_normalize(dict(content)))
    flags = {
        name: getattr(args, name)
        for name in _FLAGS
        if getattr(args, name, None) is not None
    }
    cfg = replace(cfg, **_normalize(flags))
    try:
        cfg.compression()
        cfg.training()
        ensure_positive(cfg.window_s, "window_s")
        ensure_finite(cfg.anchor, "anchor")
    except (TypeError, ValueError) as error:
        parser.error(str(error))
    if any(not isinstance(size, int) or size <= 0 for size in cfg.hidden):
        parser.error(f"invalid hidden layer sizes {cfg.hidden}.")
    if cfg.head not in ("regression", "classifier"):
        parser.error(f"unknown head '{cfg.head}'.")
    logger.debug("Resolved configuration: %s", cfg)
    return cfg


def parse(
    parser: ArgumentParser, argv: Optional[Sequence[str]]
) -> argparse.Namespace:
    """Parse the arguments and set the logging level."""
    args = parser.parse_args(argv)
    if args.verbose is not None:
        try:
            set_log_level(args.verbose)
        except (TypeError, ValueError) as error:
            parser.error(str(error))
    return args


def execute(func: Callable[[], Any]) -> int:
    """Run a command and convert data errors to the data error exit code."""
    try:
        func()
    except (ValueError, OSError) as error:
        logger.error("%s", error)
        return EXIT_DATA
    return EXIT_OK


def check_output_paths(*fnames: Optional[Union[str, Path]]) -> None:
    """Check that output files can be created, before any of them is written.

    None entries stand for the standard output and are ignored.
    """
    for fname in fnames:
        if fname is None:
            continue
        fname = ensure_path(fname, must_exist=False)
        if fname.is_dir():
            raise IsADirectoryError(f"The output path '{fname}' is a directory.")
        parent = fname.resolve().parent
        if not parent.is_dir():
            raise FileNotFoundError(
                f"The directory '{parent}' of the output file '{fname}' does not "
                "exist."
            )


def write_text(content: str, fname: Optional[str]) -> None:
    """Write text to a file, or to the standard output if ``fname`` is None."""
    if fname is None:
        sys.stdout.write(content)
        sys.stdout.flush()
        return
    fname = ensure_path(fname, must_exist=False)
    with open(fname, "w", encoding="utf-8", newline="\n") as fid:
        fid.write(content)


def dumps(content: dict[str, Any]) -> str:
    """Serialize a dictionary to deterministic JSON."""
    return json.dumps(content, indent=2, sort_keys=True) + "\n"
