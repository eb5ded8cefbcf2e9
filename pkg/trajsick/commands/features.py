from __future__ import annotations  # c.f. PEP 563, PEP 649

from typing import TYPE_CHECKING

from ..compression import features_to_frame, features_to_jsonl, windowed_features
from ..trajectory import read_trajectory_csv, validate_trajectory
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

    from ..compression import WindowFeature

FORMATS: tuple[str, ...] = ("csv", "jsonl")


def cmd_features(fname: Union[str, Path], cfg: RunConfig) -> list[WindowFeature]:
    """Compute the window features of a trajectory CSV file.

    Parameters
    ----------
    fname : path-like
        Path to the trajectory CSV file.
    cfg : RunConfig
        The configuration, ``window_s``, ``epsilon``, ``delta_mode`` and ``method``
        are used.

    Returns
    -------
    features : list of WindowFeature
        One feature per window.
    """
    traj = read_trajectory_csv(fname)
    verdict = validate_trajectory(traj)
    if not verdict.ok:
        raise ValueError(
            f"Invalid trajectory in '{fname}', first violation: "
            f"{verdict.violations[0]}."
        )
    return windowed_features(traj, cfg.window_s, cfg.compression())


def format_features(features: Sequence[WindowFeature], fmt: str = "csv") -> str:
    """Serialize window features to CSV or JSON Lines text."""
    if fmt == "jsonl":
        return features_to_jsonl(features)
    return features_to_frame(features).to_csv(index=False, lineterminator="\n")


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Entrypoint for trajsick-features usage."""
    parser = make_parser(
        "trajsick-features",
        "Computes the compression rate of consecutive windows of a trajectory.",
        "epsilon",
        "window_s",
        "delta_mode",
        "method",
    )
    parser.add_argument("trajectory", type=str, help="path to the trajectory CSV file.")
    parser.add_argument(
        "-o",
        "--output",
        type=str,
        metavar="path",
        help="output file, by default the features are printed.",
        default=None,
    )
    parser.add_argument(
        "--format",
        choices=FORMATS,
        help="output format.",
        default="csv",
    )
    args = parse(parser, argv)
    cfg = resolve_config(parser, args)

    def _features() -> None:
        check_output_paths(args.output)
        features = cmd_features(args.trajectory, cfg)
        write_text(format_features(features, args.format), args.output)

    return execute(_features)
