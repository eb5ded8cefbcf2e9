from __future__ import annotations  # c.f. PEP 563, PEP 649

from typing import TYPE_CHECKING

from ..compression import compress, compression_rate
from ..trajectory import read_trajectory_csv, validate_trajectory, write_trajectory_csv
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

    from ..compression import CompressionResult


def cmd_compress(
    fname: Union[str, Path], cfg: RunConfig, output: Optional[Union[str, Path]] = None
) -> CompressionResult:
    """Compress a trajectory CSV file.

    Parameters
    ----------
    fname : path-like
        Path to the trajectory CSV file.
    cfg : RunConfig
        The configuration, ``epsilon`` and ``method`` are used.
    output : path-like | None
        If provided, path to the CSV file where the kept points are written.

    Returns
    -------
    result : CompressionResult
        The kept and removed points.
    """
    check_output_paths(output)
    traj = read_trajectory_csv(fname)
    verdict = validate_trajectory(traj)
    if not verdict.ok:
        raise ValueError(
            f"Invalid trajectory in '{fname}', first violation: "
            f"{verdict.violations[0]}."
        )
    result = compress(traj, cfg.compression())
    if output is not None:
        write_trajectory_csv(traj[result.kept], output)
    return result


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Entrypoint for trajsick-compress usage."""
    parser = make_parser(
        "trajsick-compress",
        "Compresses a trajectory and prints 'total,removed,rate'.",
        "epsilon",
        "method",
    )
    parser.add_argument("trajectory", type=str, help="path to the trajectory CSV file.")
    parser.add_argument(
        "-o",
        "--output",
        type=str,
        metavar="path",
        help="output CSV file with the kept points.",
        default=None,
    )
    args = parse(parser, argv)
    cfg = resolve_config(parser, args)

    def _compress() -> None:
        result = cmd_compress(args.trajectory, cfg, args.output)
        write_text(
            "total,removed,rate\n"
            f"{result.total_count},{result.removed_count},"
            f"{format_float(compression_rate(result))}\n",
            None,
        )

    return execute(_compress)
