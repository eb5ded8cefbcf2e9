from __future__ import annotations  # c.f. PEP 563, PEP 649

import json
from typing import TYPE_CHECKING

from ..synth import CourseSpec, SicknessModel, gen_session
from ..trajectory import count_turns, write_discomfort_csv, write_trajectory_csv
from ..utils._checks import check_type, ensure_path
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
    from typing import Any, Optional, Union


def read_course_file(
    fname: Union[str, Path],
) -> tuple[CourseSpec, SicknessModel, str]:
    """Read a course description from a JSON file.

    The JSON object holds the :class:`~trajsick.synth.CourseSpec` parameters, and
    optionally a ``"sickness"`` object with the
    :class:`~trajsick.synth.SicknessModel` parameters and a ``"user"`` string.
    """
    fname = ensure_path(fname, must_exist=True)
    with open(fname, encoding="utf-8") as fid:
        try:
            content = json.load(fid)
        except json.JSONDecodeError as error:
            raise ValueError(f"The course file '{fname}' is not valid JSON: {error}")
    if not isinstance(content, dict):
        raise ValueError(f"The course file '{fname}' must contain a JSON object.")
    sickness = content.pop("sickness", dict())
    user = str(content.pop("user", "synthetic"))
    try:
        check_type(sickness, (dict,), "sickness")
        spec = CourseSpec.from_dict(content)
        model = SicknessModel(**sickness)
    except TypeError as error:
        raise ValueError(f"Invalid course file '{fname}': {error}")
    return spec, model, user


def cmd_gen(
    spec: CourseSpec,
    model: SicknessModel,
    cfg: RunConfig,
    trajectory_fname: Union[str, Path],
    discomfort_fname: Union[str, Path],
    user: str = "synthetic",
) -> dict[str, Any]:
    """Generate a session and write its trajectory and Discomfort CSV files.

    Returns
    -------
    summary : dict
        Number of points, duration and number of turns of the trajectory.
    """
    check_output_paths(trajectory_fname, discomfort_fname)
    session = gen_session(spec, model, cfg.window_s, user)
    problems = session.validate()
    if len(problems) != 0:
        raise ValueError(f"The generated session is invalid: {problems[0]}.")
    write_trajectory_csv(session.trajectory, trajectory_fname)
    write_discomfort_csv(session.reports, discomfort_fname)
    return dict(
        points=len(session.trajectory),
        duration=session.trajectory.duration,
        turns=count_turns(session.trajectory),
    )


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Entrypoint for trajsick-gen usage."""
    parser = make_parser(
        "trajsick-gen",
        "Generates a synthetic session: trajectory and Discomfort Score reports.",
        "window_s",
    )
    parser.add_argument("spec", type=str, help="path to the JSON course file.")
    parser.add_argument(
        "--trajectory",
        type=str,
        metavar="path",
        required=True,
        help="output trajectory CSV file.",
    )
    parser.add_argument(
        "--discomfort",
        type=str,
        metavar="path",
        required=True,
        help="output Discomfort Score CSV file.",
    )
    args = parse(parser, argv)
    cfg = resolve_config(parser, args)

    def _gen() -> None:
        spec, model, user = read_course_file(args.spec)
        summary = cmd_gen(spec, model, cfg, args.trajectory, args.discomfort, user)
        write_text(
            f"points={summary['points']} duration={summary['duration']} "
            f"turns={summary['turns']}\n",
            None,
        )

    return execute(_gen)
