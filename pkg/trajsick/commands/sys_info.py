from __future__ import annotations  # c.f. PEP 563, PEP 649

from typing import TYPE_CHECKING

from ..utils.config import sys_info
from ._cli import make_parser, parse

if TYPE_CHECKING:
    from collections.abc import Sequence
    from typing import Optional


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Run sys_info() command."""
    parser = make_parser(
        f"{__package__.split('.')[0]}-sys_info",
        "Prints the platform and the versions of the dependencies.",
    )
    parser.add_argument(
        "--developer",
        help="display information for optional dependencies",
        action="store_true",
    )
    args = parse(parser, argv)
    sys_info(developer=args.developer)
    return 0
