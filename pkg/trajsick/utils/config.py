from __future__ import annotations  # c.f. PEP 563, PEP 649

import logging
import os
import platform
import sys
from functools import partial
from importlib.metadata import PackageNotFoundError, requires, version
from typing import TYPE_CHECKING

import psutil
from packaging.requirements import Requirement

from ._checks import check_type

if TYPE_CHECKING:
    from typing import IO, Callable, Optional

_LJUST: int = 26
_EXTRAS: tuple[str, ...] = ("build", "test", "style")


def sys_info(fid: Optional[IO] = None, developer: bool = False) -> None:
    """Print the system information for debugging.

    Parameters
    ----------
    fid : file-like | None
        The file to write to, passed to :func:`print`.
        Can be None to use :data:`sys.stdout`.
    developer : bool
        If True, display information about optional dependencies.
    """
    check_type(developer, (bool,), "developer")
    out = partial(print, end="", file=fid)
    package = __package__.split(".")[0]
    unicode = (getattr(sys.stdout, "encoding", None) or "").lower().startswith("utf")

    memory = psutil.virtual_memory().total / float(2**30)
    rows = [
        ("Platform", platform.platform()),
        ("Python", sys.version.replace("\n", " ")),
        ("Executable", sys.executable),
        ("CPU", platform.processor() or "unknown"),
        ("Logical cores", str(psutil.cpu_count(True))),
        ("RAM", f"{memory:0.1f} GB"),
        (package, version(package)),
        ("Log level", logging.getLevelName(logging.getLogger(package).level)),
        ("TRAJSICK_LOG_LEVEL", os.getenv("TRAJSICK_LOG_LEVEL", "unset")),
    ]
    for name, value in rows:
        out(f"{name}:".ljust(_LJUST) + value + "\n")

    dependencies = [Requirement(elt) for elt in requires(package) or []]
    out("\nCore dependencies\n")
    core = [
        dep
        for dep in dependencies
        if dep.marker is None or "extra" not in str(dep.marker)
    ]
    _list_dependencies_info(out, package, core, unicode)
    if not developer:
        return
    for key in _EXTRAS:
        extra = [
            dep
            for dep in dependencies
            if dep.marker is not None and f'extra == "{key}"' in str(dep.marker)
        ]
        if len(extra) == 0:  # pragma: no cover
            continue
        out(f"\nOptional '{key}' dependencies\n")
        _list_dependencies_info(out, package, extra, unicode)


def _list_dependencies_info(
    out: Callable,
    package: str,
    dependencies: list[Requirement],
    unicode: bool,
) -> None:
    """List dependencies names and versions."""
    ljust = _LJUST + 1 if unicode else _LJUST
    missing: list[str] = list()
    for dep in dependencies:
        if dep.name == package:
            continue
        name = f"{dep.name} ({dep.specifier})" if len(dep.specifier) != 0 else dep.name
        try:
            installed = version(dep.name)
        except PackageNotFoundError:
            missing.append(name)
            continue
        label = f"✔︎ {name}:" if unicode else f"{name}:"
        out(label.ljust(ljust) + installed + "\n")
    if len(missing) != 0:
        prefix = "✘ Not installed" if unicode else "Not installed"
        out(f"{prefix}: {', '.join(missing)}\n")
