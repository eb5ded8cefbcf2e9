"""Temporary bug-fixes awaiting an upstream fix."""

import sys


# https://github.com/sphinx-gallery/sphinx-gallery/issues/1112
class _WrapStdErr:
    """Dynamically wrap to sys.stderr.

    The command line tools write their data on stdout, thus the log records go to
    stderr. The stream is looked up at every access so that pytest's capture and
    other monkey-patches of sys.stderr keep working.
    """

    def __getattr__(self, name):  # noqa: D105
        if hasattr(sys.stderr, name):
            return getattr(sys.stderr, name)
        else:
            raise AttributeError(f"'file' object has not attribute '{name}'")
