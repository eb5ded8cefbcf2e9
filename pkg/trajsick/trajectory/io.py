"""CSV readers and writers for trajectories and Discomfort Score reports."""

from __future__ import annotations  # c.f. PEP 563, PEP 649

from typing import TYPE_CHECKING

import numpy as np
import pandas as pd

from ..utils._checks import check_type, ensure_path
from ..utils.logs import logger
from .trajectory import DiscomfortReport, Trajectory

if TYPE_CHECKING:
    from collections.abc import Sequence
    from pathlib import Path
    from typing import Union

TRAJECTORY_COLUMNS: tuple[str, ...] = ("tid", "x", "y", "z", "t")
DISCOMFORT_COLUMNS: tuple[str, ...] = ("t", "score")


def format_float(value: float) -> str:
    """Format a float with the shortest representation that round-trips."""
    return repr(float(value))


def read_csv_columns(
    fname: Union[str, Path], columns: Sequence[str], numeric: Sequence[str]
) -> pd.DataFrame:
    """Read a CSV file with a mandatory header.

    Parameters
    ----------
    fname : path-like
        Path to the CSV file.
    columns : sequence of str
        Columns which must be present in the header.
    numeric : sequence of str
        Columns which must contain finite numbers.

    Returns
    -------
    df : DataFrame
        The parsed file, indexed by the 1-based line number of each row in the file.
        Blank lines are skipped. Numeric columns are converted to float64 with the
        exact decimal to binary conversion.
    """
    fname = ensure_path(fname, must_exist=True)
    try:
        df = pd.read_csv(
            fname,
            dtype=str,
            keep_default_na=False,
            encoding="utf-8",
            skipinitialspace=True,
            skip_blank_lines=False,
        )
    except pd.errors.EmptyDataError:
        raise ValueError(f"The file '{fname}' is empty, a header is expected.")
    except pd.errors.ParserError as error:
        raise ValueError(f"Malformed CSV file '{fname}': {error}")
    missing = [col for col in columns if col not in df.columns]
    if len(missing) != 0:
        raise ValueError(
            f"The file '{fname}' is missing the column(s) {', '.join(missing)} in its "
            f"header. Expected header: '{','.join(columns)}'."
        )
    # +2: 1-based numbering and header line
    df.index = np.arange(2, len(df) + 2)
    df = df[~df.isna().all(axis=1)].fillna("")
    for col in numeric:
        # float() round-trips the decimal representation exactly
        values = np.empty(len(df), dtype=np.float64)
        for k, (line, elt) in enumerate(zip(df.index, df[col])):
            try:
                values[k] = float(elt)
            except ValueError:
                values[k] = np.nan
            if not np.isfinite(values[k]):
                raise ValueError(
                    f"Malformed row in '{fname}' at line {line}: column '{col}' "
                    f"expects a finite number, got '{elt}'."
                )
        df[col] = values
    return df


def read_trajectory_csv(fname: Union[str, Path]) -> Trajectory:
    """Read a trajectory CSV file with the header ``tid,x,y,z,t``.

    Parameters
    ----------
    fname : path-like
        Path to the CSV file.

    Returns
    -------
    traj : Trajectory
        The trajectory. Its invariants are not checked.
    """
    df = read_csv_columns(fname, TRAJECTORY_COLUMNS, TRAJECTORY_COLUMNS[1:])
    logger.debug("Read %i points from '%s'.", len(df), fname)
    return Trajectory(
        df[["x", "y", "z"]].to_numpy(), df["t"].to_numpy(), df["tid"].to_numpy()
    )


def write_trajectory_csv(traj: Trajectory, fname: Union[str, Path]) -> None:
    """Write a trajectory to a CSV file with the header ``tid,x,y,z,t``.

    Parameters
    ----------
    traj : Trajectory
        The trajectory to write.
    fname : path-like
        Path to the CSV file, overwritten if it exists.
    """
    check_type(traj, (Trajectory,), "traj")
    fname = ensure_path(fname, must_exist=False)
    df = pd.DataFrame(
        {
            "tid": [str(tid) for tid in traj.tids],
            "x": [format_float(v) for v in traj.xyz[:, 0]],
            "y": [format_float(v) for v in traj.xyz[:, 1]],
            "z": [format_float(v) for v in traj.xyz[:, 2]],
            "t": [format_float(v) for v in traj.t],
        },
        columns=list(TRAJECTORY_COLUMNS),
    )
    df.to_csv(fname, index=False, lineterminator="\n", encoding="utf-8")


def read_discomfort_csv(fname: Union[str, Path]) -> list[DiscomfortReport]:
    """Read Discomfort Score reports from a CSV file with the header ``t,score``.

    Parameters
    ----------
    fname : path-like
        Path to the CSV file.

    Returns
    -------
    reports : list of DiscomfortReport
        The reports, in file order.
    """
    df = read_csv_columns(fname, DISCOMFORT_COLUMNS, DISCOMFORT_COLUMNS)
    reports = list()
    for line, t, score in zip(df.index, df["t"], df["score"]):
        if score != int(score):
            raise ValueError(
                f"Malformed row in '{fname}' at line {line}: the score must be an "
                f"integer, got {score}."
            )
        try:
            reports.append(DiscomfortReport(t, int(score)))
        except ValueError as error:
            raise ValueError(f"Malformed row in '{fname}' at line {line}: {error}")
    return reports


def write_discomfort_csv(
    reports: Sequence[DiscomfortReport], fname: Union[str, Path]
) -> None:
    """Write Discomfort Score reports to a CSV file with the header ``t,score``.

    Parameters
    ----------
    reports : sequence of DiscomfortReport
        The reports to write.
    fname : path-like
        Path to the CSV file, overwritten if it exists.
    """
    fname = ensure_path(fname, must_exist=False)
    df = pd.DataFrame(
        {
            "t": [format_float(report.t) for report in reports],
            "score": [str(report.score) for report in reports],
        },
        columns=list(DISCOMFORT_COLUMNS),
    )
    df.to_csv(fname, index=False, lineterminator="\n", encoding="utf-8")
