"""Agreement between the reported and the predicted Discomfort Score curves."""

from __future__ import annotations  # c.f. PEP 563, PEP 649

from typing import TYPE_CHECKING

import numpy as np
from scipy.integrate import trapezoid
from scipy.stats import rankdata

from ..utils._checks import check_type
from .confusion import ConfusionMatrix, confusion

if TYPE_CHECKING:
    from collections.abc import Sequence
    from typing import Any, Optional

    from .._typing import ScalarFloatArray


class CurvePair:
    """Reported and predicted Discomfort Scores sampled at the same times.

    Parameters
    ----------
    times : array-like of shape (n_times,)
        Timestamps in seconds, strictly increasing.
    reported : array-like of shape (n_times,)
        Reported scores.
    predicted : array-like of shape (n_times,)
        Predicted scores.
    """

    def __init__(self, times: Any, reported: Any, predicted: Any) -> None:
        self.times = _as_vector(times, "times")
        self.reported = _as_vector(reported, "reported")
        self.predicted = _as_vector(predicted, "predicted")
        if not self.times.size == self.reported.size == self.predicted.size:
            raise ValueError(
                "The times, reported and predicted scores must have the same length, "
                f"got {self.times.size}, {self.reported.size} and "
                f"{self.predicted.size}."
            )
        if self.times.size < 2:
            raise ValueError("A pair of curves requires at least 2 samples.")
        if np.any(np.diff(self.times) <= 0):
            raise ValueError("The times of the curves must be strictly increasing.")

    def __repr__(self) -> str:
        return f"<CurvePair | {self.times.size} samples>"

    def __len__(self) -> int:
        return self.times.size


def _as_vector(values: Any, name: str) -> ScalarFloatArray:
    values = np.asarray(values, dtype=np.float64)
    if values.ndim != 1:
        raise ValueError(f"'{name}' must be one-dimensional, got shape {values.shape}.")
    if not np.isfinite(values).all():
        raise ValueError(f"'{name}' must contain only finite values.")
    return values


def _check_pair(xs: Any, ys: Any, min_length: int) -> tuple[ScalarFloatArray, ...]:
    xs, ys = _as_vector(xs, "xs"), _as_vector(ys, "ys")
    if xs.size != ys.size:
        raise ValueError(
            f"Both samples must have the same length, got {xs.size} and {ys.size}."
        )
    if xs.size < min_length:
        raise ValueError(f"At least {min_length} values are required, got {xs.size}.")
    return xs, ys


def pearson(xs: Any, ys: Any) -> float:
    """Pearson product-moment correlation coefficient.

    Parameters
    ----------
    xs, ys : array-like of shape (n,)
        The two samples, at least 2 values each.

    Returns
    -------
    r : float
        The correlation, in ``[-1, 1]``.
    """
    xs, ys = _check_pair(xs, ys, 2)
    dx, dy = xs - xs.mean(), ys - ys.mean()
    norm = np.sqrt(np.dot(dx, dx) * np.dot(dy, dy))
    if norm == 0:
        raise ValueError("The correlation of a constant sample is undefined.")
    return float(np.clip(np.dot(dx, dy) / norm, -1.0, 1.0))


def spearman(xs: Any, ys: Any) -> float:
    """Spearman rank correlation coefficient.

    Tied values receive the average of their ranks.

    Parameters
    ----------
    xs, ys : array-like of shape (n,)
        The two samples, at least 3 values each.

    Returns
    -------
    rho : float
        The Pearson correlation of the ranks, in ``[-1, 1]``.
    """
    xs, ys = _check_pair(xs, ys, 3)
    return pearson(rankdata(xs, method="average"), rankdata(ys, method="average"))


def curve_area_error(pair: CurvePair) -> float:
    """Area between the reported and predicted curves relative to the reported area.

    Parameters
    ----------
    pair : CurvePair
        The reported and predicted curves.

    Returns
    -------
    error : float
        Trapezoidal integral of ``|reported - predicted|`` divided by the
        trapezoidal integral of the reported curve.
    """
    check_type(pair, (CurvePair,), "pair")
    reported_area = trapezoid(pair.reported, pair.times)
    if reported_area <= 0:
        raise ValueError(
            "The area under the reported curve must be strictly positive, got "
            f"{reported_area}."
        )
    gap = trapezoid(np.abs(pair.reported - pair.predicted), pair.times)
    return float(gap / reported_area)


def mean_point_diff(pair: CurvePair, signed: bool = False) -> float:
    """Mean difference between the predicted and the reported scores.

    Parameters
    ----------
    pair : CurvePair
        The reported and predicted curves.
    signed : bool
        If True, the mean of ``predicted - reported``, else the mean of its absolute
        value.

    Returns
    -------
    diff : float
        The mean difference in Discomfort Score units.
    """
    check_type(pair, (CurvePair,), "pair")
    diff = pair.predicted - pair.reported
    return float(np.mean(diff if signed else np.abs(diff)))


def _safe_correlation(func, xs: ScalarFloatArray, ys: ScalarFloatArray):
    try:
        return func(xs, ys)
    except ValueError:
        return None


def evaluation_report(
    pair: Optional[CurvePair] = None,
    labels: Optional[Sequence[str]] = None,
    predictions: Optional[Sequence[str]] = None,
) -> dict[str, Any]:
    """Gather the metrics of an evaluation in a JSON-serializable dictionary.

    Parameters
    ----------
    pair : CurvePair | None
        The reported and predicted score curves.
    labels : sequence of str | None
        Actual direction labels, compared with ``predictions``.
    predictions : sequence of str | None
        Predicted direction labels.

    Returns
    -------
    report : dict
        The keys ``spearman``, ``pearson``, ``area_error``, ``mean_abs_point_diff``
        and ``mean_signed_point_diff`` are set from the curves, the key
        ``confusion`` from the labels. An undefined metric is None.
    """
    if pair is None and labels is None:
        raise ValueError("Provide score curves, direction labels or both.")
    if (labels is None) != (predictions is None):
        raise ValueError("The labels and the predictions must be provided together.")
    report: dict[str, Any] = dict()
    if pair is not None:
        check_type(pair, (CurvePair,), "pair")
        report["spearman"] = (
            _safe_correlation(spearman, pair.reported, pair.predicted)
            if len(pair) >= 3
            else None
        )
        report["pearson"] = _safe_correlation(pearson, pair.reported, pair.predicted)
        try:
            report["area_error"] = curve_area_error(pair)
        except ValueError:
            report["area_error"] = None
        report["mean_abs_point_diff"] = mean_point_diff(pair)
        report["mean_signed_point_diff"] = mean_point_diff(pair, signed=True)
    if labels is not None:
        matrix: ConfusionMatrix = confusion(labels, predictions)
        report["confusion"] = matrix.to_dict()
    return report
