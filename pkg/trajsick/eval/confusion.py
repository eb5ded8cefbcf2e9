from __future__ import annotations  # c.f. PEP 563, PEP 649

from typing import TYPE_CHECKING

import numpy as np
import pandas as pd

from ..predictor import LABELS

if TYPE_CHECKING:
    from collections.abc import Sequence
    from typing import Any, Optional


class ConfusionMatrix:
    """Counts of actual against predicted direction labels.

    Parameters
    ----------
    counts : array-like of shape (3, 3)
        ``counts[i, j]`` is the number of samples of actual label ``LABELS[i]``
        predicted as ``LABELS[j]``, with ``LABELS = ('lower', 'same', 'higher')``.
    """

    def __init__(self, counts: Any) -> None:
        counts = np.asarray(counts)
        if counts.shape != (len(LABELS), len(LABELS)):
            raise ValueError(
                f"The confusion counts must have the shape {(len(LABELS),) * 2}, got "
                f"{counts.shape}."
            )
        if not np.issubdtype(counts.dtype, np.integer) or np.any(counts < 0):
            raise ValueError("The confusion counts must be non-negative integers.")
        self.counts = counts.astype(np.int64)

    def __repr__(self) -> str:
        return f"<ConfusionMatrix | {self.total} samples, accuracy {self.accuracy:.3f}>"

    @property
    def total(self) -> int:
        """Number of samples."""
        return int(self.counts.sum())

    @property
    def class_accuracy(self) -> dict[str, Optional[float]]:
        """Share of correct predictions of each actual label, None without sample."""
        rows = self.counts.sum(axis=1)
        return {
            label: None if rows[k] == 0 else float(self.counts[k, k] / rows[k])
            for k, label in enumerate(LABELS)
        }

    @property
    def accuracy(self) -> float:
        """Share of correct predictions over all samples."""
        if self.total == 0:
            return float("nan")
        return float(np.trace(self.counts) / self.total)

    def to_dict(self) -> dict[str, Any]:
        """Return the counts and accuracies as a JSON-serializable dictionary."""
        return {
            "labels": list(LABELS),
            "counts": self.counts.tolist(),
            "class_accuracy": self.class_accuracy,
            "accuracy": self.accuracy,
        }


def confusion(labels: Sequence[str], predictions: Sequence[str]) -> ConfusionMatrix:
    """Count actual against predicted direction labels.

    Parameters
    ----------
    labels : sequence of str
        The actual labels, among ``'lower'``, ``'same'`` and ``'higher'``.
    predictions : sequence of str
        The predicted labels, in the same order.

    Returns
    -------
    matrix : ConfusionMatrix
        The confusion counts.
    """
    labels, predictions = list(labels), list(predictions)
    if len(labels) != len(predictions):
        raise ValueError(
            f"The labels and predictions must have the same length, got "
            f"{len(labels)} and {len(predictions)}."
        )
    if len(labels) == 0:
        raise ValueError("At least one label is required.")
    unknown = sorted(set(labels + predictions) - set(LABELS), key=str)
    if len(unknown) != 0:
        raise ValueError(
            f"Unknown direction label {unknown[0]!r}, expected one of {LABELS}."
        )
    # labels absent from both sequences are filled with zero counts
    counts = pd.crosstab(
        pd.Series(labels, dtype=object), pd.Series(predictions, dtype=object)
    ).reindex(index=list(LABELS), columns=list(LABELS), fill_value=0)
    return ConfusionMatrix(counts.to_numpy(dtype=np.int64))
