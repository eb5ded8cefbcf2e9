from __future__ import annotations  # c.f. PEP 563, PEP 649

from typing import TYPE_CHECKING

import numpy as np

from ..utils._checks import check_type
from ..utils.logs import warn

if TYPE_CHECKING:
    from typing import Any

    from .._typing import ScalarFloatArray


class Scaler:
    """Min-max scaler mapping the training range of each feature to ``[0, 1]``.

    Parameters
    ----------
    data_min : array-like of shape (n_features,)
        Minimum of each feature on the training data.
    data_max : array-like of shape (n_features,)
        Maximum of each feature on the training data.
    """

    def __init__(self, data_min: Any, data_max: Any) -> None:
        data_min = np.array(data_min, dtype=np.float64).reshape(-1)
        data_max = np.array(data_max, dtype=np.float64).reshape(-1)
        if data_min.shape != data_max.shape:
            raise ValueError(
                "The minimum and maximum must have the same number of features, got "
                f"{data_min.size} and {data_max.size}."
            )
        if not (np.isfinite(data_min).all() and np.isfinite(data_max).all()):
            raise ValueError("The scaler bounds must be finite.")
        if np.any(data_max < data_min):
            raise ValueError(
                f"The maximum must be greater or equal to the minimum, got "
                f"{data_min} and {data_max}."
            )
        self.data_min = data_min
        self.data_max = data_max

    def __repr__(self) -> str:
        return f"<Scaler | {self.n_features} feature(s)>"

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, Scaler):
            return False
        return np.array_equal(self.data_min, other.data_min) and np.array_equal(
            self.data_max, other.data_max
        )

    @property
    def n_features(self) -> int:
        """Number of features."""
        return self.data_min.size

    @property
    def constant(self) -> np.ndarray:
        """Mask of the features which were constant on the training data."""
        return self.data_max == self.data_min

    def transform(self, values: Any) -> ScalarFloatArray:
        """Scale values to ``[0, 1]``.

        Values outside of the training range are clipped. Constant features map to
        ``0.5``.

        Parameters
        ----------
        values : array-like of shape (n_features,) or (n_samples, n_features)
            The values to scale.

        Returns
        -------
        scaled : array
            The scaled values, with the same shape as the input.
        """
        values = self._check_values(values)
        span = np.where(self.constant, 1.0, self.data_max - self.data_min)
        scaled = np.clip((values - self.data_min) / span, 0.0, 1.0)
        return np.where(self.constant, 0.5, scaled)

    def inverse_transform(self, scaled: Any) -> ScalarFloatArray:
        """Map scaled values back to the original units.

        Parameters
        ----------
        scaled : array-like of shape (n_features,) or (n_samples, n_features)
            The scaled values.

        Returns
        -------
        values : array
            The values in the original units. Constant features map to their
            training value.
        """
        scaled = self._check_values(scaled)
        return self.data_min + scaled * (self.data_max - self.data_min)

    def _check_values(self, values: Any) -> ScalarFloatArray:
        values = np.asarray(values, dtype=np.float64)
        if values.shape[-1:] != (self.n_features,):
            raise ValueError(
                f"The scaler expects {self.n_features} feature(s), got an array of "
                f"shape {values.shape}."
            )
        return values

    def to_dict(self) -> dict[str, list[float]]:
        """Return the bounds as a JSON-serializable dictionary."""
        return dict(min=self.data_min.tolist(), max=self.data_max.tolist())

    @classmethod
    def from_dict(cls, bounds: dict[str, Any]) -> Scaler:
        """Create a scaler from the dictionary returned by :meth:`to_dict`."""
        check_type(bounds, (dict,), "bounds")
        return cls(bounds["min"], bounds["max"])


def fit_scaler(samples: Any) -> Scaler:
    """Fit a min-max scaler on training data.

    Parameters
    ----------
    samples : array-like of shape (n_samples, n_features) or (n_samples,)
        The training data. A 1D array is a single feature.

    Returns
    -------
    scaler : Scaler
        The fitted scaler.
    """
    samples = np.asarray(samples, dtype=np.float64)
    if samples.ndim == 1:
        samples = samples[:, np.newaxis]
    if samples.ndim != 2 or samples.shape[0] == 0:
        raise ValueError(
            "A scaler requires at least one sample, provided as an array of shape "
            f"(n_samples, n_features), got {samples.shape}."
        )
    if not np.isfinite(samples).all():
        raise ValueError("The training data of a scaler must be finite.")
    scaler = Scaler(samples.min(axis=0), samples.max(axis=0))
    if scaler.constant.any():
        warn(
            f"Feature(s) {np.flatnonzero(scaler.constant).tolist()} are constant on "
            "the training data and are scaled to 0.5."
        )
    return scaler


def apply_scaler(scaler: Scaler, features: Any) -> ScalarFloatArray:
    """Scale features with a fitted scaler.

    Parameters
    ----------
    scaler : Scaler
        The fitted scaler.
    features : array-like of shape (n_features,) or (n_samples, n_features)
        The values to scale.

    Returns
    -------
    scaled : array
        The values mapped to ``[0, 1]``.
    """
    check_type(scaler, (Scaler,), "scaler")
    return scaler.transform(features)
