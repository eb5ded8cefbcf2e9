from __future__ import annotations  # c.f. PEP 563, PEP 649

import math
from dataclasses import asdict, dataclass
from typing import TYPE_CHECKING, NamedTuple

import numpy as np

from ..utils._checks import check_type, ensure_finite, ensure_int
from ..utils._docs import fill_doc
from ..utils.logs import logger, verbose, warn
from .network import Network, _check_input, sgd_step

if TYPE_CHECKING:
    from collections.abc import Sequence
    from typing import Any, Optional, Union

LABELS: tuple[str, ...] = ("lower", "same", "higher")


@dataclass(frozen=True)
class TrainingConfig:
    """Parameters of the network training.

    Parameters
    ----------
    learning_rate : float
        Step of the per-sample gradient descent. ``0`` leaves the network unchanged.
    epochs : int
        Number of passes over the training set.
    seed : int
        Seed of the shuffling and of the train/test split.
    split_fraction : float
        Share of the samples used for training, in ``(0, 1)``.
    """

    learning_rate: float = 0.1
    epochs: int = 2000
    seed: int = 0
    split_fraction: float = 0.7

    def __post_init__(self) -> None:
        learning_rate = ensure_finite(self.learning_rate, "learning_rate")
        if learning_rate < 0:
            raise ValueError(
                f"The learning rate must be positive, got {learning_rate} instead."
            )
        object.__setattr__(self, "learning_rate", learning_rate)
        epochs = ensure_int(self.epochs, "epochs")
        if epochs < 1:
            raise ValueError(f"The number of epochs must be >= 1, got {epochs}.")
        object.__setattr__(self, "epochs", epochs)
        object.__setattr__(self, "seed", ensure_int(self.seed, "seed"))
        _check_fraction(self.split_fraction)
        object.__setattr__(self, "split_fraction", float(self.split_fraction))

    def to_dict(self) -> dict[str, Any]:
        """Return the configuration as a JSON-serializable dictionary."""
        return asdict(self)


def _check_fraction(fraction: Any) -> float:
    fraction = ensure_finite(fraction, "fraction")
    if not 0 < fraction < 1:
        raise ValueError(
            f"The split fraction must be strictly between 0 and 1, got {fraction}."
        )
    return fraction


class LabeledSample(NamedTuple):
    """Network input with its target.

    Attributes
    ----------
    features : tuple of float
        The pair ``(C_w, delta C_w)``, scaled or not depending on the context.
    target : float | str
        Change in Discomfort Score (regression) or direction label (classifier).
    """

    features: tuple[float, ...]
    target: Union[float, str]


class TrainingHistory(NamedTuple):
    """Trained network and mean loss of each epoch."""

    net: Network
    losses: list[float]


@fill_doc
def split_samples(
    samples: Sequence[Any], fraction: float, seed: int
) -> tuple[list[Any], list[Any]]:
    """Shuffle and split samples between a training and a test set.

    Parameters
    ----------
    samples : sequence
        The samples, at least 2.
    fraction : float
        Share of the samples in the training set, in ``(0, 1)``. The size of the
        training set is rounded and clipped so that both sets are non-empty.
    %(seed)s

    Returns
    -------
    train : list
        The training set.
    test : list
        The test set.
    """
    fraction = _check_fraction(fraction)
    samples = list(samples)
    if len(samples) < 2:
        raise ValueError(
            f"At least 2 samples are required to split them, got {len(samples)}."
        )
    rng = np.random.default_rng(ensure_int(seed, "seed"))
    order = rng.permutation(len(samples))
    n_train = min(max(int(round(fraction * len(samples))), 1), len(samples) - 1)
    return (
        [samples[k] for k in order[:n_train]],
        [samples[k] for k in order[n_train:]],
    )


def _encode_target(net: Network, target: Union[float, str]) -> Union[float, int]:
    if net.head == "classifier":
        if target not in LABELS:
            raise ValueError(
                f"Unknown direction label {target!r}, expected one of {LABELS}."
            )
        return LABELS.index(target)
    return ensure_finite(target, "target")


@verbose
def train(
    net: Network,
    samples: Sequence[LabeledSample],
    cfg: TrainingConfig,
    *,
    verbose: Optional[Union[bool, str, int]] = None,
) -> TrainingHistory:
    """Train a network with per-sample gradient descent.

    Parameters
    ----------
    net : Network
        The initial network, left unchanged.
    samples : sequence of LabeledSample
        The training set with scaled features, and scaled targets for the
        regression head. At least 2 samples are required.
    cfg : TrainingConfig
        The training parameters.
    verbose : int | str | bool | None
        Sets the verbosity level.

    Returns
    -------
    history : TrainingHistory
        The trained network and the mean loss of each epoch.
    """
    check_type(net, (Network,), "net")
    check_type(cfg, (TrainingConfig,), "cfg")
    samples = list(samples)
    if len(samples) < 2:
        raise ValueError(
            f"At least 2 samples are required to train a network, got {len(samples)}."
        )
    xs = [_check_input(net, sample.features) for sample in samples]
    ys = [_encode_target(net, sample.target) for sample in samples]
    if cfg.learning_rate == 0:
        warn("The learning rate is 0, the network will not be updated.")
    trained = net.copy()
    rng = np.random.default_rng(cfg.seed)
    losses = list()
    for epoch in range(cfg.epochs):
        epoch_losses = [
            sgd_step(trained, xs[k], ys[k], cfg.learning_rate)
            for k in rng.permutation(len(samples))
        ]
        # fsum is exact, the epoch loss does not depend on the shuffling order
        losses.append(math.fsum(epoch_losses) / len(samples))
        if epoch % 500 == 0:
            logger.debug("Epoch %i: loss %.6f", epoch, losses[-1])
    logger.info(
        "Trained %s on %i sample(s) for %i epoch(s), final loss %.6f.",
        trained,
        len(samples),
        cfg.epochs,
        losses[-1],
    )
    return TrainingHistory(trained, losses)
