"""Per-user model: alignment of windows with reports, fitting and prediction."""

from __future__ import annotations  # c.f. PEP 563, PEP 649

import json
from typing import TYPE_CHECKING, NamedTuple

import numpy as np

from .._version import __version__
from ..compression import CompressionConfig, WindowFeature
from ..utils._checks import check_type, check_value, ensure_int, ensure_path
from ..utils._docs import fill_doc
from ..utils.logs import logger, verbose
from .network import HEADS, Network, forward, init_network, loss
from .scaler import Scaler, fit_scaler
from .training import (
    LABELS,
    LabeledSample,
    TrainingConfig,
    TrainingHistory,
    split_samples,
    train,
)

if TYPE_CHECKING:
    from collections.abc import Sequence
    from pathlib import Path
    from typing import Any, Optional, Union

    from .._typing import ScalarFloatArray
    from ..trajectory import DiscomfortReport

MODEL_FORMAT: str = "trajsick-model"
MODEL_VERSION: int = 1


class UserModel:
    """Network trained on the sessions of a single user, with its scalers.

    Parameters
    ----------
    net : Network
        The trained network.
    input_scaler : Scaler
        Scaler of the ``(C_w, delta C_w)`` inputs fitted on the training set.
    target_scaler : Scaler | None
        Scaler of the change in Discomfort Score fitted on the training set. Required
        for the regression head, None for the classifier head.
    user : str
        Identifier of the user.
    compression : CompressionConfig
        Compression parameters used to compute the training features.
    window_s : float
        Window duration used to compute the training features.
    training : TrainingConfig
        Training parameters.
    """

    def __init__(
        self,
        net: Network,
        input_scaler: Scaler,
        target_scaler: Optional[Scaler] = None,
        *,
        user: str = "",
        compression: Optional[CompressionConfig] = None,
        window_s: float = 120.0,
        training: Optional[TrainingConfig] = None,
    ) -> None:
        check_type(net, (Network,), "net")
        check_type(input_scaler, (Scaler,), "input_scaler")
        check_type(target_scaler, (Scaler, None), "target_scaler")
        if input_scaler.n_features != net.n_inputs:
            raise ValueError(
                f"The input scaler has {input_scaler.n_features} feature(s) while the "
                f"network expects {net.n_inputs} input(s)."
            )
        if net.head == "regression" and target_scaler is None:
            raise ValueError("The regression head requires a target scaler.")
        self.net = net
        self.input_scaler = input_scaler
        self.target_scaler = target_scaler if net.head == "regression" else None
        self.user = str(user)
        self.compression = CompressionConfig() if compression is None else compression
        self.window_s = float(window_s)
        self.training = TrainingConfig() if training is None else training

    def __repr__(self) -> str:
        return f"<UserModel '{self.user}' | {self.net}>"

    @property
    def head(self) -> str:
        """Type of output layer of the network."""
        return self.net.head

    def _check_head(self, head: str) -> None:
        if self.head != head:
            raise ValueError(
                f"The model has a {self.head} head while a {head} head is required."
            )

    def _scaled_input(self, feature: WindowFeature) -> ScalarFloatArray:
        return self.input_scaler.transform(np.array([feature.rate, feature.delta]))


def _label(change: float) -> str:
    """Direction label of a change in Discomfort Score."""
    return LABELS[int(np.sign(change)) + 1]


def build_samples(
    features: Sequence[WindowFeature],
    reports: Sequence[DiscomfortReport],
    head: str = "regression",
) -> list[LabeledSample]:
    """Pair each window with the change of Discomfort Score over it.

    The reports must sit on the window grid: report ``k`` at the start of window
    ``k`` and the last report at the end of the last window, within half a window.

    Parameters
    ----------
    features : sequence of WindowFeature
        The window features of a session.
    reports : sequence of DiscomfortReport
        The reports of the same session, one more than the number of windows.
    head : ``'regression'`` | ``'classifier'``
        Regression samples target the change in score, classifier samples target
        the direction label.

    Returns
    -------
    samples : list of LabeledSample
        One sample per window with a defined change in compression rate, with
        unscaled features.
    """
    check_value(head, HEADS, "head")
    features, reports = list(features), list(reports)
    if len(features) == 0:
        raise ValueError("At least one window is required to build samples.")
    if len(reports) != len(features) + 1:
        raise ValueError(
            f"Misaligned window grid: {len(features)} window(s) require "
            f"{len(features) + 1} reports, got {len(reports)}."
        )
    boundaries = [feature.t0 for feature in features] + [features[-1].t1]
    tol = (features[0].t1 - features[0].t0) / 2
    for k, (report, boundary) in enumerate(zip(reports, boundaries)):
        if tol < abs(report.t - boundary):
            raise ValueError(
                f"Misaligned window grid: report {k} at t={report.t} s does not match "
                f"the window boundary at t={boundary} s."
            )
    samples = list()
    for feature, before, after in zip(features, reports[:-1], reports[1:]):
        if not feature.has_delta:
            logger.debug(
                "Window %i is skipped, its change in compression rate is undefined.",
                feature.window_index,
            )
            continue
        change = float(after.score - before.score)
        target = change if head == "regression" else _label(change)
        samples.append(LabeledSample((feature.rate, feature.delta), target))
    return samples


class FitResult(NamedTuple):
    """Outcome of :func:`fit_user_model`."""

    model: UserModel
    history: TrainingHistory
    train_samples: list[LabeledSample]
    test_samples: list[LabeledSample]
    train_loss: float
    test_loss: float


def _scale_samples(
    samples: Sequence[LabeledSample],
    input_scaler: Scaler,
    target_scaler: Optional[Scaler],
) -> list[LabeledSample]:
    scaled = list()
    for sample in samples:
        x = tuple(input_scaler.transform(np.array(sample.features)).tolist())
        target = sample.target
        if target_scaler is not None:
            target = float(target_scaler.transform(np.array([target]))[0])
        scaled.append(LabeledSample(x, target))
    return scaled


def _mean_loss(net: Network, samples: Sequence[LabeledSample]) -> float:
    if len(samples) == 0:
        return float("nan")
    values = [
        loss(net, s.features, s.target)
        if net.head == "regression"
        else loss(net, s.features, LABELS.index(s.target))
        for s in samples
    ]
    return float(np.mean(values))


@verbose
def fit_user_model(
    samples: Sequence[LabeledSample],
    *,
    hidden: Union[int, Sequence[int]] = 4,
    head: str = "regression",
    cfg: Optional[TrainingConfig] = None,
    user: str = "",
    compression: Optional[CompressionConfig] = None,
    window_s: float = 120.0,
    verbose: Optional[Union[bool, str, int]] = None,
) -> FitResult:
    """Split, scale and train a per-user model.

    Parameters
    ----------
    samples : sequence of LabeledSample
        Unscaled samples of all the training sessions of the user, see
        :func:`build_samples`.
    hidden : int | sequence of int
        Number of units of the hidden layer(s).
    head : ``'regression'`` | ``'classifier'``
        Type of output layer.
    cfg : TrainingConfig | None
        Training parameters. None uses the defaults.
    user : str
        Identifier of the user.
    compression : CompressionConfig | None
        Compression parameters used to compute the features, stored as provenance.
    window_s : float
        Window duration used to compute the features, stored as provenance.
    verbose : int | str | bool | None
        Sets the verbosity level.

    Returns
    -------
    result : FitResult
        The model, the training history, the unscaled train/test sets and the mean
        loss on each set.
    """
    check_value(head, HEADS, "head")
    cfg = TrainingConfig() if cfg is None else cfg
    check_type(cfg, (TrainingConfig,), "cfg")
    hidden = [hidden] if isinstance(hidden, (int, np.integer)) else list(hidden)
    train_set, test_set = split_samples(samples, cfg.split_fraction, cfg.seed)
    if len(train_set) < 2:
        raise ValueError(
            f"At least 2 samples are required to train a network, got {len(train_set)} "
            f"in the training split of {len(samples)} samples."
        )
    input_scaler = fit_scaler([sample.features for sample in train_set])
    target_scaler = None
    if head == "regression":
        target_scaler = fit_scaler([sample.target for sample in train_set])
    net = init_network(
        [input_scaler.n_features, *hidden, 1 if head == "regression" else len(LABELS)],
        seed=cfg.seed,
        head=head,
    )
    scaled_train = _scale_samples(train_set, input_scaler, target_scaler)
    history = train(net, scaled_train, cfg)
    model = UserModel(
        history.net,
        input_scaler,
        target_scaler,
        user=user,
        compression=compression,
        window_s=window_s,
        training=cfg,
    )
    train_loss = _mean_loss(model.net, scaled_train)
    test_loss = _mean_loss(
        model.net, _scale_samples(test_set, input_scaler, target_scaler)
    )
    logger.info(
        "Model of user '%s': %i train / %i test samples, loss %.6f / %.6f.",
        user,
        len(train_set),
        len(test_set),
        train_loss,
        test_loss,
    )
    return FitResult(model, history, train_set, test_set, train_loss, test_loss)


@fill_doc
def predict_delta(model: UserModel, feature: WindowFeature) -> Optional[float]:
    """Predict the change in Discomfort Score over a window.

    Parameters
    ----------
    %(model)s
        It must have a regression head.
    %(feature)s

    Returns
    -------
    delta : float | None
        Predicted change in Discomfort Score, None if the change in compression rate
        of the window is undefined.
    """
    check_type(model, (UserModel,), "model")
    check_type(feature, (WindowFeature,), "feature")
    model._check_head("regression")
    if not feature.has_delta:
        return None
    output = forward(model.net, model._scaled_input(feature))
    return float(model.target_scaler.inverse_transform(np.array([output]))[0])


def direction_from_probabilities(probabilities: Any) -> str:
    """Direction label with the highest probability, ties broken toward ``'same'``.

    Parameters
    ----------
    probabilities : array-like of shape (3,)
        Probabilities of ``'lower'``, ``'same'`` and ``'higher'``.

    Returns
    -------
    label : str
        The most probable direction.
    """
    probabilities = np.asarray(probabilities, dtype=np.float64).reshape(-1)
    if probabilities.size != len(LABELS):
        raise ValueError(
            f"Expected {len(LABELS)} class probabilities, got {probabilities.size}."
        )
    best = np.flatnonzero(probabilities == probabilities.max())
    if LABELS.index("same") in best:
        return "same"
    return LABELS[int(best[0])]


@fill_doc
def classify_direction(
    model: UserModel, feature: WindowFeature
) -> Optional[tuple[str, ScalarFloatArray]]:
    """Classify the direction of the change in Discomfort Score over a window.

    Parameters
    ----------
    %(model)s
        It must have a classifier head.
    %(feature)s

    Returns
    -------
    label : str
        One of ``'lower'``, ``'same'`` and ``'higher'``.
    probabilities : array of shape (3,)
        The class probabilities.

    Notes
    -----
    None is returned instead of the tuple if the change in compression rate of the
    window is undefined.
    """
    check_type(model, (UserModel,), "model")
    check_type(feature, (WindowFeature,), "feature")
    model._check_head("classifier")
    if not feature.has_delta:
        return None
    probabilities = forward(model.net, model._scaled_input(feature))
    return direction_from_probabilities(probabilities), probabilities


@fill_doc
def reconstruct_scores(
    anchor: float, deltas: Sequence[Optional[float]]
) -> ScalarFloatArray:
    """Cumulate predicted changes into a Discomfort Score curve.

    Parameters
    ----------
    %(anchor)s
    deltas : sequence of float | None
        Predicted change of each window. An undefined change counts as 0.

    Returns
    -------
    scores : array of shape (n_windows + 1,)
        The anchor followed by the score at the end of each window.
    """
    increments = [0.0 if delta is None else float(delta) for delta in deltas]
    return np.concatenate(([float(anchor)], float(anchor) + np.cumsum(increments)))


class SessionPrediction(NamedTuple):
    """Predicted Discomfort Score curve of a session."""

    times: ScalarFloatArray
    deltas: list[Optional[float]]
    scores: ScalarFloatArray


@fill_doc
def predict_session(
    model: UserModel, features: Sequence[WindowFeature], anchor: float = 0.0
) -> SessionPrediction:
    """Predict the Discomfort Score curve of a session from its window features.

    The reported scores are never used, the curve starts at the anchor.

    Parameters
    ----------
    %(model)s
    features : sequence of WindowFeature
        The window features of the session, in order.
    %(anchor)s

    Returns
    -------
    prediction : SessionPrediction
        Times of the window boundaries, predicted change of each window and the
        reconstructed curve at each boundary.
    """
    features = list(features)
    if len(features) == 0:
        return SessionPrediction(np.array([]), [], np.array([float(anchor)]))
    deltas = [predict_delta(model, feature) for feature in features]
    times = np.array([features[0].t0] + [feature.t1 for feature in features])
    return SessionPrediction(times, deltas, reconstruct_scores(anchor, deltas))


def model_to_dict(model: UserModel) -> dict[str, Any]:
    """Convert a model to a JSON-serializable dictionary."""
    check_type(model, (UserModel,), "model")
    return {
        "format": MODEL_FORMAT,
        "version": MODEL_VERSION,
        "user": model.user,
        "head": model.head,
        "layer_sizes": list(model.net.layer_sizes),
        "hidden_activation": model.net.hidden_activation,
        "weights": [w.tolist() for w in model.net.weights],
        "biases": [b.tolist() for b in model.net.biases],
        "input_scaler": model.input_scaler.to_dict(),
        "target_scaler": None
        if model.target_scaler is None
        else model.target_scaler.to_dict(),
        "compression": {**model.compression.to_dict(), "window_s": model.window_s},
        "training": model.training.to_dict(),
        "package_version": __version__,
    }


def model_from_dict(content: dict[str, Any]) -> UserModel:
    """Create a model from the dictionary returned by :func:`model_to_dict`."""
    check_type(content, (dict,), "content")
    if content.get("format") != MODEL_FORMAT:
        raise ValueError(
            f"Unknown model format {content.get('format')!r}, expected "
            f"{MODEL_FORMAT!r}."
        )
    version = ensure_int(content.get("version", -1), "version")
    if version != MODEL_VERSION:
        raise ValueError(
            f"Unsupported model version {version}, only version {MODEL_VERSION} can "
            "be read."
        )
    try:
        net = Network(
            content["layer_sizes"],
            content["weights"],
            content["biases"],
            content["head"],
        )
        compression = dict(content["compression"])
        window_s = compression.pop("window_s")
        target_scaler = content["target_scaler"]
        return UserModel(
            net,
            Scaler.from_dict(content["input_scaler"]),
            None if target_scaler is None else Scaler.from_dict(target_scaler),
            user=content["user"],
            compression=CompressionConfig(**compression),
            window_s=window_s,
            training=TrainingConfig(**content["training"]),
        )
    except KeyError as error:
        raise ValueError(f"The model description is missing the key {error}.")


def save_model(model: UserModel, fname: Union[str, Path]) -> None:
    """Save a model to a versioned JSON file.

    Parameters
    ----------
    model : UserModel
        The model to save.
    fname : path-like
        Path to the JSON file, overwritten if it exists.
    """
    fname = ensure_path(fname, must_exist=False)
    # floats are written with their shortest round-trip representation
    content = json.dumps(model_to_dict(model), indent=2, sort_keys=True) + "\n"
    with open(fname, "w", encoding="utf-8", newline="\n") as fid:
        fid.write(content)


def load_model(fname: Union[str, Path]) -> UserModel:
    """Load a model saved with :func:`save_model`.

    Parameters
    ----------
    fname : path-like
        Path to the JSON file.

    Returns
    -------
    model : UserModel
        The model.
    """
    fname = ensure_path(fname, must_exist=True)
    with open(fname, encoding="utf-8") as fid:
        try:
            content = json.load(fid)
        except json.JSONDecodeError as error:
            raise ValueError(f"The model file '{fname}' is not valid JSON: {error}")
    return model_from_dict(content)
