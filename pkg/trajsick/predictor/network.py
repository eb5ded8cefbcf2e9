"""Small feedforward neural network trained with backpropagation."""

from __future__ import annotations  # c.f. PEP 563, PEP 649

from typing import TYPE_CHECKING

import numpy as np
from scipy.special import expit, log_softmax, softmax

from ..utils._checks import check_type, check_value, ensure_int
from ..utils._docs import fill_doc
from ..utils.logs import logger

if TYPE_CHECKING:
    from collections.abc import Sequence
    from typing import Any, Union

    from .._typing import ScalarFloatArray

HEADS: tuple[str, ...] = ("regression", "classifier")
N_CLASSES: int = 3


class Network:
    """Feedforward network with sigmoid hidden layers.

    The regression head is a sigmoid output trained with the mean squared error. The
    classifier head is a softmax output trained with the cross-entropy.

    Parameters
    ----------
    layer_sizes : sequence of int
        Number of units per layer, from the input to the output layer.
    weights : list of array
        Weight matrix of each layer, of shape ``(n_in, n_out)``.
    biases : list of array
        Bias vector of each layer, of shape ``(n_out,)``.
    head : ``'regression'`` | ``'classifier'``
        Type of output layer.
    """

    hidden_activation: str = "sigmoid"

    def __init__(
        self,
        layer_sizes: Sequence[int],
        weights: Sequence[Any],
        biases: Sequence[Any],
        head: str = "regression",
    ) -> None:
        self.layer_sizes = _check_sizes(layer_sizes, head)
        self.head = head
        self.weights = [np.array(w, dtype=np.float64) for w in weights]
        self.biases = [np.array(b, dtype=np.float64).reshape(-1) for b in biases]
        n_layers = len(self.layer_sizes) - 1
        if len(self.weights) != n_layers or len(self.biases) != n_layers:
            raise ValueError(
                f"A network with {len(self.layer_sizes)} layers requires {n_layers} "
                f"weight matrices and bias vectors, got {len(self.weights)} and "
                f"{len(self.biases)}."
            )
        for k, (w, b) in enumerate(zip(self.weights, self.biases)):
            shape = (self.layer_sizes[k], self.layer_sizes[k + 1])
            if w.shape != shape or b.shape != shape[1:]:
                raise ValueError(
                    f"The parameters of layer {k} must have the shapes {shape} and "
                    f"{shape[1:]}, got {w.shape} and {b.shape}."
                )
            if not (np.isfinite(w).all() and np.isfinite(b).all()):
                raise ValueError(f"The parameters of layer {k} must be finite.")

    def __repr__(self) -> str:
        sizes = "-".join(str(size) for size in self.layer_sizes)
        return f"<Network | {sizes} ({self.head})>"

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, Network):
            return False
        return (
            self.layer_sizes == other.layer_sizes
            and self.head == other.head
            and all(np.array_equal(a, b) for a, b in zip(self.weights, other.weights))
            and all(np.array_equal(a, b) for a, b in zip(self.biases, other.biases))
        )

    def copy(self) -> Network:
        """Return a deep copy of the network."""
        return Network(
            self.layer_sizes,
            [w.copy() for w in self.weights],
            [b.copy() for b in self.biases],
            self.head,
        )

    @property
    def n_inputs(self) -> int:
        """Number of input units."""
        return self.layer_sizes[0]

    @property
    def n_parameters(self) -> int:
        """Total number of weights and biases."""
        return sum(w.size + b.size for w, b in zip(self.weights, self.biases))


def _check_sizes(layer_sizes: Sequence[int], head: str) -> tuple[int, ...]:
    """Validate the layer sizes of a network."""
    check_type(layer_sizes, ("array-like",), "layer_sizes")
    check_value(head, HEADS, "head")
    sizes = tuple(ensure_int(size, "layer size") for size in layer_sizes)
    if len(sizes) < 2:
        raise ValueError(
            f"A network requires at least an input and an output layer, got {sizes}."
        )
    if any(size <= 0 for size in sizes):
        raise ValueError(f"The layer sizes must be strictly positive, got {sizes}.")
    expected = 1 if head == "regression" else N_CLASSES
    if sizes[-1] != expected:
        raise ValueError(
            f"The {head} head requires {expected} output unit(s), got {sizes[-1]}."
        )
    return sizes


@fill_doc
def init_network(
    sizes: Sequence[int], seed: int = 0, head: str = "regression"
) -> Network:
    """Create a network with random weights.

    Parameters
    ----------
    sizes : sequence of int
        Number of units per layer, e.g. ``[2, 4, 1]``.
    %(seed)s
    head : ``'regression'`` | ``'classifier'``
        Type of output layer.

    Returns
    -------
    net : Network
        Network with weights and biases drawn uniformly in ``[-0.5, 0.5]``.
    """
    sizes = _check_sizes(sizes, head)
    rng = np.random.default_rng(ensure_int(seed, "seed"))
    weights, biases = list(), list()
    for n_in, n_out in zip(sizes[:-1], sizes[1:]):
        weights.append(rng.uniform(-0.5, 0.5, size=(n_in, n_out)))
        biases.append(rng.uniform(-0.5, 0.5, size=n_out))
    return Network(sizes, weights, biases, head)


def _activations(net: Network, x: ScalarFloatArray) -> list[ScalarFloatArray]:
    """Activations of every layer, the input included."""
    activations = [x]
    n_layers = len(net.weights)
    for k, (w, b) in enumerate(zip(net.weights, net.biases)):
        z = activations[-1] @ w + b
        if k == n_layers - 1 and net.head == "classifier":
            activations.append(softmax(z))
        else:
            activations.append(expit(z))
    return activations


def _check_input(net: Network, x: Any) -> ScalarFloatArray:
    """Validate an input vector."""
    x = np.asarray(x, dtype=np.float64).reshape(-1)
    if x.size != net.n_inputs:
        raise ValueError(f"The network expects {net.n_inputs} inputs, got {x.size}.")
    if not np.isfinite(x).all():
        raise ValueError(f"The network inputs must be finite, got {x}.")
    return x


def forward(net: Network, x: Any) -> Union[float, ScalarFloatArray]:
    """Propagate an input through the network.

    Parameters
    ----------
    net : Network
        The network.
    x : array-like of shape (n_inputs,)
        The scaled input.

    Returns
    -------
    output : float | array of shape (3,)
        The regression output in ``(0, 1)`` or the class probabilities.
    """
    check_type(net, (Network,), "net")
    output = _activations(net, _check_input(net, x))[-1]
    return float(output[0]) if net.head == "regression" else output


def _loss_from_output(net: Network, output: ScalarFloatArray, y: Any) -> float:
    """Loss of a single sample given the network output."""
    if net.head == "regression":
        return float(np.mean((output - y) ** 2))
    return float(-np.log(max(output[int(y)], np.finfo(np.float64).tiny)))


def loss(net: Network, x: Any, y: Any) -> float:
    """Loss of the network on a single sample.

    Parameters
    ----------
    net : Network
        The network.
    x : array-like of shape (n_inputs,)
        The scaled input.
    y : float | int
        The scaled regression target or the class index.

    Returns
    -------
    loss : float
        The squared error for the regression head, the cross-entropy for the
        classifier head.
    """
    x = _check_input(net, x)
    if net.head == "classifier":
        # log-softmax is more accurate than the log of the probabilities
        hidden = _activations(net, x)[-2]
        z = hidden @ net.weights[-1] + net.biases[-1]
        return float(-log_softmax(z)[int(y)])
    return _loss_from_output(net, _activations(net, x)[-1], y)


def _backward(
    net: Network, x: ScalarFloatArray, y: Any
) -> tuple[float, list[ScalarFloatArray], list[ScalarFloatArray]]:
    """Loss and gradients of the loss with respect to every parameter."""
    activations = _activations(net, x)
    output = activations[-1]
    if net.head == "regression":
        delta = 2 * (output - y) / output.size * output * (1 - output)
    else:
        delta = output.copy()
        delta[int(y)] -= 1
    grad_w = [np.empty(0)] * len(net.weights)
    grad_b = [np.empty(0)] * len(net.biases)
    for k in range(len(net.weights) - 1, -1, -1):
        grad_w[k] = np.outer(activations[k], delta)
        grad_b[k] = delta
        if k != 0:
            a = activations[k]
            delta = (net.weights[k] @ delta) * a * (1 - a)
    return _loss_from_output(net, output, y), grad_w, grad_b


def sgd_step(net: Network, x: ScalarFloatArray, y: Any, learning_rate: float) -> float:
    """Update the parameters in-place with one gradient descent step.

    Returns
    -------
    loss : float
        The loss of the sample before the update.
    """
    value, grad_w, grad_b = _backward(net, x, y)
    for k in range(len(net.weights)):
        net.weights[k] -= learning_rate * grad_w[k]
        net.biases[k] -= learning_rate * grad_b[k]
    return value


def gradient_check(
    net: Network, sample: tuple[Any, Any], step: float = 1e-5
) -> float:
    """Compare the backpropagated gradient with central finite differences.

    Parameters
    ----------
    net : Network
        The network, left unchanged.
    sample : tuple
        The ``(x, y)`` pair, with ``x`` the scaled input and ``y`` the scaled target
        or the class index.
    step : float
        Step of the central finite differences.

    Returns
    -------
    deviation : float
        Maximum over all parameters of ``|a - n| / max(|a|, |n|, 1e-6)`` with ``a``
        the analytic and ``n`` the numerical derivative.
    """
    check_type(net, (Network,), "net")
    x, y = sample
    x = _check_input(net, x)
    _, grad_w, grad_b = _backward(net, x, y)
    shifted = net.copy()
    deviation = 0.0
    for params, grads in ((shifted.weights, grad_w), (shifted.biases, grad_b)):
        for param, grad in zip(params, grads):
            for idx in np.ndindex(param.shape):
                original = param[idx]
                param[idx] = original + step
                loss_plus = loss(shifted, x, y)
                param[idx] = original - step
                loss_minus = loss(shifted, x, y)
                param[idx] = original
                numerical = (loss_plus - loss_minus) / (2 * step)
                analytic = grad[idx]
                scale = max(abs(analytic), abs(numerical), 1e-6)
                deviation = max(deviation, abs(analytic - numerical) / scale)
    logger.debug("Gradient check on %s: max relative deviation %.3e.", net, deviation)
    return deviation
