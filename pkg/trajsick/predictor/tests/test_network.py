import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from trajsick.predictor import Network, forward, gradient_check, init_network, loss
from trajsick.predictor import network as network_module


def _zero_network(sizes, head="regression"):
    weights = [np.zeros((n_in, n_out)) for n_in, n_out in zip(sizes[:-1], sizes[1:])]
    biases = [np.zeros(n_out) for n_out in sizes[1:]]
    return Network(sizes, weights, biases, head)


def test_init_network():
    """Test the seeded initialization of a network."""
    net = init_network([2, 4, 1], seed=42)
    assert [w.shape for w in net.weights] == [(2, 4), (4, 1)]
    assert [b.shape for b in net.biases] == [(4,), (1,)]
    assert net.n_parameters == 17
    assert net.n_inputs == 2
    for param in net.weights + net.biases:
        assert np.all((-0.5 <= param) & (param <= 0.5))
    assert init_network([2, 4, 1], seed=42) == net
    for seed in range(5):
        assert init_network([2, 4, 1], seed=seed + 100) != net
    net = init_network([2, 3, 3], seed=0, head="classifier")
    assert net.layer_sizes == (2, 3, 3)
    assert repr(net) == "<Network | 2-3-3 (classifier)>"


def test_init_network_invalid():
    """Test the rejection of invalid layer sizes."""
    with pytest.raises(ValueError, match="strictly positive"):
        init_network([2, 0, 1])
    with pytest.raises(ValueError, match="at least an input and an output"):
        init_network([2])
    with pytest.raises(ValueError, match="requires 1 output unit"):
        init_network([2, 4, 3])
    with pytest.raises(ValueError, match="requires 3 output unit"):
        init_network([2, 4, 1], head="classifier")
    with pytest.raises(ValueError, match="'head' parameter"):
        init_network([2, 4, 1], head="ranking")
    with pytest.raises(ValueError, match="must have the shapes"):
        Network([2, 1], [np.zeros((1, 2))], [np.zeros(1)])
    with pytest.raises(ValueError, match="must be finite"):
        Network([2, 1], [np.full((2, 1), np.nan)], [np.zeros(1)])


def test_forward_zero_network():
    """Test the output of a network with null parameters."""
    assert forward(_zero_network([2, 4, 1]), [0.3, 0.9]) == 0.5
    probabilities = forward(_zero_network([2, 3, 3], "classifier"), [0.3, 0.9])
    assert_allclose(probabilities, [1 / 3, 1 / 3, 1 / 3])


def test_forward_by_hand():
    """Test the forward pass against a hand-evaluated 2-2-1 network."""
    w1 = [[1.0, -1.0], [2.0, 0.5]]
    b1 = [0.0, 0.5]
    w2 = [[1.0], [-2.0]]
    b2 = [0.25]
    net = Network([2, 2, 1], [w1, w2], [b1, b2])

    def sigmoid(z):
        return 1 / (1 + math.exp(-z))

    # input (1, 0): hidden pre-activations are (1, -0.5)
    h1, h2 = sigmoid(1.0), sigmoid(-0.5)
    expected = sigmoid(1.0 * h1 - 2.0 * h2 + 0.25)
    assert_allclose(forward(net, [1.0, 0.0]), expected, rtol=1e-12)
    assert_allclose(expected, 0.556255, atol=1e-6)
    with pytest.raises(ValueError, match="expects 2 inputs"):
        forward(net, [1.0, 0.0, 0.0])
    with pytest.raises(ValueError, match="must be finite"):
        forward(net, [np.inf, 0.0])


def test_softmax_properties():
    """Test the classifier probabilities."""
    rng = np.random.default_rng(0)
    for seed in range(20):
        net = init_network([2, 3, 3], seed=seed, head="classifier")
        x = rng.uniform(size=2)
        probabilities = forward(net, x)
        assert abs(probabilities.sum() - 1) < 1e-9
        assert np.all((0 < probabilities) & (probabilities < 1))
        # a constant added to every logit does not change the output
        shifted = net.copy()
        shifted.biases[-1] = shifted.biases[-1] + 3.7
        assert_allclose(forward(shifted, x), probabilities, rtol=1e-12)
        assert np.argmax(forward(shifted, x)) == np.argmax(probabilities)


def test_loss():
    """Test the loss of both heads."""
    net = _zero_network([2, 4, 1])
    assert loss(net, [0.1, 0.2], 0.75) == 0.0625
    net = _zero_network([2, 3, 3], "classifier")
    assert_allclose(loss(net, [0.1, 0.2], 2), math.log(3))


def test_gradient_check():
    """Test the backpropagated gradient against finite differences."""
    rng = np.random.default_rng(12)
    architectures = [
        ([2, 3, 1], "regression"),
        ([2, 4, 1], "regression"),
        ([2, 4, 3, 1], "regression"),
        ([2, 3, 3], "classifier"),
    ]
    for k in range(100):
        sizes, head = architectures[k % len(architectures)]
        net = init_network(sizes, seed=k, head=head)
        # move away from the small initial weights
        net.weights = [w * rng.uniform(1, 4) for w in net.weights]
        x = rng.uniform(size=2)
        y = rng.uniform() if head == "regression" else int(rng.integers(3))
        weights = [w.copy() for w in net.weights]
        assert gradient_check(net, (x, y)) < 1e-4
        # the network is left unchanged
        assert all(np.array_equal(a, b) for a, b in zip(weights, net.weights))


def test_gradient_check_minimum():
    """Test the gradient check at a minimum of the loss."""
    net = _zero_network([2, 4, 1])
    assert gradient_check(net, ([0.2, 0.7], 0.5)) < 1e-4


def test_gradient_check_corrupted(monkeypatch: pytest.MonkeyPatch):
    """Test that a corrupted backpropagation is detected."""
    backward = network_module._backward

    def _flipped(net, x, y):
        value, grad_w, grad_b = backward(net, x, y)
        return value, [-grad for grad in grad_w], [-grad for grad in grad_b]

    monkeypatch.setattr(network_module, "_backward", _flipped)
    net = init_network([2, 4, 1], seed=3)
    assert 1e-2 < gradient_check(net, ([0.2, 0.7], 0.9))
