from __future__ import annotations  # c.f. PEP 563, PEP 649

import numpy as np
import pytest

from trajsick.predictor import (
    LabeledSample,
    TrainingConfig,
    init_network,
    loss,
    split_samples,
    train,
)


def _mean_loss(net, samples) -> float:
    return float(np.mean([loss(net, s.features, s.target) for s in samples]))


def test_training_config():
    """Test the validation of the training parameters."""
    cfg = TrainingConfig()
    assert cfg.to_dict() == dict(
        learning_rate=0.1, epochs=2000, seed=0, split_fraction=0.7
    )
    assert TrainingConfig(learning_rate=0).learning_rate == 0
    with pytest.raises(ValueError, match="must be positive"):
        TrainingConfig(learning_rate=-0.1)
    with pytest.raises(ValueError, match="must be >= 1"):
        TrainingConfig(epochs=0)
    with pytest.raises(ValueError, match="strictly between 0 and 1"):
        TrainingConfig(split_fraction=1.0)
    with pytest.raises(TypeError, match="must be an integer"):
        TrainingConfig(epochs=10.5)


def test_split_samples():
    """Test the shuffled split of the samples."""
    samples = list(range(10))
    train_set, test_set = split_samples(samples, 0.7, seed=0)
    assert len(train_set) == 7
    assert len(test_set) == 3
    assert sorted(train_set + test_set) == samples
    assert split_samples(samples, 0.7, seed=0) == (train_set, test_set)
    # both sets are never empty
    train_set, test_set = split_samples(samples[:2], 0.99, seed=0)
    assert len(train_set) == len(test_set) == 1
    train_set, test_set = split_samples(samples, 0.01, seed=0)
    assert (len(train_set), len(test_set)) == (1, 9)
    with pytest.raises(ValueError, match="At least 2 samples"):
        split_samples([1], 0.5, seed=0)
    with pytest.raises(ValueError, match="strictly between 0 and 1"):
        split_samples(samples, 0, seed=0)


def test_train_linear_target():
    """Test that the loss decreases on a noiseless smooth target."""
    rng = np.random.default_rng(0)
    inputs = rng.uniform(size=(100, 2))
    samples = [
        LabeledSample(tuple(x), 0.2 + 0.3 * x[0] + 0.3 * x[1]) for x in inputs
    ]
    net = init_network([2, 4, 1], seed=0)
    history = train(net, samples, TrainingConfig(epochs=500))
    assert len(history.losses) == 500
    assert history.losses[-1] < history.losses[0]
    assert _mean_loss(history.net, samples) < _mean_loss(net, samples) / 10
    # the initial network is left unchanged
    assert net == init_network([2, 4, 1], seed=0)


@pytest.mark.slow
def test_train_xor():
    """Test learning an XOR-like mapping."""
    rng = np.random.default_rng(1)
    corners = [
        ((0.0, 0.0), 0.0),
        ((1.0, 1.0), 0.0),
        ((0.0, 1.0), 1.0),
        ((1.0, 0.0), 1.0),
    ]
    samples = [
        LabeledSample(tuple(np.clip(np.add(corner, rng.normal(0, 0.05, 2)), 0, 1)), y)
        for corner, y in corners
        for _ in range(25)
    ]
    final = list()
    for seed in range(3):
        net = init_network([2, 4, 1], seed=seed)
        history = train(net, samples, TrainingConfig(seed=seed))
        final.append(_mean_loss(history.net, samples))
        if final[-1] < 0.05:
            break
    assert min(final) < 0.05


def test_train_zero_learning_rate():
    """Test that a null learning rate leaves the network unchanged."""
    samples = [LabeledSample((0.1 * k, 1 - 0.1 * k), 0.05 * k) for k in range(10)]
    net = init_network([2, 4, 1], seed=3)
    with pytest.warns(RuntimeWarning, match="learning rate is 0"):
        history = train(net, samples, TrainingConfig(learning_rate=0, epochs=20))
    assert history.net == net
    assert history.net is not net
    assert len(set(history.losses)) == 1


def test_train_deterministic():
    """Test that the training is reproducible."""
    samples = [
        LabeledSample((0.1 * k, (0.37 * k) % 1), label)
        for k, label in zip(range(9), ("lower", "same", "higher") * 3)
    ]
    net = init_network([2, 3, 3], seed=5, head="classifier")
    cfg = TrainingConfig(epochs=50, seed=2)
    history1 = train(net, samples, cfg)
    history2 = train(net, samples, cfg)
    assert history1.net == history2.net
    assert history1.losses == history2.losses
    assert history1.net != train(net, samples, TrainingConfig(epochs=50, seed=3)).net


def test_train_invalid():
    """Test the validation of the training set."""
    net = init_network([2, 4, 1])
    with pytest.raises(ValueError, match="At least 2 samples are required to train"):
        train(net, [], TrainingConfig())
    with pytest.raises(ValueError, match="to train a network, got 1"):
        train(net, [LabeledSample((0.1, 0.2), 0.5)], TrainingConfig())
    with pytest.raises(ValueError, match="expects 2 inputs"):
        train(net, [LabeledSample((0.1,), 0.5)] * 2, TrainingConfig())
    classifier = init_network([2, 3, 3], head="classifier")
    with pytest.raises(ValueError, match="Unknown direction label"):
        train(classifier, [LabeledSample((0.1, 0.2), "up")] * 2, TrainingConfig())
