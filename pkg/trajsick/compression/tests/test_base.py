import numpy as np
import pytest
from numpy.testing import assert_array_equal

from trajsick.compression import CompressionConfig, CompressionResult


def test_compression_config():
    """Test the validation of the compression parameters."""
    cfg = CompressionConfig()
    assert (cfg.epsilon, cfg.delta_mode, cfg.method) == (0.4, "ratio", "stc")
    assert cfg.to_dict() == dict(epsilon=0.4, delta_mode="ratio", method="stc")
    assert CompressionConfig(epsilon=1).epsilon == 1.0
    with pytest.raises(ValueError, match="strictly positive"):
        CompressionConfig(epsilon=0)
    with pytest.raises(ValueError, match="finite"):
        CompressionConfig(epsilon=np.inf)
    with pytest.raises(ValueError, match="'delta_mode' parameter"):
        CompressionConfig(delta_mode="percent")
    with pytest.raises(ValueError, match="'method' parameter"):
        CompressionConfig(method="sed")


def test_compression_result():
    """Test the partition between kept and removed points."""
    result = CompressionResult([0, 3, 4], 5)
    assert result.kept_count == 3
    assert result.removed_count == 2
    assert result.total_count == 5
    assert_array_equal(result.removed, [1, 2])
    assert result == CompressionResult(np.array([0, 3, 4]), 5)
    assert result != CompressionResult([0, 4], 5)
    assert "3 kept, 2 removed" in repr(result)
    with pytest.raises(ValueError, match="strictly increasing"):
        CompressionResult([0, 3, 3], 5)
    with pytest.raises(ValueError, match=r"must be in \[0, 5\)"):
        CompressionResult([0, 5], 5)
    with pytest.raises(ValueError, match="read-only"):
        result.kept[0] = 1
