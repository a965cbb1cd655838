import numpy as np
import pytest

from tubal import RngStream, gaussian_tensor


@pytest.fixture
def rand_tensor():
    def make(i1, i2, i3, seed=0):
        return gaussian_tensor(i1, i2, i3, RngStream(seed))
    return make


def naive_dft_tubes(x: np.ndarray) -> np.ndarray:
    """O(I3^2) summation DFT along tubes, independent of any FFT library."""
    x = np.asarray(x, dtype=np.float64)
    i3 = x.shape[2]
    out = np.zeros(x.shape, dtype=np.complex128)
    for k in range(i3):
        for j in range(i3):
            out[:, :, k] += x[:, :, j] * np.exp(-2j * np.pi * j * k / i3)
    return out
