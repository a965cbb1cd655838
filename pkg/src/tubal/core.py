"""Dense third-order tensors, tube-domain transforms, and elementary tubal algebra.

A third-order tensor is stored as a real float64 ndarray of shape
(I1, I2, I3), laid out first-mode-fastest (Fortran order), so frontal
slices ``x[:, :, k]`` are contiguous and element (i1, i2, i3) sits at
linear offset ``i1 + I1*i2 + I1*I2*i3``.  The tube transform is the
unnormalized forward DFT along mode 3 with the 1/I3 factor on the
inverse, matching ``fft(x, [], 3)`` / ``ifft(x, [], 3)`` semantics.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DimMismatch, ImaginaryResidue, NonFiniteData

# Relative threshold for discarding the imaginary part after an inverse
# tube transform; above it the input did not satisfy conjugate symmetry.
IMAG_RESIDUE_RTOL = 1e-8


def as_tensor3(data) -> np.ndarray:
    """Validate and coerce ``data`` to a well-formed third-order tensor.

    Raises DimMismatch for wrong dimensionality and NonFiniteData if any
    entry is NaN or Inf.
    """
    x = np.asarray(data, dtype=np.float64)
    if x.ndim != 3:
        raise DimMismatch(f"expected a third-order tensor, got ndim={x.ndim}")
    if not np.isfinite(x).all():
        raise NonFiniteData("tensor contains NaN or Inf entries")
    return x


def dft_tubes(x: np.ndarray) -> np.ndarray:
    """Unnormalized forward DFT applied to every mode-3 fiber.

    Returns a complex tensor of the same shape; slice k equals
    sum_j x[:, :, j] * exp(-2i*pi*j*k/I3).
    """
    return np.fft.fft(np.asarray(x, dtype=np.float64), axis=2)


def idft_tubes(xhat: np.ndarray) -> np.ndarray:
    """Inverse tube transform (1/I3 normalization), asserting the result is real.

    Raises ImaginaryResidue when max |imag| exceeds
    IMAG_RESIDUE_RTOL * (1 + max |real|), which signals the input did not
    have the conjugate symmetry of a transformed real tensor.
    """
    c = np.fft.ifft(np.asarray(xhat, dtype=np.complex128), axis=2)
    if c.size:
        bound = IMAG_RESIDUE_RTOL * (1.0 + np.abs(c.real).max())
        worst = np.abs(c.imag).max()
        if worst > bound:
            raise ImaginaryResidue(
                f"imaginary residue {worst:.3e} exceeds {bound:.3e}; "
                "input is not conjugate symmetric"
            )
    return c.real.copy()


def rfft_tubes(x: np.ndarray) -> np.ndarray:
    """Leading ceil((I3+1)/2) DFT slices of a real tensor (the rest are conjugate mirrors)."""
    return np.fft.rfft(np.asarray(x, dtype=np.float64), axis=2)


def irfft_tubes(head: np.ndarray, i3: int) -> np.ndarray:
    """Inverse of rfft_tubes given the leading half-spectrum and the tube length."""
    return np.fft.irfft(head, n=i3, axis=2)


def num_head_slices(i3: int) -> int:
    """Number of leading tube-frequency slices that determine the rest: ceil((I3+1)/2)."""
    return i3 // 2 + 1


def transpose(x: np.ndarray) -> np.ndarray:
    """Tensor transpose: transpose every frontal slice and reverse slices 2..I3."""
    xt = np.asarray(x).transpose(1, 0, 2)
    if xt.shape[2] <= 1:
        return xt.copy()
    return np.concatenate([xt[:, :, :1], xt[:, :, :0:-1]], axis=2)


def identity_tensor(i1: int, i3: int) -> np.ndarray:
    """Identity under the t-product: first frontal slice eye(i1), the rest zero."""
    if i1 < 1 or i3 < 1:
        raise DimMismatch("identity tensor dimensions must be >= 1")
    e = np.zeros((i1, i1, i3))
    e[:, :, 0] = np.eye(i1)
    return e


def frobenius_norm(x: np.ndarray) -> float:
    return float(np.linalg.norm(np.asarray(x)))


def inner_product(x: np.ndarray, y: np.ndarray) -> float:
    x = np.asarray(x)
    y = np.asarray(y)
    if x.shape != y.shape:
        raise DimMismatch(f"inner product needs equal dims, got {x.shape} vs {y.shape}")
    return float(np.dot(x.ravel(), y.ravel()))


def concat_mode1(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Stack two tensors along the first mode; modes 2 and 3 must agree."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape[1:] != b.shape[1:]:
        raise DimMismatch(f"mode-1 concat needs matching (I2, I3), got {a.shape} vs {b.shape}")
    return np.concatenate([a, b], axis=0)


def concat_mode2(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Stack two tensors along the second mode; modes 1 and 3 must agree."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape[0] != b.shape[0] or a.shape[2] != b.shape[2]:
        raise DimMismatch(f"mode-2 concat needs matching (I1, I3), got {a.shape} vs {b.shape}")
    return np.concatenate([a, b], axis=1)


@dataclass(frozen=True)
class RngStream:
    """Reproducible random source: a (seed, stream) pair on a counter-based generator.

    Identical (seed, stream) pairs replay identical variate sequences on
    any machine and thread count.  Backed by Philox (counter-based, keyed
    by the pair); normal variates come from numpy's ziggurat sampler.
    """

    seed: int
    stream: int = 0

    def generator(self) -> np.random.Generator:
        key = np.array([self.seed % 2**64, self.stream % 2**64], dtype=np.uint64)
        return np.random.Generator(np.random.Philox(key=key))


def _resolve_generator(rng) -> np.random.Generator:
    if isinstance(rng, RngStream):
        return rng.generator()
    if isinstance(rng, np.random.Generator):
        return rng
    raise TypeError(f"expected RngStream or numpy Generator, got {type(rng)!r}")


def gaussian_matrix(rows: int, cols: int, rng) -> np.ndarray:
    """I.i.d. standard normal matrix, entries drawn column by column.

    The draw order matches the linear-offset order of gaussian_tensor so a
    matrix consumes the stream exactly like the equivalent I3=1 tensor.
    """
    gen = _resolve_generator(rng)
    return gen.standard_normal(rows * cols).reshape((rows, cols), order="F")


def gaussian_tensor(i1: int, i2: int, i3: int, rng) -> np.ndarray:
    """I.i.d. standard normal tensor, entries drawn in linear-offset order."""
    if min(i1, i2, i3) < 1:
        raise DimMismatch("gaussian tensor dimensions must be >= 1")
    gen = _resolve_generator(rng)
    return gen.standard_normal(i1 * i2 * i3).reshape((i1, i2, i3), order="F")
