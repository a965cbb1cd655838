"""Deterministic tubal decompositions: t-QR, orthogonalization, truncated t-SVD.

All factorizations run per frontal slice in the tube-frequency domain, on
the leading ceil((I3+1)/2) slices only; trailing slices are conjugate
mirrors (singular values mirror without conjugation), so the inverse
transform of the assembled half-spectrum is exactly real.
"""

from dataclasses import dataclass

import numpy as np

from .core import frobenius_norm, irfft_tubes, rfft_tubes, transpose
from .errors import DegenerateInput, DimMismatch, RankOutOfRange
from .tprod import tprod

# Inputs with Frobenius norm below this (times sqrt of the element count)
# carry no direction information worth orthonormalizing.
ZERO_INPUT_RTOL = 1e-14


@dataclass
class TSVDFactors:
    """Truncated tubal SVD: x ~ u * s * transpose(v).

    u is (I1, R, I3) and v is (I2, R, I3), both with orthonormal lateral
    slices; s is (R, R, I3), diagonal in every frequency-domain slice with
    nonincreasing nonnegative diagonals.
    """

    u: np.ndarray
    s: np.ndarray
    v: np.ndarray
    rank: int


def t_qr(x: np.ndarray):
    """Tubal QR: returns (q, r) with x = q * r and q of shape (I1, min(I1,I2), I3)."""
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 3:
        raise DimMismatch("t_qr expects a third-order tensor")
    i3 = x.shape[2]
    head = np.moveaxis(rfft_tubes(x), 2, 0)
    qh, rh = np.linalg.qr(head)
    q = irfft_tubes(np.moveaxis(qh, 0, 2), i3)
    r = irfft_tubes(np.moveaxis(rh, 0, 2), i3)
    return q, r


def orth(x: np.ndarray) -> np.ndarray:
    """Orthonormal basis for the lateral range of x (the Q part of t_qr).

    Raises DegenerateInput when x is numerically zero, since any basis
    returned for it would be arbitrary.
    """
    x = np.asarray(x, dtype=np.float64)
    if frobenius_norm(x) <= ZERO_INPUT_RTOL * np.sqrt(x.size):
        raise DegenerateInput("cannot orthonormalize a numerically zero tensor")
    q, _ = t_qr(x)
    return q


def truncated_tsvd(x: np.ndarray, rank: int) -> TSVDFactors:
    """Rank-R tubal SVD via per-slice truncated SVD in the frequency domain."""
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 3:
        raise DimMismatch("truncated_tsvd expects a third-order tensor")
    i1, i2, i3 = x.shape
    if not 1 <= rank <= min(i1, i2):
        raise RankOutOfRange(f"rank {rank} not in [1, {min(i1, i2)}] for dims {x.shape}")
    head = np.moveaxis(rfft_tubes(x), 2, 0)
    uh, sh, vhh = np.linalg.svd(head, full_matrices=False)
    uh = uh[:, :, :rank]
    sh = sh[:, :rank]
    vh = vhh[:, :rank, :].conj().transpose(0, 2, 1)
    sdiag = np.zeros((head.shape[0], rank, rank), dtype=np.complex128)
    idx = np.arange(rank)
    sdiag[:, idx, idx] = sh
    u = irfft_tubes(np.moveaxis(uh, 0, 2), i3)
    s = irfft_tubes(np.moveaxis(sdiag, 0, 2), i3)
    v = irfft_tubes(np.moveaxis(vh, 0, 2), i3)
    return TSVDFactors(u=u, s=s, v=v, rank=rank)


def reconstruct(f: TSVDFactors) -> np.ndarray:
    """Multiply the factors back together: u * s * transpose(v)."""
    return tprod(tprod(f.u, f.s), transpose(f.v))


def tubal_rank(x: np.ndarray, tol="auto") -> int:
    """Numerical tubal rank: max matrix rank over frequency-domain slices.

    A singular value counts while it exceeds ``tol``; ``"auto"`` uses
    max(I1, I2) * ulp(largest singular value over all slices), the usual
    matrix-rank default.  Mirrored slices share singular values, so only
    the leading half is examined.
    """
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 3:
        raise DimMismatch("tubal_rank expects a third-order tensor")
    if x.size == 0:
        return 0
    head = np.moveaxis(rfft_tubes(x), 2, 0)
    svals = np.linalg.svd(head, compute_uv=False)
    smax = float(svals.max(initial=0.0))
    if smax == 0.0:
        return 0
    if tol == "auto":
        tol = max(x.shape[0], x.shape[1]) * np.spacing(smax)
    return int((svals > tol).sum(axis=1).max())
