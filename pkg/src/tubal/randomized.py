"""Randomized low tubal-rank approximation.

Contains the fixed-rank randomized t-SVD with subspace (power) iteration,
the adaptive fixed-precision QB factorization that discovers the tubal
rank from an error bound, the per-slice rank trimming of the final block,
and the blocked matrix randQB reference the tensor algorithm degenerates
to at I3 = 1.

The adaptive algorithm never forms the residual tensor.  It tracks the
squared residual through the recursion E <- E - ||B_i||_F^2, which is
exact because each block satisfies B_i = transpose(Q_i) * x with Q_i
orthonormal and orthogonal to all previous blocks.
"""

from dataclasses import dataclass, field

import numpy as np

from .core import (
    RngStream,
    concat_mode1,
    concat_mode2,
    frobenius_norm,
    gaussian_matrix,
    gaussian_tensor,
    transpose,
)
from .decomp import TSVDFactors, orth, truncated_tsvd
from .errors import DegenerateInput, RankOutOfRange
from .tprod import tprod


@dataclass(frozen=True)
class AdaptiveConfig:
    """Inputs of the adaptive algorithm.

    epsilon is an absolute bound on the Frobenius norm of the residual
    (callers wanting a relative bound multiply by ||x||_F once up front);
    block_size columns are added per iteration; power_iters subspace
    rounds sharpen each block; max_rank caps the search (None means
    min(I1, I2) of the tensor being factored).
    """

    epsilon: float
    block_size: int
    power_iters: int = 1
    max_rank: int | None = None
    seed: RngStream = field(default_factory=lambda: RngStream(0))

    def __post_init__(self):
        if self.epsilon < 0:
            raise ValueError("epsilon must be nonnegative")
        if self.block_size < 1:
            raise ValueError("block_size must be >= 1")
        if self.power_iters < 0:
            raise ValueError("power_iters must be >= 0")
        if self.max_rank is not None and self.max_rank < 1:
            raise ValueError("max_rank must be >= 1")


@dataclass
class QBApprox:
    """Range/projection pair x ~ q * b with orthonormal q.

    energy_trace[i] is the squared-residual estimate after block i+1;
    achieved records whether the energy dropped below epsilon^2 before
    the rank cap was hit.
    """

    q: np.ndarray
    b: np.ndarray
    rank: int
    energy_trace: list
    achieved: bool


def randomized_tsvd(x: np.ndarray, rank: int, oversample: int, power_iters: int,
                    rng) -> TSVDFactors:
    """Fixed-rank randomized tubal SVD with subspace iteration.

    Sketches rank + oversample lateral slices, orthonormalizes, applies
    power_iters rounds of alternating products with x and its transpose
    (orthonormalizing after every half-step for stability), projects, and
    recovers the factors from the truncated t-SVD of the projection.
    """
    x = np.asarray(x, dtype=np.float64)
    i1, i2, i3 = x.shape
    if rank < 1 or rank + oversample > min(i1, i2):
        raise RankOutOfRange(
            f"need 1 <= rank and rank + oversample <= {min(i1, i2)}, "
            f"got rank={rank}, oversample={oversample}"
        )
    omega = gaussian_tensor(i2, rank + oversample, i3, rng)
    q = orth(tprod(x, omega))
    for _ in range(power_iters):
        q = orth(tprod(transpose(x), q))
        q = orth(tprod(x, q))
    b = tprod(transpose(q), x)
    f = truncated_tsvd(b, rank)
    return TSVDFactors(u=tprod(q, f.u), s=f.s, v=f.v, rank=rank)


def adaptive_qb(x: np.ndarray, cfg: AdaptiveConfig, trim: bool = True) -> QBApprox:
    """Grow a QB factorization block by block until ||x - q*b||_F < epsilon.

    Each iteration sketches block_size new directions against the part of
    x not yet captured, orthonormalizes them against the accumulated
    basis, and updates the residual energy by the recursion instead of
    forming the residual.  On success the final block is trimmed slice by
    slice to the smallest rank still meeting the bound (disable with
    trim=False to keep whole blocks, e.g. when inspecting the trace).

    If the rank cap is reached first, the best factorization found is
    returned with achieved=False.  A degenerate (numerically zero) sketch
    means x is already fully captured; the current factors are returned
    and achieved reflects the energy bound.
    """
    x = np.asarray(x, dtype=np.float64)
    i1, i2, i3 = x.shape
    b_size = cfg.block_size
    max_rank = min(i1, i2) if cfg.max_rank is None else cfg.max_rank
    if max_rank > min(i1, i2):
        raise RankOutOfRange(f"max_rank {max_rank} exceeds min(I1, I2) = {min(i1, i2)}")
    gen = cfg.seed.generator()
    eps2 = cfg.epsilon ** 2

    q_acc = None
    b_acc = None
    trace: list = []
    energy = frobenius_norm(x) ** 2
    energy_before_last = energy
    achieved = False
    bound_met = False

    i = 1
    while i * b_size <= max_rank:
        omega = gaussian_tensor(i2, b_size, i3, gen)
        try:
            sketch = tprod(x, omega)
            if q_acc is not None:
                sketch = sketch - tprod(q_acc, tprod(b_acc, omega))
            q_i = orth(sketch)
            for _ in range(cfg.power_iters):
                q_i = orth(tprod(transpose(x), q_i))
                q_i = orth(tprod(x, q_i))
            if q_acc is not None:
                q_i = orth(q_i - tprod(q_acc, tprod(transpose(q_acc), q_i)))
        except DegenerateInput:
            achieved = energy < eps2
            break
        b_i = tprod(transpose(q_i), x)
        q_acc = q_i if q_acc is None else concat_mode2(q_acc, q_i)
        b_acc = b_i if b_acc is None else concat_mode1(b_acc, b_i)
        energy_before_last = energy
        energy -= frobenius_norm(b_i) ** 2
        bound_met = energy < eps2
        if energy < 0.0:
            # Cancellation noise; the true squared residual is ~0.
            energy = 0.0
            bound_met = True
        trace.append(energy)
        if bound_met:
            achieved = True
            break
        i += 1

    if q_acc is None:
        q_acc = np.zeros((i1, 0, i3))
        b_acc = np.zeros((0, i2, i3))
    qb = QBApprox(q=q_acc, b=b_acc, rank=q_acc.shape[1], energy_trace=trace,
                  achieved=achieved)
    if bound_met and trim and qb.rank:
        qb = trim_last_block(qb, energy_before_last, cfg.epsilon)
    return qb


def trim_last_block(qb: QBApprox, energy_before_last: float,
                    epsilon: float) -> QBApprox:
    """Shrink the final block of a successful QB run to the exact rank needed.

    Re-subtracts the squared norms of the final block's horizontal slices
    from the energy as it stood before that block, keeping slices until
    the bound is first met; the matching lateral slices of q are dropped
    without recomputation, which is valid because the energy recursion
    never involves q.
    """
    blocks = len(qb.energy_trace)
    if blocks == 0 or qb.rank % blocks != 0:
        raise ValueError("trim needs a QB built from whole blocks")
    b_size = qb.rank // blocks
    eps2 = epsilon ** 2
    last = qb.b[qb.rank - b_size:, :, :]
    if energy_before_last - frobenius_norm(last) ** 2 >= eps2:
        return qb
    energy = energy_before_last
    kept = b_size
    for j in range(1, b_size + 1):
        energy -= frobenius_norm(last[j - 1]) ** 2
        if energy < eps2:
            kept = j
            break
    rank = (blocks - 1) * b_size + kept
    trace = list(qb.energy_trace[:-1]) + [max(energy, 0.0)]
    return QBApprox(q=qb.q[:, :rank, :], b=qb.b[:rank, :, :], rank=rank,
                    energy_trace=trace, achieved=True)


def qb_to_tsvd(qb: QBApprox, rank="all") -> TSVDFactors:
    """Recover tubal SVD factors from a QB pair: SVD the small b, lift u through q."""
    r = qb.rank if rank == "all" else int(rank)
    if not 1 <= r <= qb.rank:
        raise RankOutOfRange(f"rank {rank} not in [1, {qb.rank}]")
    f = truncated_tsvd(qb.b, r)
    return TSVDFactors(u=tprod(qb.q, f.u), s=f.s, v=f.v, rank=r)


def _orth_cols(a: np.ndarray) -> np.ndarray:
    return np.linalg.qr(a)[0]


def blocked_randqb_matrix(a: np.ndarray, epsilon: float, block_size: int,
                          power_iters: int, rng):
    """Blocked randQB on a plain matrix with explicit residual deflation.

    Returns (q, b, rank).  Unlike the tensor algorithm this keeps the
    residual x explicitly, deflates it after every block, and stops when
    ||x||_F <= epsilon; the tensor algorithm must agree with it at I3 = 1.
    Power iterations here multiply by the current residual, which matches
    the original-matrix variant exactly for power_iters <= 1 once blocks
    are orthogonalized against the accumulated basis.
    """
    a = np.asarray(a, dtype=np.float64)
    m, n = a.shape
    gen = rng.generator() if isinstance(rng, RngStream) else rng
    x = a.copy()
    q_acc = None
    b_acc = None
    max_blocks = -(-min(m, n) // block_size)
    for _ in range(max_blocks):
        omega = gaussian_matrix(n, block_size, gen)
        q_i = _orth_cols(x @ omega)
        for _ in range(power_iters):
            q_i = _orth_cols(x.T @ q_i)
            q_i = _orth_cols(x @ q_i)
        if q_acc is not None:
            q_i = _orth_cols(q_i - q_acc @ (q_acc.T @ q_i))
        b_i = q_i.T @ x
        x = x - q_i @ b_i
        q_acc = q_i if q_acc is None else np.hstack([q_acc, q_i])
        b_acc = b_i if b_acc is None else np.vstack([b_acc, b_i])
        if np.linalg.norm(x) <= epsilon:
            break
    if q_acc is None:
        q_acc = np.zeros((m, 0))
        b_acc = np.zeros((0, n))
    return q_acc, b_acc, q_acc.shape[1]
