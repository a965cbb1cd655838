"""Third-order tensor algebra under the t-product, with deterministic and
randomized low tubal-rank approximation and a benchmark CLI."""

from .bench import (
    RunReport,
    SyntheticSpec,
    gen_synthetic,
    hilbert_tensor,
    run_adaptive,
    run_randomized,
    run_tsvd,
)
from .core import (
    RngStream,
    as_tensor3,
    concat_mode1,
    concat_mode2,
    dft_tubes,
    frobenius_norm,
    gaussian_matrix,
    gaussian_tensor,
    identity_tensor,
    idft_tubes,
    inner_product,
    transpose,
)
from .decomp import TSVDFactors, orth, reconstruct, t_qr, truncated_tsvd, tubal_rank
from .errors import (
    BadHeader,
    BadMagic,
    DegenerateInput,
    DimMismatch,
    DimOverflow,
    EmptyDir,
    ImaginaryResidue,
    InconsistentDims,
    NonFiniteData,
    RankOutOfRange,
    SizeGuard,
    SpecInvalid,
    TruncatedFile,
    TubalError,
)
from .randomized import (
    AdaptiveConfig,
    QBApprox,
    adaptive_qb,
    blocked_randqb_matrix,
    qb_to_tsvd,
    randomized_tsvd,
    trim_last_block,
)
from .tio import load_pgm_stack, load_tns, reshape3, save_pgm_stack, save_tns
from .tprod import is_orthogonal, tprod, tprod_oracle

__version__ = "0.1.0"

__all__ = [
    "AdaptiveConfig",
    "BadHeader",
    "BadMagic",
    "DegenerateInput",
    "DimMismatch",
    "DimOverflow",
    "EmptyDir",
    "ImaginaryResidue",
    "InconsistentDims",
    "NonFiniteData",
    "QBApprox",
    "RankOutOfRange",
    "RngStream",
    "RunReport",
    "SizeGuard",
    "SpecInvalid",
    "SyntheticSpec",
    "TSVDFactors",
    "TruncatedFile",
    "TubalError",
    "adaptive_qb",
    "as_tensor3",
    "blocked_randqb_matrix",
    "concat_mode1",
    "concat_mode2",
    "dft_tubes",
    "frobenius_norm",
    "gaussian_matrix",
    "gaussian_tensor",
    "gen_synthetic",
    "hilbert_tensor",
    "identity_tensor",
    "idft_tubes",
    "inner_product",
    "is_orthogonal",
    "load_pgm_stack",
    "load_tns",
    "orth",
    "qb_to_tsvd",
    "randomized_tsvd",
    "reconstruct",
    "reshape3",
    "run_adaptive",
    "run_randomized",
    "run_tsvd",
    "save_pgm_stack",
    "save_tns",
    "t_qr",
    "tprod",
    "tprod_oracle",
    "transpose",
    "trim_last_block",
    "truncated_tsvd",
    "tubal_rank",
]
