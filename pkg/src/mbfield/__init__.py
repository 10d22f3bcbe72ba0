"""Gaussian random fields with position-dependent regularity.

Exact covariance kernels for isotropic fields and anisotropic sheets whose
Hurst parameter may vary with position, exact lattice synthesis by dense
PSD factorization, and a statistical verification layer for regularity
exponents and local rescaled-increment limits.
"""

__version__ = "0.1.0"

from .geometry import Box, GridSpec, Point, lattice, progressive_difference, rect_increment
from .hurst import (
    AffineClamped,
    Constant,
    ExponentMeta,
    HurstFunction,
    SmoothSine,
    SqrtShifted,
    TableLookup,
    UNBOUNDED,
    WeierstrassLike,
    gamma_limit,
)
from .kernels import (
    BoundConstants,
    KernelModel,
    bound_constants,
    increment_cov,
    moment_bound_check,
    phi,
    phi_big,
    phi_xx,
    sq_increment,
)
from .special import QuadratureError, SpecialTable, build_table, d_f_direct, get_table
from .synth import (
    CovMatrix,
    FactorizationError,
    FieldSample,
    build_cov,
    factor_psd,
    sample,
    sample_increments,
    synthesize,
    synthesize_points,
)
from .analysis import (
    DudleyReport,
    EmpiricalCov,
    ExponentEstimate,
    LassReport,
    TightnessReport,
    directional_exponent,
    empirical_cov,
    lass_field,
    lass_sheet,
    local_exponent,
    modulus_and_entropy,
    pointwise_exponent,
    tightness_sweep,
)

__all__ = [name for name in dir() if not name.startswith("_")]
