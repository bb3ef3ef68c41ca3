"""Exact Clebsch-Gordan coefficients by ladder operators, the stretched-state
hypergeometric closed form, and conditioning of binomial spin spectra."""
from .angular import (
    CGTable,
    CoupledKet,
    ProductKet,
    RangeError,
    Spin,
    allowed_J_range,
    lookup,
    m_values,
)
from .exact import MergeError, SignedSqrtRational, binomial, rational_sqrt, ssr_add, ssr_mul, ssr_square
from .ladder import CoupledStateVector, build_cg_table, highest_weight, ladder_radicand, lower
from .probability import (
    ConditioningOnNullError,
    SpectrumDistribution,
    binomial_pmf,
    conditional_joint,
    convolve,
    sample_conditional,
    spectrum_from_binomial,
    uniform_spectrum,
    verify_theorem2,
)
from .stretched import stretched_cg_squared, stretched_state, verify_theorem1

__version__ = "0.1.0"
