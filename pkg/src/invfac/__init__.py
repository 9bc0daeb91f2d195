"""Convergent inverse factorial series for balanced gamma-function ratios."""
from .errors import (
    AmbiguousError,
    BranchCutError,
    InvfacError,
    PoleError,
    RangeError,
    SpecError,
    UnbalancedSpecError,
)
from .facseries import (
    AbscissaReport,
    Classification,
    FactorialSeries,
    abscissa,
    corollary_coeffs_nb,
    corollary_coeffs_stirling,
    evaluate,
    power_to_factorial,
    shift_coeffs,
    theorem_coeffs,
    unshift_coeffs,
)
from .gammaexp import GammaRatioSpec, c_coefficients, invariants, poincare_expansion, q_coefficients
from .oracle import gamma, log_gamma, w_direct

__version__ = "0.1.0"

__all__ = [
    "AmbiguousError",
    "BranchCutError",
    "InvfacError",
    "PoleError",
    "RangeError",
    "SpecError",
    "UnbalancedSpecError",
    "AbscissaReport",
    "Classification",
    "FactorialSeries",
    "abscissa",
    "corollary_coeffs_nb",
    "corollary_coeffs_stirling",
    "evaluate",
    "power_to_factorial",
    "shift_coeffs",
    "theorem_coeffs",
    "unshift_coeffs",
    "GammaRatioSpec",
    "c_coefficients",
    "invariants",
    "poincare_expansion",
    "q_coefficients",
    "gamma",
    "log_gamma",
    "w_direct",
]
