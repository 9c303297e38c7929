"""Exceptional co-dimension-2 Laguerre polynomials from adjusted moments.

High-precision construction of the degree-n exceptional Laguerre
polynomials (degrees 0 and 1 are absent from the family) through a moment
determinantal system, with the moment table generated purely by recursion
from three Gamma-expressible seeds and cross-validated against quadrature,
a classical closed form, and the defining differential operator.
"""

from ._backend import BACKEND_IS_COMPILED, BACKEND_NAME
from .classical import MonomialPoly, ParameterContext, closed_form_xop, laguerre, negate_argument
from .basis import ShiftedPoly, basis_element, flag_element, from_monomial, to_monomial
from .determinantal import (
    MomentMatrix,
    build_matrix,
    construct,
    gram_schmidt_flag,
    solve_representation_a,
    solve_representation_b,
)
from .moments import MomentTable, fill_table, initial_moments, quadrature_table
from .numerics import (
    QuadratureRule,
    exp_integral_E,
    gamma,
    gauss_laguerre_rule,
    integrate_adjusted,
    upper_incomplete_gamma,
)
from .verify import (
    VerificationReport,
    exceptional_residuals,
    operator_identity_residual,
    orthogonality_residual,
    run_suite,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND_NAME",
    "BACKEND_IS_COMPILED",
    "ParameterContext",
    "MonomialPoly",
    "ShiftedPoly",
    "MomentTable",
    "MomentMatrix",
    "QuadratureRule",
    "VerificationReport",
    "laguerre",
    "negate_argument",
    "closed_form_xop",
    "basis_element",
    "flag_element",
    "to_monomial",
    "from_monomial",
    "gamma",
    "upper_incomplete_gamma",
    "exp_integral_E",
    "gauss_laguerre_rule",
    "integrate_adjusted",
    "initial_moments",
    "fill_table",
    "quadrature_table",
    "build_matrix",
    "construct",
    "solve_representation_a",
    "solve_representation_b",
    "gram_schmidt_flag",
    "exceptional_residuals",
    "operator_identity_residual",
    "orthogonality_residual",
    "run_suite",
    "__version__",
]
