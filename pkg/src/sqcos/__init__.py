"""sqcos: certified evaluation of cos(sqrt(x)) and all of its derivatives.

The package evaluates the entire function C(z) = sum_k (-1)^k z^k/(2k)!
(equal to cos(sqrt(x)) for x > 0 and cosh(sqrt(|x|)) for x <= 0) and its
derivatives of any order with rigorous error bounds, and certifies the
classical inequalities satisfied by those derivatives on finite domains.
"""

from .approx import ApproxValue
from .backend import active_backend, compiled_available
from .bounds import (geometric_grid, gronwall_bound, sample_points,
                     uniform_grid, verify_coeff_inequality, verify_cosh,
                     verify_general, verify_identities, verify_main,
                     verify_monotone_negative, verify_strictness)
from .config import DEFAULT_CONFIG, EvalConfig
from .errors import DomainError, NonConvergenceError
from .exact import (ExactRational, coeff_ratio, derivative_at_zero,
                    derivative_bound, general_prefactor, series_coeff,
                    sinc_derivative_at_zero)
from .ladder import (DerivativeLadder, build_ladder, decay_profile, evaluate,
                     ode_residual, pythagorean_residual, recurrence_step)
from .quadrature import DEFAULT_QUADRATURE, QuadratureSpec
from .report import (BoundReport, SupremumResult, format_number,
                     parse_number, records_from_csv, records_from_json,
                     records_to_csv, records_to_json)
from .series import (as_point, closed_form, eval_abs_series_negative,
                     eval_series)
from .sinc import (gronwall_identity_residual, sinc_derivative_quadrature,
                   sinc_derivative_series, verify_gronwall0)

__version__ = "0.1.0"

__all__ = [
    "ApproxValue",
    "BoundReport",
    "DEFAULT_CONFIG",
    "DEFAULT_QUADRATURE",
    "DerivativeLadder",
    "DomainError",
    "EvalConfig",
    "ExactRational",
    "NonConvergenceError",
    "QuadratureSpec",
    "SupremumResult",
    "active_backend",
    "as_point",
    "build_ladder",
    "closed_form",
    "coeff_ratio",
    "compiled_available",
    "decay_profile",
    "derivative_at_zero",
    "derivative_bound",
    "eval_abs_series_negative",
    "eval_series",
    "evaluate",
    "format_number",
    "general_prefactor",
    "geometric_grid",
    "gronwall_bound",
    "gronwall_identity_residual",
    "ode_residual",
    "parse_number",
    "pythagorean_residual",
    "records_from_csv",
    "records_from_json",
    "records_to_csv",
    "records_to_json",
    "recurrence_step",
    "sample_points",
    "series_coeff",
    "sinc_derivative_at_zero",
    "sinc_derivative_quadrature",
    "sinc_derivative_series",
    "uniform_grid",
    "verify_coeff_inequality",
    "verify_cosh",
    "verify_general",
    "verify_gronwall0",
    "verify_identities",
    "verify_main",
    "verify_monotone_negative",
    "verify_strictness",
    "__version__",
]
