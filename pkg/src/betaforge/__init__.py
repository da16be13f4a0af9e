"""Certified special values of the Dirichlet beta and Riemann zeta functions."""

from .cot_engine import CotPolynomial, cot_derivative_poly, eval_at_one
from .identities import (
    EulerNumber,
    IdentityReport,
    beta_odd_exact,
    beta_via_polygamma,
    euler_recurrence,
    euler_via_beta,
    verify_all,
    zeta_even_exact,
)
from .numeric_core import BallReal, PiForm, pi_ball, rational_to_ball
from .series_eval import QuarterPoint, beta_series, polygamma_quarter, zeta_series

__version__ = "0.1.0"
