"""Numerical checks of the analytic formulas (gamma factors, 2F1, Whittaker, Mellin)."""

from .mellin import H, h_identity_residual, mellin_residual
from .series import AnalyticParams, CoefficientSeries, euler_expand, eval_expansion, transform_residual
from .special import gamma_C, gamma_factors, gamma_R, hyp2f1, whittaker

__all__ = [
    "AnalyticParams",
    "CoefficientSeries",
    "H",
    "euler_expand",
    "eval_expansion",
    "gamma_C",
    "gamma_R",
    "gamma_factors",
    "h_identity_residual",
    "hyp2f1",
    "mellin_residual",
    "transform_residual",
    "whittaker",
]
