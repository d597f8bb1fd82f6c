"""Exact formal deformation quantisation of polynomial Poisson algebras."""
from __future__ import annotations

__version__ = "0.1.0"

from .algebra import ContextError, HSeries, Poly, XSeries
from .poisson import BiMap, BiVector, DarbouxFrame, GaugePart, LinearIdeal, bracket, conic_frame, is_coisotropic
from .star import StarContext, commutator, gauge_map, star, star_general
from .weyl import WeylOp, phi, weyl_mul
from .wkb import CurveIdeal, lambda_residual, lambda_solve, wkb_residual, wkb_solve
from .reduction import (
    CoisotropicSubspace,
    GaussianForm,
    LinearLagrangian,
    TransversalityError,
    reduce_wavefunction,
)
from .parse import ParseError, parse_expr

__all__ = [
    "BiMap", "BiVector", "CoisotropicSubspace", "ContextError", "CurveIdeal", "DarbouxFrame",
    "GaugePart", "GaussianForm", "HSeries", "LinearIdeal", "LinearLagrangian", "ParseError",
    "Poly", "StarContext", "TransversalityError", "WeylOp", "XSeries", "bracket", "commutator",
    "conic_frame", "gauge_map", "is_coisotropic", "lambda_residual", "lambda_solve", "parse_expr",
    "phi", "reduce_wavefunction", "star", "star_general", "weyl_mul", "wkb_residual", "wkb_solve",
]
