"""The two worked examples: the conic and the 4D linear reduction."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Mapping

from .algebra import Poly
from .linalg import QQ, parameter_field
from .poisson import DarbouxFrame, conic_frame
from .reduction import CoisotropicSubspace, LinearLagrangian
from .wkb import CurveIdeal

KS4D_PARAMS = ("a", "b", "c", "d", "A", "B", "D")


def conic_curve(shift: Any = 0) -> CurveIdeal:
    """``H = -y + x^2 + 2xy + y^2`` in the frame ``{y, x} = 1``."""
    frame = conic_frame()
    x, y = Poly.gens(frame.vars)
    return CurveIdeal(-y + x**2 + 2 * x * y + y**2, (Fraction(shift),), frame)


def ks4d_frame() -> DarbouxFrame:
    return DarbouxFrame(("x1", "x2"), ("y1", "y2"), 1)


@dataclass(frozen=True)
class KS4D:
    G: CoisotropicSubspace
    L: LinearLagrangian
    field: Any
    params: Mapping[str, Any]


def ks4d(values: Mapping[str, Any] | None = None) -> KS4D:
    """``G: a x1 + b x2 + c y1 + d y2 = 0`` and ``L: y + [[A, B], [B, D]] x = 0``.

    With ``values=None`` every parameter is a symbol of a rational-function
    field; otherwise all seven must be given as rationals.
    """
    if values is None:
        field: Any = parameter_field(KS4D_PARAMS)
        p = {n: field.gen(n) for n in KS4D_PARAMS}
    else:
        missing = [n for n in KS4D_PARAMS if n not in values]
        if missing:
            raise ValueError(f"missing parameters: {', '.join(missing)}")
        field = QQ
        p = {n: Fraction(values[n]) for n in KS4D_PARAMS}
    frame = ks4d_frame()
    vars = frame.vars
    x1, x2, y1, y2 = Poly.gens(vars)
    H = x1 * p["a"] + x2 * p["b"] + y1 * p["c"] + y2 * p["d"]
    G = CoisotropicSubspace([H], frame, field)
    one, zero = Fraction(1), Fraction(0)
    L = LinearLagrangian([[one, zero], [zero, one]], [[p["A"], p["B"]], [p["B"], p["D"]]], frame, field)
    return KS4D(G, L, field, p)


def ks4d_degeneracy(p: Mapping[str, Any]) -> Any:
    """``B^2 c d - (a - c A)(b - d D)``; zero exactly on the non-transversal locus."""
    return p["B"] ** 2 * p["c"] * p["d"] - (p["a"] - p["c"] * p["A"]) * (p["b"] - p["d"] * p["D"])


def ks4d_transversality_terms(p: Mapping[str, Any]) -> tuple[Any, Any]:
    """``(a - cA - dB, b - cB - dD)``; both zero forces degeneracy (not conversely)."""
    return (
        p["a"] - p["c"] * p["A"] - p["d"] * p["B"],
        p["b"] - p["c"] * p["B"] - p["d"] * p["D"],
    )


def ks4d_printed_c1(p: Mapping[str, Any]) -> Any:
    """The closed form for the slope of the reduced Lagrangian ``w = c1 z``."""
    a, b, c, d, A, B, D = (p[n] for n in KS4D_PARAMS)
    num = -a * c + A * c**2 + d * (-b + 2 * B * c + d * D)
    den = c * d * (d * D * (a - A * c) - a * b + A * b * c + B**2 * c * d)
    return num / den


def ks4d_printed_c0(p: Mapping[str, Any]) -> Any:
    """The closed form printed alongside ``c1``; it carries the opposite sign to ``P``."""
    a, b, c, d, A, B, D = (p[n] for n in KS4D_PARAMS)
    num = a * c - A * c**2 + d * (b - 2 * B * c - d * D)
    den = c * d * (a * (b - d * D) - c * (A * (b - d * D) + B**2 * d))
    return num / den


__all__ = [
    "KS4D",
    "KS4D_PARAMS",
    "conic_curve",
    "ks4d",
    "ks4d_degeneracy",
    "ks4d_frame",
    "ks4d_printed_c0",
    "ks4d_printed_c1",
    "ks4d_transversality_terms",
]
