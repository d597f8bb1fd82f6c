"""WKB wavefunctions of plane curves and the lambda-series of the star equation."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

from .algebra import HSeries, Poly, XSeries, coerce, compose
from .poisson import DarbouxFrame, conic_frame
from .star import StarContext, star
from .weyl import WeylOp, conjugated_apply, phi

DEFAULT_DEGREE = 12
DEFAULT_ORDERS = 6


class DegenerateBranchError(ValueError):
    """dH/dy vanishes at the expansion point."""


class UnsolvableOrderError(ArithmeticError):
    """An order of the WKB recursion has no series solution."""


class CurveNotReducibleError(ValueError):
    """The star equation for this curve does not reduce to an ODE in H."""


@dataclass(frozen=True)
class CurveIdeal:
    """A curve ``H(x, y) = 0`` through the origin with quantum shift ``j``.

    The quantised equation is ``(phi(H) - hbar * j(hbar)) psi = 0`` where
    ``j = shift[0] + shift[1] hbar + ...``.
    """

    H: Poly
    shift: tuple[Fraction, ...] = (Fraction(0),)
    frame: DarbouxFrame = field(default_factory=conic_frame)

    def __post_init__(self):
        if len(self.H.vars) != 2:
            raise ValueError("a plane curve needs exactly two variables")
        if set(self.H.vars) != set(self.frame.vars) or self.frame.n != 1:
            raise ValueError(f"curve variables {self.H.vars} do not match frame {self.frame.vars}")
        if self.H.constant_term() != 0:
            raise ValueError("the curve must pass through the origin, H(0,0) = 0")
        s = self.shift
        if not isinstance(s, tuple):
            s = tuple(s) if isinstance(s, (list,)) else (s,)
        object.__setattr__(self, "shift", tuple(coerce(c) for c in s) or (Fraction(0),))

    @property
    def x(self) -> str:
        return self.frame.xs[0]

    @property
    def y(self) -> str:
        return self.frame.ys[0]

    @property
    def y_sign(self) -> int:
        """``y`` quantises to ``y_sign * hbar d/dx``."""
        return -self.frame.sign

    def operator(self, order: int) -> WeylOp:
        op = phi(self.H, self.frame, order)
        for k, c in enumerate(self.shift):
            if c != 0 and k + 1 <= order:
                op = op - WeylOp.scalar(c, self.frame, order, hbar=k + 1)
        return op


@dataclass(frozen=True)
class WKBSolution:
    """Exponent data of ``psi = exp((1/hbar) sum_g hbar^g S_g)``.

    ``u[g] = S_g'`` is exact to degree ``degree``; ``S[g]`` to ``degree + 1``.
    """

    curve: CurveIdeal
    u: tuple[XSeries, ...]
    S: tuple[XSeries, ...]
    degree: int

    @property
    def orders(self) -> int:
        return len(self.u) - 1


def branch_solve(H: Poly, degree: int = DEFAULT_DEGREE, x: str | None = None, y: str | None = None) -> XSeries:
    """The branch ``y = u_0(x)`` of ``H(x, y) = 0`` with ``u_0(0) = 0``, by Newton iteration."""
    if len(H.vars) != 2:
        raise ValueError("branch_solve needs a polynomial in two variables")
    x = H.vars[0] if x is None else x
    y = H.vars[1] if y is None else y
    if H.constant_term() != 0:
        raise ValueError("the curve does not pass through the origin")
    Hy = H.diff(y)
    if Hy.constant_term() == 0:
        raise DegenerateBranchError("dH/dy vanishes at the origin; the branch is not simple")
    u = XSeries(Poly.zero((x,)), degree)
    while True:
        val = compose(H, {y: u}, (x,), degree)
        if val.is_zero():
            return u
        slope = compose(Hy, {y: u}, (x,), degree)
        nxt = u - val * slope.inverse()
        if nxt == u:
            raise ArithmeticError("Newton iteration stalled")
        u = nxt


def _operator_on(curve: CurveIdeal, u: Sequence[XSeries], order: int) -> list[XSeries]:
    op = curve.operator(order)
    if curve.frame.xs != u[0].vars:
        raise ValueError("series variable does not match the curve")
    return conjugated_apply(op, u, order)


def wkb_solve(curve: CurveIdeal, orders: int = DEFAULT_ORDERS, degree: int = DEFAULT_DEGREE) -> WKBSolution:
    """Solve ``exp(-S/hbar) (phi(H) - hbar j) exp(S/hbar) = 0`` order by order.

    At hbar-order ``g`` the equation is linear in ``u_g``:
    ``dH/dy(x, u_0) * y_sign * u_g + r_g = 0``.
    """
    x = curve.x
    cap = degree + orders + 1
    sgn = curve.y_sign
    # the symbol in terms of u = S' carries y -> y_sign * u
    H_u = curve.H.subs({curve.y: Poly.gen(curve.y, curve.H.vars) * sgn})
    u0 = branch_solve(H_u, cap, x, curve.y)
    slope = compose(H_u.diff(curve.y), {curve.y: u0}, (x,), cap)
    if slope.constant_term() == 0:
        raise UnsolvableOrderError("leading coefficient series is not invertible")
    inv_slope = slope.inverse()
    zero = XSeries(Poly.zero((x,)), cap)
    u = [u0]
    for g in range(1, orders + 1):
        residual = _operator_on(curve, u + [zero], g)[g]
        ug = -(residual * inv_slope)
        u.append(ug)
    u_out = tuple(s.with_cap(degree) for s in u)
    S_out = tuple(s.integrate(0) for s in u_out)
    return WKBSolution(curve, u_out, S_out, degree)


def wkb_residual(sol: WKBSolution) -> list[XSeries]:
    """The conjugated equation evaluated on the solution; each entry should vanish.

    Entry ``g`` is exact up to degree ``sol.degree - g``.
    """
    out = _operator_on(sol.curve, list(sol.u), sol.orders)
    return [s.with_cap(max(sol.degree - g, 0)) for g, s in enumerate(out)]


# ---------------------------------------------------------------------------
# lambda-series


@dataclass(frozen=True)
class LambdaSeries:
    """Coefficients of ``lambda(H) = sum_n lam[n] * (1/(kappa hbar^2))^(n//3) * H^n``.

    ``lam`` satisfies ``(n+1)(n+2) lam[n+2] + lam[n-1] = 0`` with
    ``lam[2] = 0``; ``kappa`` comes from the curve (see :func:`lambda_ode`).
    """

    lam: tuple[Fraction, ...]

    @property
    def seeds(self) -> tuple[Fraction, Fraction]:
        return self.lam[0], self.lam[1]

    @property
    def M(self) -> int:
        return len(self.lam) - 1

    def hbar_exponent(self, n: int) -> int:
        return -2 * (n // 3)

    def recurrence_defects(self) -> list[Fraction]:
        """``(n+1)(n+2) lam[n+2] + lam[n-1]`` for every computed ``n``."""
        lam = self.lam
        out = [lam[2]] if len(lam) > 2 else []
        out += [(n + 1) * (n + 2) * lam[n + 2] + lam[n - 1] for n in range(1, len(lam) - 2)]
        return out

    def with_entry(self, n: int, value: Any) -> "LambdaSeries":
        lam = list(self.lam)
        lam[n] = coerce(value)
        return LambdaSeries(tuple(lam))


def lambda_solve(seed0: Any, seed1: Any, M: int = 9) -> LambdaSeries:
    if M < 3:
        raise ValueError("need at least four coefficients (M >= 3)")
    lam = [coerce(seed0), coerce(seed1), Fraction(0)]
    for n in range(1, M - 1):
        lam.append(-lam[n - 1] / ((n + 1) * (n + 2)))
    return LambdaSeries(tuple(lam[: M + 1]))


def lambda_ode(curve: CurveIdeal, ctx: StarContext | None = None) -> Fraction:
    """``kappa`` with ``H * lambda(H) = H lambda + kappa hbar^2 lambda''``.

    Read off from ``H * H`` and ``H * H^2``; raises unless the first-derivative
    term vanishes and ``kappa`` is a constant.
    """
    H = curve.H
    if H.degree() > 2:
        raise ValueError("the star equation only reduces for curves of degree <= 2")
    ctx = StarContext(curve.frame.bivector(), order=2) if ctx is None else ctx.with_order(2)
    if ctx.vars != H.vars:
        H = H.embed(ctx.vars)
    hh = star(H, H, ctx)
    hh2 = star(H, H * H, ctx)
    if not hh[1].is_zero() or not hh2[1].is_zero():
        raise CurveNotReducibleError("first-order star term does not vanish")
    if not hh[2].is_zero():
        raise CurveNotReducibleError("lambda' term is present; the recurrence does not apply")
    q = hh2[2] / 2
    if not q.is_constant():
        raise CurveNotReducibleError("second-order coefficient is not constant")
    kappa = q.constant_term()
    if kappa == 0:
        raise CurveNotReducibleError("second-order coefficient vanishes")
    return kappa


def lambda_residual(curve: CurveIdeal, L: LambdaSeries, ctx: StarContext | None = None) -> HSeries:
    """``H * w`` with ``w = hbar^(2K) lambda(H)``, ``K = M // 3``, minus boundary terms.

    The terms ``lam[n] H^(n+1)`` for ``n > M - 3`` would be cancelled by
    coefficients beyond ``M`` and are removed; everything else must cancel.
    """
    H = curve.H
    base = StarContext(curve.frame.bivector(), order=2) if ctx is None else ctx
    if base.vars != H.vars:
        H = H.embed(base.vars)
    kappa = lambda_ode(curve, base)
    M = L.M
    K = M // 3
    order = 2 * K + 2
    c = base.with_order(order)
    vars = H.vars
    coeffs = [Poly.zero(vars) for _ in range(order + 1)]
    boundary = [Poly.zero(vars) for _ in range(order + 1)]
    Hn = Poly.one(vars)
    for n in range(M + 1):
        k = n // 3
        weight = L.lam[n] / kappa**k
        if weight != 0:
            coeffs[2 * (K - k)] = coeffs[2 * (K - k)] + Hn * weight
            if n > M - 3:
                boundary[2 * (K - k)] = boundary[2 * (K - k)] + Hn * H * weight
        Hn = Hn * H
    w = HSeries(coeffs, order)
    return star(H, w, c) - HSeries(boundary, order)
