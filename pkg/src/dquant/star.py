"""Exponential star products for constant bi-maps.

``f * g = prod(exp(hbar/2 * tau)(f (x) g))`` where ``tau`` is the bi-vector,
optionally plus a symmetric gauge part, optionally braided.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Any, Sequence

from . import linalg
from .algebra import HSeries, Poly, ContextError
from .poisson import BiMap, BiVector, GaugePart, Tensor

DEFAULT_ORDER = 6


@dataclass(frozen=True)
class StarContext:
    bivector: BiVector
    gauge: GaugePart | None = None
    order: int = DEFAULT_ORDER
    braided: bool = False

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("star order must be at least 1")
        if self.gauge is not None:
            if self.gauge.vars != self.bivector.vars:
                raise ValueError("gauge part and bi-vector use different variables")
            if self.braided and not self.gauge.is_zero():
                raise ValueError("braiding is only defined for a skew bi-vector")

    @property
    def vars(self) -> tuple[str, ...]:
        return self.bivector.vars

    def matrix(self) -> list[list[Any]]:
        """The full bi-map matrix ``pi + gamma``."""
        pi = self.bivector.matrix()
        if self.gauge is None:
            return pi
        return linalg.add(pi, self.gauge.matrix())

    def bimap(self) -> BiMap:
        return BiMap.of(self.matrix(), braided=self.braided)

    def with_order(self, order: int) -> "StarContext":
        return StarContext(self.bivector, self.gauge, order, self.braided)


def _check_vars(p: Poly | HSeries, ctx: StarContext) -> None:
    if p.vars != ctx.vars:
        if len(p.vars) != len(ctx.vars):
            raise ValueError(
                f"dimension mismatch: bi-map on {len(ctx.vars)} variables, operand has {len(p.vars)}"
            )
        raise ContextError(f"operand variables {p.vars} differ from {ctx.vars}")


def _as_series(f: Poly | HSeries, order: int) -> HSeries:
    return HSeries.lift(f, order)


def star_terms(f: Poly, g: Poly, ctx: StarContext, kmax: int | None = None) -> list[Poly]:
    """``[prod(tau^k (f (x) g)) / (2^k k!) for k = 0..kmax]`` for polynomials."""
    kmax = ctx.order if kmax is None else kmax
    bm = ctx.bimap()
    t = Tensor.pure([f, g])
    out = []
    for k in range(kmax + 1):
        if t.is_zero():
            out.append(Poly.zero(f.vars))
            continue
        out.append(t.prod() * Fraction(1, 2**k * factorial(k)))
        if k < kmax:
            t = bm.apply(t)
    return out


def star(f: Poly | HSeries, g: Poly | HSeries, ctx: StarContext) -> HSeries:
    """Star product truncated at ``hbar**N`` with ``N`` the smallest order involved."""
    _check_vars(f, ctx)
    _check_vars(g, ctx)
    n = ctx.order
    for s in (f, g):
        if isinstance(s, HSeries):
            n = min(n, s.order)
    fs, gs = _as_series(f, n), _as_series(g, n)
    out = [Poly.zero(ctx.vars) for _ in range(n + 1)]
    for a in range(n + 1):
        if fs[a].is_zero():
            continue
        for b in range(n + 1 - a):
            if gs[b].is_zero():
                continue
            for k, term in enumerate(star_terms(fs[a], gs[b], ctx, n - a - b)):
                if not term.is_zero():
                    out[a + b + k] = out[a + b + k] + term
    return HSeries(out, n)


def commutator(f: Poly | HSeries, g: Poly | HSeries, ctx: StarContext) -> HSeries:
    """``f * g - g * f``."""
    return star(f, g, ctx) - star(g, f, ctx)


def gauge_map(f: Poly | HSeries, gamma: GaugePart, order: int | None = None) -> HSeries:
    """Apply ``exp(hbar/4 * gamma^{jk} d_j d_k)`` truncated at ``hbar**order``."""
    if order is None:
        order = f.order if isinstance(f, HSeries) else DEFAULT_ORDER
    if f.vars != gamma.vars:
        raise ValueError("gauge part and operand use different variables")
    fs = _as_series(f, order)
    entries = [(j, k, c) for j, row in enumerate(gamma.gamma) for k, c in enumerate(row) if c != 0]

    def laplace(p: Poly) -> Poly:
        acc = Poly.zero(p.vars)
        for j, k, c in entries:
            acc = acc + p.diff(j).diff(k) * c
        return acc

    out = [Poly.zero(fs.vars) for _ in range(order + 1)]
    for a in range(order + 1):
        p = fs[a]
        for k in range(order + 1 - a):
            if p.is_zero():
                break
            out[a + k] = out[a + k] + p * Fraction(1, 4**k * factorial(k))
            p = laplace(p)
    return HSeries(out, order)


def inverse_gauge_map(f: Poly | HSeries, gamma: GaugePart, order: int | None = None) -> HSeries:
    return gauge_map(f, gamma.scaled(-1), order)


def star_general(f: Poly | HSeries, g: Poly | HSeries, tau: Sequence[Sequence[Any]], vars: Sequence[str], order: int) -> HSeries:
    """Star product for an arbitrary constant matrix, computed by gauging to its skew part."""
    from .poisson import skew_split

    pi, gamma = skew_split(tau, vars)
    ctx = StarContext(pi, None, order)
    fg = star(inverse_gauge_map(f, gamma, order), inverse_gauge_map(g, gamma, order), ctx)
    return gauge_map(fg, gamma, order)


def braid(ctx: StarContext) -> StarContext:
    """Context whose bi-map is ``f (x) g -> -pi^{ij} d_i g (x) d_j f``."""
    if ctx.gauge is not None and not ctx.gauge.is_zero():
        raise ValueError("braiding needs a skew bi-vector without gauge part")
    return StarContext(ctx.bivector, None, ctx.order, braided=True)


def yang_baxter_residual(ctx: StarContext, t: Tensor) -> Tensor:
    """``R23 R12 R23 - R12 R23 R12`` applied to an arity-3 tensor, ``R`` the context's bi-map."""
    if t.arity != 3:
        raise ValueError("Yang-Baxter residual needs a triple tensor")
    bm = ctx.bimap()

    def r12(s: Tensor) -> Tensor:
        return bm.apply(s, 0)

    def r23(s: Tensor) -> Tensor:
        return bm.apply(s, 1)

    return r23(r12(r23(t))) - r12(r23(r12(t)))


# ---------------------------------------------------------------------------
# independent oracle: Wick contraction enumeration


def _contractions(alpha, beta, support, budget):
    """Yield ``{(i, j): n_ij}`` with row sums <= alpha, column sums <= beta, total <= budget."""
    rows = list(alpha)
    cols = list(beta)

    def rec(idx, used, current):
        if idx == len(support):
            yield dict(current)
            return
        i, j = support[idx]
        top = min(rows[i], cols[j], budget - used)
        for n in range(top + 1):
            rows[i] -= n
            cols[j] -= n
            if n:
                current[(i, j)] = n
            yield from rec(idx + 1, used + n, current)
            current.pop((i, j), None)
            rows[i] += n
            cols[j] += n

    yield from rec(0, 0, {})


def _falling(a: int, r: int) -> int:
    out = 1
    for t in range(r):
        out *= a - t
    return out


def star_wick_oracle(f: Poly, g: Poly, ctx: StarContext) -> HSeries:
    """Star product by direct enumeration of Wick pairings.

    Each pairing matrix ``n`` contributes
    ``prod (hbar tau_ij / 2)^n_ij / n_ij!`` times the falling factorials from
    differentiating the two monomials; no iterated bi-map is used.
    """
    if ctx.braided:
        raise ValueError("the Wick oracle covers unbraided contexts only")
    if isinstance(f, HSeries) or isinstance(g, HSeries):
        raise TypeError("the Wick oracle takes polynomial operands")
    _check_vars(f, ctx)
    _check_vars(g, ctx)
    tau = ctx.matrix()
    dim = len(ctx.vars)
    support = [(i, j) for i in range(dim) for j in range(dim) if tau[i][j] != 0]
    order = ctx.order
    out: list[dict] = [{} for _ in range(order + 1)]
    for ma, ca in f.terms.items():
        for mb, cb in g.terms.items():
            for n in _contractions(ma, mb, support, order):
                k = sum(n.values())
                r = [0] * dim
                c = [0] * dim
                w = ca * cb
                for (i, j), nij in n.items():
                    r[i] += nij
                    c[j] += nij
                    w = w * (tau[i][j] / 2) ** nij / factorial(nij)
                for i in range(dim):
                    w = w * _falling(ma[i], r[i]) * _falling(mb[i], c[i])
                m = tuple(ma[i] - r[i] + mb[i] - c[i] for i in range(dim))
                out[k][m] = out[k].get(m, 0) + w
    return HSeries([Poly(t, ctx.vars) for t in out], order)
