"""Seeded random generators and the invariant suites behind ``dquant check``."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .algebra import Poly, XSeries, monomials_up_to
from .poisson import BiVector, DarbouxFrame, GaugePart, Tensor, bracket, conic_frame
from .star import StarContext, braid, commutator, gauge_map, star, star_wick_oracle, yang_baxter_residual
from .weyl import phi, weyl_mul

DEFAULT_SEED = 20240611


def var_names(n: int) -> tuple[str, ...]:
    return tuple(f"v{i}" for i in range(n))


def random_rational(rng: random.Random, size: int = 5) -> Fraction:
    return Fraction(rng.randint(-size, size), rng.randint(1, size))


def random_poly(rng: random.Random, vars: Sequence[str], degree: int = 3, terms: int = 4) -> Poly:
    monos = monomials_up_to(len(vars), degree)
    out = {}
    for _ in range(terms):
        out[rng.choice(monos)] = random_rational(rng)
    return Poly(out, vars)


def random_monomial(rng: random.Random, vars: Sequence[str], degree: int = 3) -> Poly:
    return Poly({rng.choice(monomials_up_to(len(vars), degree)): 1}, vars)


def random_skew(rng: random.Random, n: int, size: int = 3) -> list[list[Fraction]]:
    m = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            v = Fraction(rng.randint(-size, size), rng.randint(1, 2))
            m[i][j], m[j][i] = v, -v
    return m


def random_symmetric(rng: random.Random, n: int, size: int = 3) -> list[list[Fraction]]:
    m = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            v = Fraction(rng.randint(-size, size), rng.randint(1, 2))
            m[i][j] = m[j][i] = v
    return m


def random_bivector(rng: random.Random, n: int) -> BiVector:
    return BiVector(random_skew(rng, n), var_names(n))


def random_ks4d_params(rng: random.Random, degenerate: bool = False) -> dict[str, Fraction]:
    """Parameters with ``c, d != 0``, on or off the non-transversal locus."""
    from .presets import ks4d_degeneracy

    while True:
        p = {n: random_rational(rng, 4) for n in ("a", "b", "c", "d", "A", "B", "D")}
        if p["c"] == 0 or p["d"] == 0:
            continue
        if degenerate:
            gap = p["b"] - p["d"] * p["D"]
            if gap == 0:
                continue
            p["a"] = p["c"] * p["A"] + p["B"] ** 2 * p["c"] * p["d"] / gap
            return p
        if ks4d_degeneracy(p) != 0:
            return p


@dataclass
class SuiteResult:
    name: str
    cases: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures and self.cases > 0

    def record(self, ok: bool, detail: Callable[[], str]) -> None:
        self.cases += 1
        if not ok:
            self.failures.append(detail())


def suite_ring(rng: random.Random, cases: int = 100) -> SuiteResult:
    res = SuiteResult("ring-axioms")
    for _ in range(cases):
        vars = var_names(rng.randint(1, 4))
        f, g, h = (random_poly(rng, vars, 5, 5) for _ in range(3))
        ok = (f * g) * h == f * (g * h) and f * g == g * f and f * (g + h) == f * g + f * h
        if len(vars) >= 2:
            ok = ok and f.diff(0).diff(1) == f.diff(1).diff(0)
        res.record(ok, lambda: f"f={f}, g={g}, h={h}")
    return res


def suite_series(rng: random.Random, cases: int = 30, cap: int = 10) -> SuiteResult:
    res = SuiteResult("series")
    for _ in range(cases):
        coeffs = [random_rational(rng) for _ in range(cap + 1)]
        coeffs[0] = Fraction(rng.choice([1, 4, 9, Fraction(1, 4)]))
        a = XSeries.from_coefficients(coeffs, "x", cap)
        ok = (a * a.inverse()) == XSeries.const(1, ("x",), cap) and a.sqrt() * a.sqrt() == a
        res.record(ok, lambda: f"a={a}")
    return res


def suite_bracket(rng: random.Random, cases: int = 50) -> SuiteResult:
    res = SuiteResult("bracket")
    for _ in range(cases):
        n = rng.choice([2, 3, 4])
        b = random_bivector(rng, n)
        f, g, h = (random_poly(rng, b.vars, 3, 3) for _ in range(3))
        leibniz = bracket(f, g * h, b) == g * bracket(f, h, b) + bracket(f, g, b) * h
        skew = (bracket(f, g, b) + bracket(g, f, b)).is_zero()
        jacobi = (
            bracket(f, bracket(g, h, b), b) + bracket(g, bracket(h, f, b), b) + bracket(h, bracket(f, g, b), b)
        ).is_zero()
        res.record(leibniz and skew and jacobi, lambda: f"f={f}, g={g}, h={h}")
    return res


def suite_associativity(rng: random.Random, cases: int = 50, order: int = 4) -> SuiteResult:
    res = SuiteResult("star-associativity")
    for _ in range(cases):
        n = rng.choice([2, 3, 4])
        ctx = StarContext(random_bivector(rng, n), order=order)
        f, g, h = (random_poly(rng, ctx.vars, 3, 3) for _ in range(3))
        ok = star(star(f, g, ctx), h, ctx) == star(f, star(g, h, ctx), ctx)
        res.record(ok, lambda: f"f={f}, g={g}, h={h}")
    return res


def suite_recovery(rng: random.Random, cases: int = 100, order: int = 3) -> SuiteResult:
    res = SuiteResult("bracket-recovery")
    for _ in range(cases):
        n = rng.choice([2, 3, 4])
        ctx = StarContext(random_bivector(rng, n), order=order)
        f, g = (random_poly(rng, ctx.vars, 3, 3) for _ in range(2))
        c = commutator(f, g, ctx)
        ok = c[0].is_zero() and c.divide_hbar()[0] == bracket(f, g, ctx.bivector)
        res.record(ok, lambda: f"f={f}, g={g}")
    return res


def suite_gauge(rng: random.Random, cases: int = 50, order: int = 4) -> SuiteResult:
    res = SuiteResult("gauge-intertwining")
    for _ in range(cases):
        n = rng.choice([2, 3, 4])
        b = random_bivector(rng, n)
        gamma = GaugePart(random_symmetric(rng, n), b.vars)
        ctx = StarContext(b, order=order)
        ctx_g = StarContext(b, gamma, order=order)
        f, g = (random_poly(rng, b.vars, 3, 3) for _ in range(2))
        lhs = gauge_map(star(f, g, ctx), gamma, order)
        rhs = star(gauge_map(f, gamma, order), gauge_map(g, gamma, order), ctx_g)
        res.record(lhs == rhs, lambda: f"f={f}, g={g}, gamma={gamma.gamma}")
    return res


def suite_yang_baxter(rng: random.Random, cases: int = 20) -> SuiteResult:
    """Only triples on which ``R12 R23 R12`` is nonzero are counted."""
    res = SuiteResult("yang-baxter")
    attempts = 0
    while res.cases < cases and attempts < 50 * cases:
        attempts += 1
        n = rng.choice([2, 3, 4])
        ctx = braid(StarContext(random_bivector(rng, n), order=2))
        bm = ctx.bimap()
        monos = [m for m in monomials_up_to(n, 5) if sum(m) >= 2]
        t = Tensor.pure([Poly({rng.choice(monos): 1}, ctx.vars) for _ in range(3)])
        if bm.apply(bm.apply(bm.apply(t, 0), 1), 0).is_zero():
            continue
        res.record(yang_baxter_residual(ctx, t).is_zero(), lambda: f"t={t}")
    return res


def suite_wick(rng: random.Random, cases: int = 50, order: int = 3) -> SuiteResult:
    res = SuiteResult("wick-oracle")
    for _ in range(cases):
        n = rng.choice([2, 3, 4])
        b = random_bivector(rng, n)
        gamma = GaugePart(random_symmetric(rng, n), b.vars) if rng.random() < 0.5 else None
        ctx = StarContext(b, gamma, order=order)
        f, g = (random_poly(rng, ctx.vars, 3, 4) for _ in range(2))
        res.record(star_wick_oracle(f, g, ctx) == star(f, g, ctx), lambda: f"f={f}, g={g}")
    return res


def random_frame(rng: random.Random) -> DarbouxFrame:
    n = rng.choice([1, 2])
    sign = rng.choice([1, -1])
    if n == 1:
        return DarbouxFrame(("x",), ("y",), sign)
    return DarbouxFrame(("x1", "x2"), ("y1", "y2"), sign)


def suite_phi(rng: random.Random, cases: int = 50, order: int = 6) -> SuiteResult:
    """Homomorphism on every monomial pair of degree <= 4 (conic frame) and random pairs."""
    res = SuiteResult("phi-homomorphism")
    frame = conic_frame()
    ctx = StarContext(frame.bivector(), order=order)
    monos = [Poly({m: 1}, frame.vars) for m in monomials_up_to(2, 4)]
    for f in monos:
        for g in monos:
            ok = phi(star(f, g, ctx), frame) == weyl_mul(phi(f, frame, order), phi(g, frame, order))
            res.record(ok, lambda: f"f={f}, g={g}")
    for _ in range(cases):
        fr = random_frame(rng)
        c = StarContext(fr.bivector(), order=order)
        f, g = (random_poly(rng, fr.vars, 3, 4) for _ in range(2))
        ok = phi(star(f, g, c), fr) == weyl_mul(phi(f, fr, order), phi(g, fr, order))
        res.record(ok, lambda: f"f={f}, g={g}, frame={fr}")
    return res


def suite_weyl_assoc(rng: random.Random, cases: int = 30, order: int = 6) -> SuiteResult:
    res = SuiteResult("weyl-associativity")
    for _ in range(cases):
        fr = random_frame(rng)
        P, Q, R = (phi(random_poly(rng, fr.vars, 3, 3), fr, order) for _ in range(3))
        res.record(weyl_mul(weyl_mul(P, Q), R) == weyl_mul(P, weyl_mul(Q, R)), lambda: f"{P}, {Q}, {R}")
    return res


SUITES: dict[str, Callable[..., SuiteResult]] = {
    "ring": suite_ring,
    "series": suite_series,
    "bracket": suite_bracket,
    "associativity": suite_associativity,
    "recovery": suite_recovery,
    "gauge": suite_gauge,
    "yang-baxter": suite_yang_baxter,
    "wick": suite_wick,
    "phi": suite_phi,
    "weyl-assoc": suite_weyl_assoc,
}


def run_suites(names: Sequence[str] | None = None, seed: int = DEFAULT_SEED, scale: float = 1.0) -> list[SuiteResult]:
    """Run suites in a fixed order, each from its own seeded generator."""
    names = list(SUITES) if not names else list(names)
    out = []
    for name in names:
        if name not in SUITES:
            raise KeyError(f"unknown suite {name!r}")
        rng = random.Random(f"{seed}:{name}")
        fn = SUITES[name]
        default = fn.__defaults__[0] if fn.__defaults__ else 10
        out.append(fn(rng, max(1, int(default * scale))))
    return out
