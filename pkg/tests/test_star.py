from __future__ import annotations

from fractions import Fraction

import pytest

from dquant.algebra import ContextError, HSeries, Poly
from dquant.checks import random_bivector, random_poly, random_symmetric
from dquant.poisson import GaugePart, Tensor, bracket, conic_frame, skew_split, standard_bivector
from dquant.star import (
    StarContext,
    braid,
    commutator,
    gauge_map,
    inverse_gauge_map,
    star,
    star_general,
    star_terms,
    star_wick_oracle,
    yang_baxter_residual,
)


@pytest.fixture
def conic():
    frame = conic_frame()
    return StarContext(frame.bivector(), order=6), Poly.gens(frame.vars)


def test_anchor_products(conic):
    ctx, (x, y) = conic
    half = Poly.const(Fraction(1, 2), ctx.vars)
    assert star(x, y, ctx) == HSeries([x * y, -half], 6)
    assert star(y, x, ctx) == HSeries([x * y, half], 6)
    assert star(x, x, ctx) == HSeries.from_poly(x * x, 6)


def test_second_order_coefficient(conic):
    # x^2 * y^2 = x^2 y^2 - 2 hbar xy + hbar^2 / 2
    ctx, (x, y) = conic
    terms = star_terms(x * x, y * y, ctx)
    assert terms[1] == x * y * -2
    assert terms[2] == Poly.const(Fraction(1, 2), ctx.vars)
    assert all(t.is_zero() for t in terms[3:])


def test_truncation_is_respected(conic):
    ctx, (x, y) = conic
    low = ctx.with_order(1)
    assert star(x**3, y**3, low).order == 1
    assert star(x**3, y**3, low) == star(x**3, y**3, ctx).truncate(1)


def test_foreign_context_rejected(conic):
    ctx, _ = conic
    (u,) = Poly.gens(("u",))
    with pytest.raises(ValueError):
        star(u, u, ctx)
    (a, b) = Poly.gens(("a", "b"))
    with pytest.raises(ContextError):
        star(a, b, ctx)


def test_associativity(rng):
    for _ in range(15):
        ctx = StarContext(random_bivector(rng, rng.choice([2, 3, 4])), order=4)
        f, g, h = (random_poly(rng, ctx.vars, 3, 3) for _ in range(3))
        assert star(star(f, g, ctx), h, ctx) == star(f, star(g, h, ctx), ctx)


def test_commutator_recovers_bracket(rng):
    for _ in range(20):
        ctx = StarContext(random_bivector(rng, 3), order=3)
        f, g = (random_poly(rng, ctx.vars, 3, 3) for _ in range(2))
        c = commutator(f, g, ctx)
        assert c[0].is_zero()
        assert c.divide_hbar()[0] == bracket(f, g, ctx.bivector)


def test_gauge_intertwines(rng):
    for _ in range(15):
        b = random_bivector(rng, 3)
        gamma = GaugePart(random_symmetric(rng, 3), b.vars)
        f, g = (random_poly(rng, b.vars, 3, 3) for _ in range(2))
        lhs = gauge_map(star(f, g, StarContext(b, order=4)), gamma, 4)
        rhs = star(gauge_map(f, gamma, 4), gauge_map(g, gamma, 4), StarContext(b, gamma, 4))
        assert lhs == rhs


def test_gauge_inverse(rng):
    b = random_bivector(rng, 2)
    gamma = GaugePart(random_symmetric(rng, 2), b.vars)
    f = random_poly(rng, b.vars, 4, 5)
    assert inverse_gauge_map(gauge_map(f, gamma, 6), gamma, 6) == HSeries.from_poly(f, 6)


def test_star_general_matches_gauge_context(rng):
    tau = [[1, 2], [0, 3]]
    b, gamma = skew_split(tau, ("p", "q"))
    p, q = Poly.gens(("p", "q"))
    f, g = p**2 * q, q**2 + p
    assert star_general(f, g, tau, ("p", "q"), 4) == star(f, g, StarContext(b, gamma, 4))


def test_wick_oracle_agrees(rng):
    for _ in range(20):
        b = random_bivector(rng, rng.choice([2, 3]))
        gamma = GaugePart(random_symmetric(rng, b.dim), b.vars) if rng.random() < 0.5 else None
        ctx = StarContext(b, gamma, 3)
        f, g = (random_poly(rng, b.vars, 3, 4) for _ in range(2))
        assert star_wick_oracle(f, g, ctx) == star(f, g, ctx)


def test_yang_baxter_braided_versus_plain():
    b = standard_bivector(2, sign=1)
    x1, x2, y1, y2 = Poly.gens(b.vars)
    t = Tensor.pure([x1**2 * y2, y1 * x2**2, x1 * y1 * y2])
    braided = braid(StarContext(b, order=2))
    plain = StarContext(b, order=2)
    assert yang_baxter_residual(braided, t).is_zero()
    assert not yang_baxter_residual(plain, t).is_zero()
