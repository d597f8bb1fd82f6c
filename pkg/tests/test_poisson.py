from __future__ import annotations

from fractions import Fraction

import pytest

from dquant.algebra import Poly
from dquant.checks import random_bivector, random_poly
from dquant.poisson import (
    BiMap,
    BiVector,
    DarbouxFrame,
    GaugePart,
    LinearIdeal,
    Tensor,
    bracket,
    conic_frame,
    is_coisotropic,
    skew_split,
    standard_bivector,
)


def test_conic_frame_bracket():
    frame = conic_frame()
    x, y = Poly.gens(frame.vars)
    b = frame.bivector()
    assert bracket(y, x, b) == Poly.one(frame.vars)
    assert bracket(x, y, b) == -Poly.one(frame.vars)


def test_opposite_frame_flips_sign():
    frame = DarbouxFrame(("x1", "x2"), ("y1", "y2"), 1)
    x1, x2, y1, y2 = Poly.gens(frame.vars)
    assert bracket(x1, y1, frame.bivector()) == Poly.one(frame.vars)
    assert bracket(x1, y1, frame.opposite().bivector()) == -Poly.one(frame.vars)
    assert bracket(x1, y2, frame.bivector()).is_zero()
    assert frame.partner("y2") == "x2"


def test_bivector_must_be_skew():
    with pytest.raises(ValueError):
        BiVector([[1, 0], [0, 0]], ("x", "y"))
    with pytest.raises(ValueError):
        GaugePart([[0, 1], [-1, 0]], ("x", "y"))


def test_skew_split_recombines():
    tau = [[2, 3], [1, Fraction(1, 2)]]
    b, g = skew_split(tau, ("x", "y"))
    assert b.pi[0][1] == 1 and g.gamma[0][1] == 2
    assert all(b.pi[i][j] + g.gamma[i][j] == tau[i][j] for i in range(2) for j in range(2))


def test_bracket_identities(rng):
    for _ in range(30):
        b = random_bivector(rng, rng.choice([2, 3, 4]))
        f, g, h = (random_poly(rng, b.vars, 3, 3) for _ in range(3))
        assert bracket(f, g * h, b) == g * bracket(f, h, b) + bracket(f, g, b) * h
        jac = bracket(f, bracket(g, h, b), b) + bracket(g, bracket(h, f, b), b) + bracket(h, bracket(f, g, b), b)
        assert jac.is_zero()


def test_bimap_on_pure_tensor_gives_bracket(rng):
    b = random_bivector(rng, 3)
    f, g = (random_poly(rng, b.vars, 3, 3) for _ in range(2))
    t = BiMap.of(b).apply(Tensor.pure([f, g]))
    assert t.prod() == bracket(f, g, b)


def test_braided_bimap_swaps_and_negates(rng):
    b = standard_bivector(1)
    x, y = Poly.gens(b.vars)
    t = BiMap.of(b, braided=True).apply(Tensor.pure([x * x, y]))
    # -pi^{ij} d_i g (x) d_j f with only pi^{yx} = 1
    assert t == Tensor.pure([-Poly.one(b.vars), x * 2])


def test_linear_ideal_membership():
    x, y, z = Poly.gens(("x", "y", "z"))
    ideal = LinearIdeal([x + y, y - z])
    assert ideal.contains(x + z)
    assert not ideal.contains(x)
    with pytest.raises(ValueError):
        ideal.contains((x + y) * z)
    assert LinearIdeal([x, x + 1]).contains(y)


def test_coisotropy():
    frame = conic_frame()
    x, y = Poly.gens(frame.vars)
    assert not is_coisotropic(LinearIdeal([x, y]), frame.bivector())
    assert is_coisotropic(x + y * 3, frame.bivector())
    f4 = DarbouxFrame(("x1", "x2"), ("y1", "y2"), 1)
    x1, x2, y1, y2 = Poly.gens(f4.vars)
    assert is_coisotropic([x1, x2], f4.bivector())
    assert not is_coisotropic([x1, y1], f4.bivector())
    # {x2, y2} = 1 is not in the ideal
    assert not is_coisotropic([x1, x2, y2], f4.bivector())
