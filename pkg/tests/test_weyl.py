from __future__ import annotations

from itertools import product

from dquant.algebra import Poly, XSeries
from dquant.checks import random_frame, random_poly
from dquant.poisson import DarbouxFrame, conic_frame
from dquant.presets import conic_curve
from dquant.star import StarContext, star
from dquant.weyl import WeylOp, conjugated_apply, phi, symmetric_word_average, weyl_apply, weyl_mul


def test_canonical_commutator():
    frame = conic_frame()
    x, d = WeylOp.x(0, frame), WeylOp.d(0, frame)
    # [D, x] = hbar for D = hbar d/dx
    assert weyl_mul(d, x) - weyl_mul(x, d) == WeylOp.scalar(1, frame, hbar=1)


def test_phi_of_conic_hamiltonian():
    curve = conic_curve()
    assert str(phi(curve.H, curve.frame)) == "x^2 - hbar*dx + hbar + 2*hbar*x*dx + hbar^2*dx^2"


def test_phi_is_a_homomorphism_on_monomials():
    frame = conic_frame()
    ctx = StarContext(frame.bivector(), order=6)
    x, y = Poly.gens(frame.vars)
    for a, b, c, d in product(range(3), repeat=4):
        f, g = x**a * y**b, x**c * y**d
        assert phi(star(f, g, ctx), frame) == weyl_mul(phi(f, frame, 6), phi(g, frame, 6))


def test_phi_homomorphism_random_frames(rng):
    for _ in range(20):
        fr = random_frame(rng)
        ctx = StarContext(fr.bivector(), order=6)
        f, g = (random_poly(rng, fr.vars, 3, 3) for _ in range(2))
        assert phi(star(f, g, ctx), fr) == weyl_mul(phi(f, fr, 6), phi(g, fr, 6))


def test_phi_is_symmetric_ordering():
    for fr in (conic_frame(), conic_frame().opposite()):
        for a, b in product(range(4), repeat=2):
            x, y = Poly.gens(fr.vars)
            sign = -fr.sign
            expected = symmetric_word_average([a], [b], fr)
            assert phi(x**a * y**b, fr) == expected * sign**b


def test_weyl_associativity(rng):
    for _ in range(10):
        fr = random_frame(rng)
        P, Q, R = (phi(random_poly(rng, fr.vars, 3, 3), fr, 6) for _ in range(3))
        assert weyl_mul(weyl_mul(P, Q), R) == weyl_mul(P, weyl_mul(Q, R))


def test_weyl_apply_exponential():
    frame = DarbouxFrame(("x",), ("y",), -1)
    d = WeylOp.d(0, frame)
    s = XSeries.from_coefficients([1, 1, 1, 1, 1], "x", 4)
    out = weyl_apply(d, s)
    # hbar * d/dx lands in the hbar^1 slot
    assert out[0].is_zero()
    assert out[1].coefficients() == [1, 2, 3, 4]


def test_conjugated_apply_on_linear_phase():
    # exp(-S/hbar) D exp(S/hbar) = S' + D
    frame = conic_frame()
    u = [XSeries.from_coefficients([0, 2], "x", 4)]
    out = conjugated_apply(WeylOp.d(0, frame), u, 2)
    assert out[0].coefficients()[:2] == [0, 2]
    assert all(c == 0 for c in out[1].coefficients())
