from __future__ import annotations

from fractions import Fraction
from math import comb

import pytest

from dquant.algebra import Poly
from dquant.poisson import conic_frame
from dquant.presets import conic_curve
from dquant.wkb import (
    CurveIdeal,
    CurveNotReducibleError,
    DegenerateBranchError,
    branch_solve,
    lambda_ode,
    lambda_residual,
    lambda_solve,
    wkb_residual,
    wkb_solve,
)


def catalan(n: int) -> int:
    return comb(2 * n, n) // (n + 1)


def test_branch_is_catalan():
    u = branch_solve(conic_curve().H, 12)
    assert u.coefficients()[2:13] == [catalan(n) for n in range(1, 12)]


def test_branch_needs_nonzero_slope():
    x, y = Poly.gens(conic_frame().vars)
    with pytest.raises(DegenerateBranchError):
        branch_solve(x * x + y * y, 6)


def test_genus_one_shift_zero_is_powers_of_four():
    sol = wkb_solve(conic_curve(0), 1, 10)
    assert sol.u[1].coefficients()[:10] == [4**n for n in range(10)]


def test_genus_one_shift_one():
    sol = wkb_solve(conic_curve(1), 1, 9)
    assert sol.u[1].coefficients()[:9] == [0] + [4**n - comb(2 * n, n) for n in range(1, 9)]


def test_residual_vanishes_at_higher_orders():
    for j in (0, 1, Fraction(1, 2)):
        sol = wkb_solve(conic_curve(j), 4, 8)
        assert all(r.is_zero() for r in wkb_residual(sol))


def test_linear_curve_has_no_corrections():
    frame = conic_frame()
    x, y = Poly.gens(frame.vars)
    sol = wkb_solve(CurveIdeal(x * 3 - y, (Fraction(0),), frame), 3, 6)
    assert sol.S[0].coefficients()[:3] == [0, 0, Fraction(3, 2)]
    assert all(s.is_zero() for s in sol.S[1:])


def test_curve_must_pass_through_origin():
    x, y = Poly.gens(conic_frame().vars)
    with pytest.raises(ValueError):
        CurveIdeal(x + y + 1)


def test_lambda_recurrence_values():
    L = lambda_solve(1, 0, 9)
    assert L.lam == tuple(Fraction(v) for v in (1, 0, 0, Fraction(-1, 6), 0, 0, Fraction(1, 180), 0, 0, Fraction(-1, 12960)))
    assert all(d == 0 for d in L.recurrence_defects())


def test_lambda_kappa_for_conic():
    assert lambda_ode(conic_curve()) == Fraction(1, 4)


@pytest.mark.parametrize("seeds,M", [((1, 0), 9), ((0, 1), 10), ((Fraction(2, 3), -5), 12)])
def test_lambda_residual_vanishes(seeds, M):
    curve = conic_curve()
    assert lambda_residual(curve, lambda_solve(*seeds, M)).is_zero()


@pytest.mark.parametrize("n", [0, 1, 3, 4, 6])
def test_lambda_mutation_detected(n):
    curve = conic_curve()
    L = lambda_solve(1, 1, 9)
    bad = L.with_entry(n, L.lam[n] + Fraction(1, 7))
    assert not lambda_residual(curve, bad).is_zero()
    assert any(d != 0 for d in bad.recurrence_defects())


def test_lambda_ode_rejects_cubic():
    x, y = Poly.gens(conic_frame().vars)
    with pytest.raises(ValueError):
        lambda_ode(CurveIdeal(x**3 - y))


def test_lambda_ode_rejects_first_derivative_term():
    x, y = Poly.gens(conic_frame().vars)
    with pytest.raises(CurveNotReducibleError):
        lambda_ode(CurveIdeal(x * y - y))
