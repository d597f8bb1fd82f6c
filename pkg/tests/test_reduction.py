from __future__ import annotations

from fractions import Fraction

import pytest

from dquant.algebra import Poly
from dquant.checks import random_ks4d_params
from dquant.presets import (
    ks4d,
    ks4d_degeneracy,
    ks4d_frame,
    ks4d_printed_c0,
    ks4d_printed_c1,
    ks4d_transversality_terms,
)
from dquant.reduction import (
    CoisotropicSubspace,
    LinearLagrangian,
    NotLagrangianError,
    SingularPivotError,
    TransversalityError,
    annihilator_residuals,
    central_identity,
    coisotropic_wavefunction,
    extend_coisotropic,
    extension_is_coisotropic,
    lagrangian_wavefunction,
    reduce_wavefunction,
    transversality_diagnostics,
)

UNIT = {"a": 1, "b": 1, "c": 1, "d": 1, "A": 0, "B": 0, "D": 0}


def test_unit_point_gives_exp_z_squared():
    r = reduce_wavefunction(ks4d(UNIT).G, ks4d(UNIT).L)
    assert r.agree
    assert r.z2_coefficient == 1
    assert r.c0 == -2 and r.c1 == 2
    assert str(r.gaussian) == "exp((z1^2)/hbar)"


def test_random_transversal_tuples_agree(rng):
    for _ in range(10):
        p = random_ks4d_params(rng)
        data = ks4d(p)
        r = reduce_wavefunction(data.G, data.L)
        assert r.agree
        assert r.c1 == ks4d_printed_c1(p)
        assert r.c1 == -r.c0


def test_symbolic_reduction_specialises():
    sym = ks4d()
    r = reduce_wavefunction(sym.G, sym.L)
    assert r.agree
    assert r.c1 == ks4d_printed_c1(sym.params)
    # the companion closed form for the quadratic coefficient has the opposite sign
    assert r.c0 == -ks4d_printed_c0(sym.params)
    p = {"a": 2, "b": -1, "c": 3, "d": Fraction(1, 2), "A": 1, "B": -2, "D": 5}
    numeric = reduce_wavefunction(ks4d(p).G, ks4d(p).L)
    assert r.gaussian.specialize(p).P == numeric.gaussian.P


def test_printed_forms_at_unit_point():
    assert ks4d_printed_c0(UNIT) == 2
    assert ks4d_printed_c1(UNIT) == 2


def test_psi_g_and_psi_l_are_annihilated():
    data = ks4d({"a": 2, "b": 3, "c": -1, "d": 4, "A": 1, "B": 2, "D": -1})
    E = extend_coisotropic(data.G)
    assert extension_is_coisotropic(E)
    psi_G = coisotropic_wavefunction(E)
    assert all(p.is_zero() for p in annihilator_residuals(E.ideal, E.frame, psi_G))
    psi_L = lagrangian_wavefunction(data.L)
    assert all(p.is_zero() for p in annihilator_residuals(data.L.equations(), data.L.frame, psi_L))


def test_degenerate_locus(rng):
    for _ in range(5):
        p = random_ks4d_params(rng, degenerate=True)
        assert ks4d_degeneracy(p) == 0
        data = ks4d(p)
        diag = transversality_diagnostics(data.G, data.L)
        assert diag.kernel_singular and diag.elimination_deficient
        with pytest.raises(TransversalityError, match="transversally"):
            reduce_wavefunction(data.G, data.L)


def test_vanishing_terms_force_degeneracy():
    # a = cA + dB and b = cB + dD
    p = {"c": 2, "d": 3, "A": 1, "B": -1, "D": Fraction(1, 2)}
    p["a"] = p["c"] * p["A"] + p["d"] * p["B"]
    p["b"] = p["c"] * p["B"] + p["d"] * p["D"]
    assert ks4d_transversality_terms(p) == (0, 0)
    assert ks4d_degeneracy(p) == 0
    # the converse fails
    q = {"a": Fraction(1, 2), "b": 2, "c": 1, "d": 1, "A": 0, "B": 1, "D": 0}
    assert ks4d_degeneracy(q) == 0
    assert ks4d_transversality_terms(q) == (Fraction(-1, 2), 1)


def test_pivot_chart_needs_c():
    data = ks4d({"a": 1, "b": 3, "c": 0, "d": 1, "A": 0, "B": 0, "D": 0})
    E = extend_coisotropic(data.G)
    assert E.chart == "gram-schmidt"
    assert extension_is_coisotropic(E)
    with pytest.raises(SingularPivotError):
        coisotropic_wavefunction(E)


def test_non_lagrangian_rejected():
    frame = ks4d_frame()
    x1, x2, y1, y2 = Poly.gens(frame.vars)
    with pytest.raises(NotLagrangianError):
        LinearLagrangian.from_equations([y1 + x2, y2 + x1 * 2], frame)
    with pytest.raises(NotLagrangianError):
        LinearLagrangian.from_equations([y1, x1], frame)


def test_rank_deficient_lagrangian():
    # x2 = 0 is a pure position constraint, eliminated from the Gaussian
    frame = ks4d_frame()
    x1, x2, y1, y2 = Poly.gens(frame.vars)
    L = LinearLagrangian.from_equations([y1 + x1 * 3, x2], frame)
    psi = lagrangian_wavefunction(L)
    assert psi.xvars == ("x1",)
    assert psi.eliminated[0][0] == "x2"
    assert all(p.is_zero() for p in annihilator_residuals(L.equations(), frame, psi))


def test_central_identity_one_dimensional():
    res = central_identity([[Fraction(1, 2)]], ("J",))
    (J,) = Poly.gens(("J",))
    assert res.exponent == J * J
    assert res.prefactor == Poly.one(("J",))


def test_central_identity_with_potential():
    # exp(-g d/dJ) exp(J^2/2) = exp(-gJ + g^2/2) exp(J^2/2); first order: 1 - gJ
    (J,) = Poly.gens(("J",))
    res = central_identity([[1]], ("J",), V=J * 3, order=1)
    assert res.prefactor == Poly.one(("J",)) - J * 3


def test_custom_coisotropic_reduction():
    frame = ks4d_frame()
    x1, x2, y1, y2 = Poly.gens(frame.vars)
    G = CoisotropicSubspace([x1 * 2 + y1 - y2 * 3], frame)
    L = LinearLagrangian.from_equations([y1 - x1, y2 + x2 * 2], frame)
    r = reduce_wavefunction(G, L)
    assert r.agree
