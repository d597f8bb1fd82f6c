"""Independent oracles for the conic WKB data, computed with sympy series."""
from __future__ import annotations

from fractions import Fraction

import sympy as sp

from dquant.presets import conic_curve
from dquant.wkb import wkb_solve

DEGREE = 8


def riccati_rows(j: int, orders: int) -> list[list[Fraction]]:
    """Solve x^2 + hbar + (2x - 1) u + u^2 + hbar u' = hbar j order by order.

    With D = hbar d/dx and psi = exp(S/hbar), u = S', this is phi(H) psi = hbar j psi
    for the conic.
    """
    x = sp.symbols("x")
    root = sp.sqrt(1 - 4 * x)
    u = [((1 - 2 * x) - root) / 2]
    for g in range(1, orders + 1):
        # collect hbar^g terms not involving u_g
        rest = sum(u[a] * u[g - a] for a in range(1, g))
        rest += sp.diff(u[g - 1], x)
        if g == 1:
            rest += 1 - j
        u.append(sp.simplify(-rest / (2 * u[0] + 2 * x - 1)))
    rows = []
    for ug in u:
        ser = sp.series(ug, x, 0, DEGREE + 1).removeO()
        rows.append([Fraction(str(ser.coeff(x, k))) for k in range(DEGREE + 1)])
    return rows


def test_wkb_rows_match_riccati_oracle():
    for j in (0, 1, 3):
        expected = riccati_rows(j, 3)
        sol = wkb_solve(conic_curve(j), 3, DEGREE)
        got = [u.coefficients()[: DEGREE + 1] for u in sol.u]
        assert got == expected


def test_frozen_second_order_row():
    # frozen from the oracle above, j = 0
    sol = wkb_solve(conic_curve(0), 2, 6)
    assert sol.u[2].coefficients()[:7] == [5, 50, 350, 2100, 11550, 60060, 300300]
