"""Reduction of Gaussian wavefunctions along linear coisotropic subspaces.

A wavefunction ``exp((1/hbar) E)`` is stored through its quadratic exponent

    E = -1/2 x.K.x + x.L.z - 1/2 z.P.z

(multiplicative constants are dropped). Coefficients live in an exact field:
the rationals or rational functions of named parameters.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Any, Mapping, Sequence

from . import linalg
from .algebra import Poly
from .linalg import QQ
from .poisson import BiVector, DarbouxFrame, bracket, is_coisotropic
from .weyl import phi


class TransversalityError(ArithmeticError):
    """The coisotropic and the Lagrangian subspace fail to intersect transversally."""


class SingularPivotError(ArithmeticError):
    """A pivot needed to write the wavefunction as a Gaussian vanishes."""


class NotLagrangianError(ValueError):
    pass


class ExtensionError(ArithmeticError):
    pass


def _vector(p: Poly, vars: Sequence[str]) -> list[Any]:
    """Coefficient vector of a homogeneous linear form in the order ``vars``."""
    if p.degree() > 1:
        raise ValueError(f"{p} is not linear")
    if p.constant_term() != 0:
        raise ValueError(f"{p} has a constant term; only linear subspaces through 0 are supported")
    unknown = set(p.vars) - set(vars)
    if unknown and any(p.coeff(_unit(p.vars, v)) != 0 for v in unknown):
        raise ValueError(f"{p} uses variables outside {tuple(vars)}")
    return [p.coeff(_unit(p.vars, v)) if v in p.vars else Fraction(0) for v in vars]


def _unit(vars: Sequence[str], v: str) -> tuple[int, ...]:
    return tuple(int(u == v) for u in vars)


def _linear(vec: Sequence[Any], vars: Sequence[str]) -> Poly:
    return Poly({_unit(vars, v): c for v, c in zip(vars, vec)}, vars)


def _omega(u: Sequence[Any], v: Sequence[Any], pi: Sequence[Sequence[Any]]) -> Any:
    total: Any = Fraction(0)
    for i, ui in enumerate(u):
        if ui == 0:
            continue
        for j, vj in enumerate(v):
            if vj != 0 and pi[i][j] != 0:
                total = total + ui * pi[i][j] * vj
    return total


# ---------------------------------------------------------------------------
# data


@dataclass(frozen=True)
class LinearLagrangian:
    """Equations ``M.y + N.x = 0`` in a Darboux frame."""

    M: tuple[tuple[Any, ...], ...]
    N: tuple[tuple[Any, ...], ...]
    frame: DarbouxFrame
    field: Any = QQ

    def __init__(self, M, N, frame: DarbouxFrame, field: Any = QQ, check: bool = True):
        n = frame.n
        M = [list(r) for r in M]
        N = [list(r) for r in N]
        if linalg.shape(M) != (n, n) or linalg.shape(N) != (n, n):
            raise ValueError(f"M and N must be {n}x{n}")
        object.__setattr__(self, "M", tuple(tuple(r) for r in M))
        object.__setattr__(self, "N", tuple(tuple(r) for r in N))
        object.__setattr__(self, "frame", frame)
        object.__setattr__(self, "field", field)
        if check:
            self.validate()

    @classmethod
    def from_equations(cls, eqs: Sequence[Poly], frame: DarbouxFrame, field: Any = QQ) -> "LinearLagrangian":
        M, N = [], []
        for e in eqs:
            v = _vector(e, frame.vars)
            N.append(v[: frame.n])
            M.append(v[frame.n:])
        return cls(M, N, frame, field)

    def closure_defect(self) -> list[list[Any]]:
        """``N M^T - M N^T``, zero iff the equations Poisson-commute."""
        return linalg.add(
            linalg.matmul(self.N, linalg.transpose(self.M)),
            linalg.scale(linalg.matmul(self.M, linalg.transpose(self.N)), -1),
        )

    def validate(self) -> None:
        if any(x != 0 for r in self.closure_defect() for x in r):
            raise NotLagrangianError("equations are not closed under the Poisson bracket")
        n = self.frame.n
        if linalg.rank([list(m) + list(k) for m, k in zip(self.M, self.N)]) != n:
            raise NotLagrangianError("equations are dependent; not a Lagrangian")
        if linalg.rank(self.M) < n and linalg.rank(self.N) < n:
            raise NotLagrangianError("both M and N are rank-deficient")

    def equations(self) -> list[Poly]:
        vars = self.frame.vars
        return [_linear(list(nr) + list(mr), vars) for mr, nr in zip(self.M, self.N)]


@dataclass(frozen=True)
class CoisotropicSubspace:
    """Common zero set of homogeneous linear equations closed under the bracket."""

    equations: tuple[Poly, ...]
    frame: DarbouxFrame
    field: Any = QQ

    def __init__(self, equations: Sequence[Poly], frame: DarbouxFrame, field: Any = QQ):
        eqs = tuple(e if e.vars == frame.vars else e.embed(frame.vars) for e in equations)
        vecs = [_vector(e, frame.vars) for e in eqs]
        if linalg.rank(vecs) != len(vecs):
            raise ValueError("equations are linearly dependent")
        if len(eqs) > frame.n:
            raise ValueError("too many equations for a coisotropic subspace")
        object.__setattr__(self, "equations", eqs)
        object.__setattr__(self, "frame", frame)
        object.__setattr__(self, "field", field)
        if len(eqs) > 1 and not is_coisotropic(list(eqs), frame.bivector()):
            raise ValueError("equations are not closed under the Poisson bracket")

    @property
    def reduced_pairs(self) -> int:
        return self.frame.n - len(self.equations)


@dataclass(frozen=True)
class Extension:
    """``G_X`` in ``X = W + (z, w)``: the equations of ``G`` plus ``z_k = zeta_k``, ``w_k = xi_k``.

    ``X`` carries the opposite bracket to ``W`` on every pair.
    """

    G: CoisotropicSubspace
    frame: DarbouxFrame
    zeta: tuple[Poly, ...]
    xi: tuple[Poly, ...]
    zvars: tuple[str, ...]
    wvars: tuple[str, ...]
    chart: str

    @property
    def ideal(self) -> list[Poly]:
        vars = self.frame.vars
        gens = [e.embed(vars) for e in self.G.equations]
        for z, w, ze, xi in zip(self.zvars, self.wvars, self.zeta, self.xi):
            gens.append(Poly.gen(z, vars) - ze.embed(vars))
            gens.append(Poly.gen(w, vars) - xi.embed(vars))
        return gens

    def bivector(self) -> BiVector:
        return self.frame.bivector()


@dataclass(frozen=True)
class GaussianForm:
    """``exp((1/hbar)(-1/2 x.K.x + x.L.z - 1/2 z.P.z))`` up to a constant factor."""

    xvars: tuple[str, ...]
    zvars: tuple[str, ...]
    K: tuple[tuple[Any, ...], ...]
    L: tuple[tuple[Any, ...], ...]
    P: tuple[tuple[Any, ...], ...]
    field: Any = QQ
    eliminated: tuple[tuple[str, Poly], ...] = ()

    @classmethod
    def build(cls, xvars, zvars, K, L=None, P=None, field: Any = QQ, eliminated=()) -> "GaussianForm":
        nx, nz = len(xvars), len(zvars)
        L = linalg.zeros(nx, nz) if L is None else L
        P = linalg.zeros(nz, nz) if P is None else P
        if not linalg.is_symmetric(K) or not linalg.is_symmetric(P):
            raise ValueError("quadratic parts of a Gaussian must be symmetric")
        tup = lambda A: tuple(tuple(r) for r in A)  # noqa: E731
        return cls(tuple(xvars), tuple(zvars), tup(K), tup(L), tup(P), field, tuple(eliminated))

    @classmethod
    def from_full(cls, Q, vars: Sequence[str], zvars: Sequence[str], field: Any = QQ) -> "GaussianForm":
        """Split a quadratic form ``-1/2 v.Q.v`` over ``vars`` into x and z blocks."""
        xi = [i for i, v in enumerate(vars) if v not in zvars]
        zi = [vars.index(z) for z in zvars]
        K = [[Q[i][j] for j in xi] for i in xi]
        L = [[-Q[i][j] for j in zi] for i in xi]
        P = [[Q[i][j] for j in zi] for i in zi]
        return cls.build([vars[i] for i in xi], list(zvars), K, L, P, field)

    @property
    def J(self) -> list[Poly]:
        """Source vector ``L.z`` (to be read with the overall 1/hbar)."""
        zv = self.zvars
        return [_linear(row, zv) if zv else Poly.zero(()) for row in self.L]

    def exponent(self) -> Poly:
        """``hbar`` times the exponent, as a polynomial in ``xvars + zvars``."""
        vars = self.xvars + self.zvars
        x = [Poly.gen(v, vars) for v in self.xvars]
        z = [Poly.gen(v, vars) for v in self.zvars]
        half = Fraction(1, 2)
        E = Poly.zero(vars)
        for i, xi in enumerate(x):
            for j, xj in enumerate(x):
                if self.K[i][j] != 0:
                    E = E - xi * xj * (self.K[i][j] * half)
            for k, zk in enumerate(z):
                if self.L[i][k] != 0:
                    E = E + xi * zk * self.L[i][k]
        for k, zk in enumerate(z):
            for m, zm in enumerate(z):
                if self.P[k][m] != 0:
                    E = E - zk * zm * (self.P[k][m] * half)
        return E

    def same_exponent(self, other: "GaussianForm") -> bool:
        return (
            self.xvars == other.xvars
            and self.zvars == other.zvars
            and self.K == other.K
            and self.L == other.L
            and self.P == other.P
        )

    def specialize(self, values: Mapping[str, Any]) -> "GaussianForm":
        f = self.field
        sp = lambda A: linalg.specialize([list(r) for r in A], f, values)  # noqa: E731
        return GaussianForm.build(self.xvars, self.zvars, sp(self.K), sp(self.L), sp(self.P), QQ)

    def __str__(self) -> str:
        return f"exp(({self.exponent()})/hbar)"


# ---------------------------------------------------------------------------
# wavefunctions of linear Lagrangians


def lagrangian_wavefunction(L: LinearLagrangian) -> GaussianForm:
    """Gaussian annihilated by ``phi`` of the Lagrangian's equations.

    With ``y_i -> -sign hbar d_i`` the solution of ``M y + N x = 0`` is
    ``K = -sign * M^{-1} N``. If ``M`` is singular the combinations of
    equations free of ``y`` fix some ``x`` in terms of the others; those are
    eliminated and the Gaussian lives on the surviving variables.
    """
    L.validate()
    frame, n, sign = L.frame, L.frame.n, L.frame.sign
    M, N = [list(r) for r in L.M], [list(r) for r in L.N]
    if linalg.rank(M) == n:
        Q = linalg.solve(M, N)
        K = linalg.scale(Q, -sign)
        return GaussianForm.build(frame.xs, (), _symmetrised(K), field=L.field)
    # rows v with v.M = 0 give pure x constraints
    left = linalg.nullspace(linalg.transpose(M))
    C = linalg.matmul(left, N)
    _, zcols = linalg.rref(C)
    scols = [j for j in range(n) if j not in zcols]
    CZ = [[row[j] for j in zcols] for row in C]
    CS = [[row[j] for j in scols] for row in C]
    E = linalg.scale(linalg.solve(CZ, CS), -1)  # x_Z = E x_S
    rows = _independent_rows(M)
    MS = [[M[r][j] for j in scols] for r in rows]
    if len(rows) != len(scols) or linalg.rank(MS) < len(scols):
        raise SingularPivotError("y-coefficients of the surviving variables are singular")
    NS = [[N[r][j] for j in scols] for r in rows]
    NZ = [[N[r][j] for j in zcols] for r in rows]
    Neff = linalg.add(NS, linalg.matmul(NZ, E)) if zcols else NS
    MZ = [[M[r][j] for j in zcols] for r in rows]
    if any(x != 0 for row in MZ for x in row):
        raise SingularPivotError("eliminated variables still carry derivative terms")
    K = linalg.scale(linalg.solve(MS, Neff), -sign)
    xs = [frame.xs[j] for j in scols]
    elim = tuple(
        (frame.xs[zc], _linear(E[k], xs)) for k, zc in enumerate(zcols)
    )
    return GaussianForm.build(xs, (), _symmetrised(K), field=L.field, eliminated=elim)


def _independent_rows(A: Sequence[Sequence[Any]]) -> list[int]:
    rows: list[int] = []
    for i in range(len(A)):
        if linalg.rank([list(A[r]) for r in rows + [i]]) == len(rows) + 1:
            rows.append(i)
    return rows


def _symmetrised(K: list[list[Any]]) -> list[list[Any]]:
    if not linalg.is_symmetric(K):
        raise NotLagrangianError("solution is not symmetric; equations are not Lagrangian")
    return K


def annihilator_residuals(equations: Sequence[Poly], frame: DarbouxFrame, form: GaussianForm) -> list[Poly]:
    """``exp(-E/hbar) phi(eq) exp(E/hbar)`` for each linear equation; all zero iff annihilated.

    Eliminated variables are substituted before the check.
    """
    E = form.exponent()
    vars = form.xvars + form.zvars
    if set(vars) != set(frame.xs) - {v for v, _ in form.eliminated}:
        raise ValueError("form variables do not match the frame")
    subst = {v: p.embed(vars) for v, p in form.eliminated}
    grads = {v: E.diff(v) for v in vars}
    out = []
    for eq in equations:
        op = phi(eq, frame, order=1)
        total = Poly.zero(vars)
        for (h, a, b), c in op.terms.items():
            if h != 0 or sum(b) > 1:
                raise ValueError("only first-order linear operators are supported")
            term = Poly.const(c, vars)
            for i, e in enumerate(a):
                if e:
                    xv = frame.xs[i]
                    base = subst[xv] if xv in subst else Poly.gen(xv, vars)
                    term = term * base**e
            for i, e in enumerate(b):
                if e:
                    xv = frame.xs[i]
                    if xv in subst:
                        raise ValueError(f"derivative in eliminated variable {xv}")
                    term = term * grads[xv]
            total = total + term
        out.append(total)
    return out


# ---------------------------------------------------------------------------
# extension of a coisotropic subspace


def extend_coisotropic(G: CoisotropicSubspace, prefer_chart: bool = True) -> Extension:
    """Find ``zeta_k, xi_k`` completing ``G`` to a Lagrangian ``G_X`` in ``X``.

    Requirements: ``{H, zeta} = {H, xi} = 0`` for every equation ``H`` and
    ``{zeta_k, xi_l} = -sign_W delta_kl`` (so ``z_k - zeta_k`` and
    ``w_k - xi_k`` commute under the opposite bracket of ``X``).

    For one equation ``sum a_i x_i + c_i y_i`` with two nonzero ``c_p, c_q``
    the chart ``zeta = a_p x_p + c_p y_p``, ``xi = x_p/c_p - x_q/c_q`` is used;
    otherwise a symplectic Gram-Schmidt on the commutant modulo ``G``.
    """
    frame_w = G.frame
    n, g = frame_w.n, G.reduced_pairs
    if g == 0:
        raise ExtensionError("G is already Lagrangian; nothing to extend")
    pi = frame_w.bivector().matrix()
    target = -frame_w.sign
    vars = frame_w.vars
    H = [_vector(e, vars) for e in G.equations]
    pairs: list[tuple[list[Any], list[Any]]] | None = None
    chart = ""
    if prefer_chart and len(H) == 1 and g == 1:
        h = H[0]
        piv = [i for i in range(n) if h[n + i] != 0]
        if len(piv) >= 2:
            p, q = piv[0], piv[1]
            zeta = [Fraction(0)] * (2 * n)
            xi = [Fraction(0)] * (2 * n)
            zeta[p] = h[p]
            zeta[n + p] = h[n + p]
            xi[p] = Fraction(1) / h[n + p]
            xi[q] = Fraction(-1) / h[n + q]
            pairs = [(zeta, xi)]
            chart = f"pivot({frame_w.ys[p]},{frame_w.ys[q]})"
    if pairs is None:
        pairs = _symplectic_complement(H, pi, target, g)
        chart = "gram-schmidt"
    zvars = tuple(f"z{k + 1}" for k in range(g))
    wvars = tuple(f"w{k + 1}" for k in range(g))
    clash = set(zvars + wvars) & set(vars)
    if clash:
        raise ExtensionError(f"new variable names {sorted(clash)} already used")
    frame_x = DarbouxFrame(frame_w.xs + zvars, frame_w.ys + wvars, -frame_w.sign)
    E = Extension(
        G,
        frame_x,
        tuple(_linear(z, vars) for z, _ in pairs),
        tuple(_linear(x, vars) for _, x in pairs),
        zvars,
        wvars,
        chart,
    )
    if not extension_is_coisotropic(E):
        raise ExtensionError("extension does not close under the bracket of X")
    return E


def extension_is_coisotropic(E: Extension) -> bool:
    gens = E.ideal
    b = E.bivector()
    return all(bracket(gens[i], gens[j], b).is_zero() for i in range(len(gens)) for j in range(i + 1, len(gens)))


def _symplectic_complement(H, pi, target, g):
    dim = len(pi)
    rows = [[_omega(h, [Fraction(int(i == j)) for i in range(dim)], pi) for j in range(dim)] for h in H]
    commutant = linalg.nullspace(rows)
    span = [list(h) for h in H]
    rest = []
    for v in commutant:
        if not linalg.in_span(span + rest, v):
            rest.append(v)
    pairs = []
    pool = rest
    while pool:
        e = pool[0]
        partner = next((f for f in pool[1:] if _omega(e, f, pi) != 0), None)
        if partner is None:
            raise ExtensionError("degenerate pairing on the reduced space")
        s = _omega(e, partner, pi)
        f = [x * target / s for x in partner]
        pairs.append((e, f))
        nxt = []
        for v in pool[1:]:
            if v is partner:
                continue
            a = _omega(v, f, pi) / target
            b = _omega(e, v, pi) / target
            v2 = [vi - a * ei - b * fi for vi, ei, fi in zip(v, e, f)]
            if not linalg.in_span(span + [p for pr in pairs for p in pr] + nxt, v2):
                nxt.append(v2)
        pool = nxt
    if len(pairs) != g:
        raise ExtensionError(f"found {len(pairs)} reduced pairs, expected {g}")
    return pairs


def coisotropic_wavefunction(E: Extension) -> GaussianForm:
    """Gaussian ``psi_G(x, z)`` annihilated by ``phi`` of the ideal of ``G_X``."""
    field_ = E.G.field
    LX = LinearLagrangian.from_equations(E.ideal, E.frame, field_)
    if linalg.rank([list(r) for r in LX.M]) < E.frame.n:
        raise SingularPivotError("derivative coefficients of G_X are singular; no Gaussian on this chart")
    full = lagrangian_wavefunction(LX)
    return GaussianForm.from_full([list(r) for r in full.K], list(full.xvars), E.zvars, field_)


# ---------------------------------------------------------------------------
# formal Gaussian integration


@dataclass(frozen=True)
class CentralIdentityResult:
    """``exp(-V(d/dJ)) exp(1/2 J.A.J) = prefactor(J) * exp(1/2 J.A.J)`` with ``A = K'^{-1}``."""

    sources: tuple[str, ...]
    inverse: tuple[tuple[Any, ...], ...]
    exponent: Poly
    prefactor: Poly


def central_identity(Kp: Sequence[Sequence[Any]], sources: Sequence[str], V: Poly | None = None, order: int = 0) -> CentralIdentityResult:
    """Formal Gaussian integral with source ``J`` and potential ``V``.

    For ``V = None`` the prefactor is 1. Otherwise ``V`` is a polynomial in
    the source names standing for ``d/dJ``, and the prefactor is
    ``sum_{k <= order} (-1)^k/k! (V(d + grad W))^k 1`` with
    ``W = 1/2 J.A.J``.
    """
    sources = tuple(sources)
    n = len(sources)
    if linalg.shape(Kp) != (n, n):
        raise ValueError("kernel size does not match the sources")
    if linalg.det(Kp) == 0:
        raise TransversalityError("K' is not invertible; fails to intersect transversally")
    A = linalg.inverse(Kp)
    J = [Poly.gen(s, sources) for s in sources]
    half = Fraction(1, 2)
    W = Poly.zero(sources)
    for i in range(n):
        for j in range(n):
            if A[i][j] != 0:
                W = W + J[i] * J[j] * (A[i][j] * half)
    pre = Poly.one(sources)
    if V is not None and not V.is_zero():
        if V.vars != sources:
            V = V.embed(sources) if set(V.vars) <= set(sources) else _bad_potential(V)
        grads = [W.diff(i) for i in range(n)]

        def covariant(p: Poly, i: int) -> Poly:
            return p.diff(i) + grads[i] * p

        def apply_V(p: Poly) -> Poly:
            out = Poly.zero(sources)
            for m, c in V.terms.items():
                t = p
                for i, e in enumerate(m):
                    for _ in range(e):
                        t = covariant(t, i)
                out = out + t * c
            return out

        term = Poly.one(sources)
        pre = Poly.one(sources)
        for k in range(1, order + 1):
            term = apply_V(term)
            pre = pre + term * Fraction((-1) ** k, factorial(k))
    return CentralIdentityResult(sources, tuple(tuple(r) for r in A), W, pre)


def _bad_potential(V: Poly):
    raise ValueError(f"potential uses variables {V.vars} outside the sources")


def gaussian_route(psi_G: GaussianForm, psi_L: GaussianForm) -> GaussianForm:
    """``integral dx psi_G(x, z) psi_L(x)`` through the central identity."""
    if psi_G.xvars != psi_L.xvars:
        raise ValueError("wavefunctions are over different variables")
    if psi_L.eliminated:
        raise ValueError("the Lagrangian wavefunction must be a full Gaussian for integration")
    Khat = linalg.add([list(r) for r in psi_G.K], [list(r) for r in psi_L.K])
    n = len(psi_G.xvars)
    sources = tuple(f"J{i + 1}" for i in range(n))
    res = central_identity(Khat, sources)
    # substitute J = L z
    zv = psi_G.zvars
    Jz = {s: j for s, j in zip(sources, psi_G.J)}
    E = res.exponent.subs(Jz, zv)
    P = [[psi_G.P[k][m] - _hessian(E, k, m) for m in range(len(zv))] for k in range(len(zv))]
    return GaussianForm.build((), zv, linalg.zeros(0, 0), linalg.zeros(0, len(zv)), P, psi_G.field)


def _hessian(E: Poly, i: int, j: int) -> Any:
    return E.diff(i).diff(j).constant_term()


@dataclass(frozen=True)
class EliminationResult:
    C: tuple[tuple[Any, ...], ...]  # w = C z
    form: GaussianForm


def elimination_system(G: CoisotropicSubspace, L: LinearLagrangian, E: Extension):
    """Square system for ``(x, y, w)`` with ``z`` as parameter: ``A u = B z``."""
    fx = E.frame
    unknowns = list(G.frame.xs) + list(G.frame.ys) + list(E.wvars)
    eqs = list(E.ideal) + [e.embed(fx.vars) for e in L.equations()]
    A, B = [], []
    for e in eqs:
        v = _vector(e, fx.vars)
        vmap = dict(zip(fx.vars, v))
        A.append([vmap[u] for u in unknowns])
        B.append([-vmap[z] for z in E.zvars])
    return A, B, unknowns


def eliminate_and_quantise(G: CoisotropicSubspace, L: LinearLagrangian, E: Extension) -> EliminationResult:
    """Intersect ``G_X`` with ``L``, solve for ``w = C z`` and quantise on ``(z, w)``."""
    A, B, unknowns = elimination_system(G, L, E)
    if linalg.rank(A) < len(A):
        raise TransversalityError("elimination system is rank-deficient; fail to intersect transversally")
    sol = linalg.solve(A, B)
    widx = [unknowns.index(w) for w in E.wvars]
    C = [sol[i] for i in widx]
    frame_r = DarbouxFrame(E.zvars, E.wvars, E.frame.sign)
    Lr = LinearLagrangian(linalg.identity(len(C)), linalg.scale(C, -1), frame_r, G.field)
    psi = lagrangian_wavefunction(Lr)
    form = GaussianForm.build((), E.zvars, linalg.zeros(0, 0), linalg.zeros(0, len(C)), [list(r) for r in psi.K], G.field)
    return EliminationResult(tuple(tuple(r) for r in C), form)


# ---------------------------------------------------------------------------
# end-to-end


@dataclass
class ReductionReport:
    extension: Extension
    psi_G: GaussianForm
    psi_L: GaussianForm
    gaussian: GaussianForm
    elimination: GaussianForm
    C: tuple[tuple[Any, ...], ...]
    agree: bool
    transversal: bool = True
    notes: list[str] = field(default_factory=list)

    @property
    def c0(self) -> Any:
        """``P`` of the integral route for one reduced pair: ``psi = exp(-c0 z^2 / (2 hbar))``."""
        return self.gaussian.P[0][0]

    @property
    def c1(self) -> Any:
        """Slope of the reduced Lagrangian ``w = c1 z`` for one reduced pair."""
        return self.C[0][0]

    @property
    def z2_coefficient(self) -> Any:
        """Coefficient of ``z^2/hbar`` in the exponent."""
        return -self.gaussian.P[0][0] / 2


def reduce_wavefunction(G: CoisotropicSubspace, L: LinearLagrangian, extension: Extension | None = None) -> ReductionReport:
    if G.frame != L.frame:
        raise ValueError("G and L must be given in the same frame")
    E = extend_coisotropic(G) if extension is None else extension
    psi_G = coisotropic_wavefunction(E)
    psi_L = lagrangian_wavefunction(L)
    try:
        gauss = gaussian_route(psi_G, psi_L)
    except TransversalityError:
        raise TransversalityError("G and L fail to intersect transversally (det(K+Q) = 0)") from None
    elim = eliminate_and_quantise(G, L, E)
    agree = gauss.same_exponent(elim.form)
    return ReductionReport(E, psi_G, psi_L, gauss, elim.form, elim.C, agree)


@dataclass(frozen=True)
class TransversalityDiagnostics:
    det_kernel: Any
    elimination_rank: int
    system_size: int

    @property
    def kernel_singular(self) -> bool:
        return self.det_kernel == 0

    @property
    def elimination_deficient(self) -> bool:
        return self.elimination_rank < self.system_size


def transversality_diagnostics(G: CoisotropicSubspace, L: LinearLagrangian, E: Extension | None = None) -> TransversalityDiagnostics:
    E = extend_coisotropic(G) if E is None else E
    psi_G = coisotropic_wavefunction(E)
    psi_L = lagrangian_wavefunction(L)
    Khat = linalg.add([list(r) for r in psi_G.K], [list(r) for r in psi_L.K])
    A, _, _ = elimination_system(G, L, E)
    return TransversalityDiagnostics(linalg.det(Khat), linalg.rank(A), len(A))
