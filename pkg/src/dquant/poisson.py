"""Constant-coefficient Poisson bi-vectors, bi-maps and brackets."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Sequence

from . import linalg
from .algebra import ContextError, Monomial, Poly, coerce


def _as_matrix(A: Sequence[Sequence[Any]]) -> list[list[Any]]:
    return [[coerce(x) for x in row] for row in A]


@dataclass(frozen=True)
class BiVector:
    """Skew matrix ``pi[i][j]`` so that ``{v_i, v_j} = pi[i][j]``."""

    pi: tuple[tuple[Any, ...], ...]
    vars: tuple[str, ...]

    def __init__(self, pi: Sequence[Sequence[Any]], vars: Iterable[str]):
        m = _as_matrix(pi)
        vars = tuple(vars)
        if linalg.shape(m) != (len(vars), len(vars)):
            raise ValueError(f"bi-vector must be {len(vars)}x{len(vars)}")
        if not linalg.is_skew(m):
            raise ValueError("bi-vector matrix must be skew-symmetric")
        object.__setattr__(self, "pi", tuple(tuple(r) for r in m))
        object.__setattr__(self, "vars", vars)

    @property
    def dim(self) -> int:
        return len(self.vars)

    def matrix(self) -> list[list[Any]]:
        return [list(r) for r in self.pi]


@dataclass(frozen=True)
class GaugePart:
    """Symmetric matrix ``gamma`` of a gauge transformation."""

    gamma: tuple[tuple[Any, ...], ...]
    vars: tuple[str, ...]

    def __init__(self, gamma: Sequence[Sequence[Any]], vars: Iterable[str]):
        m = _as_matrix(gamma)
        vars = tuple(vars)
        if linalg.shape(m) != (len(vars), len(vars)):
            raise ValueError(f"gauge matrix must be {len(vars)}x{len(vars)}")
        if not linalg.is_symmetric(m):
            raise ValueError("gauge matrix must be symmetric")
        object.__setattr__(self, "gamma", tuple(tuple(r) for r in m))
        object.__setattr__(self, "vars", vars)

    @property
    def dim(self) -> int:
        return len(self.vars)

    def matrix(self) -> list[list[Any]]:
        return [list(r) for r in self.gamma]

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.gamma for x in r)

    def scaled(self, c: Any) -> "GaugePart":
        return GaugePart([[x * c for x in r] for r in self.gamma], self.vars)


@dataclass(frozen=True)
class DarbouxFrame:
    """Paired coordinates ``(x_i, y_i)`` with ``{x_i, y_i} = sign``.

    The conic example uses ``sign = -1`` (that is ``{y, x} = 1``); the 4D
    reduction example uses ``sign = +1``.
    """

    xs: tuple[str, ...]
    ys: tuple[str, ...]
    sign: int = -1

    def __post_init__(self):
        if len(self.xs) != len(self.ys):
            raise ValueError("every x needs a partner y")
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        if len(set(self.xs + self.ys)) != 2 * len(self.xs):
            raise ValueError("frame variables must be distinct")

    @property
    def vars(self) -> tuple[str, ...]:
        return self.xs + self.ys

    @property
    def n(self) -> int:
        return len(self.xs)

    def bivector(self) -> BiVector:
        n = self.n
        pi = linalg.zeros(2 * n, 2 * n)
        for i in range(n):
            pi[i][n + i] = Fraction(self.sign)
            pi[n + i][i] = Fraction(-self.sign)
        return BiVector(pi, self.vars)

    def opposite(self) -> "DarbouxFrame":
        return DarbouxFrame(self.xs, self.ys, -self.sign)

    def partner(self, y: str) -> str:
        return self.xs[self.ys.index(y)]


def conic_frame() -> DarbouxFrame:
    """Coordinates ``(x, y)`` with ``{y, x} = 1``."""
    return DarbouxFrame(("x",), ("y",), -1)


def standard_bivector(n: int = 1, sign: int = -1) -> BiVector:
    if n == 1:
        return DarbouxFrame(("x",), ("y",), sign).bivector()
    xs = tuple(f"x{i + 1}" for i in range(n))
    ys = tuple(f"y{i + 1}" for i in range(n))
    return DarbouxFrame(xs, ys, sign).bivector()


def skew_split(tau: Sequence[Sequence[Any]], vars: Iterable[str] | None = None) -> tuple[BiVector, GaugePart]:
    """Split ``tau`` into skew part ``(tau - tau^T)/2`` and symmetric part ``(tau + tau^T)/2``."""
    t = _as_matrix(tau)
    n, m = linalg.shape(t)
    if n != m:
        raise ValueError("tau must be square")
    vars = tuple(vars) if vars is not None else tuple(f"v{i}" for i in range(n))
    half = Fraction(1, 2)
    pi = [[(t[i][j] - t[j][i]) * half for j in range(n)] for i in range(n)]
    gamma = [[(t[i][j] + t[j][i]) * half for j in range(n)] for i in range(n)]
    return BiVector(pi, vars), GaugePart(gamma, vars)


# ---------------------------------------------------------------------------
# tensors


class Tensor:
    """Finite sum of pure tensors of monomials, ``sum c * m_1 (x) ... (x) m_k``."""

    __slots__ = ("vars", "arity", "terms")

    def __init__(self, terms: dict[tuple[Monomial, ...], Any], vars: tuple[str, ...], arity: int):
        self.vars = vars
        self.arity = arity
        self.terms = {k: v for k, v in terms.items() if v != 0}

    @classmethod
    def pure(cls, factors: Sequence[Poly]) -> "Tensor":
        vars = factors[0].vars
        if any(f.vars != vars for f in factors):
            raise ContextError("tensor factors must share a context")
        terms: dict[tuple[Monomial, ...], Any] = {(): Fraction(1)}
        for f in factors:
            nxt: dict[tuple[Monomial, ...], Any] = {}
            for key, c in terms.items():
                for m, d in f.terms.items():
                    k = key + (m,)
                    nxt[k] = nxt.get(k, 0) + c * d
            terms = nxt
        return cls(terms, vars, len(factors))

    def __add__(self, other: "Tensor") -> "Tensor":
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return Tensor(out, self.vars, self.arity)

    def __neg__(self) -> "Tensor":
        return Tensor({k: -c for k, c in self.terms.items()}, self.vars, self.arity)

    def __sub__(self, other: "Tensor") -> "Tensor":
        return self + (-other)

    def __mul__(self, c: Any) -> "Tensor":
        return Tensor({k: v * c for k, v in self.terms.items()}, self.vars, self.arity)

    __rmul__ = __mul__

    def _check(self, other: "Tensor") -> None:
        if self.vars != other.vars or self.arity != other.arity:
            raise ContextError("tensor context or arity mismatch")

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Tensor):
            return NotImplemented
        return self.vars == other.vars and self.arity == other.arity and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.vars, self.arity, frozenset(self.terms.items())))

    def prod(self) -> Poly:
        """Multiply the factors together."""
        out: dict[Monomial, Any] = {}
        for key, c in self.terms.items():
            m = tuple(sum(e) for e in zip(*key))
            out[m] = out.get(m, 0) + c
        return Poly(out, self.vars)

    @property
    def pairs(self) -> list[tuple[Poly, Poly]]:
        """Arity-2 tensors as a list of ``(f_a, g_a)`` with ``sum f_a (x) g_a``."""
        if self.arity != 2:
            raise ValueError("pairs is defined for arity-2 tensors")
        return [
            (Poly({m1: c}, self.vars), Poly({m2: 1}, self.vars))
            for (m1, m2), c in sorted(self.terms.items())
        ]

    def __repr__(self) -> str:
        body = " + ".join(
            f"{c}*" + " (x) ".join(str(Poly({m: 1}, self.vars)) for m in key)
            for key, c in sorted(self.terms.items())
        )
        return f"Tensor({body or '0'})"


def TensorSum(pairs: Iterable[tuple[Poly, Poly]], vars: Iterable[str] | None = None) -> Tensor:
    """Build ``sum_a f_a (x) g_a`` from pairs."""
    pairs = list(pairs)
    if not pairs:
        if vars is None:
            raise ValueError("empty TensorSum needs an explicit context")
        return Tensor({}, tuple(vars), 2)
    total = Tensor.pure([pairs[0][0], pairs[0][1]])
    for f, g in pairs[1:]:
        total = total + Tensor.pure([f, g])
    return total


def _d(m: Monomial, i: int) -> tuple[int, Monomial] | None:
    e = m[i]
    if e == 0:
        return None
    mm = list(m)
    mm[i] = e - 1
    return e, tuple(mm)


@dataclass(frozen=True)
class BiMap:
    """Constant bi-map ``tau(f (x) g) = tau^{ij} d_i f (x) d_j g``.

    With ``braided=True`` the map is composed with the signed swap,
    ``f (x) g -> -tau^{ij} d_i g (x) d_j f``.
    """

    matrix: tuple[tuple[Any, ...], ...]
    braided: bool = False

    @classmethod
    def of(cls, m: Any, braided: bool = False) -> "BiMap":
        if isinstance(m, BiVector):
            m = m.pi
        elif isinstance(m, GaugePart):
            m = m.gamma
        return cls(tuple(tuple(coerce(x) for x in row) for row in m), braided)

    def entries(self) -> list[tuple[int, int, Any]]:
        return [(i, j, c) for i, row in enumerate(self.matrix) for j, c in enumerate(row) if c != 0]

    def apply(self, t: Tensor, slot: int = 0) -> Tensor:
        """Act on tensor slots ``slot`` and ``slot + 1``."""
        if len(self.matrix) != len(t.vars):
            raise ValueError(f"bi-map of size {len(self.matrix)} on {len(t.vars)} variables")
        if not 0 <= slot < t.arity - 1:
            raise ValueError("slot out of range")
        ents = self.entries()
        out: dict[tuple[Monomial, ...], Any] = {}
        for key, c in t.terms.items():
            a, b = key[slot], key[slot + 1]
            for i, j, p in ents:
                if self.braided:
                    da, db = _d(b, i), _d(a, j)
                    sgn = -1
                else:
                    da, db = _d(a, i), _d(b, j)
                    sgn = 1
                if da is None or db is None:
                    continue
                k = key[:slot] + (da[1], db[1]) + key[slot + 2:]
                out[k] = out.get(k, 0) + sgn * c * p * da[0] * db[0]
        return Tensor(out, t.vars, t.arity)


def bimap_apply(m: Any, t: Tensor) -> Tensor:
    """Apply a constant bi-map (matrix, BiVector, GaugePart or BiMap) to a tensor."""
    bm = m if isinstance(m, BiMap) else BiMap.of(m)
    return bm.apply(t)


def bracket(f: Poly, g: Poly, b: BiVector) -> Poly:
    """Poisson bracket ``{f, g} = pi^{ij} d_i f d_j g``."""
    if f.vars != g.vars:
        raise ContextError("bracket operands must share a context")
    if f.vars != b.vars:
        raise ValueError(f"bi-vector is for {b.vars}, operands use {f.vars}")
    return bimap_apply(b, Tensor.pure([f, g])).prod()


# ---------------------------------------------------------------------------
# ideals


@dataclass(frozen=True)
class LinearIdeal:
    """Ideal generated by affine-linear polynomials."""

    generators: tuple[Poly, ...]

    def __init__(self, generators: Iterable[Poly]):
        gens = tuple(generators)
        if not gens:
            raise ValueError("an ideal needs at least one generator")
        vars = gens[0].vars
        if any(g.vars != vars for g in gens):
            raise ContextError("generators must share a context")
        if any(g.degree() > 1 for g in gens):
            raise ValueError("LinearIdeal generators must have degree <= 1")
        vecs = [_affine_vector(g) for g in gens]
        if linalg.rank(vecs) != len(vecs):
            raise ValueError("generators are linearly dependent")
        object.__setattr__(self, "generators", gens)

    @property
    def vars(self) -> tuple[str, ...]:
        return self.generators[0].vars

    def contains(self, p: Poly) -> bool:
        """Membership for affine-linear ``p``.

        For affine generators, a degree <= 1 element lies in the ideal iff it
        is a constant-coefficient combination of the generators (this also
        covers the inconsistent case where the ideal is the whole ring).
        """
        if p.degree() > 1:
            raise ValueError("membership is only decided for degree <= 1 elements")
        vecs = [_affine_vector(g) for g in self.generators]
        if p.is_zero() or _is_unit_ideal(vecs):
            return True
        return linalg.in_span(vecs, _affine_vector(p))


def _affine_vector(p: Poly) -> list[Any]:
    coeffs, c0 = p.linear_coefficients()
    return list(coeffs) + [c0]


def _is_unit_ideal(vecs: list[list[Any]]) -> bool:
    unit = [0] * (len(vecs[0]) - 1) + [1]
    return linalg.in_span(vecs, unit)


def is_coisotropic(ideal: LinearIdeal | Poly | Sequence[Poly], b: BiVector) -> bool:
    """Whether the ideal is closed under the bracket of ``b``.

    Supported shapes: a single generator of any degree (always closed, as
    ``{H, H} = 0``), or any number of affine-linear generators.
    """
    if isinstance(ideal, Poly):
        ideal = [ideal]
    if not isinstance(ideal, LinearIdeal):
        gens = list(ideal)
        if len(gens) == 1:
            h = gens[0]
            return bracket(h, h, b).is_zero()
        if any(g.degree() > 1 for g in gens):
            raise ValueError("unsupported ideal: several generators, not all linear")
        ideal = LinearIdeal(gens)
    gens = ideal.generators
    if gens[0].vars != b.vars:
        raise ValueError("ideal and bi-vector use different variables")
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            if not ideal.contains(bracket(gens[i], gens[j], b)):
                return False
    return True
