"""Small dense linear algebra over an exact field.

Entries may be Fractions or elements of a rational-function field in
symbolic parameters (see :func:`parameter_field`). Pivots are chosen as the
first entry that is nonzero in the field, so symbolic results are generic:
valid wherever the chosen pivots do not vanish.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Mapping, Sequence

Matrix = list[list[Any]]

ZERO = Fraction(0)
ONE = Fraction(1)


class SingularMatrixError(ZeroDivisionError):
    pass


def shape(A: Sequence[Sequence[Any]]) -> tuple[int, int]:
    return len(A), (len(A[0]) if A else 0)


def copy(A: Sequence[Sequence[Any]]) -> Matrix:
    return [list(row) for row in A]


def identity(n: int) -> Matrix:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def zeros(n: int, m: int) -> Matrix:
    return [[ZERO] * m for _ in range(n)]


def transpose(A: Sequence[Sequence[Any]]) -> Matrix:
    n, m = shape(A)
    return [[A[i][j] for i in range(n)] for j in range(m)]


def matmul(A: Sequence[Sequence[Any]], B: Sequence[Sequence[Any]]) -> Matrix:
    n, k = shape(A)
    k2, m = shape(B)
    if k != k2:
        raise ValueError(f"shape mismatch {n}x{k} @ {k2}x{m}")
    out = zeros(n, m)
    for i in range(n):
        for j in range(m):
            acc = ZERO
            for t in range(k):
                if A[i][t] != 0 and B[t][j] != 0:
                    acc = acc + A[i][t] * B[t][j]
            out[i][j] = acc
    return out


def matvec(A: Sequence[Sequence[Any]], v: Sequence[Any]) -> list[Any]:
    return [row[0] for row in matmul(A, [[x] for x in v])]


def add(A: Sequence[Sequence[Any]], B: Sequence[Sequence[Any]]) -> Matrix:
    if shape(A) != shape(B):
        raise ValueError("shape mismatch")
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def scale(A: Sequence[Sequence[Any]], c: Any) -> Matrix:
    return [[a * c for a in row] for row in A]


def is_symmetric(A: Sequence[Sequence[Any]]) -> bool:
    n, m = shape(A)
    return n == m and all(A[i][j] == A[j][i] for i in range(n) for j in range(i + 1, n))


def is_skew(A: Sequence[Sequence[Any]]) -> bool:
    n, m = shape(A)
    return n == m and all(A[i][j] == -A[j][i] for i in range(n) for j in range(n))


def rref(A: Sequence[Sequence[Any]]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and the pivot columns."""
    R = copy(A)
    n, m = shape(R)
    pivots: list[int] = []
    r = 0
    for c in range(m):
        p = next((i for i in range(r, n) if R[i][c] != 0), None)
        if p is None:
            continue
        R[r], R[p] = R[p], R[r]
        inv = ONE / R[r][c]
        R[r] = [x * inv for x in R[r]]
        for i in range(n):
            if i != r and R[i][c] != 0:
                f = R[i][c]
                R[i] = [x - f * y for x, y in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
        if r == n:
            break
    return R, pivots


def rank(A: Sequence[Sequence[Any]]) -> int:
    if not A:
        return 0
    return len(rref(A)[1])


def det(A: Sequence[Sequence[Any]]) -> Any:
    n, m = shape(A)
    if n != m:
        raise ValueError("determinant of a non-square matrix")
    R = copy(A)
    result: Any = ONE
    for c in range(n):
        p = next((i for i in range(c, n) if R[i][c] != 0), None)
        if p is None:
            return ZERO
        if p != c:
            R[c], R[p] = R[p], R[c]
            result = -result
        result = result * R[c][c]
        inv = ONE / R[c][c]
        for i in range(c + 1, n):
            if R[i][c] != 0:
                f = R[i][c] * inv
                R[i] = [x - f * y for x, y in zip(R[i], R[c])]
    return result


def solve(A: Sequence[Sequence[Any]], B: Sequence[Sequence[Any]]) -> Matrix:
    """Solve ``A X = B`` for square invertible ``A``."""
    n, m = shape(A)
    if n != m:
        raise ValueError("solve needs a square matrix")
    aug = [list(A[i]) + list(B[i]) for i in range(n)]
    R, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise SingularMatrixError("matrix is singular")
    return [row[n:] for row in R]


def inverse(A: Sequence[Sequence[Any]]) -> Matrix:
    return solve(A, identity(len(A)))


def nullspace(A: Sequence[Sequence[Any]]) -> list[list[Any]]:
    """Basis of ``{v : A v = 0}``."""
    n, m = shape(A)
    if n == 0:
        return [[ONE if i == j else ZERO for i in range(m)] for j in range(m)]
    R, pivots = rref(A)
    free = [c for c in range(m) if c not in pivots]
    basis = []
    for f in free:
        v = [ZERO] * m
        v[f] = ONE
        for r, p in enumerate(pivots):
            v[p] = -R[r][f]
        basis.append(v)
    return basis


def in_span(vectors: Sequence[Sequence[Any]], v: Sequence[Any]) -> bool:
    if not vectors:
        return all(x == 0 for x in v)
    return rank(list(vectors) + [list(v)]) == rank(vectors)


# ---------------------------------------------------------------------------
# coefficient fields


@dataclass(frozen=True)
class RationalField:
    """The rationals, as Fractions."""

    symbolic = False

    def convert(self, x: Any) -> Fraction:
        return Fraction(x)

    def gens(self) -> tuple:
        return ()

    def evaluate(self, x: Any, values: Mapping[str, Any]) -> Fraction:
        return Fraction(x)


QQ = RationalField()


class ParameterField:
    """Rational functions in named parameters over the rationals.

    Backed by sympy's sparse fraction field, which keeps numerators and
    denominators coprime so symbolic equality is exact.
    """

    symbolic = True

    def __init__(self, names: Sequence[str]):
        import sympy
        from sympy import QQ as _SQQ

        self.names = tuple(names)
        self._symbols = sympy.symbols(self.names)
        self._field = _SQQ.frac_field(*self._symbols)

    def __repr__(self) -> str:
        return f"ParameterField({', '.join(self.names)})"

    def gens(self) -> tuple:
        return tuple(self._field.gens)

    def gen(self, name: str) -> Any:
        return self._field.gens[self.names.index(name)]

    def convert(self, x: Any) -> Any:
        if isinstance(x, Fraction):
            return self._field(x.numerator) / self._field(x.denominator)
        return self._field(x)

    def is_element(self, x: Any) -> bool:
        return getattr(x, "field", None) == self._field.field

    def evaluate(self, x: Any, values: Mapping[str, Any]) -> Fraction:
        """Specialise a field element at rational parameter values."""
        if not self.is_element(x):
            return Fraction(x)
        point = [Fraction(values[n]) for n in self.names]
        num = _eval_poly(x.numer, point)
        den = _eval_poly(x.denom, point)
        if den == 0:
            raise ZeroDivisionError("denominator vanishes at the requested parameter values")
        return num / den


def _eval_poly(p: Any, point: list[Fraction]) -> Fraction:
    total = Fraction(0)
    for monom, coeff in p.terms():
        t = Fraction(int(coeff.numerator), int(coeff.denominator))
        for e, v in zip(monom, point):
            if e:
                t *= v ** e
        total += t
    return total


def parameter_field(names: Sequence[str]) -> ParameterField:
    return ParameterField(names)


def specialize(A: Any, field: Any, values: Mapping[str, Any]) -> Any:
    """Evaluate a scalar, vector or matrix of field elements at a parameter point."""
    if isinstance(A, (list, tuple)):
        return [specialize(a, field, values) for a in A]
    return field.evaluate(A, values)
