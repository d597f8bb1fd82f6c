"""Exact polynomials, hbar-truncated series and truncated power series.

Coefficients are :class:`fractions.Fraction` by default. Any exact field
element that supports ``+ - * /``, equality with ``0`` and truthiness (for
instance elements of a sympy fraction field) may also be used, which is how
the reduction code carries symbolic parameters.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import product as _cartesian
from math import isqrt
from operator import add
from typing import Any, Iterable, Iterator, Mapping, Sequence

Coeff = Any
Monomial = tuple[int, ...]


class ContextError(ValueError):
    """Operands live in different variable contexts."""


def coerce(c: Coeff) -> Coeff:
    if isinstance(c, bool):
        raise TypeError("boolean is not a coefficient")
    if isinstance(c, int):
        return Fraction(c)
    return c


def format_coeff(c: Coeff) -> str:
    if isinstance(c, Fraction):
        return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
    return f"({c})"


def _grlex_key(m: Monomial) -> tuple[int, Monomial]:
    return (sum(m), m)


class Poly:
    """Sparse multivariate polynomial over an exact field.

    ``terms`` maps exponent tuples (one entry per variable of ``vars``) to
    nonzero coefficients. Instances are treated as immutable.
    """

    __slots__ = ("vars", "terms")

    def __init__(self, terms: Mapping[Sequence[int], Coeff] | None = None, vars: Iterable[str] = ()):
        self.vars: tuple[str, ...] = tuple(vars)
        n = len(self.vars)
        clean: dict[Monomial, Coeff] = {}
        for m, c in (terms or {}).items():
            m = tuple(m)
            if len(m) != n:
                raise ContextError(f"monomial {m} does not match variables {self.vars}")
            if any(e < 0 for e in m):
                raise ValueError(f"negative exponent in {m}")
            c = coerce(c)
            if c != 0:
                clean[m] = clean[m] + c if m in clean else c
                if clean[m] == 0:
                    del clean[m]
        self.terms: dict[Monomial, Coeff] = clean

    # construction ---------------------------------------------------------
    @classmethod
    def _raw(cls, terms: dict[Monomial, Coeff], vars: tuple[str, ...]) -> "Poly":
        p = object.__new__(cls)
        p.vars = vars
        p.terms = terms
        return p

    @classmethod
    def zero(cls, vars: Iterable[str]) -> "Poly":
        return cls._raw({}, tuple(vars))

    @classmethod
    def const(cls, c: Coeff, vars: Iterable[str]) -> "Poly":
        vars = tuple(vars)
        c = coerce(c)
        return cls._raw({(0,) * len(vars): c} if c != 0 else {}, vars)

    @classmethod
    def one(cls, vars: Iterable[str]) -> "Poly":
        return cls.const(1, vars)

    @classmethod
    def gen(cls, name: str, vars: Iterable[str]) -> "Poly":
        vars = tuple(vars)
        i = _index(vars, name)
        m = [0] * len(vars)
        m[i] = 1
        return cls._raw({tuple(m): Fraction(1)}, vars)

    @classmethod
    def gens(cls, vars: Iterable[str]) -> tuple["Poly", ...]:
        vars = tuple(vars)
        return tuple(cls.gen(v, vars) for v in vars)

    @classmethod
    def monomial(cls, exps: Sequence[int], vars: Iterable[str], c: Coeff = 1) -> "Poly":
        return cls({tuple(exps): c}, vars)

    # inspection -----------------------------------------------------------
    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(sum(m) == 0 for m in self.terms)

    def constant_term(self) -> Coeff:
        return self.terms.get((0,) * len(self.vars), Fraction(0))

    def coeff(self, m: Sequence[int]) -> Coeff:
        return self.terms.get(tuple(m), Fraction(0))

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self.terms), default=-1)

    def degree_in(self, var: str | int) -> int:
        i = self._var_index(var)
        return max((m[i] for m in self.terms), default=-1)

    def sorted_terms(self, descending: bool = True) -> list[tuple[Monomial, Coeff]]:
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=descending)

    def __iter__(self) -> Iterator[tuple[Monomial, Coeff]]:
        return iter(self.sorted_terms())

    def __len__(self) -> int:
        return len(self.terms)

    def _var_index(self, var: str | int) -> int:
        if isinstance(var, int):
            if not 0 <= var < len(self.vars):
                raise ContextError(f"variable index {var} out of range for {self.vars}")
            return var
        return _index(self.vars, var)

    # arithmetic -----------------------------------------------------------
    def _lift(self, other: Any) -> "Poly":
        if isinstance(other, Poly):
            if other.vars != self.vars:
                raise ContextError(f"context mismatch: {self.vars} vs {other.vars}")
            return other
        return Poly.const(other, self.vars)

    def __add__(self, other: Any) -> "Poly":
        other = self._lift(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out[m] + c if m in out else c
            if s != 0:
                out[m] = s
            else:
                out.pop(m, None)
        return Poly._raw(out, self.vars)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly._raw({m: -c for m, c in self.terms.items()}, self.vars)

    def __sub__(self, other: Any) -> "Poly":
        return self + (-self._lift(other))

    def __rsub__(self, other: Any) -> "Poly":
        return self._lift(other) - self

    def __mul__(self, other: Any) -> "Poly":
        if not isinstance(other, Poly):
            c = coerce(other)
            if c == 0:
                return Poly.zero(self.vars)
            return Poly._raw({m: v * c for m, v in self.terms.items()}, self.vars)
        other = self._lift(other)
        out: dict[Monomial, Coeff] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(map(add, m1, m2))
                out[m] = out[m] + c1 * c2 if m in out else c1 * c2
        return Poly._raw({m: c for m, c in out.items() if c != 0}, self.vars)

    def __rmul__(self, other: Any) -> "Poly":
        return self * other

    def __truediv__(self, other: Any) -> "Poly":
        if isinstance(other, Poly):
            if not other.is_constant() or other.is_zero():
                raise ZeroDivisionError("only division by a nonzero constant is supported")
            other = other.constant_term()
        c = coerce(other)
        if c == 0:
            raise ZeroDivisionError("division by zero")
        return Poly._raw({m: v / c for m, v in self.terms.items()}, self.vars)

    def __pow__(self, k: int) -> "Poly":
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = Poly.one(self.vars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Poly):
            return self.vars == other.vars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == Poly.const(other, self.vars)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.vars, frozenset(self.terms.items())))

    # calculus and structure ----------------------------------------------
    def diff(self, var: str | int, times: int = 1) -> "Poly":
        i = self._var_index(var)
        out: dict[Monomial, Coeff] = {}
        for m, c in self.terms.items():
            e = m[i]
            if e < times:
                continue
            f = 1
            for t in range(times):
                f *= e - t
            mm = list(m)
            mm[i] = e - times
            out[tuple(mm)] = c * f
        return Poly._raw(out, self.vars)

    def homogeneous(self, d: int) -> "Poly":
        return Poly._raw({m: c for m, c in self.terms.items() if sum(m) == d}, self.vars)

    def truncate(self, d: int) -> "Poly":
        """Drop all terms of total degree above ``d``."""
        return Poly._raw({m: c for m, c in self.terms.items() if sum(m) <= d}, self.vars)

    def map_coeffs(self, f) -> "Poly":
        return Poly({m: f(c) for m, c in self.terms.items()}, self.vars)

    def embed(self, vars: Iterable[str]) -> "Poly":
        """Re-express in a context containing all current variables."""
        vars = tuple(vars)
        idx = [_index(vars, v) for v in self.vars]
        out = {}
        for m, c in self.terms.items():
            mm = [0] * len(vars)
            for i, e in zip(idx, m):
                mm[i] = e
            out[tuple(mm)] = c
        return Poly._raw(out, vars)

    def subs(self, values: Mapping[str, Any], vars: Iterable[str] | None = None) -> "Poly":
        """Substitute polynomials or scalars for variables.

        The result lives in ``vars`` (default: the current context). Variables
        not mentioned in ``values`` are kept and must exist in ``vars``.
        """
        target = self.vars if vars is None else tuple(vars)
        images: list[Poly] = []
        for v in self.vars:
            if v in values:
                val = values[v]
                if isinstance(val, Poly):
                    if val.vars != target:
                        val = val.embed(target)
                    images.append(val)
                else:
                    images.append(Poly.const(val, target))
            else:
                images.append(Poly.gen(v, target))
        cache: dict[tuple[int, int], Poly] = {}

        def power(i: int, e: int) -> Poly:
            if (i, e) not in cache:
                cache[(i, e)] = images[i] ** e
            return cache[(i, e)]

        result = Poly.zero(target)
        for m, c in self.terms.items():
            term = Poly.const(c, target)
            for i, e in enumerate(m):
                if e:
                    term = term * power(i, e)
            result = result + term
        return result

    def evaluate(self, values: Mapping[str, Coeff]) -> Coeff:
        total = Fraction(0)
        for m, c in self.terms.items():
            t = c
            for v, e in zip(self.vars, m):
                if e:
                    t = t * coerce(values[v]) ** e
            total = total + t
        return total

    def linear_coefficients(self) -> tuple[list[Coeff], Coeff]:
        """Return ``(coefficients per variable, constant)`` of a degree <= 1 poly."""
        if self.degree() > 1:
            raise ValueError("polynomial is not affine-linear")
        n = len(self.vars)
        coeffs = []
        for i in range(n):
            m = [0] * n
            m[i] = 1
            coeffs.append(self.coeff(m))
        return coeffs, self.constant_term()

    # printing -------------------------------------------------------------
    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for m, c in self.sorted_terms():
            mono = "*".join(
                v if e == 1 else f"{v}^{e}" for v, e in zip(self.vars, m) if e
            )
            if isinstance(c, Fraction):
                neg = c < 0
                a = -c if neg else c
                if mono and a == 1:
                    body = mono
                elif mono:
                    body = f"{format_coeff(a)}*{mono}"
                else:
                    body = format_coeff(a)
            else:
                neg = False
                body = f"{format_coeff(c)}*{mono}" if mono else format_coeff(c)
            if not pieces:
                pieces.append(f"-{body}" if neg else body)
            else:
                pieces.append(f" - {body}" if neg else f" + {body}")
        return "".join(pieces)

    def __repr__(self) -> str:
        return f"Poly({self}, vars={self.vars})"


def _index(vars: tuple[str, ...], name: str) -> int:
    try:
        return vars.index(name)
    except ValueError:
        raise ContextError(f"unknown variable {name!r} in context {vars}") from None


def poly_mul(a: Poly, b: Poly) -> Poly:
    if a.vars != b.vars:
        raise ContextError(f"context mismatch: {a.vars} vs {b.vars}")
    return a * b


def poly_diff(a: Poly, var: str | int) -> Poly:
    return a.diff(var)


# ---------------------------------------------------------------------------
# hbar-truncated series


class HSeries:
    """Element of ``k[vars][[hbar]]`` truncated after ``hbar**order``."""

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: Sequence[Poly], order: int | None = None):
        coeffs = list(coeffs)
        if not coeffs:
            raise ValueError("HSeries needs at least one coefficient to fix the context")
        if order is None:
            order = len(coeffs) - 1
        if order < 0:
            raise ValueError("order must be non-negative")
        vars = coeffs[0].vars
        if any(c.vars != vars for c in coeffs):
            raise ContextError("HSeries coefficients must share a context")
        coeffs = coeffs[: order + 1]
        coeffs += [Poly.zero(vars)] * (order + 1 - len(coeffs))
        self.coeffs: tuple[Poly, ...] = tuple(coeffs)
        self.order = order

    @classmethod
    def from_poly(cls, p: Poly, order: int) -> "HSeries":
        return cls([p], order)

    @classmethod
    def zero(cls, vars: Iterable[str], order: int) -> "HSeries":
        return cls([Poly.zero(vars)], order)

    @classmethod
    def lift(cls, f: "HSeries | Poly", order: int) -> "HSeries":
        if isinstance(f, HSeries):
            return f.truncate(order) if f.order > order else cls(f.coeffs, order) if f.order < order else f
        return cls.from_poly(f, order)

    @property
    def vars(self) -> tuple[str, ...]:
        return self.coeffs[0].vars

    def __getitem__(self, k: int) -> Poly:
        if k < 0 or k > self.order:
            return Poly.zero(self.vars)
        return self.coeffs[k]

    def truncate(self, order: int) -> "HSeries":
        return HSeries(self.coeffs[: order + 1], min(order, self.order))

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def _pair(self, other: Any) -> tuple["HSeries", "HSeries"]:
        if isinstance(other, HSeries):
            n = min(self.order, other.order)
            return self.truncate(n), other.truncate(n)
        if isinstance(other, Poly):
            return self, HSeries.from_poly(other, self.order)
        return self, HSeries.from_poly(Poly.const(other, self.vars), self.order)

    def __add__(self, other: Any) -> "HSeries":
        a, b = self._pair(other)
        return HSeries([x + y for x, y in zip(a.coeffs, b.coeffs)], a.order)

    __radd__ = __add__

    def __neg__(self) -> "HSeries":
        return HSeries([-c for c in self.coeffs], self.order)

    def __sub__(self, other: Any) -> "HSeries":
        a, b = self._pair(other)
        return HSeries([x - y for x, y in zip(a.coeffs, b.coeffs)], a.order)

    def __rsub__(self, other: Any) -> "HSeries":
        return (-self) + other

    def __mul__(self, other: Any) -> "HSeries":
        """Commutative (pointwise) product; the star product lives in :mod:`star`."""
        if not isinstance(other, (HSeries, Poly)):
            return HSeries([c * other for c in self.coeffs], self.order)
        a, b = self._pair(other)
        n = a.order
        out = [Poly.zero(a.vars) for _ in range(n + 1)]
        for i, ci in enumerate(a.coeffs):
            if ci.is_zero():
                continue
            for j in range(n + 1 - i):
                if not b.coeffs[j].is_zero():
                    out[i + j] = out[i + j] + ci * b.coeffs[j]
        return HSeries(out, n)

    def __rmul__(self, other: Any) -> "HSeries":
        return self * other

    def shift(self, k: int) -> "HSeries":
        """Multiply by ``hbar**k`` (k >= 0), keeping the order."""
        if k < 0:
            raise ValueError("use divide_hbar for negative shifts")
        zero = Poly.zero(self.vars)
        return HSeries([zero] * k + list(self.coeffs), self.order)

    def divide_hbar(self) -> "HSeries":
        """Exact division by hbar; the result has order one lower."""
        if not self.coeffs[0].is_zero():
            raise ValueError("series is not divisible by hbar")
        if self.order == 0:
            raise ValueError("cannot divide an order-0 series by hbar")
        return HSeries(self.coeffs[1:], self.order - 1)

    def map(self, f) -> "HSeries":
        return HSeries([f(c) for c in self.coeffs], self.order)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, HSeries):
            return self.order == other.order and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.order, self.coeffs))

    def __str__(self) -> str:
        parts = []
        for k, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            if k == 0:
                parts.append(f"({c})")
            elif k == 1:
                parts.append(f"({c})*hbar")
            else:
                parts.append(f"({c})*hbar^{k}")
        body = " + ".join(parts) if parts else "0"
        return f"{body} + O(hbar^{self.order + 1})"

    def __repr__(self) -> str:
        return f"HSeries({self})"


# ---------------------------------------------------------------------------
# truncated power series in the base variables


class XSeries:
    """Power series in ``vars`` with every term of total degree above ``cap`` dropped."""

    __slots__ = ("poly", "cap")

    def __init__(self, poly: Poly, cap: int):
        if cap < 0:
            raise ValueError("degree cap must be non-negative")
        self.poly = poly.truncate(cap)
        self.cap = cap

    @classmethod
    def from_coefficients(cls, coeffs: Sequence[Coeff], var: str = "x", cap: int | None = None) -> "XSeries":
        cap = len(coeffs) - 1 if cap is None else cap
        return cls(Poly({(k,): c for k, c in enumerate(coeffs)}, (var,)), cap)

    @classmethod
    def const(cls, c: Coeff, vars: Iterable[str], cap: int) -> "XSeries":
        return cls(Poly.const(c, vars), cap)

    @property
    def vars(self) -> tuple[str, ...]:
        return self.poly.vars

    def component(self, d: int) -> Poly:
        """Homogeneous part of total degree ``d``."""
        return self.poly.homogeneous(d)

    def components(self) -> list[Poly]:
        return [self.component(d) for d in range(self.cap + 1)]

    def coefficients(self) -> list[Coeff]:
        """Coefficient list for a univariate series."""
        if len(self.vars) != 1:
            raise ValueError("coefficients() needs a single-variable series")
        return [self.poly.coeff((d,)) for d in range(self.cap + 1)]

    def constant_term(self) -> Coeff:
        return self.poly.constant_term()

    def is_zero(self) -> bool:
        return self.poly.is_zero()

    def with_cap(self, cap: int) -> "XSeries":
        if cap > self.cap:
            raise ValueError("cannot raise the cap of a truncated series")
        return XSeries(self.poly, cap)

    def _pair(self, other: Any) -> tuple[Poly, int]:
        if isinstance(other, XSeries):
            if other.vars != self.vars:
                raise ContextError(f"context mismatch: {self.vars} vs {other.vars}")
            return other.poly, min(self.cap, other.cap)
        if isinstance(other, Poly):
            return other, self.cap
        return Poly.const(other, self.vars), self.cap

    def __add__(self, other: Any) -> "XSeries":
        p, cap = self._pair(other)
        return XSeries(self.poly.truncate(cap) + p.truncate(cap), cap)

    __radd__ = __add__

    def __neg__(self) -> "XSeries":
        return XSeries(-self.poly, self.cap)

    def __sub__(self, other: Any) -> "XSeries":
        p, cap = self._pair(other)
        return XSeries(self.poly.truncate(cap) - p.truncate(cap), cap)

    def __rsub__(self, other: Any) -> "XSeries":
        return (-self) + other

    def __mul__(self, other: Any) -> "XSeries":
        if not isinstance(other, (XSeries, Poly)):
            return XSeries(self.poly * other, self.cap)
        p, cap = self._pair(other)
        a = self.poly.truncate(cap)
        b = p.truncate(cap)
        out: dict[Monomial, Coeff] = {}
        for m1, c1 in a.terms.items():
            d1 = sum(m1)
            for m2, c2 in b.terms.items():
                if d1 + sum(m2) > cap:
                    continue
                m = tuple(map(add, m1, m2))
                out[m] = out[m] + c1 * c2 if m in out else c1 * c2
        return XSeries(Poly({m: c for m, c in out.items() if c != 0}, self.vars), cap)

    def __rmul__(self, other: Any) -> "XSeries":
        return self * other

    def __pow__(self, k: int) -> "XSeries":
        result = XSeries.const(1, self.vars, self.cap)
        for _ in range(k):
            result = result * self
        return result

    def diff(self, var: str | int) -> "XSeries":
        """Derivative; the result is only reliable up to ``cap - 1``."""
        return XSeries(self.poly.diff(var), max(self.cap - 1, 0))

    def inverse(self) -> "XSeries":
        return series_inverse(self)

    def sqrt(self) -> "XSeries":
        return series_sqrt(self)

    def integrate(self, var: str | int = 0) -> "XSeries":
        return formal_integrate(self, var)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, XSeries):
            return self.cap == other.cap and self.poly == other.poly
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.cap, self.poly))

    def __str__(self) -> str:
        return f"{self.poly} + O(deg {self.cap + 1})"

    def __repr__(self) -> str:
        return f"XSeries({self})"


def series_inverse(a: XSeries) -> XSeries:
    """Multiplicative inverse up to the degree cap (needs a unit constant term)."""
    a0 = a.constant_term()
    if a0 == 0:
        raise ZeroDivisionError("series with zero constant term is not invertible")
    inv0 = 1 / coerce(a0)
    comps = a.components()
    out = [Poly.const(inv0, a.vars)]
    for d in range(1, a.cap + 1):
        acc = Poly.zero(a.vars)
        for k in range(1, d + 1):
            if not comps[k].is_zero() and not out[d - k].is_zero():
                acc = acc + comps[k] * out[d - k]
        out.append(acc * (-inv0))
    return XSeries(sum(out[1:], out[0]), a.cap)


def rational_sqrt(q: Coeff) -> Fraction:
    q = Fraction(q)
    if q < 0:
        raise ValueError(f"{q} has no rational square root")
    n, d = isqrt(q.numerator), isqrt(q.denominator)
    if n * n != q.numerator or d * d != q.denominator:
        raise ValueError(f"{q} is not the square of a rational")
    return Fraction(n, d)


def series_sqrt(a: XSeries) -> XSeries:
    """Square root whose constant term is the positive rational root of ``a(0)``."""
    b0 = rational_sqrt(a.constant_term())
    if b0 == 0:
        raise ValueError("square root needs a nonzero constant term")
    comps = a.components()
    out = [Poly.const(b0, a.vars)]
    for d in range(1, a.cap + 1):
        acc = comps[d]
        for k in range(1, d):
            if not out[k].is_zero() and not out[d - k].is_zero():
                acc = acc - out[k] * out[d - k]
        out.append(acc / (2 * b0))
    return XSeries(sum(out[1:], out[0]), a.cap)


def formal_integrate(a: XSeries, var: str | int = 0) -> XSeries:
    """Term-wise antiderivative with zero constant term; the cap grows by one."""
    if len(a.vars) != 1:
        raise ValueError("formal integration is defined for single-variable series")
    out = {(m[0] + 1,): c / (m[0] + 1) for m, c in a.poly.terms.items()}
    return XSeries(Poly(out, a.vars), a.cap + 1)


def compose(p: Poly, values: Mapping[str, XSeries], vars: Iterable[str] | None = None, cap: int | None = None) -> XSeries:
    """Evaluate ``p`` with truncated series substituted for (some of) its variables.

    Variables of ``p`` without a substitute are taken from the target context.
    """
    series = list(values.values())
    if vars is None:
        vars = series[0].vars if series else p.vars
    vars = tuple(vars)
    if cap is None:
        cap = min(s.cap for s in series) if series else max(p.degree(), 0)
    images = []
    for v in p.vars:
        if v in values:
            s = values[v]
            if s.vars != vars:
                raise ContextError(f"substitute for {v} is not in context {vars}")
            images.append(s.with_cap(min(cap, s.cap)) if s.cap != cap else s)
        else:
            images.append(XSeries(Poly.gen(v, vars), cap))
    powers: dict[tuple[int, int], XSeries] = {}

    def power(i: int, e: int) -> XSeries:
        if (i, e) not in powers:
            powers[(i, e)] = images[i] if e == 1 else power(i, e - 1) * images[i]
        return powers[(i, e)]

    total = XSeries(Poly.zero(vars), cap)
    for m, c in p.terms.items():
        term = XSeries.const(c, vars, cap)
        for i, e in enumerate(m):
            if e:
                term = term * power(i, e)
        total = total + term
    return total


def monomials_up_to(nvars: int, degree: int) -> list[Monomial]:
    """All exponent tuples of total degree <= ``degree`` in grlex order."""
    out = [m for m in _cartesian(range(degree + 1), repeat=nvars) if sum(m) <= degree]
    return sorted(out, key=_grlex_key)
