"""Normal-ordered Weyl algebra in ``x_i`` and ``D_i = hbar d/dx_i``."""
from __future__ import annotations

from fractions import Fraction
from itertools import product as _cartesian
from math import comb, factorial
from typing import Any, Mapping, Sequence

from .algebra import ContextError, HSeries, Poly, XSeries, coerce
from .poisson import DarbouxFrame, conic_frame

# term key: (hbar power, x exponents, D exponents)
Key = tuple[int, tuple[int, ...], tuple[int, ...]]

DEFAULT_ORDER = 6


class WeylOp:
    """Sum of ``c * hbar^h * x^a * D^b`` with every ``x`` to the left of every ``D``.

    ``frame`` fixes which ``y`` is quantised to which ``D``; the ``x`` names
    are the variables the operator acts on.
    """

    __slots__ = ("frame", "order", "terms")

    def __init__(self, terms: Mapping[Key, Any], frame: DarbouxFrame, order: int = DEFAULT_ORDER):
        n = frame.n
        clean: dict[Key, Any] = {}
        for (h, a, b), c in terms.items():
            if len(a) != n or len(b) != n:
                raise ContextError("exponent vectors do not match the frame")
            if h > order:
                continue
            c = coerce(c)
            if c != 0:
                k = (h, tuple(a), tuple(b))
                s = clean.get(k, 0) + c
                if s != 0:
                    clean[k] = s
                else:
                    clean.pop(k, None)
        self.frame = frame
        self.order = order
        self.terms = clean

    # constructors ---------------------------------------------------------
    @classmethod
    def zero(cls, frame: DarbouxFrame, order: int = DEFAULT_ORDER) -> "WeylOp":
        return cls({}, frame, order)

    @classmethod
    def scalar(cls, c: Any, frame: DarbouxFrame, order: int = DEFAULT_ORDER, hbar: int = 0) -> "WeylOp":
        z = (0,) * frame.n
        return cls({(hbar, z, z): c}, frame, order)

    @classmethod
    def x(cls, i: int | str, frame: DarbouxFrame, order: int = DEFAULT_ORDER) -> "WeylOp":
        i = frame.xs.index(i) if isinstance(i, str) else i
        a = tuple(int(k == i) for k in range(frame.n))
        return cls({(0, a, (0,) * frame.n): 1}, frame, order)

    @classmethod
    def d(cls, i: int | str, frame: DarbouxFrame, order: int = DEFAULT_ORDER) -> "WeylOp":
        """The generator ``hbar d/dx_i``."""
        i = frame.xs.index(i) if isinstance(i, str) else i
        b = tuple(int(k == i) for k in range(frame.n))
        return cls({(0, (0,) * frame.n, b): 1}, frame, order)

    # arithmetic -----------------------------------------------------------
    def _check(self, other: "WeylOp") -> None:
        if self.frame != other.frame:
            raise ContextError("Weyl operators live over different frames")

    def __add__(self, other: "WeylOp") -> "WeylOp":
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return WeylOp(out, self.frame, min(self.order, other.order))

    def __neg__(self) -> "WeylOp":
        return WeylOp({k: -c for k, c in self.terms.items()}, self.frame, self.order)

    def __sub__(self, other: "WeylOp") -> "WeylOp":
        return self + (-other)

    def __mul__(self, other: Any) -> "WeylOp":
        if isinstance(other, WeylOp):
            return weyl_mul(self, other)
        c = coerce(other)
        return WeylOp({k: v * c for k, v in self.terms.items()}, self.frame, self.order)

    def __rmul__(self, other: Any) -> "WeylOp":
        c = coerce(other)
        return WeylOp({k: v * c for k, v in self.terms.items()}, self.frame, self.order)

    def shift(self, k: int) -> "WeylOp":
        """Multiply by ``hbar**k``."""
        return WeylOp({(h + k, a, b): c for (h, a, b), c in self.terms.items()}, self.frame, self.order)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeylOp):
            return NotImplemented
        return self.frame == other.frame and self.order == other.order and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.frame, self.order, frozenset(self.terms.items())))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        xs = self.frame.xs
        pieces = []
        # printed with explicit hbar and bare derivatives, D_i = hbar*d_i
        for (h, a, b), c in sorted(self.terms.items(), key=lambda t: (t[0][0] + sum(t[0][2]), sum(t[0][1]), t[0])):
            factors = []
            hp = h + sum(b)
            if hp:
                factors.append("hbar" if hp == 1 else f"hbar^{hp}")
            factors += [v if e == 1 else f"{v}^{e}" for v, e in zip(xs, a) if e]
            factors += [f"d{v}" if e == 1 else f"d{v}^{e}" for v, e in zip(xs, b) if e]
            mono = "*".join(factors)
            if mono and c == 1:
                pieces.append(mono)
            elif mono and c == -1:
                pieces.append(f"-{mono}")
            else:
                pieces.append(f"{c}*{mono}" if mono else f"{c}")
        return " + ".join(pieces).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"WeylOp({self})"


def _reorder_1d(b: int, c: int) -> list[tuple[int, int, int, int]]:
    """``D^b x^c = sum_k C(b,k) c!/(c-k)! hbar^k x^(c-k) D^(b-k)`` as (k, weight, x, D)."""
    out = []
    for k in range(min(b, c) + 1):
        out.append((k, comb(b, k) * factorial(c) // factorial(c - k), c - k, b - k))
    return out


def weyl_mul(P: WeylOp, Q: WeylOp) -> WeylOp:
    """Composition ``P Q`` rewritten to normal order."""
    P._check(Q)
    order = min(P.order, Q.order)
    n = P.frame.n
    out: dict[Key, Any] = {}
    for (h1, a1, b1), c1 in P.terms.items():
        for (h2, a2, b2), c2 in Q.terms.items():
            base = h1 + h2
            if base > order:
                continue
            per_var = [_reorder_1d(b1[i], a2[i]) for i in range(n)]
            for choice in _cartesian(*per_var):
                h = base + sum(t[0] for t in choice)
                if h > order:
                    continue
                w = 1
                for t in choice:
                    w *= t[1]
                a = tuple(a1[i] + choice[i][2] for i in range(n))
                b = tuple(choice[i][3] + b2[i] for i in range(n))
                k = (h, a, b)
                out[k] = out.get(k, 0) + c1 * c2 * w
    return WeylOp(out, P.frame, order)


def _symmetric_1d(a: int, b: int) -> list[tuple[int, Fraction, int, int]]:
    """Symmetrised ``x^a D^b`` in normal order as (hbar power, weight, x, D)."""
    out = []
    for k in range(min(a, b) + 1):
        w = Fraction(comb(a, k) * comb(b, k) * factorial(k), 2**k)
        out.append((k, w, a - k, b - k))
    return out


def phi(f: Poly | HSeries, frame: DarbouxFrame | None = None, order: int | None = None) -> WeylOp:
    """Symmetric-ordering quantisation.

    ``x_i`` maps to multiplication and ``y_i`` to ``-sign * hbar d/dx_i`` with
    ``sign = {x_i, y_i}``, which makes ``phi`` a homomorphism from the star
    product of the frame's bi-vector to operator composition.
    """
    frame = conic_frame() if frame is None else frame
    if isinstance(f, HSeries):
        order = f.order if order is None else order
        coeffs = list(f.coeffs)
    else:
        order = DEFAULT_ORDER if order is None else order
        coeffs = [f]
    vars = coeffs[0].vars
    for v in vars:
        if v not in frame.xs and v not in frame.ys:
            raise ValueError(f"variable {v!r} is not paired in the frame")
    xi = [vars.index(v) if v in vars else None for v in frame.xs]
    yi = [vars.index(v) if v in vars else None for v in frame.ys]
    eps = -frame.sign
    n = frame.n
    out: dict[Key, Any] = {}
    for g, p in enumerate(coeffs):
        if g > order:
            break
        for m, c in p.terms.items():
            a = [m[i] if i is not None else 0 for i in xi]
            b = [m[i] if i is not None else 0 for i in yi]
            sign = eps ** sum(b)
            per_var = [_symmetric_1d(a[i], b[i]) for i in range(n)]
            for choice in _cartesian(*per_var):
                h = g + sum(t[0] for t in choice)
                if h > order:
                    continue
                w = c * sign
                for t in choice:
                    w = w * t[1]
                k = (h, tuple(t[2] for t in choice), tuple(t[3] for t in choice))
                out[k] = out.get(k, 0) + w
    return WeylOp(out, frame, order)


def weyl_apply(P: WeylOp, s: XSeries) -> list[XSeries]:
    """Apply ``P`` to a series in the frame's ``x`` variables.

    Returns the result graded by hbar power, ``[r_0, ..., r_N]``. Every entry
    is truncated to ``s.cap - (highest derivative order in P)``, the degree up
    to which it is exact.
    """
    xs = P.frame.xs
    if s.vars != xs:
        raise ContextError(f"operator acts on {xs}, series is in {s.vars}")
    maxd = max((sum(b) for _, _, b in P.terms), default=0)
    cap = max(s.cap - maxd, 0)
    out = [XSeries(Poly.zero(xs), cap) for _ in range(P.order + 1)]
    for (h, a, b), c in P.terms.items():
        hb = h + sum(b)
        if hb > P.order:
            continue
        t = s.poly
        for i, e in enumerate(b):
            if e:
                t = t.diff(i, e)
        t = t * Poly.monomial(a, xs, c)
        out[hb] = out[hb] + XSeries(t.truncate(cap), cap)
    return out


def conjugated_powers(u: Sequence[XSeries], m: int, order: int) -> list[list[XSeries]]:
    """Symbols ``B_k = exp(-S/hbar) (hbar d/dx)^k exp(S/hbar)`` for ``k = 0..m``.

    ``u[g]`` is the hbar^g part of ``S'``; each ``B_k`` is graded by hbar
    power ``0..order``. Uses ``B_{k+1} = hbar B_k' + u B_k``.
    """
    if not u:
        raise ValueError("need at least the leading derivative series")
    vars = u[0].vars
    if len(vars) != 1:
        raise ValueError("conjugated action is for a single base variable")
    cap = min(s.cap for s in u)
    zero = XSeries(Poly.zero(vars), cap)
    us = list(u) + [zero] * (order + 1 - len(u))
    B0 = [XSeries.const(1, vars, cap)] + [zero] * order
    out = [B0]
    for _ in range(m):
        prev = out[-1]
        nxt = [zero] * (order + 1)
        for g in range(order + 1):
            if g >= 1 and not prev[g - 1].is_zero():
                nxt[g] = nxt[g] + prev[g - 1].diff(0)
            for i in range(g + 1):
                if not us[i].is_zero() and not prev[g - i].is_zero():
                    nxt[g] = nxt[g] + us[i] * prev[g - i]
        out.append(nxt)
    return out


def conjugated_apply(P: WeylOp, u: Sequence[XSeries], order: int | None = None) -> list[XSeries]:
    """``exp(-S/hbar) P exp(S/hbar)`` applied to 1, graded by hbar, for a one-variable frame."""
    if P.frame.n != 1:
        raise ValueError("conjugated action needs a one-variable frame")
    order = P.order if order is None else order
    maxd = max((b[0] for _, _, b in P.terms), default=0)
    Bs = conjugated_powers(u, maxd, order)
    vars = u[0].vars
    cap = min(s.cap for s in u)
    out = [XSeries(Poly.zero(vars), cap) for _ in range(order + 1)]
    for (h, a, b), c in P.terms.items():
        xa = Poly.monomial(a, vars, c)
        for g in range(order + 1 - h):
            bg = Bs[b[0]][g]
            if not bg.is_zero():
                out[h + g] = out[h + g] + bg * xa
    return out


def symmetric_word_average(a: Sequence[int], b: Sequence[int], frame: DarbouxFrame, order: int = DEFAULT_ORDER) -> WeylOp:
    """Average over all orderings of the factors of ``x^a D^b`` (slow; for cross-checks)."""
    from itertools import permutations

    letters: list[WeylOp] = []
    for i in range(frame.n):
        letters += [WeylOp.x(i, frame, order)] * a[i]
        letters += [WeylOp.d(i, frame, order)] * b[i]
    words = list(permutations(range(len(letters))))
    total = WeylOp.zero(frame, order)
    for w in words:
        op = WeylOp.scalar(1, frame, order)
        for idx in w:
            op = op * letters[idx]
        total = total + op
    return total * Fraction(1, len(words))
