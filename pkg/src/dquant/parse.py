"""Recursive-descent parser for polynomial expressions with rational coefficients.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('+' | '-') unary | power
    power  := atom ('^' INTEGER)?
    atom   := INTEGER | IDENT | '(' expr ')'

Division is only allowed by a nonzero constant. Juxtaposition (``2x``) is
rejected rather than read as multiplication.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .algebra import Poly

_SPACE = re.compile(r"\s*")
_TOKEN = re.compile(r"(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.)")


class ParseError(ValueError):
    """Syntax or context error; ``offset`` is the byte offset into the UTF-8 input."""

    def __init__(self, message: str, text: str, index: int):
        self.offset = len(text[:index].encode("utf-8"))
        self.text = text
        super().__init__(f"{message} at byte {self.offset}")


@dataclass(frozen=True)
class _Tok:
    kind: str  # "int", "ident", "op", "end"
    value: str
    pos: int


def _tokens(text: str) -> list[_Tok]:
    out = []
    pos = 0
    while True:
        pos = _SPACE.match(text, pos).end()
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        start = m.start()
        if m.group(1) is not None:
            out.append(_Tok("int", m.group(1), start))
        elif m.group(2) is not None:
            out.append(_Tok("ident", m.group(2), start))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", text, start)
            out.append(_Tok("op", ch, start))
        pos = m.end()
    out.append(_Tok("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str, vars: tuple[str, ...]):
        self.text = text
        self.vars = vars
        self.toks = _tokens(text)
        self.i = 0

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def take(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg: str, tok: _Tok | None = None) -> ParseError:
        tok = self.peek() if tok is None else tok
        return ParseError(msg, self.text, tok.pos)

    def parse(self) -> Poly:
        if self.peek().kind == "end":
            raise self.error("empty expression")
        p = self.expr()
        t = self.peek()
        if t.kind in ("int", "ident") or (t.kind == "op" and t.value == "("):
            raise self.error("implicit multiplication is not allowed; use '*'")
        if t.kind != "end":
            raise self.error(f"unexpected {t.value!r}")
        return p

    def expr(self) -> Poly:
        p = self.term()
        while self.peek().kind == "op" and self.peek().value in "+-":
            op = self.take().value
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> Poly:
        p = self.unary()
        while self.peek().kind == "op" and self.peek().value in "*/":
            op = self.take()
            q = self.unary()
            if op.value == "*":
                p = p * q
            else:
                if not q.is_constant() or q.is_zero():
                    raise self.error("division is only by a nonzero constant", op)
                p = p / q.constant_term()
        return p

    def unary(self) -> Poly:
        t = self.peek()
        if t.kind == "op" and t.value in "+-":
            self.take()
            p = self.unary()
            return -p if t.value == "-" else p
        return self.power()

    def power(self) -> Poly:
        base = self.atom()
        if self.peek().kind == "op" and self.peek().value == "^":
            self.take()
            t = self.peek()
            if t.kind != "int":
                raise self.error("exponent must be a non-negative integer")
            self.take()
            return base ** int(t.value)
        return base

    def atom(self) -> Poly:
        t = self.take()
        if t.kind == "int":
            return Poly.const(Fraction(int(t.value)), self.vars)
        if t.kind == "ident":
            if t.value not in self.vars:
                raise self.error(f"undeclared identifier {t.value!r}", t)
            return Poly.gen(t.value, self.vars)
        if t.kind == "op" and t.value == "(":
            p = self.expr()
            close = self.take()
            if not (close.kind == "op" and close.value == ")"):
                raise self.error("expected ')'", close)
            return p
        if t.kind == "end":
            raise self.error("unexpected end of input", t)
        raise self.error(f"unexpected {t.value!r}", t)


def parse_expr(text: str, vars: Iterable[str]) -> Poly:
    """Parse ``text`` into a polynomial over the declared variables."""
    return _Parser(text, tuple(vars)).parse()


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"not a rational number: {text!r}", text, 0) from None


def parse_assignments(text: str) -> dict[str, Fraction]:
    """``"a=1,b=-2/3"`` -> ``{"a": 1, "b": -2/3}``."""
    out: dict[str, Fraction] = {}
    pos = 0
    for part in text.split(","):
        if not part.strip():
            pos += len(part) + 1
            continue
        if "=" not in part:
            raise ParseError(f"expected name=value in {part.strip()!r}", text, pos)
        name, value = part.split("=", 1)
        name = name.strip()
        if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", name):
            raise ParseError(f"bad parameter name {name!r}", text, pos)
        try:
            out[name] = Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"bad value for {name}", text, pos + len(part.split('=')[0]) + 1) from None
        pos += len(part) + 1
    return out


def parse_matrix(text: str) -> list[list[Fraction]]:
    """Rows separated by ``;``, entries by ``,``: ``"0,1;-1,0"``."""
    rows = []
    for row in text.split(";"):
        try:
            rows.append([Fraction(e.strip()) for e in row.split(",")])
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"bad matrix row {row.strip()!r}", text, text.find(row)) from None
    if len({len(r) for r in rows}) != 1:
        raise ParseError("matrix rows have different lengths", text, 0)
    return rows


def parse_names(text: str) -> tuple[str, ...]:
    names = tuple(n.strip() for n in text.split(",") if n.strip())
    for n in names:
        if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", n):
            raise ParseError(f"bad variable name {n!r}", text, text.find(n))
    if len(set(names)) != len(names):
        raise ParseError("duplicate variable name", text, 0)
    return names


__all__: Sequence[str] = ["ParseError", "parse_expr", "parse_rational", "parse_assignments", "parse_matrix", "parse_names"]
