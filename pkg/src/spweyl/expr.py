"""A small expression language for Lie, Weyl and (Laurent) polynomial values.

Grammar (whitespace is ignored)::

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := '-' factor | primary ('^' ['-'] int)?
    primary:= atom | '(' expr ')' | '[' expr ',' expr ']'
    atom   := 'a(' int ',' int ')' | 'b(' ... ')' | 'c(' ... ')'
            | 'x' int | 'd' int | 'X' int | 'p' | int ('/' int)?

'*' is never implicit, and '^' binds tighter than unary minus, so ``-x1^2``
is -(x1^2). Negative exponents are only accepted in the laurent sort.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from spweyl.modaction import LaurentPoly, Poly, _Poly
from spweyl.padics import PrimeContext, format_rational
from spweyl.symplectic import SpElement, bracket_structure, format_sp
from spweyl.symplectic import a as _a
from spweyl.symplectic import b as _b
from spweyl.symplectic import c as _c
from spweyl.weyl import WeylElement, weyl_commutator

SORTS = ("lie", "weyl", "poly", "laurent")


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class SortError(ValueError):
    pass


_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<lie>[abc])\s*\(\s*(?P<i>\d+)\s*,\s*(?P<j>\d+)\s*\)
  | (?P<var>[xdX])(?P<k>\d+)
  | (?P<p>p)(?![A-Za-z0-9])
  | (?P<num>\d+)
  | (?P<op>[-+*/^()\[\],])
""", re.VERBOSE)


@dataclass
class Token:
    kind: str
    value: object
    pos: int


def tokenize(src: str) -> list[Token]:
    out, pos = [], 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if not m:
            if src[pos] in "abc":
                raise ParseError(f"malformed generator, expected {src[pos]}(i,j)", pos)
            raise ParseError(f"unexpected character {src[pos]!r}", pos)
        if m.group("lie"):
            out.append(Token("lie", (m.group("lie"), int(m.group("i")), int(m.group("j"))), pos))
        elif m.group("var"):
            out.append(Token("var", (m.group("var"), int(m.group("k"))), pos))
        elif m.group("p"):
            out.append(Token("p", None, pos))
        elif m.group("num"):
            out.append(Token("num", int(m.group("num")), pos))
        elif m.group("op"):
            out.append(Token(m.group("op"), None, pos))
        pos = m.end()
    out.append(Token("end", None, len(src)))
    return out


class _Algebra:
    """Evaluation rules for one sort; pure scalars stay ``Fraction``."""

    def __init__(self, sort: str, ctx: PrimeContext):
        self.sort, self.ctx, self.n = sort, ctx, ctx.n

    def atom(self, tok: Token):
        if tok.kind == "lie":
            fam, i, j = tok.value
            if self.sort != "lie":
                raise SortError(f"{fam}({i},{j}) is not allowed in sort {self.sort}")
            self._check_index(i, tok)
            self._check_index(j, tok)
            return {"a": _a, "b": _b, "c": _c}[fam](i, j)
        kind, k = tok.value
        allowed = {"x": ("weyl",), "d": ("weyl",), "X": ("poly", "laurent")}[kind]
        if self.sort not in allowed:
            raise SortError(f"{kind}{k} is not allowed in sort {self.sort}")
        self._check_index(k, tok)
        if kind == "x":
            return WeylElement.x(k, self.n)
        if kind == "d":
            return WeylElement.d(k, self.n)
        cls = LaurentPoly if self.sort == "laurent" else Poly
        return cls.var(k, self.n)

    def _check_index(self, i: int, tok: Token):
        if not 1 <= i <= self.n:
            raise ParseError(f"index {i} out of range for n={self.n}", tok.pos)

    def mul(self, u, v):
        if self.sort == "lie" and isinstance(u, SpElement) and isinstance(v, SpElement):
            raise SortError("Lie elements cannot be multiplied; use [u, v]")
        return u * v

    def bracket(self, u, v):
        if isinstance(u, Fraction) or isinstance(v, Fraction):
            return Fraction(0)
        if self.sort == "lie":
            return bracket_structure(u, v)
        if self.sort == "weyl":
            return weyl_commutator(u, v)
        return u * v - v * u

    def power(self, u, k: int, tok: Token):
        if isinstance(u, Fraction):
            if k < 0 and u == 0:
                raise ParseError("zero to a negative power", tok.pos)
            return u ** k
        if k < 0:
            if self.sort != "laurent":
                raise ParseError(f"negative exponent not allowed in sort {self.sort}", tok.pos)
            try:
                return u ** k
            except ValueError as exc:
                raise ParseError(str(exc), tok.pos) from None
        if self.sort == "lie" and k != 1:
            raise SortError("powers of Lie elements are not defined")
        return u ** k

    def finish(self, value):
        if isinstance(value, Fraction):
            if self.sort == "lie":
                if value:
                    raise SortError("a non-zero scalar is not a Lie element")
                return SpElement()
            if self.sort == "weyl":
                return WeylElement.scalar(self.n, value)
            return (LaurentPoly if self.sort == "laurent" else Poly).scalar(self.n, value)
        return value


class _Parser:
    def __init__(self, tokens, alg: _Algebra):
        self.toks, self.i, self.alg = tokens, 0, alg

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def take(self, kind=None) -> Token:
        t = self.tok
        if kind is not None and t.kind != kind:
            want = "end of input" if kind == "end" else repr(kind)
            raise ParseError(f"expected {want}", t.pos)
        self.i += 1
        return t

    def expr(self):
        value = self.term()
        while self.tok.kind in ("+", "-"):
            op = self.take().kind
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.factor()
        while self.tok.kind == "*":
            self.take()
            value = self.alg.mul(value, self.factor())
        return value

    def factor(self):
        if self.tok.kind == "-":
            self.take()
            return -self.factor()
        value = self.primary()
        if self.tok.kind == "^":
            caret = self.take()
            sign = 1
            if self.tok.kind == "-":
                self.take()
                sign = -1
            k = self.take("num").value * sign
            value = self.alg.power(value, k, caret)
        return value

    def primary(self):
        t = self.tok
        if t.kind == "(":
            self.take()
            value = self.expr()
            self.take(")")
            return value
        if t.kind == "[":
            self.take()
            u = self.expr()
            self.take(",")
            v = self.expr()
            self.take("]")
            return self.alg.bracket(u, v)
        if t.kind == "num":
            self.take()
            if self.tok.kind == "/":
                self.take()
                den = self.take("num")
                if den.value == 0:
                    raise ParseError("zero denominator", den.pos)
                return Fraction(t.value, den.value)
            return Fraction(t.value)
        if t.kind == "p":
            self.take()
            return Fraction(self.alg.ctx.p)
        if t.kind in ("lie", "var"):
            self.take()
            return self.alg.atom(t)
        if t.kind == "end":
            raise ParseError("unexpected end of input", t.pos)
        raise ParseError(f"unexpected {t.kind!r}", t.pos)


def parse(src: str, sort: str, ctx: PrimeContext | int = 2):
    """Parse ``src`` and evaluate it as a value of ``sort``."""
    if sort not in SORTS:
        raise ValueError(f"unknown sort {sort!r}; expected one of {SORTS}")
    if isinstance(ctx, int):
        ctx = PrimeContext(n=ctx)
    if not src.strip():
        raise ParseError("empty expression", 0)
    parser = _Parser(tokenize(src), _Algebra(sort, ctx))
    value = parser.expr()
    parser.take("end")
    return parser.alg.finish(value)


# -- printing -----------------------------------------------------------------

def _power(name: str, e: int) -> str:
    return name if e == 1 else f"{name}^{e}"


def _join(terms) -> str:
    """terms: list of (coefficient, monomial text or '')."""
    if not terms:
        return "0"
    parts = []
    for coef, mono in terms:
        mag = abs(coef)
        if not mono:
            body = format_rational(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{format_rational(mag)}*{mono}"
        parts.append((coef < 0, body))
    neg, body = parts[0]
    out = ("-" if neg else "") + body
    for neg, body in parts[1:]:
        out += (" - " if neg else " + ") + body
    return out


def weyl_monomial_text(alpha, beta) -> str:
    names = [_power(f"x{i + 1}", e) for i, e in enumerate(alpha) if e]
    names += [_power(f"d{i + 1}", e) for i, e in enumerate(beta) if e]
    return "*".join(names)


def format_weyl(w: WeylElement) -> str:
    return _join([(v, weyl_monomial_text(al, be)) for (al, be), v in w.items()])


def poly_monomial_text(gamma) -> str:
    return "*".join(_power(f"X{i + 1}", e) for i, e in enumerate(gamma) if e)


def format_poly(f: _Poly) -> str:
    return _join([(v, poly_monomial_text(g)) for g, v in f.items()])


def format_value(value, sort: str | None = None) -> str:
    if isinstance(value, SpElement):
        return format_sp(value)
    if isinstance(value, WeylElement):
        return format_weyl(value)
    if isinstance(value, _Poly):
        return format_poly(value)
    if isinstance(value, (int, Fraction)):
        return format_rational(value)
    raise TypeError(f"cannot format {type(value).__name__}")


format = format_value
