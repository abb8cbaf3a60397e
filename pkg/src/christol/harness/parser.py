"""Recursive-descent parser for polynomial expressions.

Grammar (whitespace is insignificant)::

    expr   := term (('+' | '-') term)*
    term   := factor (('*')? factor)*
    factor := base ('^' int)?
    base   := coeff | 'x' | 'y' | 'z' | '(' expr ')'
    coeff  := nat | '[' nat (',' nat)* ']'
    int    := '-'? nat

Integers are reduced mod p; a bracketed coefficient lists extension-field
coordinates in ascending order.  Negative exponents are accepted on
monomials so that Laurent polynomials such as ``y^3 + 1 + 2y^-1`` can be
written.  Error positions are 0-based character offsets.
"""

from __future__ import annotations

from ..errors import ParseError
from ..gf import FieldSpec
from ..polyalg import BiPoly, UniLaurent

__all__ = ["parse_bipoly", "parse_poly", "parse_uni", "parse_terms"]

_VARS = ("x", "y", "z")


class _Parser:
    def __init__(self, text: str, field: FieldSpec):
        self.text = text
        self.F = field
        self.pos = 0

    # -- lexing helpers ------------------------------------------------------

    def _skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self._skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            found = self.peek() or "end of input"
            raise ParseError(f"expected {ch!r}, found {found!r}", self.pos)
        self.pos += 1

    def nat(self) -> int:
        self._skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            found = self.text[start] if start < len(self.text) else "end of input"
            raise ParseError(f"expected a number, found {found!r}", start)
        return int(self.text[start:self.pos])

    # -- polynomial arithmetic on {(ex, ey, ez): code} -------------------------

    def add(self, a: dict, b: dict, sign: int = 1) -> dict:
        F = self.F
        out = dict(a)
        for k, c in b.items():
            v = F.add(out.get(k, 0), c if sign > 0 else F.neg(c))
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return out

    def mul(self, a: dict, b: dict) -> dict:
        F = self.F
        out: dict = {}
        for ka, ca in a.items():
            for kb, cb in b.items():
                k = (ka[0] + kb[0], ka[1] + kb[1], ka[2] + kb[2])
                v = F.add(out.get(k, 0), F.mul(ca, cb))
                if v:
                    out[k] = v
                else:
                    out.pop(k, None)
        return out

    def power(self, a: dict, n: int, at: int) -> dict:
        if n < 0:
            if len(a) != 1:
                raise ParseError("negative exponent on a non-monomial", at)
            (k, c), = a.items()
            F = self.F
            return {(k[0] * n, k[1] * n, k[2] * n): F.pow(c, n)}
        out = {(0, 0, 0): 1}
        for _ in range(n):
            out = self.mul(out, a)
        return out

    # -- grammar -------------------------------------------------------------

    def parse(self) -> dict:
        if not self.text.strip():
            raise ParseError("empty expression", 0)
        val = self.expr()
        self._skip()
        if self.pos != len(self.text):
            raise ParseError(f"unexpected {self.text[self.pos]!r}", self.pos)
        return val

    def expr(self) -> dict:
        sign = 1
        if self.peek() in "+-" and self.peek():
            sign = -1 if self.peek() == "-" else 1
            self.pos += 1
        val = self.add({}, self.term(), sign)
        while self.peek() in ("+", "-") and self.peek():
            sign = -1 if self.peek() == "-" else 1
            self.pos += 1
            val = self.add(val, self.term(), sign)
        return val

    def _starts_factor(self) -> bool:
        ch = self.peek()
        return bool(ch) and (ch.isdigit() or ch in "([" or ch.isalpha())

    def term(self) -> dict:
        val = self.factor()
        while True:
            if self.peek() == "*":
                self.pos += 1
                val = self.mul(val, self.factor())
            elif self._starts_factor():
                val = self.mul(val, self.factor())
            else:
                return val

    def factor(self) -> dict:
        base = self.base()
        if self.peek() == "^":
            self.pos += 1
            at = self.pos
            neg = False
            if self.peek() == "-":
                neg = True
                self.pos += 1
            n = self.nat()
            return self.power(base, -n if neg else n, at)
        return base

    def base(self) -> dict:
        ch = self.peek()
        at = self.pos
        if ch == "(":
            self.pos += 1
            val = self.expr()
            self.expect(")")
            return val
        if ch == "[":
            self.pos += 1
            coords = [self.nat()]
            while self.peek() == ",":
                self.pos += 1
                coords.append(self.nat())
            self.expect("]")
            if len(coords) > self.F.e:
                raise ParseError(
                    f"{len(coords)} coordinates for a degree-{self.F.e} field", at)
            c = self.F.from_coords(coords)
            return {(0, 0, 0): c} if c else {}
        if ch.isdigit():
            c = self.F.reduce_int(self.nat())
            return {(0, 0, 0): c} if c else {}
        if ch.isalpha():
            if ch not in _VARS:
                raise ParseError(f"unknown variable {ch!r}", at)
            self.pos += 1
            k = [0, 0, 0]
            k[_VARS.index(ch)] = 1
            return {tuple(k): 1}
        found = ch or "end of input"
        raise ParseError(f"unexpected {found!r}", at)


def parse_terms(text: str, field: FieldSpec) -> dict:
    """Parse to a map {(ex, ey, ez): code}."""
    return _Parser(text, field).parse()


def parse_bipoly(text: str, field: FieldSpec) -> BiPoly:
    """Parse a polynomial in x and y (y may carry negative exponents)."""
    terms = parse_terms(text, field)
    out = {}
    for (ex, ey, ez), c in terms.items():
        if ez:
            raise ParseError("unknown variable 'z' in a bivariate expression", text.find("z"))
        if ex < 0:
            raise ParseError("negative power of x", text.find("x"))
        out[(ex, ey)] = c
    return BiPoly(field, out)


parse_poly = parse_bipoly


def parse_uni(text: str, field: FieldSpec) -> UniLaurent:
    """Parse a univariate Laurent polynomial in any one of x, y, z."""
    terms = parse_terms(text, field)
    used = {n for k in terms for n in range(3) if k[n]}
    if len(used) > 1:
        raise ParseError("more than one variable in a univariate expression", 0)
    v = used.pop() if used else 2
    return UniLaurent.from_terms(field, {k[v]: c for k, c in terms.items()})
