"""Univariate polynomials over an exact field.

Coefficients are stored low degree first as raw field values with no
trailing zeros; the zero polynomial has an empty coefficient tuple and
degree ``None``.
"""

from __future__ import annotations

import re
from fractions import Fraction

from ..errors import BothZero, ParseError, ZeroDivisor
from .field import QQ, FieldSpec, Scalar


class Poly:
    __slots__ = ("field", "c")

    def __init__(self, coeffs=(), field: FieldSpec = QQ):
        self.field = field
        vals = [field.elem(a) for a in coeffs]
        while vals and vals[-1] == 0:
            vals.pop()
        self.c = tuple(vals)

    @classmethod
    def _raw(cls, vals, field):
        vals = list(vals)
        while vals and vals[-1] == 0:
            vals.pop()
        p = object.__new__(cls)
        p.field = field
        p.c = tuple(vals)
        return p

    @classmethod
    def x(cls, field: FieldSpec = QQ, power: int = 1):
        return cls._raw([0] * power + [1], field)

    @classmethod
    def const(cls, a, field: FieldSpec = QQ):
        return cls._raw([field.elem(a)], field)

    @classmethod
    def parse(cls, text: str, field: FieldSpec = QQ) -> "Poly":
        return parse_poly(text, field)

    # basic queries

    @property
    def coeffs(self) -> list:
        return [Scalar._raw(a, self.field) for a in self.c]

    @property
    def degree(self):
        """Degree, or None for the zero polynomial."""
        return len(self.c) - 1 if self.c else None

    def is_zero(self) -> bool:
        return not self.c

    def is_monic(self) -> bool:
        return bool(self.c) and self.c[-1] == 1

    def lead(self):
        return self.c[-1] if self.c else 0

    def coeff(self, i: int):
        return self.c[i] if 0 <= i < len(self.c) else 0

    def monic(self) -> "Poly":
        if not self.c:
            return self
        inv = self.field.inv(self.c[-1])
        return self.scale(inv)

    # arithmetic

    def _check(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(other, self.field)
        if other.field != self.field:
            raise ValueError("polynomials over different fields")
        return other

    def __add__(self, other):
        other = self._check(other)
        n = max(len(self.c), len(other.c))
        F = self.field
        return Poly._raw([F.norm(self.coeff(i) + other.coeff(i)) for i in range(n)], F)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw([self.field.neg(a) for a in self.c], self.field)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(self.field.elem(other))
        other = self._check(other)
        if not self.c or not other.c:
            return Poly._raw([], self.field)
        out = [0] * (len(self.c) + len(other.c) - 1)
        for i, a in enumerate(self.c):
            if a == 0:
                continue
            for j, b in enumerate(other.c):
                out[i + j] += a * b
        F = self.field
        return Poly._raw([F.norm(v) for v in out], F)

    __rmul__ = __mul__

    def scale(self, a) -> "Poly":
        F = self.field
        return Poly._raw([F.norm(a * v) for v in self.c], F)

    def __pow__(self, n: int):
        out = Poly.const(1, self.field)
        for _ in range(n):
            out = out * self
        return out

    def __divmod__(self, other):
        return poly_divmod(self, self._check(other))

    def __floordiv__(self, other):
        return poly_divmod(self, self._check(other))[0]

    def __mod__(self, other):
        return poly_divmod(self, self._check(other))[1]

    def derivative(self) -> "Poly":
        F = self.field
        return Poly._raw([F.norm(i * a) for i, a in enumerate(self.c)][1:], F)

    def __call__(self, x):
        """Horner evaluation at a raw field value."""
        F = self.field
        acc = 0
        for a in reversed(self.c):
            acc = F.norm(acc * x + a)
        return acc

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.field == other.field and self.c == other.c
        if isinstance(other, (int, Fraction, Scalar)):
            return self.c == Poly.const(other, self.field).c
        return NotImplemented

    def __hash__(self):
        return hash((self.c, self.field.p))

    def __repr__(self):
        return f"Poly({self}, {self.field!r})"

    def __str__(self):
        if not self.c:
            return "0"
        terms = []
        for i in range(len(self.c) - 1, -1, -1):
            a = self.c[i]
            if a == 0:
                continue
            neg = self.field.is_rational and a < 0
            mag = -a if neg else a
            if i == 0:
                body = str(mag)
            else:
                mono = "X" if i == 1 else f"X^{i}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            terms.append(("-" if neg else "+", body))
        sign, body = terms[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


def poly_divmod(h: Poly, f: Poly) -> tuple[Poly, Poly]:
    """Long division h = quot*f + rem with rem = 0 or deg rem < deg f."""
    if f.is_zero():
        raise ZeroDivisor("division by the zero polynomial")
    F = h.field
    rem = list(h.c)
    df = len(f.c) - 1
    if len(rem) <= df:
        return Poly._raw([], F), h
    inv = F.inv(f.c[-1])
    quot = [0] * (len(rem) - df)
    for k in range(len(rem) - 1, df - 1, -1):
        a = F.norm(rem[k])
        if a == 0:
            continue
        m = F.norm(a * inv)
        quot[k - df] = m
        for j, b in enumerate(f.c):
            rem[k - df + j] -= m * b
    return Poly._raw(quot, F), Poly._raw([F.norm(v) for v in rem[:df]], F)


def quot_f(h: Poly, f: Poly) -> Poly:
    return poly_divmod(h, f)[0]


def rem_f(h: Poly, f: Poly) -> Poly:
    return poly_divmod(h, f)[1]


def poly_gcd_monic(f: Poly, g: Poly) -> Poly:
    if f.is_zero() and g.is_zero():
        raise BothZero("gcd(0, 0) is undefined")
    a, b = f, g
    while not b.is_zero():
        a, b = b, poly_divmod(a, b)[1]
    return a.monic()


_TERM = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?:(?P<coef>\d+(?:/\d+)?)\s*(?P<star>\*)?\s*)?
        (?P<var>X(?:\s*\^\s*(?P<exp>\d+))?)?\s*""",
    re.VERBOSE,
)


def parse_poly(text: str, field: FieldSpec = QQ) -> Poly:
    """Parse sums of terms like ``3*X^2``, ``-X``, ``1/2*X^4``, ``7``."""
    s = text.strip()
    if not s:
        raise ParseError("empty polynomial")
    pos = 0
    acc: dict[int, Fraction] = {}
    first = True
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ParseError(f"cannot parse polynomial near {s[pos:]!r}")
        if not first and not m.group("sign"):
            raise ParseError(f"missing +/- before {s[pos:]!r}")
        coef, var = m.group("coef"), m.group("var")
        if coef is None and var is None:
            raise ParseError(f"empty term in {text!r}")
        if m.group("star") and var is None:
            raise ParseError(f"dangling '*' in {text!r}")
        if coef is not None and var is not None and not m.group("star"):
            raise ParseError(f"use '*' between coefficient and X in {text!r}")
        c = Fraction(coef) if coef is not None else Fraction(1)
        if m.group("sign") == "-":
            c = -c
        e = 0 if var is None else int(m.group("exp") or 1)
        acc[e] = acc.get(e, 0) + c
        pos = m.end()
        first = False
    deg = max(acc)
    vals = [field.elem(acc.get(i, 0)) for i in range(deg + 1)]
    return Poly._raw(vals, field)
