"""Exact base fields: the rationals and prime fields F_p.

Internally scalars are plain Python values ("raw" values):

* over Q an ``int`` or a ``Fraction`` (a Fraction with denominator 1 is
  always normalised back to ``int``, which keeps integer workloads fast);
* over F_p an ``int`` in ``[0, p)``.

``Scalar`` wraps a raw value together with its field for public use.
"""

from __future__ import annotations

import re
from fractions import Fraction

from ..errors import NotAField, ParseError, ZeroDivisor

MAX_PRIME = 2**31


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # deterministic for n < 3.3e24
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class FieldSpec:
    """Either Q (``p is None``) or F_p with 2 <= p < 2^31."""

    __slots__ = ("p",)

    def __init__(self, p: int | None = None):
        if p is not None:
            if not isinstance(p, int) or not (2 <= p < MAX_PRIME) or not is_prime(p):
                raise NotAField(f"F_{p} is not a supported prime field")
        self.p = p

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls(None)

    @classmethod
    def prime(cls, p: int) -> "FieldSpec":
        return cls(p)

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        """Parse ``Q``, ``QQ``, ``F5``, ``F_5``, ``GF(5)``."""
        t = text.strip()
        if t.upper() in ("Q", "QQ"):
            return cls.rationals()
        m = re.fullmatch(r"(?:F_?|GF\(?)(\d+)\)?", t, re.IGNORECASE)
        if not m:
            raise NotAField(f"cannot parse field {text!r}")
        return cls.prime(int(m.group(1)))

    @property
    def is_rational(self) -> bool:
        return self.p is None

    @property
    def char(self) -> int:
        return 0 if self.p is None else self.p

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and other.p == self.p

    def __hash__(self):
        return hash(("FieldSpec", self.p))

    def __repr__(self):
        return "Q" if self.p is None else f"F{self.p}"

    # raw value arithmetic

    def norm(self, x):
        """Bring an int/Fraction into canonical raw form."""
        if self.p is None:
            if type(x) is Fraction and x.denominator == 1:
                return x.numerator
            return x
        if type(x) is Fraction:
            den = x.denominator % self.p
            if den == 0:
                raise ZeroDivisor(f"denominator {x.denominator} vanishes in {self}")
            return x.numerator * pow(den, -1, self.p) % self.p
        return x % self.p

    def elem(self, x):
        """Convert int, Fraction, Scalar or numeric string to a raw value."""
        if isinstance(x, Scalar):
            if x.field != self:
                if x.field.is_rational:
                    return self.norm(x.value)
                raise NotAField(f"cannot move {x} into {self}")
            return x.value
        if isinstance(x, bool):
            x = int(x)
        if isinstance(x, str):
            try:
                x = Fraction(x.strip())
            except (ValueError, ZeroDivisionError) as exc:
                raise ParseError(f"bad scalar {x!r}") from exc
        if isinstance(x, float):
            raise ParseError("floating point scalars are not exact")
        if not isinstance(x, (int, Fraction)):
            raise ParseError(f"bad scalar {x!r}")
        return self.norm(x)

    def zero(self):
        return 0

    def one(self):
        return 1

    def add(self, a, b):
        return self.norm(a + b)

    def sub(self, a, b):
        return self.norm(a - b)

    def mul(self, a, b):
        return self.norm(a * b)

    def neg(self, a):
        return self.norm(-a)

    def inv(self, a):
        if a == 0:
            raise ZeroDivisor("division by zero")
        if self.p is None:
            return self.norm(Fraction(1) / a)
        return pow(a, -1, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def to_str(self, a) -> str:
        return str(a)


QQ = FieldSpec.rationals()


class Scalar:
    """An element of a FieldSpec, with the usual operators."""

    __slots__ = ("value", "field")

    def __init__(self, value, field: FieldSpec = QQ):
        self.field = field
        self.value = field.elem(value)

    @classmethod
    def _raw(cls, value, field):
        s = object.__new__(cls)
        s.field = field
        s.value = value
        return s

    def _coerce(self, other):
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise NotAField(f"mixed fields {self.field} and {other.field}")
            return other.value
        return self.field.elem(other)

    def __add__(self, other):
        return Scalar._raw(self.field.add(self.value, self._coerce(other)), self.field)

    __radd__ = __add__

    def __sub__(self, other):
        return Scalar._raw(self.field.sub(self.value, self._coerce(other)), self.field)

    def __rsub__(self, other):
        return Scalar._raw(self.field.sub(self._coerce(other), self.value), self.field)

    def __mul__(self, other):
        return Scalar._raw(self.field.mul(self.value, self._coerce(other)), self.field)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return Scalar._raw(self.field.div(self.value, self._coerce(other)), self.field)

    def __rtruediv__(self, other):
        return Scalar._raw(self.field.div(self._coerce(other), self.value), self.field)

    def __neg__(self):
        return Scalar._raw(self.field.neg(self.value), self.field)

    def inverse(self):
        return Scalar._raw(self.field.inv(self.value), self.field)

    def is_zero(self) -> bool:
        return self.value == 0

    def __bool__(self):
        return self.value != 0

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.field == other.field and self.value == other.value
        try:
            return self.value == self.field.elem(other)
        except (ParseError, NotAField, ZeroDivisor):
            return NotImplemented

    def __hash__(self):
        return hash((self.value, self.field.p))

    def __repr__(self):
        return f"Scalar({self.value}, {self.field!r})"

    def __str__(self):
        return str(self.value)
