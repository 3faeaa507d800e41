"""Exact scalars: rationals (``fractions.Fraction``) and elements of Q(sqrt d)."""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Union


class FieldError(ValueError):
    """Operands from incompatible fields, or a value that left the supported field."""


def _is_squarefree(d: int) -> bool:
    if d < 2:
        return False
    f = 2
    while f * f <= d:
        if d % (f * f) == 0:
            return False
        f += 1
    return True


def to_fraction(x) -> Fraction:
    """Coerce int / Fraction / rational string / rational QuadExt to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, QuadExt):
        if x.b != 0:
            raise FieldError(f"{x} is not rational")
        return x.a
    raise TypeError(f"cannot read {x!r} as an exact rational")


class QuadExt:
    """``a + b*sqrt(d)`` with rational a, b and a fixed squarefree d > 1."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b, d: int):
        if not _is_squarefree(d):
            raise FieldError(f"d={d} must be a squarefree integer > 1")
        object.__setattr__(self, "a", to_fraction(a))
        object.__setattr__(self, "b", to_fraction(b))
        object.__setattr__(self, "d", int(d))

    def __setattr__(self, name, value):
        raise AttributeError("QuadExt is immutable")

    def _lift(self, other) -> QuadExt | None:
        if isinstance(other, QuadExt):
            if other.d != self.d:
                raise FieldError(f"mixing sqrt({self.d}) and sqrt({other.d})")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadExt(other, 0, self.d)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return QuadExt(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(-self.a, -self.b, self.d)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return QuadExt(self.a - o.a, self.b - o.b, self.d)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return QuadExt(
            self.a * o.a + self.b * o.b * self.d,
            self.a * o.b + o.a * self.b,
            self.d,
        )

    __rmul__ = __mul__

    def conjugate(self) -> QuadExt:
        return QuadExt(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        return self.a * self.a - self.d * self.b * self.b

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt d)")
        num = self * o.conjugate()
        return QuadExt(num.a / n, num.b / n, self.d)

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        out = QuadExt(1, 0, self.d)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def sign(self) -> int:
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        # opposite signs: the larger magnitude wins
        diff = self.a * self.a - self.b * self.b * self.d
        return sa if diff > 0 else sb

    def __eq__(self, other):
        try:
            o = self._lift(other)
        except FieldError:
            return False
        if o is None:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    def is_rational(self) -> bool:
        return self.b == 0

    def __repr__(self):
        return f"QuadExt({self.a}, {self.b}, {self.d})"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        return f"{self.a}{'+' if self.b > 0 else '-'}{abs(self.b)}*sqrt({self.d})"


Scalar = Union[Fraction, QuadExt]


def sqrt_of(d: int) -> QuadExt:
    return QuadExt(0, 1, d)


def sign(x) -> int:
    if isinstance(x, QuadExt):
        return x.sign()
    return (x > 0) - (x < 0)


def field_of(x) -> int | None:
    """``None`` for rationals, ``d`` for elements of Q(sqrt d)."""
    return x.d if isinstance(x, QuadExt) else None


def coerce(x, d: int | None) -> Scalar:
    """Place ``x`` in Q (d=None) or Q(sqrt d)."""
    if d is None:
        return to_fraction(x)
    if isinstance(x, QuadExt):
        if x.d != d:
            raise FieldError(f"mixing sqrt({x.d}) and sqrt({d})")
        return x
    return QuadExt(to_fraction(x), 0, d)


def fraction_str(x: Fraction) -> str:
    """Canonical "p/q" (or "p") serialization."""
    x = to_fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def scalar_to_json(x):
    if isinstance(x, QuadExt):
        return {"a": fraction_str(x.a), "b": fraction_str(x.b), "d": x.d}
    return fraction_str(x)


def scalar_from_json(obj) -> Scalar:
    if isinstance(obj, dict):
        return QuadExt(Fraction(obj["a"]), Fraction(obj["b"]), int(obj["d"]))
    if isinstance(obj, float):
        raise FieldError("floating-point values are not accepted in exact fields")
    return to_fraction(obj)
