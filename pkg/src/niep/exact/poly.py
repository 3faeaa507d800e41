"""Dense univariate polynomials with rational coefficients."""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

from .scalars import FieldError, QuadExt, coerce, field_of, fraction_str, to_fraction


class Poly:
    """Immutable polynomial, coefficients lowest degree first, trailing zeros stripped."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [to_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def x(cls) -> Poly:
        return cls([0, 1])

    @classmethod
    def const(cls, c) -> Poly:
        return cls([c])

    @property
    def degree(self) -> int:
        """-1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly([other])
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Poly({[fraction_str(c) for c in self.coeffs]})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mag = abs(c)
            body = "" if (mag == 1 and k > 0) else fraction_str(mag)
            if k > 0:
                xs = "x" if k == 1 else f"x^{k}"
                body = f"{body}*{xs}" if body else xs
            terms.append(("-" if c < 0 else "+", body))
        head_sign, head = terms[0]
        out = ("-" if head_sign == "-" else "") + head
        for s, b in terms[1:]:
            out += f" {s} {b}"
        return out

    @staticmethod
    def _coerce(other) -> Poly | None:
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly([other])
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = max(len(self.coeffs), len(o.coeffs))
        return Poly(self[k] + o[k] for k in range(n))

    __radd__ = __add__

    def __neg__(self):
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not self.coeffs or not o.coeffs:
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(o.coeffs):
                out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = Poly([1])
        for _ in range(k):
            out = out * self
        return out

    def __divmod__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(o.coeffs)
        if dq < 0:
            return Poly(), self
        quot = [Fraction(0)] * (dq + 1)
        lead = o.lc()
        for k in range(dq, -1, -1):
            c = rem[k + o.degree] / lead
            quot[k] = c
            if c:
                for j, b in enumerate(o.coeffs):
                    rem[k + j] -= c * b
        return Poly(quot), Poly(rem[: o.degree])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __call__(self, x):
        """Horner evaluation at a Fraction, QuadExt or float."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> Poly:
        return Poly(k * c for k, c in enumerate(self.coeffs) if k > 0)

    def monic(self) -> Poly:
        if self.is_zero():
            return self
        lead = self.lc()
        return Poly(c / lead for c in self.coeffs)

    def scale(self, c) -> Poly:
        c = to_fraction(c)
        return Poly(c * a for a in self.coeffs)

    def integer_primitive(self) -> tuple[int, ...]:
        """Primitive integer coefficient vector with positive leading coefficient."""
        if self.is_zero():
            return ()
        den = 1
        for c in self.coeffs:
            den = den * c.denominator // math.gcd(den, c.denominator)
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for v in ints:
            g = math.gcd(g, v)
        if ints[-1] < 0:
            g = -g
        return tuple(v // g for v in ints)

    def primitive(self) -> Poly:
        return Poly(self.integer_primitive())

    def compose(self, q: Poly) -> Poly:
        acc = Poly()
        for c in reversed(self.coeffs):
            acc = acc * q + c
        return acc

    def to_json(self) -> list[str]:
        return [fraction_str(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, obj: Sequence) -> Poly:
        if isinstance(obj, dict):
            obj = obj.get("coefficients", obj.get("coeffs"))
        if not isinstance(obj, list):
            raise ValueError("polynomial JSON must be a coefficient array")
        for c in obj:
            if isinstance(c, float):
                raise FieldError("floating-point coefficients are not accepted")
        return cls(obj)


def pseudo_remainder(a: Poly, b: Poly) -> Poly:
    """prem(a, b) = lc(b)^(deg a - deg b + 1) * a mod b."""
    if b.is_zero():
        raise ZeroDivisionError("pseudo-remainder by zero")
    delta = a.degree - b.degree
    if delta < 0:
        return a
    return (a.scale(b.lc() ** (delta + 1))) % b


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd via the primitive pseudo-remainder sequence."""
    a, b = a.primitive(), b.primitive()
    if a.degree < b.degree:
        a, b = b, a
    while not b.is_zero():
        r = pseudo_remainder(a, b)
        a, b = b, r.primitive()
    return a.monic()


def is_squarefree(p: Poly) -> bool:
    if p.degree <= 0:
        return True
    return poly_gcd(p, p.derivative()).degree == 0


def squarefree_part(p: Poly) -> Poly:
    if p.degree <= 0:
        return p.monic()
    return (p // poly_gcd(p, p.derivative())).monic()


def poly_from_roots(roots: Iterable) -> Poly:
    """Monic polynomial with the given root multiset; quadratic roots must come in conjugate pairs."""
    roots = list(roots)
    d = None
    for r in roots:
        fd = field_of(r)
        if fd is not None:
            if d is not None and d != fd:
                raise FieldError("roots from different quadratic fields")
            d = fd
    if d is None:
        out = Poly([1])
        for r in roots:
            out = out * Poly([-to_fraction(r), 1])
        return out
    acc = [coerce(1, d)]
    for r in roots:
        r = coerce(r, d)
        nxt = [coerce(0, d)] * (len(acc) + 1)
        for k, c in enumerate(acc):
            nxt[k + 1] = nxt[k + 1] + c
            nxt[k] = nxt[k] - r * c
        acc = nxt
    for c in acc:
        if not isinstance(c, QuadExt) or c.b != 0:
            raise FieldError("expansion has irrational coefficients (unpaired quadratic root)")
    return Poly(c.a for c in acc)
