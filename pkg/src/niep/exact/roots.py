"""Real root counting and isolation with Sturm sequences over Q."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .poly import Poly, squarefree_part
from .scalars import fraction_str, to_fraction


@dataclass(frozen=True)
class IsolatingInterval:
    """Half-open ``(lo, hi]`` holding exactly one real root."""

    lo: Fraction
    hi: Fraction
    root_count: int = 1

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __float__(self):
        return float(self.midpoint)

    def to_json(self) -> dict:
        return {
            "lo": fraction_str(self.lo),
            "hi": fraction_str(self.hi),
            "root_count": self.root_count,
            "decimal": f"{float(self.midpoint):.17g}",
        }


def sturm_sequence(p: Poly) -> list[Poly]:
    """Sturm chain of the squarefree part of p (primitive-normalised, signs kept)."""
    if p.is_zero():
        raise ValueError("Sturm sequence of the zero polynomial")
    p0 = squarefree_part(p)
    seq = [p0, p0.derivative()]
    while not seq[-1].is_zero() and seq[-1].degree > 0:
        r = -(seq[-2] % seq[-1])
        if r.is_zero():
            break
        # positive rescaling keeps sign structure and tames coefficient growth
        seq.append(r.scale(1 / abs(r.lc())))
    return [q for q in seq if not q.is_zero()]


def _variations(seq: list[Poly], x: Fraction) -> int:
    signs = []
    for q in seq:
        v = q(x)
        if v != 0:
            signs.append(v > 0)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def separation_nudge(p: Poly) -> Fraction:
    """Canonical rational 1/(2N) below the Mahler root-separation bound of p's squarefree part."""
    q = squarefree_part(p)
    n = q.degree
    if n <= 1:
        return Fraction(1, 2)
    ints = q.integer_primitive()
    norm2 = math.isqrt(sum(c * c for c in ints)) + 1
    # sep(q) > sqrt(3) * n^{-(n+2)/2} * ||q||^{1-n}
    bound = math.isqrt(n ** (n + 2)) + 1
    return Fraction(1, 2 * bound * norm2 ** (n - 1))


def sturm_root_count(p: Poly, lo, hi, seq: list[Poly] | None = None) -> int:
    """Number of distinct real roots of p in ``(lo, hi]``."""
    if p.is_zero():
        raise ValueError("root count of the zero polynomial")
    lo, hi = to_fraction(lo), to_fraction(hi)
    if not lo < hi:
        raise ValueError("need lo < hi")
    seq = seq or sturm_sequence(p)
    extra = 0
    if p(lo) == 0 or p(hi) == 0:
        delta = separation_nudge(p)
        if p(lo) == 0:
            lo -= delta
            extra -= 1
        if p(hi) == 0:
            hi += delta
    return _variations(seq, lo) - _variations(seq, hi) + extra


def cauchy_bound(p: Poly) -> Fraction:
    """All real roots lie in (-B, B)."""
    lead = abs(p.lc())
    return 1 + max((abs(c) / lead for c in p.coeffs[:-1]), default=Fraction(0))


def _refine(p: Poly, seq, lo: Fraction, hi: Fraction, eps: Fraction) -> IsolatingInterval:
    while hi - lo > eps:
        mid = (lo + hi) / 2
        if sturm_root_count(p, lo, mid, seq) == 1:
            hi = mid
        else:
            lo = mid
    return IsolatingInterval(lo, hi)


def isolate_real_roots(p: Poly, eps=Fraction(1, 10**9)) -> list[IsolatingInterval]:
    """Isolating intervals of width <= eps for every distinct real root, ascending."""
    if p.is_zero():
        raise ValueError("root isolation of the zero polynomial")
    eps = to_fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    if p.degree == 0:
        return []
    seq = sturm_sequence(p)
    B = cauchy_bound(p)
    stack = [(-B, B)]
    found = []
    while stack:
        lo, hi = stack.pop()
        c = sturm_root_count(p, lo, hi, seq)
        if c == 0:
            continue
        if c == 1:
            found.append(_refine(p, seq, lo, hi, eps))
            continue
        mid = (lo + hi) / 2
        stack.append((mid, hi))
        stack.append((lo, mid))
    return sorted(found, key=lambda iv: iv.lo)


def isolate_smallest_nonneg_root(p: Poly, eps=Fraction(1, 10**9)) -> IsolatingInterval | None:
    """Interval of width <= eps around the smallest real root >= 0, or None."""
    if p.is_zero():
        raise ValueError("root isolation of the zero polynomial")
    eps = to_fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    if p.degree == 0:
        return None
    seq = sturm_sequence(p)
    if p(Fraction(0)) == 0:
        lo = -min(eps, separation_nudge(p))
        return IsolatingInterval(lo, Fraction(0))
    lo, hi = Fraction(0), cauchy_bound(p)
    if sturm_root_count(p, lo, hi, seq) == 0:
        return None
    # shrink towards the leftmost root
    while True:
        c = sturm_root_count(p, lo, hi, seq)
        if c == 1 and hi - lo <= eps:
            return IsolatingInterval(lo, hi)
        mid = (lo + hi) / 2
        if sturm_root_count(p, lo, mid, seq) >= 1:
            hi = mid
        else:
            lo = mid
