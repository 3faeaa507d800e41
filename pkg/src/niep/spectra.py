"""Spectra, power sums and the necessary conditions for nonnegative realizability."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .exact.poly import Poly
from .exact.scalars import fraction_str, to_fraction

DEFAULT_DEPTH = 10


@dataclass(frozen=True)
class Spectrum:
    """A real list, kept sorted descending."""

    values: tuple[Fraction, ...]

    def __init__(self, values: Iterable):
        vals = tuple(sorted((to_fraction(v) for v in values), reverse=True))
        if not vals:
            raise ValueError("a spectrum needs at least one value")
        object.__setattr__(self, "values", vals)

    @property
    def n(self) -> int:
        return len(self.values)

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def scaled(self, c) -> Spectrum:
        return Spectrum(to_fraction(c) * v for v in self.values)

    def to_json(self) -> dict:
        return {"values": [fraction_str(v) for v in self.values]}

    @classmethod
    def from_json(cls, obj) -> Spectrum:
        if isinstance(obj, dict):
            obj = obj["values"]
        if not isinstance(obj, list) or any(isinstance(v, float) for v in obj):
            raise ValueError('spectrum JSON must be {"values": [rational strings]}')
        return cls(obj)

    def __str__(self):
        return "(" + ", ".join(fraction_str(v) for v in self.values) + ")"


def power_sum(sp: Spectrum, k: int) -> Fraction:
    if k < 1:
        raise ValueError("power sums start at k = 1")
    return sum((v**k for v in sp.values), Fraction(0))


def power_sums(sp: Spectrum, k_max: int) -> list[Fraction]:
    """``[s_1, ..., s_kmax]``."""
    return [power_sum(sp, k) for k in range(1, k_max + 1)]


def _jsonify(x):
    if isinstance(x, Fraction):
        return fraction_str(x)
    if isinstance(x, (list, tuple)):
        return [_jsonify(v) for v in x]
    if isinstance(x, dict):
        return {k: _jsonify(v) for k, v in x.items()}
    return x


@dataclass(frozen=True)
class ConditionReport:
    condition: str
    applicable: bool
    satisfied: bool
    witness: dict = field(default_factory=dict)
    problems: tuple[str, ...] = ("NIEP", "D-RNIEP", "SNIEP")

    @property
    def violated(self) -> bool:
        return self.applicable and not self.satisfied

    def to_json(self) -> dict:
        return {
            "condition": self.condition,
            "applicable": self.applicable,
            "satisfied": self.satisfied,
            "witness": _jsonify(self.witness),
            "problems": list(self.problems),
        }


def check_perron(sp: Spectrum) -> ConditionReport:
    rho = max(abs(v) for v in sp.values)
    return ConditionReport(
        "perron",
        True,
        sp.values[0] == rho,
        {"spectral_radius": rho, "largest": sp.values[0]},
    )


def check_power_sums(sp: Spectrum, k_max: int = DEFAULT_DEPTH) -> ConditionReport:
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    for k in range(1, k_max + 1):
        s = power_sum(sp, k)
        if s < 0:
            return ConditionReport("power_sums", True, False, {"k": k, "s_k": s})
    return ConditionReport("power_sums", True, True, {"k_max": k_max})


def check_jll(sp: Spectrum, k_max: int = DEFAULT_DEPTH, m_max: int = DEFAULT_DEPTH) -> ConditionReport:
    """n^(m-1) s_{km} >= s_k^m for all k <= k_max, m <= m_max."""
    if k_max < 1 or m_max < 1:
        raise ValueError("k_max and m_max must be >= 1")
    n = sp.n
    s = {}

    def ps(j):
        if j not in s:
            s[j] = power_sum(sp, j)
        return s[j]

    for k in range(1, k_max + 1):
        for m in range(1, m_max + 1):
            lhs = n ** (m - 1) * ps(k * m)
            rhs = ps(k) ** m
            if lhs < rhs:
                return ConditionReport("jll", True, False, {"k": k, "m": m, "lhs": lhs, "rhs": rhs})
    return ConditionReport("jll", True, True, {"k_max": k_max, "m_max": m_max})


def check_lm_trace_zero(sp: Spectrum) -> ConditionReport:
    """4 s_4 >= s_2^2 for five-element lists with zero sum."""
    applicable = sp.n == 5 and power_sum(sp, 1) == 0
    lhs, rhs = 4 * power_sum(sp, 4), power_sum(sp, 2) ** 2
    return ConditionReport(
        "lm_trace_zero", applicable, (not applicable) or lhs >= rhs, {"4s4": lhs, "s2^2": rhs}
    )


def extreme_lhs(sp: Spectrum) -> Fraction:
    s1, s2, s4 = power_sum(sp, 1), power_sum(sp, 2), power_sum(sp, 4)
    return 4 * s4 - s2**2 + s1**2 * s2 - s1**4 / 2


def check_extreme(sp: Spectrum) -> ConditionReport:
    """4s4 - s2^2 + s1^2 s2 - s1^4/2 >= 0; stated for 5x5 extreme realizing matrices only."""
    applicable = sp.n == 5
    lhs = extreme_lhs(sp)
    return ConditionReport(
        "extreme", applicable, (not applicable) or lhs >= 0, {"lhs": lhs}, problems=()
    )


def check_mn_symmetric(sp: Spectrum) -> ConditionReport:
    """lambda_2 + lambda_5 <= trace, necessary for a symmetric 5x5 realization."""
    applicable = sp.n == 5
    s1 = power_sum(sp, 1)
    lhs = sp.values[1] + sp.values[4] if applicable else Fraction(0)
    return ConditionReport(
        "mn_symmetric",
        applicable,
        (not applicable) or lhs <= s1,
        {"lambda2+lambda5": lhs, "trace": s1},
        problems=("SNIEP",),
    )


def check_suleimanova(sp: Spectrum) -> ConditionReport:
    """One positive value and a nonnegative sum: sufficient as well as necessary."""
    v = sp.values
    applicable = v[0] > 0 and (sp.n == 1 or v[1] <= 0)
    s1 = power_sum(sp, 1)
    return ConditionReport("suleimanova", applicable, (not applicable) or s1 >= 0, {"s1": s1})


def diagonalizable_pattern_t(sp: Spectrum) -> Fraction | None:
    """t if the list is literally (3+t, 3-t, -2, -2, -2), else None."""
    v = sp.values
    if sp.n != 5 or v[2:] != (-2, -2, -2) or v[0] + v[1] != 6:
        return None
    return (v[0] - v[1]) / 2


def check_diagonalizable_bound(sp: Spectrum) -> ConditionReport:
    """(3+t, 3-t, -2, -2, -2) has no diagonalizable nonnegative realization when 0 < t < 1."""
    t = diagonalizable_pattern_t(sp)
    applicable = t is not None
    return ConditionReport(
        "diagonalizable_t_bound",
        applicable,
        (not applicable) or not (0 < t < 1),
        {"t": t} if applicable else {},
        problems=("D-RNIEP", "SNIEP"),
    )


def necessary_reports(sp: Spectrum, depth: int = DEFAULT_DEPTH) -> list[ConditionReport]:
    return [
        check_perron(sp),
        check_power_sums(sp, depth),
        check_jll(sp, depth, depth),
        check_lm_trace_zero(sp),
        check_mn_symmetric(sp),
        check_diagonalizable_bound(sp),
    ]


def _viable(part: Sequence[Fraction], depth: int) -> bool:
    sp = Spectrum(part)
    return (
        check_perron(sp).satisfied
        and check_power_sums(sp, depth).satisfied
        and check_jll(sp, depth, depth).satisfied
    )


def reducible_partition_scan(sp: Spectrum, depth: int = 6) -> list[tuple[Spectrum, Spectrum]]:
    """Bipartitions (as index sets) whose parts both pass the Perron, power-sum and JLL checks.

    Each unordered split is listed once, part containing index 0 first, in
    lexicographic order of index sets.
    """
    if sp.n < 2:
        raise ValueError("need at least two values to split")
    n = sp.n
    out = []
    rest = range(1, n)
    for size in range(0, n - 1):
        for combo in combinations(rest, size):
            left = (0,) + combo
            right = tuple(i for i in range(n) if i not in left)
            a = [sp.values[i] for i in left]
            b = [sp.values[i] for i in right]
            if _viable(a, depth) and _viable(b, depth):
                out.append((Spectrum(a), Spectrum(b)))
    return out


def perron_multiplicity(sp: Spectrum) -> int:
    return sum(1 for v in sp.values if v == sp.values[0])


def extreme_poly_sigma_t() -> Poly:
    """Left side of the extreme-matrix inequality for (3+t, 3, -2, -2, -2) as a polynomial in t."""
    t = Poly.x()
    vals = [t + 3, Poly([3]), Poly([-2]), Poly([-2]), Poly([-2])]

    def s(k):
        return sum((v**k for v in vals), Poly())

    s1, s2, s4 = s(1), s(2), s(4)
    return 4 * s4 - s2 * s2 + s1 * s1 * s2 - (s1**4).scale(Fraction(1, 2))


def extreme_root_audit(printed: str = "0.39671", eps=Fraction(1, 10**12), tol=Fraction(1, 1000)) -> dict:
    """Smallest positive root of the extreme-inequality polynomial vs. a printed decimal."""
    from .exact.roots import isolate_smallest_nonneg_root

    p = extreme_poly_sigma_t()
    iv = isolate_smallest_nonneg_root(p, eps)
    diff = abs(iv.midpoint - Fraction(printed))
    return {
        "polynomial": p.to_json(),
        "interval": iv.to_json(),
        "printed": printed,
        "abs_difference": f"{float(diff):.6g}",
        "tolerance": fraction_str(tol),
        "agrees": diff <= tol,
        "flag": "agreement" if diff <= tol else "discrepancy",
    }
