"""Explicit nonnegative realizations: parametrised families, catalog matrices, companions."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .exact.matrix import ExactMatrix
from .exact.poly import Poly, poly_from_roots, squarefree_part
from .exact.roots import IsolatingInterval, isolate_real_roots, sturm_root_count
from .exact.scalars import sqrt_of, to_fraction
from .spectra import Spectrum, check_suleimanova

F = Fraction
T = Poly.x()


class ConstructionError(ValueError):
    """A construction produced a matrix that fails its own post-check."""


@dataclass(frozen=True)
class MatrixFamily:
    """5x5 (or n x n) matrix whose entries are polynomials in a parameter t."""

    name: str
    entries: tuple[tuple[Poly, ...], ...]
    target: tuple[tuple[Fraction, Fraction], ...]  # each eigenvalue is a + b*t
    description: str = ""

    @property
    def n(self) -> int:
        return len(self.entries)

    def __call__(self, t) -> ExactMatrix:
        t = to_fraction(t)
        return ExactMatrix([[p(t) for p in row] for row in self.entries])

    def target_spectrum(self, t) -> Spectrum:
        t = to_fraction(t)
        return Spectrum(a + b * t for a, b in self.target)

    def target_poly(self, t) -> Poly:
        return poly_from_roots(self.target_spectrum(t).values)

    def nonconstant_entries(self) -> list[tuple[int, int, Poly]]:
        return [(i, j, p) for i, row in enumerate(self.entries) for j, p in enumerate(row) if p.degree >= 1]


def _poly_rows(rows) -> tuple[tuple[Poly, ...], ...]:
    def lift(x):
        return x if isinstance(x, Poly) else Poly([x])

    return tuple(tuple(lift(x) for x in r) for r in rows)


def family_lm_sigma_hat() -> MatrixFamily:
    """Companion-like family with spectrum (3+t, 3-t, -2, -2, -2)."""
    a21 = (15 + T**2).scale(F(1, 2))
    rows = [
        [0, 1, 0, 0, 0],
        [a21, 0, 1, 0, 0],
        [0, 0, 0, 1, 0],
        [0, 0, 0, 0, 1],
        [3 * T**4 + 58 * T**2 + 3, (T**4 + 78 * T**2 - 15).scale(F(1, 4)), 10 + 6 * T**2, a21, 0],
    ]
    return MatrixFamily(
        "lm_sigma_hat",
        _poly_rows(rows),
        ((F(3), F(1)), (F(3), F(-1)), (F(-2), F(0)), (F(-2), F(0)), (F(-2), F(0))),
        "spectrum (3+t, 3-t, -2, -2, -2), nonnegative for t >= sqrt(16 sqrt 6 - 39)",
    )


def family_perturbed() -> MatrixFamily:
    """Family with five distinct eigenvalues (3+t, 3-t, -19/10, -2, -21/10)."""
    a21 = (1501 + 100 * T**2).scale(F(1, 200))
    rows = [
        [0, 1, 0, 0, 0],
        [a21, 0, 1, 0, 0],
        [0, 0, 0, 1, 0],
        [0, 0, 0, 0, 1],
        [
            (15000 * T**4 + 289950 * T**2 + 14649).scale(F(1, 5000)),
            (10000 * T**4 + 779800 * T**2 - 148199).scale(F(1, 40000)),
            (150 * T**2 + 249).scale(F(1, 25)),
            a21,
            0,
        ],
    ]
    return MatrixFamily(
        "perturbed",
        _poly_rows(rows),
        ((F(3), F(1)), (F(3), F(-1)), (F(-19, 10), F(0)), (F(-2), F(0)), (F(-21, 10), F(0))),
        "spectrum (3+t, 3-t, -1.9, -2, -2.1), five distinct eigenvalues",
    )


FAMILIES: dict[str, Callable[[], MatrixFamily]] = {
    "lm_sigma_hat": family_lm_sigma_hat,
    "perturbed": family_perturbed,
}


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    matrix: ExactMatrix
    spectrum: Spectrum
    symmetric: bool
    irreducible: bool
    diagonalizable: bool
    note: str = ""


def _sym_sigma_t1() -> ExactMatrix:
    r6 = sqrt_of(6)
    return ExactMatrix(
        [
            [0, 2, 2, 0, 0],
            [2, 0, 2, 0, 0],
            [2, 2, 0, 0, 0],
            [0, 0, 0, 1, r6],
            [0, 0, 0, r6, 0],
        ]
    )


def _sym_sigma_hat_t1() -> ExactMatrix:
    return ExactMatrix(
        [
            [0, 2, 0, 0, 0],
            [2, 0, 0, 0, 0],
            [0, 0, 0, 2, 2],
            [0, 0, 2, 0, 2],
            [0, 0, 2, 2, 0],
        ]
    )


def _jordan_sigma_3_4() -> ExactMatrix:
    rows = [
        [0, 8, 1, 0, 0],
        [8, 0, 1, 0, 0],
        [F(75, 2), F(75, 2), 0, 1, 0],
        [0, 0, 0, 0, 1],
        [829, 829, 256, 110, 0],
    ]
    return ExactMatrix(rows) * F(1, 4)


_CATALOG: list[CatalogEntry] | None = None


def catalog(verify: bool = True) -> list[CatalogEntry]:
    """The three displayed matrices, re-verified on first load."""
    global _CATALOG
    if _CATALOG is None:
        entries = [
            CatalogEntry(
                "SYM_SIGMA_T1", _sym_sigma_t1(), Spectrum([4, 3, -2, -2, -2]),
                symmetric=True, irreducible=False, diagonalizable=True,
                note="symmetric realization of (3+t, 3, -2, -2, -2) at t = 1, entries in Q(sqrt 6)",
            ),
            CatalogEntry(
                "SYM_SIGMA_HAT_T1", _sym_sigma_hat_t1(), Spectrum([4, 2, -2, -2, -2]),
                symmetric=True, irreducible=False, diagonalizable=True,
                note="symmetric realization of (3+t, 3-t, -2, -2, -2) at t = 1",
            ),
            CatalogEntry(
                "JORDAN_SIGMA_3_4", _jordan_sigma_3_4(), Spectrum([F(15, 4), F(9, 4), -2, -2, -2]),
                symmetric=False, irreducible=True, diagonalizable=False,
                note="realizes (3+t, 3-t, -2, -2, -2) at t = 3/4 with a 2x2 Jordan block at -2",
            ),
        ]
        if verify:
            from .verification import verify_spectrum

            for e in entries:
                rep = verify_spectrum(e.matrix, e.spectrum)
                claimed = (True, True, e.symmetric, e.irreducible, e.diagonalizable)
                got = (rep.charpoly_match, rep.nonnegative, rep.symmetric, rep.irreducible, rep.diagonalizable)
                if got != claimed:
                    raise ConstructionError(f"catalog entry {e.name} fails its claims: {rep.to_json()}")
        _CATALOG = entries
    return list(_CATALOG)


def catalog_entry(name: str) -> CatalogEntry:
    for e in catalog():
        if e.name.lower() == name.lower():
            return e
    raise KeyError(name)


def companion(p: Poly) -> ExactMatrix:
    """Companion matrix with ones on the superdiagonal and -p_0..-p_{n-1} in the last row."""
    p = p.monic()
    n = p.degree
    rows = [[0] * n for _ in range(n)]
    for i in range(n - 1):
        rows[i][i + 1] = 1
    for j in range(n):
        rows[n - 1][j] = -p[j]
    return ExactMatrix(rows)


def suleimanova_companion(sp: Spectrum) -> ExactMatrix:
    rep = check_suleimanova(sp)
    if not (rep.applicable and rep.satisfied):
        raise ValueError(f"{sp} is not a Suleimanova list with nonnegative sum")
    p = poly_from_roots(sp.values)
    A = companion(p)
    if not A.is_nonnegative():
        raise ConstructionError(f"companion has negative entries; coefficients {p.to_json()}")
    if A.charpoly() != p:
        raise ConstructionError("companion characteristic polynomial mismatch")
    return A


@dataclass(frozen=True)
class ThresholdResult:
    family: str
    interval: IsolatingInterval
    entry_witness: tuple[int, int] | None
    entry_poly: Poly | None
    closed_form_check: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "interval": self.interval.to_json(),
            "entry_witness": None if self.entry_witness is None else [i + 1 for i in self.entry_witness],
            "entry_poly": None if self.entry_poly is None else self.entry_poly.to_json(),
            "closed_form_check": self.closed_form_check,
        }


def _positive_root_brackets(P: Poly, coarse: Fraction) -> list[list[Fraction]]:
    """Disjoint brackets ``[lo, hi]`` (root in (lo, hi], lo >= 0) of the positive roots of P."""
    out = []
    for iv in isolate_real_roots(P, coarse):
        lo, hi = iv.lo, iv.hi
        if hi <= 0:
            continue
        if lo < 0:
            if sturm_root_count(P, lo, F(0)) == 1:
                continue
            lo = F(0)
        out.append([lo, hi])
    return out


def _bisect_once(p: Poly, br: list[Fraction]) -> None:
    mid = (br[0] + br[1]) / 2
    if sturm_root_count(p, br[0], mid) == 1:
        br[1] = mid
    else:
        br[0] = mid


def family_nonneg_threshold(f: MatrixFamily, eps=F(1, 10**9)) -> ThresholdResult:
    """Left end of the unbounded t-range (t >= 0) on which every entry of f(t) is >= 0.

    Positive roots of all entry polynomials are isolated together; the gaps
    between consecutive roots are probed right to left with rational sample
    points, and the first infeasible gap fixes the binding root.
    """
    eps = to_fraction(eps)
    polys = f.nonconstant_entries()
    for i, j, p in polys:
        if p.lc() < 0:
            raise ValueError(f"entry ({i + 1},{j + 1}) is eventually negative; no unbounded feasible range")
    if any(p[0] < 0 for row in f.entries for p in row if p.degree <= 0):
        raise ValueError("a constant entry is negative")
    zero_result = ThresholdResult(f.name, IsolatingInterval(-eps, F(0)), None, None)
    if not polys:
        return zero_result
    P = Poly([1])
    for _, _, p in polys:
        P = P * squarefree_part(p)
    P = squarefree_part(P)
    brackets = _positive_root_brackets(P, F(1, 1000))

    def infeasible(t: Fraction):
        return next(((i, j, p) for i, j, p in polys if p(t) < 0), None)

    for k in range(len(brackets) - 1, -1, -1):
        if k == 0:
            while P(brackets[0][0]) == 0:
                _bisect_once(P, brackets[0])
            sample = brackets[0][0]
        else:
            while not brackets[k - 1][1] < brackets[k][0]:
                _bisect_once(P, brackets[k])
            sample = (brackets[k - 1][1] + brackets[k][0]) / 2
        bad = infeasible(sample)
        if bad is None:
            continue
        i, j, p = bad
        br = list(brackets[k])
        while br[1] - br[0] > eps:
            _bisect_once(p, br)
        result = ThresholdResult(f.name, IsolatingInterval(br[0], br[1]), (i, j), p)
        return _with_closed_form(result)
    return zero_result


def decimal_agreement(x: Fraction, printed: str) -> dict:
    """Does x truncate or round to the printed decimal string?"""
    digits = len(printed.split(".")[1])
    scale = 10**digits
    target = Fraction(printed)
    truncated = Fraction(math.floor(x * scale), scale)
    rounded = Fraction(round(x * scale), scale)
    return {
        "printed_decimal": printed,
        "digits": digits,
        "printed_digits_agree": truncated == target or rounded == target,
    }


CLOSED_FORMS = {
    "lm_sigma_hat": ("sqrt(16*sqrt(6) - 39)", "0.43799"),
    "perturbed": ("sqrt(120*sqrt(1066) - 3899)/10", "0.4354153419"),
}


def _with_closed_form(res: ThresholdResult) -> ThresholdResult:
    if res.family not in CLOSED_FORMS:
        return res
    import mpmath

    expr, printed = CLOSED_FORMS[res.family]
    with mpmath.workdps(40):
        if res.family == "lm_sigma_hat":
            exact = mpmath.sqrt(16 * mpmath.sqrt(6) - 39)
        else:
            exact = mpmath.sqrt(120 * mpmath.sqrt(1066) - 3899) / 10
        lo = mpmath.mpf(res.interval.lo.numerator) / res.interval.lo.denominator
        hi = mpmath.mpf(res.interval.hi.numerator) / res.interval.hi.denominator
        check = {
            "closed_form": expr,
            "closed_form_value": mpmath.nstr(exact, 30),
            "interval_contains_closed_form": bool(lo < exact <= hi),
            "abs_diff_midpoint": mpmath.nstr(abs((lo + hi) / 2 - exact), 5),
        }
    check.update(decimal_agreement(res.interval.midpoint, printed))
    return ThresholdResult(res.family, res.interval, res.entry_witness, res.entry_poly, check)


def guo_extend(base: Spectrum, u, certified: bool) -> Spectrum:
    """(l1 + u, l2 + u, l3, ...) from a certified realizable (l1, l2, l3, ...)."""
    u = to_fraction(u)
    if not certified:
        raise ValueError("base spectrum carries no realizability certificate")
    if u < 0:
        raise ValueError("u must be nonnegative")
    if base.n < 2:
        raise ValueError("need at least two values")
    v = list(base.values)
    v[0] += u
    v[1] += u
    return Spectrum(v)
