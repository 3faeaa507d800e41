"""Three-way classification (NIEP, D-RNIEP, SNIEP) with replayable certificates."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator

from .constructions import FAMILIES, catalog, guo_extend, suleimanova_companion
from .exact.matrix import ExactMatrix
from .exact.scalars import fraction_str
from .spectra import (
    DEFAULT_DEPTH,
    ConditionReport,
    Spectrum,
    check_diagonalizable_bound,
    check_jll,
    check_lm_trace_zero,
    check_mn_symmetric,
    check_perron,
    check_power_sums,
    check_suleimanova,
    necessary_reports,
    perron_multiplicity,
    reducible_partition_scan,
)
from .verification import verify_spectrum

PROBLEMS = ("NIEP", "D-RNIEP", "SNIEP")
REALIZABLE = "REALIZABLE"
NOT_REALIZABLE = "NOT_REALIZABLE"
UNKNOWN = "UNKNOWN"


@dataclass(frozen=True)
class Certificate:
    """Evidence behind a verdict.

    kind is one of ``condition`` (violated necessary condition), ``partition``
    (forced reducibility with an empty partition scan), ``matrix`` (explicit
    realization) or ``deduction`` (a named rule applied to a certified premise).
    """

    kind: str
    name: str
    params: dict = field(default_factory=dict)
    report: ConditionReport | None = None
    matrix: ExactMatrix | None = None
    premise: Certificate | None = None
    premise_spectrum: Spectrum | None = None

    def to_json(self, with_matrix: bool = False) -> dict:
        out = {"kind": self.kind, "name": self.name, "params": _strs(self.params)}
        if self.report is not None:
            out["report"] = self.report.to_json()
        if self.matrix is not None and with_matrix:
            out["matrix"] = self.matrix.to_json()
        if self.premise is not None:
            out["premise"] = self.premise.to_json(with_matrix)
            out["premise_spectrum"] = self.premise_spectrum.to_json()
        return out


def _strs(d: dict) -> dict:
    return {k: fraction_str(v) if isinstance(v, Fraction) else v for k, v in d.items()}


@dataclass(frozen=True)
class Verdict:
    problem: str
    status: str
    certificates: tuple[Certificate, ...] = ()

    @property
    def certificate(self) -> Certificate | None:
        return self.certificates[0] if self.certificates else None

    def to_json(self, with_matrix: bool = False) -> dict:
        return {
            "problem": self.problem,
            "status": self.status,
            "certificates": [c.to_json(with_matrix) for c in self.certificates],
        }


# --- realization patterns ----------------------------------------------------


@dataclass(frozen=True)
class _Pattern:
    source: str
    tail: tuple[Fraction, ...]
    head_sum: Fraction
    build: Callable[[Fraction, Fraction, Fraction], tuple[ExactMatrix, dict] | None]
    # build(scale, head1, head2) on the unscaled list, None when it does not fit


def _patterns() -> list[_Pattern]:
    pats = []
    for name, ctor in FAMILIES.items():
        fam = ctor()
        tail = tuple(sorted((a for a, b in fam.target if b == 0), reverse=True))

        def build(c, a, b, fam=fam):
            t = (a - b) / 2
            if t < 0:
                return None
            A = fam(t)
            if not A.is_nonnegative():
                return None
            return A * c, {"t": t, "scale": c}

        pats.append(_Pattern(f"family:{name}", tail, Fraction(6), build))
    for e in catalog():
        v = e.spectrum.values

        def build(c, a, b, e=e, v=v):
            if (a, b) != (v[0], v[1]):
                return None
            return e.matrix * c, {"scale": c}

        pats.append(_Pattern(f"catalog:{e.name}", v[2:], v[0] + v[1], build))
    return pats


def _fit(sp_values: tuple[Fraction, ...], pat: _Pattern) -> Certificate | None:
    if len(sp_values) != len(pat.tail) + 2 or pat.tail[-1] >= 0:
        return None
    c = sp_values[-1] / pat.tail[-1]
    if c <= 0 or tuple(x / c for x in sp_values[2:]) != pat.tail:
        return None
    a, b = sp_values[0] / c, sp_values[1] / c
    if a + b != pat.head_sum:
        return None
    built = pat.build(c, a, b)
    if built is None:
        return None
    A, params = built
    return Certificate("matrix", pat.source, params, matrix=A)


def matrix_certificates(sp: Spectrum) -> Iterator[Certificate]:
    """Explicit realizations in rule order: Suleimanova companion, families, catalog."""
    rep = check_suleimanova(sp)
    if rep.applicable and rep.satisfied:
        yield Certificate("matrix", "suleimanova_companion", {}, matrix=suleimanova_companion(sp))
    for pat in _patterns():
        cert = _fit(sp.values, pat)
        if cert is not None:
            yield cert


def guo_certificates(sp: Spectrum) -> Iterator[Certificate]:
    """(l1, l2, rest) from a certified (l1 - u, l2 - u, rest) with u > 0."""
    if sp.n < 3:
        return
    v = sp.values
    for pat in _patterns():
        if len(v) != len(pat.tail) + 2 or pat.tail[-1] >= 0:
            continue
        c = v[-1] / pat.tail[-1]
        if c <= 0:
            continue
        u = (v[0] + v[1] - pat.head_sum * c) / 2
        if u <= 0:
            continue
        base = Spectrum((v[0] - u, v[1] - u) + v[2:])
        premise = _fit(base.values, pat)
        if premise is None or not verify_spectrum(premise.matrix, base).realizes:
            continue
        if guo_extend(base, u, certified=True) != sp:
            continue
        yield Certificate("deduction", "guo", {"u": u}, premise=premise, premise_spectrum=base)


def _meets(problem: str, cert: Certificate, sp: Spectrum) -> bool:
    rep = verify_spectrum(cert.matrix, sp)
    if not rep.realizes:
        return False
    if problem == "SNIEP":
        return rep.symmetric
    if problem == "D-RNIEP":
        return rep.diagonalizable
    return True


def classify(sp: Spectrum, depth: int = DEFAULT_DEPTH) -> dict[str, Verdict]:
    """First matching rule wins per problem: violations, partition argument, realizations, Guo, else UNKNOWN."""
    reports = necessary_reports(sp, depth)
    partition_cert = None
    if sp.n >= 2 and perron_multiplicity(sp) >= 2 and not reducible_partition_scan(sp):
        partition_cert = Certificate(
            "partition",
            "reducible_partition_scan",
            {"perron_multiplicity": perron_multiplicity(sp), "viable_partitions": 0},
        )
    matrices = list(matrix_certificates(sp))
    guo = list(guo_certificates(sp))
    out = {}
    for prob in PROBLEMS:
        against = [Certificate("condition", r.condition, report=r) for r in reports if r.violated and prob in r.problems]
        if partition_cert is not None:
            against.append(partition_cert)
        if against:
            out[prob] = Verdict(prob, NOT_REALIZABLE, tuple(against))
            continue
        found = [c for c in matrices if _meets(prob, c, sp)]
        if found:
            out[prob] = Verdict(prob, REALIZABLE, (found[0],))
            continue
        if prob == "NIEP" and guo:
            out[prob] = Verdict(prob, REALIZABLE, (guo[0],))
            continue
        out[prob] = Verdict(prob, UNKNOWN)
    return out


_CHECKERS = {
    "perron": lambda sp, d: check_perron(sp),
    "power_sums": lambda sp, d: check_power_sums(sp, d),
    "jll": lambda sp, d: check_jll(sp, d, d),
    "lm_trace_zero": lambda sp, d: check_lm_trace_zero(sp),
    "mn_symmetric": lambda sp, d: check_mn_symmetric(sp),
    "diagonalizable_t_bound": lambda sp, d: check_diagonalizable_bound(sp),
}


def replay(verdict: Verdict, sp: Spectrum, depth: int = DEFAULT_DEPTH) -> bool:
    """Independently re-derive every certificate attached to a verdict."""
    if verdict.status == UNKNOWN:
        return not verdict.certificates
    for cert in verdict.certificates:
        if not _replay_one(verdict.problem, cert, sp, depth):
            return False
    return bool(verdict.certificates)


def _replay_one(problem: str, cert: Certificate, sp: Spectrum, depth: int) -> bool:
    if cert.kind == "condition":
        rep = _CHECKERS[cert.name](sp, depth)
        return rep.violated and rep == cert.report
    if cert.kind == "partition":
        return perron_multiplicity(sp) >= 2 and not reducible_partition_scan(sp)
    if cert.kind == "matrix":
        return _meets(problem, cert, sp)
    if cert.kind == "deduction" and cert.name == "guo":
        base = cert.premise_spectrum
        return (
            problem == "NIEP"
            and _replay_one("NIEP", cert.premise, base, depth)
            and guo_extend(base, cert.params["u"], certified=True) == sp
        )
    return False
