"""Command-line front end.

    niep check     SPECTRUM          classify a spectrum, list every condition report
    niep construct NAME [--t T]      emit a family or catalog matrix with its verification
    niep verify    MATRIX SPECTRUM   verify a matrix against a spectrum
    niep threshold FAMILY [--eps E]  isolate the nonnegativity threshold of a family
    niep fit-meehan --t T            fit the structured 5x5 form numerically
    niep roots     POLY [--eps E]    isolate all real roots of a rational polynomial

SPECTRUM, MATRIX and POLY are a file path, ``-`` for stdin, or inline JSON.
Exit codes: 0 success, 1 a check failed or a verdict is NOT_REALIZABLE, 2 invalid input.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .classify import NOT_REALIZABLE, classify
from .constructions import FAMILIES, catalog, catalog_entry, family_nonneg_threshold
from .exact.matrix import ExactMatrix
from .exact.poly import Poly
from .exact.roots import isolate_real_roots
from .exact.scalars import fraction_str
from .meehan import ConvergenceError, meehan_fit
from .spectra import (
    DEFAULT_DEPTH,
    Spectrum,
    check_extreme,
    check_suleimanova,
    necessary_reports,
    reducible_partition_scan,
)
from .verification import jordan_structure, rational_eigenvalues, verify_spectrum

EXPLAIN = {
    "perron": "the largest modulus must itself be a member of the list",
    "power_sums": "s_k = trace(A^k) >= 0 for every k",
    "jll": "n^(m-1) s_(km) >= s_k^m for all k, m",
    "lm_trace_zero": "five values summing to zero need 4 s_4 >= s_2^2",
    "mn_symmetric": "a symmetric 5x5 realization needs lambda_2 + lambda_5 <= trace",
    "diagonalizable_t_bound": "(3+t, 3-t, -2, -2, -2) with 0 < t < 1 has no diagonalizable realization",
    "suleimanova": "one positive value: realizable exactly when the sum is >= 0",
    "extreme": "extreme 5x5 realizations satisfy 4s_4 - s_2^2 + s_1^2 s_2 - s_1^4/2 >= 0",
}


class InputError(ValueError):
    pass


def canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def _load(arg: str):
    """Parse a path, '-' (stdin) or inline JSON."""
    try:
        if arg == "-":
            return json.loads(sys.stdin.read())
        if os.path.exists(arg):
            with open(arg) as fh:
                return json.load(fh)
        return json.loads(arg)
    except (OSError, json.JSONDecodeError) as e:
        raise InputError(f"cannot read JSON from {arg!r}: {e}") from e


def _rational(s: str, what: str) -> Fraction:
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as e:
        raise InputError(f"{what} must be an exact rational string, got {s!r}") from e


def _spectrum(arg) -> Spectrum:
    try:
        return Spectrum.from_json(_load(arg))
    except InputError:
        raise
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as e:
        raise InputError(f"malformed spectrum: {e}") from e


def _matrix(arg) -> ExactMatrix:
    try:
        return ExactMatrix.from_json(_load(arg))
    except InputError:
        raise
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as e:
        raise InputError(f"malformed matrix: {e}") from e


def _with_explain(report: dict, explain: bool) -> dict:
    if explain and report.get("condition") in EXPLAIN:
        report = dict(report, explain=EXPLAIN[report["condition"]])
    return report


def _jordan_reports(A: ExactMatrix) -> list[dict]:
    return [jordan_structure(A, lam).to_json() for lam in rational_eigenvalues(A)]


# --- verbs -------------------------------------------------------------------


def cmd_check(args) -> tuple[dict, dict, int]:
    sp = _spectrum(args.spectrum)
    depth = args.depth
    reports = necessary_reports(sp, depth) + [check_suleimanova(sp), check_extreme(sp)]
    verdicts = classify(sp, depth)
    results = {
        "conditions": [_with_explain(r.to_json(), args.explain) for r in reports],
        "verdicts": {k: v.to_json() for k, v in verdicts.items()},
    }
    if sp.n >= 2:
        results["viable_partitions"] = [[a.to_json()["values"], b.to_json()["values"]] for a, b in reducible_partition_scan(sp)]
    code = 1 if any(v.status == NOT_REALIZABLE for v in verdicts.values()) else 0
    return {"spectrum": sp.to_json(), "depth": depth}, results, code


def cmd_construct(args) -> tuple[dict, dict, int]:
    name = args.name.lower()
    inputs = {"name": name, "t": args.t}
    if name in FAMILIES:
        if args.t is None:
            raise InputError(f"family {name} needs --t")
        t = _rational(args.t, "--t")
        fam = FAMILIES[name]()
        A = fam(t)
        sp = fam.target_spectrum(t)
    else:
        try:
            e = catalog_entry(name)
        except KeyError:
            known = sorted(FAMILIES) + [c.name.lower() for c in catalog()]
            raise InputError(f"unknown construction {name!r}; known: {', '.join(known)}") from None
        if args.t is not None:
            raise InputError(f"catalog entry {name} takes no --t")
        A, sp = e.matrix, e.spectrum
    rep = verify_spectrum(A, sp)
    results = {"matrix": A.to_json(), "spectrum": sp.to_json(), "verification": rep.to_json()}
    return inputs, results, 0 if rep.realizes else 1


def cmd_verify(args) -> tuple[dict, dict, int]:
    A = _matrix(args.matrix)
    sp = _spectrum(args.spectrum)
    if A.n != sp.n:
        raise InputError(f"dimension mismatch: {A.n}x{A.n} matrix vs {sp.n} values")
    rep = verify_spectrum(A, sp)
    results = {"verification": rep.to_json(), "jordan": _jordan_reports(A)}
    return {"matrix": A.to_json(), "spectrum": sp.to_json()}, results, 0 if rep.realizes else 1


def cmd_threshold(args) -> tuple[dict, dict, int]:
    if args.family not in FAMILIES:
        raise InputError(f"unknown family {args.family!r}; known: {', '.join(sorted(FAMILIES))}")
    eps = _rational(args.eps, "--eps")
    if eps <= 0:
        raise InputError("--eps must be positive")
    res = family_nonneg_threshold(FAMILIES[args.family](), eps)
    return {"family": args.family, "eps": fraction_str(eps)}, res.to_json(), 0


def cmd_fit_meehan(args) -> tuple[dict, dict, int]:
    try:
        t = float(args.t)
    except ValueError as e:
        raise InputError(f"--t must be a decimal, got {args.t!r}") from e
    if not t > 0:
        raise InputError("--t must be positive")
    inputs = {"t": args.t, "attempts": args.attempts}
    try:
        fit = meehan_fit(t, args.attempts)
    except ConvergenceError as e:
        return inputs, {"converged": False, "best_residual": f"{e.best_residual:.17g}"}, 1
    results = dict(fit.to_json(), converged=True)
    negative = [k for k in "pqwh" if getattr(fit, k) < 0]
    if negative:
        results["negative_parameters"] = negative
    return inputs, results, 0 if fit.nonnegative else 1


def cmd_roots(args) -> tuple[dict, dict, int]:
    try:
        p = Poly.from_json(_load(args.poly))
    except InputError:
        raise
    except (TypeError, ValueError, ZeroDivisionError) as e:
        raise InputError(f"malformed polynomial: {e}") from e
    if p.is_zero():
        raise InputError("the zero polynomial has no isolated roots")
    eps = _rational(args.eps, "--eps")
    if eps <= 0:
        raise InputError("--eps must be positive")
    roots = isolate_real_roots(p, eps)
    return {"poly": p.to_json(), "eps": fraction_str(eps)}, {"roots": [iv.to_json() for iv in roots]}, 0


VERBS = {
    "check": cmd_check,
    "construct": cmd_construct,
    "verify": cmd_verify,
    "threshold": cmd_threshold,
    "fit-meehan": cmd_fit_meehan,
    "roots": cmd_roots,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="niep", description="Exact nonnegative inverse eigenvalue toolkit")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--explain", action="store_true", help="attach the rationale of each condition")
    common.add_argument("-o", "--output", help="write output here instead of stdout")
    sub = ap.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("check", parents=[common], help="classify a spectrum")
    p.add_argument("spectrum")
    p.add_argument("--depth", type=int, default=DEFAULT_DEPTH)

    p = sub.add_parser("construct", parents=[common], help="emit a family or catalog matrix")
    p.add_argument("name")
    p.add_argument("--t")

    p = sub.add_parser("verify", parents=[common], help="verify a matrix against a spectrum")
    p.add_argument("matrix")
    p.add_argument("spectrum")

    p = sub.add_parser("threshold", parents=[common], help="family nonnegativity threshold")
    p.add_argument("family")
    p.add_argument("--eps", default="1/1000000000")

    p = sub.add_parser("fit-meehan", parents=[common], help="numeric structured-form fit")
    p.add_argument("--t", required=True)
    p.add_argument("--attempts", type=int, default=256)

    p = sub.add_parser("roots", parents=[common], help="isolate real roots")
    p.add_argument("poly")
    p.add_argument("--eps", default="1/1000000000")
    return ap


def render_text(report: dict) -> str:
    """Human-readable rendering of a run report (content comes from the JSON)."""
    lines = [f"niep {report['verb']}  exit={report['exit_code']}"]
    if "error" in report:
        lines.append(f"error: {report['error']}")
        return "\n".join(lines)
    res = report["results"]
    if report["verb"] == "check":
        lines.append(f"spectrum {report['inputs']['spectrum']['values']}")
        for c in res["conditions"]:
            state = "n/a" if not c["applicable"] else ("ok" if c["satisfied"] else "VIOLATED")
            extra = f"  -- {c['explain']}" if "explain" in c else ""
            lines.append(f"  {c['condition']:<24} {state:<9} {json.dumps(c['witness'], sort_keys=True)}{extra}")
        for prob, v in res["verdicts"].items():
            why = ", ".join(
                c["name"] + (f"({json.dumps(c['params'], sort_keys=True)})" if c["params"] else "")
                for c in v["certificates"]
            )
            lines.append(f"  {prob:<8} {v['status']:<15} {why}")
        return "\n".join(lines)
    lines.append(canonical(res))
    return "\n".join(lines)


def run(argv=None) -> tuple[dict, int]:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return {"verb": None, "error": "bad arguments", "exit_code": 2}, 2 if e.code else 0
    try:
        inputs, results, code = VERBS[args.verb](args)
        report = {"verb": args.verb, "inputs": inputs, "results": results, "exit_code": code}
    except InputError as e:
        code = 2
        report = {"verb": args.verb, "error": str(e), "exit_code": 2}
    report["_args"] = args
    return report, code


def main(argv=None) -> int:
    report, code = run(argv)
    args = report.pop("_args", None)
    if args is None:
        return code
    text = canonical(report) if args.json else render_text(report)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
