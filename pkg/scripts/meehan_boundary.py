#!/usr/bin/env python3
"""Bisect the nonnegative-fit flag of the structured 5x5 form and report fits near the boundary."""
import argparse
import json

from niep.meehan import ConvergenceError, meehan_boundary, meehan_fit


def _probe(t: float, attempts: int) -> dict:
    try:
        fit = meehan_fit(t, attempts)
    except ConvergenceError as e:
        return {"t": t, "converged": False, "best_residual": f"{e.best_residual:.6g}"}
    return dict(fit.to_json(), converged=True)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--lo", type=float, default=0.50)
    ap.add_argument("--hi", type=float, default=0.53)
    ap.add_argument("--tol", type=float, default=1e-4)
    ap.add_argument("--attempts", type=int, default=256)
    ap.add_argument("--reference", type=float, default=0.519310982048)
    args = ap.parse_args(argv)
    lo, hi = meehan_boundary(args.lo, args.hi, args.tol, args.attempts)
    mid = (lo + hi) / 2
    report = {
        "bracket": [f"{lo:.12f}", f"{hi:.12f}"],
        "midpoint": f"{mid:.12f}",
        "reference": f"{args.reference:.12f}",
        "abs_difference": f"{abs(mid - args.reference):.3g}",
        "probes": [_probe(t, args.attempts) for t in (args.lo, lo, hi, args.hi)],
    }
    print(json.dumps(report, sort_keys=True, indent=2))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
