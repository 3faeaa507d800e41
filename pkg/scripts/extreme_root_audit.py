#!/usr/bin/env python3
"""Smallest positive root of the extreme-inequality quartic for (3+t, 3, -2, -2, -2) vs a printed decimal."""
import argparse
import json
from fractions import Fraction

from niep.spectra import extreme_root_audit


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--printed", default="0.39671")
    ap.add_argument("--eps", default="1/1000000000000")
    ap.add_argument("--tol", default="1/1000")
    args = ap.parse_args(argv)
    rec = extreme_root_audit(args.printed, Fraction(args.eps), Fraction(args.tol))
    print(json.dumps(rec, sort_keys=True, indent=2))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
