#!/usr/bin/env python3
"""Isolate the nonnegativity threshold of each family and compare with its closed form."""
import argparse
import json
from fractions import Fraction

from niep.constructions import FAMILIES, family_nonneg_threshold


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--eps", default="1/1000000000", help="interval width (exact rational)")
    ap.add_argument("--family", choices=sorted(FAMILIES), action="append")
    args = ap.parse_args(argv)
    eps = Fraction(args.eps)
    out = {}
    for name in args.family or sorted(FAMILIES):
        out[name] = family_nonneg_threshold(FAMILIES[name](), eps).to_json()
    print(json.dumps(out, sort_keys=True, indent=2))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
