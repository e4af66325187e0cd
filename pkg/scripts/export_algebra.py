#!/usr/bin/env python3
"""Export A/(p) of a fixture or tower as StructureAlgebra JSON for oracle mode.

Example:
    python3 scripts/export_algebra.py --fixture A > algA.json
    orderthh --mode oracle --input algA.json --max-degree 3
"""

import argparse
import sys

from orderthh import fixtures
from orderthh.algebra import build_modp
from orderthh.local import make_tower


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--fixture", choices=sorted(fixtures.LOCAL_FIXTURES))
    ap.add_argument("--tower", nargs=4, metavar=("p", "r", "eisenstein", "n"))
    args = ap.parse_args()
    if args.fixture:
        t = fixtures.tower(args.fixture)
    elif args.tower:
        p, r, eis, n = args.tower
        t = make_tower(int(p), int(r), [int(c) for c in eis.split(",")], int(n))
    else:
        ap.error("need --fixture or --tower")
    sys.stdout.write(build_modp(t).to_json() + "\n")


if __name__ == "__main__":
    main()
