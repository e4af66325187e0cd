#!/usr/bin/env python3
"""Print homology tables for a local tower or a built-in fixture.

Examples:
    python3 scripts/thh_table.py --fixture B --max-degree 12
    python3 scripts/thh_table.py --tower 3 1 "-3,0,1" 2
"""

import argparse

from orderthh import closed, fixtures
from orderthh.local import make_tower


def fmt(mod):
    parts = []
    if mod.free_rank:
        parts.append("S" if mod.free_rank == 1 else f"S^{mod.free_rank}")
    parts.extend(f"S/pi^{v}" for v in mod.pi_lengths)
    return " + ".join(parts) if parts else "0"


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--fixture", choices=sorted(fixtures.LOCAL_FIXTURES))
    ap.add_argument("--tower", nargs=4, metavar=("p", "r", "eisenstein", "n"),
                    help="eisenstein as comma-separated integers, low degree first")
    ap.add_argument("--max-degree", type=int, default=10)
    args = ap.parse_args()
    if args.fixture:
        t = fixtures.tower(args.fixture)
    elif args.tower:
        p, r, eis, n = args.tower
        coeffs = [int(c) for c in eis.split(",")]
        t = make_tower(int(p), int(r), coeffs, int(n))
    else:
        ap.error("need --fixture or --tower")
    print(f"{t}  (different valuation {t.different_valuation}, precision K={t.K})")
    print(f"{'i':>3}  {'THH_i(A)^':<18} {'THH_i(A;A/p)':<18} {'HH_i(A)':<18}")
    for i in range(0, args.max_degree + 1):
        print(
            f"{i:>3}  {fmt(closed.thh_A(t, i)):<18} "
            f"{fmt(closed.thh_A_modp(t, i)):<18} {fmt(closed.hh_A(t, i)):<18}"
        )


if __name__ == "__main__":
    main()
