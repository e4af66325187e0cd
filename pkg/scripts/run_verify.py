#!/usr/bin/env python3
"""Run the full verification matrix and print the timing table."""

import sys

from orderthh.verification import run_matrix


def main():
    records = run_matrix()
    width = max(len(r.check) for r in records)
    for r in records:
        line = f"{r.fixture:3} {r.check:{width}} {r.status:5} {r.seconds:8.2f}s"
        if r.detail:
            line += f"  {r.detail}"
        print(line)
    failures = [r for r in records if r.status != "ok"]
    print(f"\n{len(records)} checks, {len(failures)} failures")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
