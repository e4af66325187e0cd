"""Batch front end: TOML problem specs in, bit-exact JSON out.

Exit codes: 0 success, 2 input error, 3 verification failure, 4 the monogenic
model is rejected (not maximal at a needed prime, or irreducibility could not
be certified).  Diagnostics go to stderr; only JSON is written to the output
stream.
"""

from __future__ import annotations

import argparse
import json
import sys

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

from . import closed, fixtures
from .algebra import AssociativityError, StructureAlgebra
from .hochschild import OracleSizeError, oracle_degree_cap, plain_hh_dims
from .local import NotEisensteinError, Tower, tower_from_dict
from .numring import (
    GlobalAlgebraSpec,
    NotPMaximalError,
    NumberRingSpec,
    RamifiedPrime,
    UncertifiedError,
    hh_U,
    thh_U,
)

MODES = (
    "local-hh",
    "local-thh",
    "local-thh-modp",
    "global-thh",
    "global-hh",
    "oracle",
    "verify",
)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_VERIFY = 3
EXIT_REFUSED = 4


def _emit(doc, out_path):
    text = json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"
    if out_path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _local_group(degree, mod, t: Tower):
    field = f"F_{t.p}" + (f"^{t.r}" if t.r > 1 else "")
    return {
        "degree": degree,
        "free_rank": mod.free_rank,
        "torsion": {
            "residue_field": field,
            "pi_lengths": sorted(mod.pi_lengths, reverse=True),
        },
    }


def _global_group(degree, grp):
    return {
        "degree": degree,
        "free_rank": grp.free_rank,
        "torsion": grp.torsion_strings(),
    }


def load_tower(data, precision, max_degree):
    if "tower" not in data:
        raise KeyError("input TOML needs a [tower] table")
    return tower_from_dict(data["tower"], K=precision, max_degree=max_degree)


def load_global(data):
    if "global" not in data:
        raise KeyError("input TOML needs a [global] table")
    tbl = data["global"]
    center = NumberRingSpec(tuple(int(c) for c in tbl["center"]))
    rams = []
    for entry in tbl.get("ramification", []):
        rams.append(
            RamifiedPrime(
                p=int(entry["p"]),
                factor_index=int(entry.get("factor_index", 0)),
                e=int(entry["e"]),
                local_eisenstein=(
                    tuple(entry["local_eisenstein"])
                    if "local_eisenstein" in entry
                    else None
                ),
            )
        )
    return GlobalAlgebraSpec(center=center, ramification=tuple(rams))


def _local_checks(t: Tower, level: str):
    checks = []
    if level == "none":
        return checks, True
    from .complexes import flat_small_modp, hh_A_via_small
    from .hochschild import relative_hh_dims

    ok = True
    try:
        degs = list(range(0, min(5, oracle_degree_cap(t.r * t.n * t.n * t.d)) + 1))
        oracle = relative_hh_dims(t, degs)
        flat = flat_small_modp(t, max(degs) + 2)
        good = all(flat.presentation(i).dim == oracle[i] for i in degs)
        checks.append({"name": "oracle-vs-small-complex", "status": "ok" if good else "fail"})
        ok = ok and good
    except Exception as exc:  # noqa: BLE001
        checks.append({"name": "oracle-vs-small-complex", "status": f"error: {exc}"})
        ok = False
    if level == "full":
        from .brun import thh_A_modp_via_brun
        from .closed import uct_check

        try:
            thh_A_modp_via_brun(t, 10, verify=True)
            checks.append({"name": "brun-vs-closed", "status": "ok"})
        except Exception as exc:  # noqa: BLE001
            checks.append({"name": "brun-vs-closed", "status": f"fail: {exc}"})
            ok = False
        try:
            hh_A_via_small(t, "integral", range(0, 7), verify=True)
            checks.append({"name": "integral-small-complex", "status": "ok"})
        except Exception as exc:  # noqa: BLE001
            checks.append({"name": "integral-small-complex", "status": f"fail: {exc}"})
            ok = False
        try:
            uct_check(t, 12)
            checks.append({"name": "uct-rank-accounting", "status": "ok"})
        except Exception as exc:  # noqa: BLE001
            checks.append({"name": "uct-rank-accounting", "status": f"fail: {exc}"})
            ok = False
    return checks, ok


def run_local(args, data):
    t = load_tower(data, args.precision, args.max_degree)
    evaluator = {
        "local-hh": closed.hh_A,
        "local-thh": closed.thh_A,
        "local-thh-modp": closed.thh_A_modp,
    }[args.mode]
    groups = [
        _local_group(i, evaluator(t, i), t) for i in range(0, args.max_degree + 1)
    ]
    checks, ok = _local_checks(t, args.verify)
    meta = {
        "mode": args.mode,
        "parameters": {
            "p": t.p,
            "r": t.r,
            "eisenstein": [list(c) for c in t.P_int],
            "n": t.n,
            "max_degree": args.max_degree,
        },
        "precision_used": t.K,
    }
    if args.precision is not None and t.K != args.precision:
        meta["precision_requested"] = args.precision
        meta["escalated"] = True
    doc = {"meta": meta, "groups": groups, "checks": checks}
    return doc, EXIT_OK if ok else EXIT_VERIFY


def run_global(args, data):
    gspec = load_global(data)
    evaluator = thh_U if args.mode == "global-thh" else hh_U
    groups = [
        _global_group(i, evaluator(gspec, i)) for i in range(0, args.max_degree + 1)
    ]
    checks = []
    ok = True
    if args.verify != "none":
        from .numring import local_global_consistency

        try:
            for i in range(1, min(args.max_degree, 6) + 1):
                local_global_consistency(gspec, i)
            checks.append({"name": "local-global-consistency", "status": "ok"})
        except Exception as exc:  # noqa: BLE001
            checks.append({"name": "local-global-consistency", "status": f"fail: {exc}"})
            ok = False
    doc = {
        "meta": {
            "mode": args.mode,
            "parameters": {
                "center": list(gspec.center.f),
                "ramification": [
                    {"p": r.p, "factor_index": r.factor_index, "e": r.e}
                    for r in gspec.ramification
                ],
                "max_degree": args.max_degree,
            },
            "precision_used": None,
        },
        "groups": groups,
        "checks": checks,
    }
    return doc, EXIT_OK if ok else EXIT_VERIFY


def run_oracle(args, raw_text):
    alg = StructureAlgebra.from_json(raw_text)
    checks = []
    ok = True
    try:
        alg.check_associative()
        alg.check_unit()
        checks.append({"name": "associativity", "status": "ok"})
    except AssociativityError as exc:
        checks.append({"name": "associativity", "status": f"fail: {exc}"})
        ok = False
    groups = []
    if ok:
        cap = oracle_degree_cap(alg.dim)
        top = min(args.max_degree, cap)
        dims = plain_hh_dims(alg, range(0, top + 1))
        for i in range(0, top + 1):
            groups.append(
                {
                    "degree": i,
                    "free_rank": 0,
                    "torsion": {
                        "residue_field": f"F_{alg.p}",
                        "pi_lengths": [1] * dims[i],
                    },
                }
            )
    doc = {
        "meta": {
            "mode": "oracle",
            "parameters": {"dim": alg.dim, "p": alg.p, "max_degree": args.max_degree},
            "precision_used": alg.precision,
        },
        "groups": groups,
        "checks": checks,
    }
    return doc, EXIT_OK if ok else EXIT_VERIFY


def run_verify(args):
    from .verification import run_matrix

    names = args.fixtures.split(",") if args.fixtures else None
    records = run_matrix(fixture_names=names)
    for rec in records:
        print(
            f"{rec.fixture:3} {rec.check:26} {rec.status:5} {rec.seconds:8.2f}s",
            file=sys.stderr,
        )
    doc = {
        "meta": {"mode": "verify", "parameters": {"fixtures": names or "A-F"},
                 "precision_used": None},
        "groups": [],
        "checks": [
            {"name": f"{r.fixture}:{r.check}", "status": r.status}
            for r in records
        ],
    }
    ok = all(r.status == "ok" for r in records)
    return doc, EXIT_OK if ok else EXIT_VERIFY


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="orderthh",
        description=(
            "Homology of maximal orders: local towers (TOML [tower] table), "
            "global algebras (TOML [global] table), raw structure-constant "
            "algebras (JSON), and the built-in verification matrix. "
            "Oracle degree caps: dim <= 8 computes degrees <= 5, dim <= 20 "
            "degrees <= 3."
        ),
    )
    parser.add_argument("--mode", choices=MODES, required=True)
    parser.add_argument("--input", help="problem file (TOML, or JSON for oracle mode)")
    parser.add_argument("--max-degree", type=int, default=10)
    parser.add_argument("--precision", type=int, default=None,
                        help="p-adic precision K (default: automatic)")
    parser.add_argument("--verify", choices=("none", "oracle", "full"), default="none")
    parser.add_argument("--out", default="-")
    parser.add_argument("--fixtures", default=None,
                        help="verify mode: comma-separated fixture names (A..F)")
    args = parser.parse_args(argv)

    try:
        if args.mode == "verify":
            doc, code = run_verify(args)
        elif args.mode == "oracle":
            if not args.input:
                raise KeyError("oracle mode needs --input (StructureAlgebra JSON)")
            with open(args.input, encoding="utf-8") as fh:
                raw = fh.read()
            doc, code = run_oracle(args, raw)
        else:
            if not args.input:
                raise KeyError(f"mode {args.mode} needs --input (TOML)")
            with open(args.input, "rb") as fh:
                data = tomllib.load(fh)
            if args.mode.startswith("local"):
                doc, code = run_local(args, data)
            else:
                doc, code = run_global(args, data)
    except (NotPMaximalError, UncertifiedError) as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    except (KeyError, ValueError, OSError, NotEisensteinError,
            tomllib.TOMLDecodeError, json.JSONDecodeError, OracleSizeError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    _emit(doc, args.out)
    return code


if __name__ == "__main__":
    sys.exit(main())
