"""Batch driver: build objects, run verification sweeps, emit JSON lines.

Every record carries schema: 1 and a pass field; each command ends with a
summary record.  Exit code 0 means every check passed; 1 means at least
one failed; 2 is a configuration error; 3 means an enumeration cap was
exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from .reflgroup import DEFAULT_CAP, CapExceeded, GroupSpec, group
from . import locus, nonnesting, parkspace, qcatalan

SCHEMA = 1

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_CONFIG = 2
EXIT_CAP = 3

COMMANDS = (
    "enumerate",
    "verify-weak",
    "verify-csp",
    "verify-intermediate",
    "verify-bijection",
    "nonnesting-count",
    "torus-character",
    "classical-park",
)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="ncpark",
        description="Fuss noncrossing parking spaces: enumeration and verification",
    )
    sub = ap.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--family", required=True, choices=["A", "B", "D", "I2"])
        p.add_argument("--rank", type=int, help="Coxeter label: A_r is S_{r+1}, B_r, D_r")
        p.add_argument("--m", type=int, help="m for I2(m)")
        p.add_argument("--k", type=int, default=1, help="Fuss parameter")
        p.add_argument("--d", type=str, default=None, help="restrict to d or d0:d1")
        p.add_argument("--out", type=str, default="-", help="output path or -")
        p.add_argument(
            "--cap",
            type=int,
            default=int(os.environ.get("NCPARK_CAP", DEFAULT_CAP)),
            help="enumeration cap (env NCPARK_CAP)",
        )
        p.add_argument("--threads", type=int, default=1, help="sweep parallelism")
        if name == "verify-bijection":
            p.add_argument("--kind", choices=["bc", "dihedral"], required=True)
    return ap


def parse_spec(args) -> GroupSpec:
    if args.family == "I2":
        if args.m is None:
            raise ValueError("--m is required for I2")
        return GroupSpec("I2", args.m)
    if args.rank is None:
        raise ValueError("--rank is required for A/B/D")
    param = args.rank + 1 if args.family == "A" else args.rank
    return GroupSpec(args.family, param)


def parse_d_filter(text, kh: int):
    if text is None:
        return range(kh)
    if ":" in text:
        lo, hi = text.split(":")
        return range(int(lo), int(hi))
    d = int(text)
    return range(d, d + 1)


def parallel_map(fn, items, threads: int):
    if threads <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as ex:
        return list(ex.map(fn, items))


def run(args) -> int:
    spec = parse_spec(args)
    k = args.k
    if k < 1:
        raise ValueError("--k must be >= 1")
    kh = k * spec.coxeter_number
    base = {
        "schema": SCHEMA,
        "command": args.command,
        "family": spec.family,
        "rank": spec.param,
        "k": k,
    }
    records: list[dict] = []
    d_filter = list(parse_d_filter(args.d, kh))

    if args.command == "enumerate":
        space = parkspace.build_park(spec, k, cap=args.cap)
        for p in space.classes():
            records.append({**base, "class": space.class_record(p), "pass": True})
        expected = (kh + 1) ** spec.rank
        records.append(
            {
                **base,
                "summary": True,
                "expected": expected,
                "actual": len(space.classes()),
                "pass": expected == len(space.classes()),
            }
        )
    elif args.command == "verify-weak":
        space = parkspace.build_park(spec, k, cap=args.cap)
        for row in space.verify_weak(threads=args.threads):
            if row["d"] in d_filter:
                records.append({**base, **row})
        _summarize(records, base)
    elif args.command == "verify-csp":
        for row in qcatalan.verify_csp(spec, k):
            if row["d"] in d_filter:
                records.append(
                    {
                        **base,
                        "d": row["d"],
                        "expected": row["polynomial_value"],
                        "actual": row["fixed_chains"],
                        "pass": row["pass"],
                    }
                )
        _summarize(records, base)
    elif args.command == "verify-intermediate":
        for row in locus.verify_intermediate_character(spec, k):
            if row["d"] in d_filter:
                records.append({**base, **row})
        _summarize(records, base)
    elif args.command == "verify-bijection":
        if args.kind == "bc":
            if spec.family != "B":
                raise ValueError("--kind bc needs --family B")
            for row in locus.verify_bc_bijection(spec, k):
                records.append({**base, **row})
        else:
            if spec.family != "I2":
                raise ValueError("--kind dihedral needs --family I2")
            fwd = locus.dihedral_bijection(spec.param, k)
            records.append(
                {
                    **base,
                    "check": "dihedral_bijection",
                    "expected": (kh + 1) ** 2,
                    "actual": len(fwd),
                    "pass": len(fwd) == (kh + 1) ** 2,
                }
            )
        _summarize(records, base)
    elif args.command == "nonnesting-count":
        expected = len(ncw_chains(spec, k))
        actual = nonnesting.count_geometric(spec, k)
        records.append({**base, "expected": expected, "actual": actual, "pass": expected == actual})
        _summarize(records, base)
    elif args.command == "torus-character":
        for row in nonnesting.verify_nn_character(spec, k):
            records.append({**base, **row})
        _summarize(records, base)
    elif args.command == "classical-park":
        if spec.family != "A":
            raise ValueError("classical-park needs --family A")
        n = spec.param
        classical = parkspace.enumerate_classical(n, k)
        expected = (k * n + 1) ** (n - 1)
        records.append(
            {
                **base,
                "check": "count",
                "expected": expected,
                "actual": len(classical),
                "pass": len(classical) == expected,
            }
        )
        space = parkspace.build_park(spec, k, cap=args.cap)
        images = parallel_map(space.to_classical, space.classes(), args.threads)
        ok = len(set(images)) == len(images) and set(images) == classical
        records.append(
            {
                **base,
                "check": "bijection_with_parking_space",
                "expected": expected,
                "actual": len(set(images)),
                "pass": ok,
            }
        )
        _summarize(records, base)
    return emit(records, args.out)


def ncw_chains(spec: GroupSpec, k: int):
    from . import ncw

    return ncw.build_nc(group(spec.family, spec.param)).multichains(k)


def _summarize(records: list[dict], base: dict):
    fails = sum(1 for r in records if not r.get("pass", True))
    records.append(
        {
            **base,
            "summary": True,
            "checks": len(records),
            "failures": fails,
            "pass": fails == 0,
        }
    )


def emit(records: list[dict], out: str) -> int:
    lines = [json.dumps(r, sort_keys=True, default=str) for r in records]
    text = "\n".join(lines) + "\n"
    if out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w") as fh:
            fh.write(text)
    return EXIT_OK if all(r.get("pass", True) for r in records) else EXIT_FAIL


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return run(args)
    except CapExceeded as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (ValueError, KeyError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
