"""Command line interface.

Exit status: 0 on success, 1 when a check or the self-test fails (or a
computation hits an integrality error), 2 on invalid input.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from . import invariants as inv
from .errors import DimVectorParseError, HiggsDTError
from .golden import GOLDEN, QUICK_MAX_RANK
from .output import OutputRecord, dumps
from .quiver import DimVector
from .ring import LaurentPoly

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
WORKERS_ENV = "HIGGSDT_WORKERS"


def _nonneg_int(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if n < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {n}")
    return n


def _pos_int(text: str) -> int:
    n = _nonneg_int(text)
    if n < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {n}")
    return n


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _dimvec(text: str) -> DimVector:
    try:
        return DimVector.parse(text)
    except DimVectorParseError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _workers() -> int:
    try:
        return max(1, int(os.environ.get(WORKERS_ENV, "1")))
    except ValueError:
        return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="higgsdt",
        description="Exact DT invariants of L-twisted Higgs bundles on P^1 and of the "
                    "associated symmetric quiver.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("omega", help="compute Omega_L(r, d)")
    p.add_argument("--ell", type=_nonneg_int, required=True)
    p.add_argument("--rank", type=_pos_int, required=True)
    p.add_argument("--degree", type=int, default=1)
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("table", help="Omega_ell(r) for r = 1..rmax")
    p.add_argument("--ell", type=_nonneg_int, required=True)
    p.add_argument("--rmax", type=_pos_int, required=True)
    p.add_argument("--format", choices=("text", "json", "latex"), default="text")

    p = sub.add_parser("quiver-omega", help="compute Omega_Q(m)")
    p.add_argument("--ell", type=_nonneg_int, required=True)
    p.add_argument("--dimvec", type=_dimvec, required=True, help='e.g. "1:1,2:1"')
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("check", help="run a consistency check")
    checks = p.add_subparsers(dest="check", required=True)
    c = checks.add_parser("theorem2", help="Omega_L(r,d) = sum of Omega_Q(m)")
    c.add_argument("--ell", type=_nonneg_int, required=True)
    c.add_argument("--rank", type=_pos_int, required=True)
    c.add_argument("--degree", type=int, required=True)
    c.add_argument("--margin", type=_nonneg_int, default=2,
                   help="also check vanishing on vectors reaching down to 1-margin")
    c = checks.add_parser("d-independence", help="Omega_L(r,d) across degrees")
    c.add_argument("--ell", type=_nonneg_int, required=True)
    c.add_argument("--rank", type=_pos_int, required=True)
    c.add_argument("--degrees", type=_int_list, required=True)
    c = checks.add_parser("shift", help="Omega_Q(m) = Omega_Q(m[k])")
    c.add_argument("--ell", type=_nonneg_int, required=True)
    c.add_argument("--dimvec", type=_dimvec, required=True)
    c.add_argument("--by", type=int, default=1)
    c = checks.add_parser("hn-product", help="slope factors multiply back to the series")
    c.add_argument("--ell", type=_nonneg_int, required=True)
    c.add_argument("--rmax", type=_pos_int, required=True)
    c.add_argument("--dmax", type=_pos_int, required=True)

    p = sub.add_parser("selftest", help="recompute every published table entry")
    p.add_argument("--quick", action="store_true", help=f"only ranks <= {QUICK_MAX_RANK}")
    p.add_argument("--format", choices=("text", "json"), default="text")
    return parser


def _emit(records: list[OutputRecord], fmt: str, single: bool, out) -> None:
    if fmt == "json":
        print(dumps(records[0].to_dict() if single else [r.to_dict() for r in records]), file=out)
    elif fmt == "latex":
        for rec in records:
            print(rec.latex(), file=out)
    elif single:
        print(records[0].text(), file=out)
    else:
        for rec in records:
            print(f"{rec.label()} [d={rec.d}] = {rec.text()}", file=out)


def _cmd_omega(args, out) -> int:
    t0 = time.perf_counter()
    value = inv.omega_L(args.ell, args.rank, args.degree)
    rec = OutputRecord(args.ell, args.rank, args.degree, "omega_L", value.poly,
                       1000 * (time.perf_counter() - t0), {"stable_d": value.stable_d})
    _emit([rec], args.format, True, out)
    return EXIT_OK


def _cmd_table(args, out) -> int:
    t0 = time.perf_counter()
    values = inv.omega_L_table(args.ell, args.rmax)
    ms = 1000 * (time.perf_counter() - t0)
    records = [OutputRecord(v.ell, v.r, v.d, "omega_L", v.poly, ms, {"stable_d": v.stable_d})
               for v in values]
    _emit(records, args.format, False, out)
    return EXIT_OK


def _cmd_quiver_omega(args, out) -> int:
    m = args.dimvec
    t0 = time.perf_counter()
    poly = inv.omega_Q(args.ell, m)
    rec = OutputRecord(args.ell, m.rank, m.degree, "omega_Q", poly,
                       1000 * (time.perf_counter() - t0), {"dimvec": str(m)})
    _emit([rec], args.format, True, out)
    return EXIT_OK


def _cmd_check(args, out, err) -> int:
    if args.check == "theorem2":
        if args.degree <= inv.stable_bound(args.ell, args.rank):
            print(f"error: degree must exceed ell*C(r,2) = {inv.stable_bound(args.ell, args.rank)}",
                  file=err)
            return EXIT_USAGE
        report = inv.check_theorem2(args.ell, args.rank, args.degree, args.margin)
    elif args.check == "d-independence":
        if not args.degrees or min(args.degrees) < 1:
            print("error: --degrees must list positive integers", file=err)
            return EXIT_USAGE
        report = inv.check_d_independence(args.ell, args.rank, args.degrees)
    elif args.check == "shift":
        report = inv.check_shift_invariance(args.ell, args.dimvec, args.by)
    else:
        report = inv.check_hn_product(args.ell, args.rmax, args.dmax)
    print(report, file=out)
    return EXIT_OK if report.passed else EXIT_FAIL


def _selftest_entry(key: tuple[int, int]) -> tuple[tuple[int, int], int, LaurentPoly | str, float]:
    """Compute one golden entry; an arithmetic failure is returned as its message."""
    ell, r = key
    t0 = time.perf_counter()
    d = inv.default_degree(ell, r)
    try:
        poly = inv.omega_L(ell, r, d).poly
    except HiggsDTError as exc:
        poly = f"{type(exc).__name__}: {exc}"
    return key, d, poly, 1000 * (time.perf_counter() - t0)


def run_selftest(quick: bool = False, out=None, fmt: str = "text") -> bool:
    out = out or sys.stdout
    keys = [k for k in sorted(GOLDEN) if not quick or k[1] <= QUICK_MAX_RANK]
    workers = _workers()
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_selftest_entry, keys))
    else:
        results = [_selftest_entry(k) for k in keys]
    failures = []
    rows = []
    for (ell, r), d, poly, ms in results:
        expected = LaurentPoly(GOLDEN[ell, r])
        ok = poly == expected
        if not ok:
            failures.append((ell, r))
        rows.append({"ell": ell, "r": r, "d": d, "ok": ok, "ms": round(ms, 3)})
        if fmt == "text":
            status = "ok  " if ok else "FAIL"
            print(f"{status} Omega_{ell}({r}) d={d} {ms:9.1f} ms", file=out)
            if not ok:
                got = poly if isinstance(poly, str) else poly.to_string("w")
                print(f"     expected {expected.to_string('w')}", file=out)
                print(f"     got      {got}", file=out)
    if fmt == "json":
        print(dumps({"entries": rows, "passed": not failures}), file=out)
    else:
        print(f"{len(results) - len(failures)}/{len(results)} entries match", file=out)
        if failures:
            print("mismatched: " + ", ".join(f"Omega_{e}({r})" for e, r in failures), file=out)
    return not failures


def main(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        if args.command == "omega":
            return _cmd_omega(args, out)
        if args.command == "table":
            return _cmd_table(args, out)
        if args.command == "quiver-omega":
            return _cmd_quiver_omega(args, out)
        if args.command == "check":
            return _cmd_check(args, out, err)
        return EXIT_OK if run_selftest(args.quick, out, args.format) else EXIT_FAIL
    except HiggsDTError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=err)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
