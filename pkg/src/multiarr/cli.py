"""Command-line interface: ``multiarr <command> [flags]``.

Exit codes: 0 when every check passes, 1 on a mathematical failure,
2 on a usage error.
"""

from __future__ import annotations

import argparse
import sys
import time
from itertools import product

from .arrangements import braid_coordinate, three_lines
from .catalan import CatalanPreconditionError, catalan_basis_check, check_passed, conjecture_check
from .constructors import (
    HmrsParams,
    braid_basis,
    braid_coordinate_basis,
    expected_exponents,
    hmrs_basis,
    three_lines_basis,
    three_lines_recipe,
)
from .derivations import verify_basis
from .invariants import dual_basis_check, invariant_identities, lambda_law_check, verify_primitive_relations
from .report import RunReport, Task, emit_report, scan


class UsageError(Exception):
    pass


def int_list(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _k_list(text: str) -> list:
    out = []
    for v in text.split(","):
        v = v.strip()
        if v == "min":
            out.append("min")
        elif v:
            try:
                out.append(int(v))
            except ValueError:
                raise argparse.ArgumentTypeError(f"k values are integers or 'min', got {v!r}") from None
    return out


def _p_list(text: str) -> list:
    out = []
    for v in text.split(","):
        v = v.strip()
        if v == "r":
            out.append("r")
        elif v == "1":
            out.append(1)
        elif v:
            raise argparse.ArgumentTypeError(f"p values are 1 or r, got {v!r}")
    return out


def _p_token(text: str):
    out = _p_list(text)
    if len(out) != 1:
        raise argparse.ArgumentTypeError("expected a single value, 1 or r")
    return out[0]


# -- task bodies (top level so that worker processes can import them) -------


def three_lines_task(p: int, q: int, r: int, method: str = "auto") -> dict:
    recipe = three_lines_recipe(p, q, r, method)
    fields = three_lines_basis(p, q, r, method)
    report = verify_basis(fields, three_lines(p, q, r)).to_json()
    recipe["change"] = None if recipe["change"] is None else [list(row) for row in recipe["change"]]
    report["recipe"] = recipe
    report["fields"] = [f.to_json() for f in fields]
    return report


def braid_task(a: list, b: int, with_coordinates: bool) -> dict:
    if with_coordinates:
        fields, arr = braid_coordinate_basis(a, b), braid_coordinate(a, b, True)
    else:
        fields, arr = braid_basis(a), braid_coordinate(a, 0, False)
    report = verify_basis(fields, arr).to_json()
    report["fields"] = [f.to_json() for f in fields]
    return report


def hmrs_task(r: int, p: int, ell: int, m: int, k, mbar, parity: str) -> dict:
    if k == "min":
        k = -m - 1
    if mbar is None:
        mbar = [r - 1 if k == -m - 1 else 0] * ell
    elif len(mbar) == 1:
        mbar = mbar * ell
    entry = {"r": r, "p": p, "ell": ell, "m": m, "k": k, "mbar": list(mbar), "parity": parity}
    try:
        params = HmrsParams(r, p, ell, m, k, tuple(mbar))
    except ValueError as exc:
        entry.update(status="invalid", detail=str(exc))
        return entry
    entry["params"] = params.to_json()
    if parity == "even" and m < 1:
        entry.update(status="skipped", detail="the even case needs m >= 1")
        return entry
    expected = expected_exponents(params, parity)
    report = verify_basis(hmrs_basis(params, parity), params.arrangement(parity))
    entry["freeness"] = report.to_json()
    entry["expected_exponents"] = expected
    matches = report.degrees == expected
    entry["exponents_match"] = matches
    entry["status"] = "ok" if report.is_basis and matches else "failed"
    return entry


def invariants_task(r: int, p: int, ell: int, m_max: int) -> dict:
    out = invariant_identities(r, p, ell)
    out["dual_basis"] = dual_basis_check(r, p, ell)
    out["lambda_laws"] = {str(m): lambda_law_check(r, p, ell, m) for m in range(1, m_max + 1)}
    return out


def conjecture_task(m: int, i: int) -> dict:
    return conjecture_check(m, i)


def catalan_basis_task(m: int) -> dict:
    try:
        out = catalan_basis_check(m).to_json()
    except CatalanPreconditionError as exc:
        return {"m": m, "verdict": "precondition_failed", "detail": str(exc)}
    out["m"] = m
    out["degree_sum"] = sum(out["degrees"])
    out["expected_degree_sum"] = 8 * m + 5
    return out


# -- commands -----------------------------------------------------------------


def cmd_three_lines(args) -> RunReport:
    params = {"p": args.p, "q": args.q, "r": args.r, "method": args.method}
    try:
        payload = three_lines_task(args.p, args.q, args.r, args.method)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return RunReport("three-lines", params, payload, payload["verdict"] == "basis")


def cmd_braid(args) -> RunReport:
    if len(args.a) < 2:
        raise UsageError("--a needs at least two entries")
    if min(args.a) < 0 or args.b < 0:
        raise UsageError("exponents must be nonnegative")
    with_coords = not args.no_coordinates
    params = {"a": args.a, "b": args.b, "with_coordinates": with_coords}
    payload = braid_task(args.a, args.b, with_coords)
    return RunReport("braid", params, payload, payload["verdict"] == "basis")


def cmd_hmrs(args) -> RunReport:
    parities = ["odd", "even"] if args.parity == "both" else [args.parity]
    if args.mbar is not None and len(args.mbar) != 1 and any(len(args.mbar) != ell for ell in args.ell):
        raise UsageError("--mbar takes one value or one value per coordinate")
    tasks = []
    for r, p, ell, m, k, parity in product(args.r, args.p, args.ell, args.m, args.k, parities):
        p = r if p == "r" else p
        key = (parities.index(parity), r, p, ell, m, -m - 1 if k == "min" else k)
        tasks.append(Task(key, hmrs_task, (r, p, ell, m, k, args.mbar, parity)))
    results = scan(tasks, args.jobs)
    invalid = [e for e in results if e["status"] == "invalid"]
    if invalid:
        e = invalid[0]
        raise UsageError(f"r={e['r']} p={e['p']} ell={e['ell']} m={e['m']} k={e['k']}: {e['detail']}")
    params = {
        "r": args.r,
        "p": [str(p) for p in args.p],
        "ell": args.ell,
        "m": args.m,
        "k": [str(k) for k in args.k],
        "mbar": "auto" if args.mbar is None else args.mbar,
        "parity": args.parity,
    }
    ok = all(e["status"] in ("ok", "skipped") for e in results)
    counts = {s: sum(1 for e in results if e["status"] == s) for s in ("ok", "skipped", "failed")}
    return RunReport("hmrs", params, {"entries": results, "counts": counts}, ok)


def cmd_invariants(args) -> RunReport:
    if args.p == "r":
        args.p = args.r
    _check_group(args.r, args.p, args.ell)
    payload = invariants_task(args.r, args.p, args.ell, args.m_max)
    ok = payload["lambda_expansion"] and payload["jacobian"] and payload["dual_basis"] and all(payload["lambda_laws"].values())
    return RunReport("invariants", {"r": args.r, "p": args.p, "ell": args.ell, "m_max": args.m_max}, payload, ok)


def cmd_primitive(args) -> RunReport:
    if args.p == "r":
        args.p = args.r
    _check_group(args.r, args.p, args.ell)
    lo = -args.m_max if args.u_min is None else args.u_min
    hi = args.ell - 1 if args.u_max is None else args.u_max
    report = verify_primitive_relations(args.r, args.p, args.ell, args.m_max, range(lo, hi + 1))
    params = {"r": args.r, "p": args.p, "ell": args.ell, "m_max": args.m_max, "u_min": lo, "u_max": hi}
    return RunReport("primitive", params, report.to_json(), report.ok)


def _check_group(r: int, p, ell: int) -> None:
    if r < 2 or ell < 2:
        raise UsageError("need r >= 2 and ell >= 2")
    if p not in (1, r):
        raise UsageError(f"p must be 1 or r, got {p}")


def cmd_catalan(args) -> RunReport:
    if args.m < 0:
        raise UsageError("m must be nonnegative")
    checks = [conjecture_check(args.m, i) for i in (0, 1)]
    payload = {"conjecture_checks": checks, "basis": catalan_basis_task(args.m)}
    ok = all(check_passed(c) for c in checks) and payload["basis"]["verdict"] == "basis"
    return RunReport("catalan-b2", {"m": args.m}, payload, ok)


def cmd_conjecture_scan(args) -> RunReport:
    if args.max_m < 0 or args.max_i < 0:
        raise UsageError("bounds must be nonnegative")
    tasks = [Task((m, i), conjecture_task, (m, i)) for m in range(args.max_m + 1) for i in range(args.max_i + 1)]
    results = scan(tasks, args.jobs)
    payload = {"results": results, "counterexamples": [r for r in results if not check_passed(r)]}
    ok = not payload["counterexamples"]
    params = {"max_m": args.max_m, "max_i": args.max_i}
    if args.basis_max_m is not None:
        basis = scan([Task((m,), catalan_basis_task, (m,)) for m in range(args.basis_max_m + 1)], args.jobs)
        payload["basis_checks"] = basis
        ok = ok and all(b["verdict"] == "basis" and b["degree_sum"] == b["expected_degree_sum"] for b in basis)
        params["basis_max_m"] = args.basis_max_m
    return RunReport("conjecture-scan", params, payload, ok)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="multiarr", description="Integral-expression bases of multiderivation modules.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--jobs", type=int, default=None, help="worker processes for scans (default: $MULTIARR_JOBS or 1)")
    common.add_argument("--no-timing", action="store_true", help="omit the timing field")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("three-lines", parents=[common], help="x1^p x2^q (x1-x2)^r")
    for name in ("p", "q", "r"):
        p.add_argument(f"--{name}", type=int, required=True)
    p.add_argument("--method", choices=("auto", "binomial", "integral"), default="auto")
    p.set_defaults(func=cmd_three_lines)

    p = sub.add_parser("braid", parents=[common], help="braid arrangements with multiplicities a_i + a_j + 1")
    p.add_argument("--a", type=int_list, required=True)
    p.add_argument("--b", type=int, default=0)
    p.add_argument("--no-coordinates", action="store_true", help="drop the coordinate hyperplanes and use the unit-sum basis")
    p.set_defaults(func=cmd_braid)

    p = sub.add_parser("hmrs", parents=[common], help="free multiarrangements of G(r,1,l) and G(r,r,l); comma lists form a grid")
    p.add_argument("--r", type=int_list, required=True)
    p.add_argument("--p", type=_p_list, default=[1], help="comma list of 1 and r (default 1)")
    p.add_argument("--ell", type=int_list, required=True)
    p.add_argument("--m", type=int_list, required=True)
    p.add_argument("--k", type=_k_list, default=[0], help="integers or 'min' for -m-1")
    p.add_argument("--mbar", type=int_list, default=None, help="one value, or one per coordinate (default r-1 when k=-m-1, else 0)")
    p.add_argument("--parity", choices=("odd", "even", "both"), default="odd")
    p.set_defaults(func=cmd_hmrs)

    p = sub.add_parser("invariants", parents=[common], help="basic invariant identities")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--p", type=_p_token, default=1, help="1 or r")
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--m-max", type=int, default=3)
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("primitive", parents=[common], help="relations of the primitive derivation")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--p", type=_p_token, default=1, help="1 or r")
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--m-max", type=int, default=2)
    p.add_argument("--u-min", type=int, default=None)
    p.add_argument("--u-max", type=int, default=None)
    p.set_defaults(func=cmd_primitive)

    p = sub.add_parser("catalan-b2", parents=[common], help="coned basis check for Cat(B2, m)")
    p.add_argument("--m", type=int, required=True)
    p.set_defaults(func=cmd_catalan)

    p = sub.add_parser("conjecture-scan", parents=[common], help="divisibility scan of the deformed f^m_i")
    p.add_argument("--max-m", type=int, default=4)
    p.add_argument("--max-i", type=int, default=6)
    p.add_argument("--basis-max-m", type=int, default=None, help="also run the coned basis check for m <= this bound")
    p.set_defaults(func=cmd_conjecture_scan)
    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.jobs is not None and args.jobs < 1:
        print("multiarr: error: --jobs must be positive", file=sys.stderr)
        return 2
    start = time.perf_counter()
    try:
        report = args.func(args)
    except UsageError as exc:
        print(f"multiarr {args.command}: error: {exc}", file=sys.stderr)
        return 2
    if not args.no_timing:
        report.timing = time.perf_counter() - start
    sys.stdout.write(emit_report(report, args.format))
    if args.format == "json":
        sys.stdout.write("\n")
    return 0 if report.ok else 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
