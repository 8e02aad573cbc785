"""Command-line front end: compute invariants, verify identities, emit tables.

Exit statuses: 0 success, 1 verification failure, 2 usage error,
3 enumeration budget exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field, asdict
from fractions import Fraction

from . import oracle, stringy
from .exactalg import LaurentPoly
from .groth import gauss_binomial, rank_identity_check
from .oracle import BudgetExceeded, DEFAULT_BUDGET
from .stringy import StringyInput, InvalidInput

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


@dataclass
class OutputRecord:
    """Machine-readable result of one invariant computation.

    Coefficients travel as decimal strings so consumers never need
    arbitrary-precision integers or floats.
    """

    r: int
    k: int
    variety: str
    stringyE: list = field(default_factory=list)  # [[exponent, "coeff"], ...]
    hodgeDiagonal: dict = field(default_factory=dict)
    eulerNumber: str = "0"
    nonNegative: bool = True
    discrepancies: list = field(default_factory=list)
    checks: list = field(default_factory=list)  # [[name, passed, details], ...]

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "OutputRecord":
        return cls(**json.loads(text))


def _poly_pairs(p: LaurentPoly) -> list:
    return [[exp, str(c)] for exp, c in sorted(p.terms.items())]


def _render_uv(p: LaurentPoly) -> str:
    """Render a polynomial in q as a polynomial in the product (uv)."""
    if p.is_zero():
        return "0"
    parts = []
    for exp in sorted(p.terms):
        c = p.terms[exp]
        coeff = "" if c == 1 and exp != 0 else str(c)
        if exp == 0:
            parts.append(str(c))
        elif exp == 1:
            parts.append(f"{coeff}(uv)")
        else:
            parts.append(f"{coeff}(uv)^{{{exp}}}")
    return " + ".join(parts)


def compute_record(r: int, k: int, variety: str) -> OutputRecord:
    """Compute every route for one (r, k, variety) and cross-check them."""
    StringyInput(r, k, variety)
    if variety == "affine":
        closed = stringy.stringy_e_affine(r, k)
        summed = stringy.stringy_e_affine_from_orbits(r, k)
    else:
        closed = stringy.stringy_e_projective(r, k)
        summed = stringy.stringy_e_projective_from_orbits(r, k)
    table = stringy.hodge_table(closed)
    record = OutputRecord(r=r, k=k, variety=variety)
    record.stringyE = _poly_pairs(closed)
    record.hodgeDiagonal = {str(p): v for p, v in table.diag.items()}
    record.eulerNumber = str(stringy.stringy_euler(closed))
    record.nonNegative = table.non_negative
    if k >= 1:
        record.discrepancies = [[i, a] for i, a in stringy.log_discrepancies(r, k)]
    record.checks = [["closed_equals_orbit_sum", closed == summed,
                      "exact polynomial comparison of the two routes"]]
    return record


def _record_text(record: OutputRecord) -> str:
    poly = " + ".join(f"{c}*q^{e}" for e, c in record.stringyE)
    lines = [
        f"r={record.r} k={record.k} variety={record.variety}",
        f"stringy E = {poly}",
        f"euler = {record.eulerNumber}  nonnegative = {record.nonNegative}",
        f"discrepancies = {record.discrepancies}",
    ]
    for name, ok, _ in record.checks:
        lines.append(f"check {name}: {'pass' if ok else 'FAIL'}")
    return "\n".join(lines)


# -- verification suites ------------------------------------------------------

def suite_identities(rmax: int) -> list:
    checks = []
    for r in range(2, rmax + 1):
        for k in range(1, r):
            checks.append((f"affine_theorem({r},{k})",
                           stringy.stringy_e_affine_from_orbits(r, k)
                           == stringy.stringy_e_affine(r, k), ""))
            checks.append((f"projective_theorem({r},{k})",
                           stringy.stringy_e_projective_from_orbits(r, k)
                           == stringy.stringy_e_projective(r, k), ""))
            g = gauss_binomial(k, r)
            checks.append((f"subset_sum_is_grassmannian({r},{k})",
                           stringy.grassmannian_subset_sum(r, k) == g, ""))
            checks.append((f"recursion_is_grassmannian({r},{k})",
                           stringy.grassmannian_recursive(r, k) == g, ""))
            checks.append((f"rank_identity({r},{k})", rank_identity_check(r, k), ""))
            euler_a = stringy.stringy_euler(stringy.stringy_e_affine(r, k))
            euler_p = stringy.stringy_euler(stringy.stringy_e_projective(r, k))
            from math import comb
            checks.append((f"euler_affine({r},{k})", euler_a == comb(r, k), ""))
            checks.append((f"euler_projective({r},{k})",
                           euler_p == k * r * comb(r, k), ""))
            checks.append((f"nonnegativity({r},{k})",
                           stringy.hodge_table(
                               stringy.stringy_e_projective(r, k)).non_negative, ""))
        checks.append((f"rank_one_resolution({r})",
                       stringy.rank_one_resolution_check(r), ""))
    return checks


def suite_orbits(rmax: int) -> list:
    checks = []
    pairs = [(r, k) for r in range(2, min(rmax, 4) + 1) for k in range(1, r)]
    for r, k in pairs:
        closed = stringy.stringy_e_affine(r, k)
        cap = 0
        while stringy.orbit_tail_degree_bound(r, k, cap) >= 0:
            cap += 1
        bound = stringy.orbit_tail_degree_bound(r, k, cap)
        partial = stringy.truncated_orbit_sum(r, k, cap, "affine")
        stable = {e: c for e, c in partial.terms.items() if e > bound}
        expect = {e: c for e, c in closed.terms.items() if e > bound}
        checks.append((f"orbit_convergence_affine({r},{k},cap={cap})",
                       stable == expect, f"stable above exponent {bound}"))
        closed_p = stringy.stringy_e_projective(r, k) * (LaurentPoly({1: 1, 0: -1}))
        partial_p = stringy.truncated_orbit_sum(r, k, cap, "projective")
        stable_p = {e: c for e, c in partial_p.terms.items() if e > bound}
        expect_p = {e: c for e, c in closed_p.terms.items() if e > bound}
        checks.append((f"orbit_convergence_projective({r},{k},cap={cap})",
                       stable_p == expect_p, f"stable above exponent {bound}"))
    return checks


def suite_zeta(rmax: int, order: int) -> list:
    checks = []
    for r in range(1, min(rmax, 3) + 1):
        series = stringy.zeta_closed_expansion(r, order)
        ok = all(series.coefficient(n) == stringy.zeta_coefficient_direct(r, n)
                 for n in range(order + 1))
        checks.append((f"zeta_consistency(r={r},order={order})", ok, ""))
    return checks


def suite_oracle(p: int, rmax: int, budget: int) -> list:
    try:
        report = oracle.verify_classes(p, rmax, budget)
    except oracle.MismatchFound as exc:
        return [("oracle_certification", False, str(exc))]
    return [(name, ok, details) for name, ok, details in report.checks]


def _print_checks(checks: list) -> bool:
    all_ok = True
    for name, ok, details in checks:
        status = "pass" if ok else "FAIL"
        suffix = f"  ({details})" if details else ""
        print(f"{status}  {name}{suffix}")
        all_ok = all_ok and ok
    return all_ok


# -- table rendering ----------------------------------------------------------

def table_rows(rmax: int, varieties) -> list:
    rows = []
    for r in range(2, rmax + 1):
        for k in range(1, r):
            for variety in varieties:
                if variety == "affine":
                    poly = stringy.stringy_e_affine(r, k)
                    dim = k * (2 * r - k)
                else:
                    poly = stringy.stringy_e_projective(r, k)
                    dim = k * (2 * r - k) - 1
                table = stringy.hodge_table(poly)
                rows.append({
                    "r": r,
                    "k": k,
                    "variety": variety,
                    "dim": dim,
                    "degree": poly.degree(),
                    "euler": str(stringy.stringy_euler(poly)),
                    "nonneg": table.non_negative,
                    "coefficients": _poly_pairs(poly),
                })
    return rows


def _render_table(rows: list, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rows, indent=2)
    if fmt == "csv":
        lines = ["r,k,variety,dim,degree,euler,nonneg,coefficients"]
        for row in rows:
            coeffs = ";".join(f"{e}:{c}" for e, c in row["coefficients"])
            lines.append(f"{row['r']},{row['k']},{row['variety']},{row['dim']},"
                         f"{row['degree']},{row['euler']},{row['nonneg']},{coeffs}")
        return "\n".join(lines)
    if fmt == "latex":
        lines = [r"\begin{tabular}{lllll}",
                 r"$r$ & $k$ & variety & $E_{st}$ & Euler \\ \hline"]
        for row in rows:
            poly = LaurentPoly({e: Fraction(c) for e, c in row["coefficients"]})
            lines.append(f"{row['r']} & {row['k']} & {row['variety']} & "
                         f"${_render_uv(poly)}$ & {row['euler']} \\\\")
        lines.append(r"\end{tabular}")
        return "\n".join(lines)
    raise ValueError(f"unknown format {fmt!r}")


# -- argument parsing ---------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stringy-det",
        description="Exact stringy invariants of rank-bounded matrix varieties.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_compute = sub.add_parser("compute", help="compute invariants for one (r, k)")
    p_compute.add_argument("--r", type=int, required=True)
    p_compute.add_argument("--k", type=int, required=True)
    p_compute.add_argument("--variety", choices=["affine", "projective"],
                           default="affine")
    p_compute.add_argument("--format", choices=["json", "text"], default="text")

    p_verify = sub.add_parser("verify", help="run verification suites")
    p_verify.add_argument("--suite",
                          choices=["identities", "oracle", "orbits", "zeta", "all"],
                          default="all")
    p_verify.add_argument("--rmax", type=int, default=5)
    p_verify.add_argument("--p", type=int, default=2)
    p_verify.add_argument("--order", type=int, default=4)
    p_verify.add_argument("--budget", type=int, default=DEFAULT_BUDGET)

    p_table = sub.add_parser("table", help="tabulate invariants up to rmax")
    p_table.add_argument("--rmax", type=int, required=True)
    p_table.add_argument("--format", choices=["json", "csv", "latex"], default="csv")
    p_table.add_argument("--variety", choices=["affine", "projective", "both"],
                         default="affine")

    p_zeta = sub.add_parser("zeta", help="motivic zeta series of the determinant")
    p_zeta.add_argument("--r", type=int, required=True)
    p_zeta.add_argument("--order", type=int, default=4)
    p_zeta.add_argument("--format", choices=["json", "text"], default="text")

    p_oracle = sub.add_parser("oracle", help="finite-field point-count certification")
    p_oracle.add_argument("--p", type=int, required=True)
    p_oracle.add_argument("--rmax", type=int, required=True)
    p_oracle.add_argument("--budget", type=int, default=DEFAULT_BUDGET)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK

    try:
        if args.command == "compute":
            record = compute_record(args.r, args.k, args.variety)
            print(record.to_json() if args.format == "json" else _record_text(record))
            return EXIT_OK if all(ok for _, ok, _ in record.checks) else EXIT_FAIL

        if args.command == "verify":
            checks = []
            if args.suite in ("identities", "all"):
                checks += suite_identities(args.rmax)
            if args.suite in ("orbits", "all"):
                checks += suite_orbits(args.rmax)
            if args.suite in ("zeta", "all"):
                checks += suite_zeta(args.rmax, args.order)
            if args.suite in ("oracle", "all"):
                checks += suite_oracle(args.p, min(args.rmax, 4), args.budget)
            return EXIT_OK if _print_checks(checks) else EXIT_FAIL

        if args.command == "table":
            varieties = (["affine", "projective"] if args.variety == "both"
                         else [args.variety])
            print(_render_table(table_rows(args.rmax, varieties), args.format))
            return EXIT_OK

        if args.command == "zeta":
            series = stringy.zeta_closed_expansion(args.r, args.order)
            if args.format == "json":
                payload = {str(n): _poly_pairs(series.coefficient(n))
                           for n in range(args.order + 1)}
                print(json.dumps({"r": args.r, "order": args.order,
                                  "coefficients": payload}, indent=2))
            else:
                for n in range(args.order + 1):
                    print(f"T^{n}: {series.coefficient(n)}")
            return EXIT_OK

        if args.command == "oracle":
            candidates = sum((args.p) ** (r * s)
                             for r in range(1, args.rmax + 1)
                             for s in range(r, args.rmax + 1))
            print(f"estimated candidates: {candidates}")
            report = oracle.verify_classes(args.p, args.rmax, args.budget)
            ok = _print_checks([(n, o, d) for n, o, d in report.checks])
            return EXIT_OK if ok else EXIT_FAIL

    except InvalidInput as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except oracle.MismatchFound as exc:
        print(f"mismatch: {exc}", file=sys.stderr)
        return EXIT_FAIL

    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
