"""Command-line front end: tables, normal ordering, verification suites and
Dobinski evaluation.

Exit codes: 0 success, 1 a verification suite found a failing identity,
2 usage error (bad flags or parameters outside a family's domain).
JSON output is canonical: fixed key order, compact separators, every
rational serialised as "p/q"; re-serialising parsed output reproduces the
bytes exactly.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import bell, serieslab, stirling, weyl
from .algebra import LAMBDA, LambdaPoly, X, XPoly, rational_str

__all__ = ["main", "entry", "canonical_json"]


class UsageError(Exception):
    pass


def canonical_json(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def _rat(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}")


def _poly_cells(lp: LambdaPoly) -> list:
    return [rational_str(c) for c in lp.coeffs]


# ---------------------------------------------------------------------------
# table

_FAMILIES = {
    "stirling2": ((), lambda a: a.n, lambda a, k: stirling.stirling2_degenerate(a.n, k)),
    "stirling-rs": (("r", "s"), lambda a: a.n * a.s,
                    lambda a, k: stirling.stirling_rs_degenerate(a.n, k, a.r, a.s)),
    "stirling-rr": (("r",), lambda a: a.n * a.r,
                    lambda a, k: stirling.stirling_rr_degenerate(a.n, k, a.r)),
    "r-stirling": (("r",), lambda a: a.n,
                   lambda a, k: stirling.r_stirling_degenerate(a.n, k, a.r)),
    "lah": ((), lambda a: a.n, lambda a, k: stirling.lah_degenerate(a.n, k)),
    "lah-signed": ((), lambda a: a.n, lambda a, k: stirling.lah_signed_degenerate(a.n, k)),
    "bell-rs": (("r", "s"), lambda a: a.n * a.s,
                lambda a, k: bell.bell_rs_poly(a.n, a.r, a.s).coefficient(k)),
    "r-bell": (("r",), lambda a: a.n,
               lambda a, k: bell.r_bell_poly(a.n, a.r).coefficient(k)),
}


def cmd_table(args) -> int:
    needs, kmax, cell = _FAMILIES[args.family]
    for name in needs:
        if getattr(args, name) is None:
            raise UsageError(f"family {args.family!r} requires --{name}")
    rows = [(k, cell(args, k)) for k in range(kmax(args) + 1)]
    if args.eval_lam is not None:
        rows = [(k, c(args.eval_lam)) for k, c in rows]

    if args.format == "csv":
        out = io.StringIO()
        writer = csv.writer(out, quoting=csv.QUOTE_NONNUMERIC, lineterminator="\n")
        for k, c in rows:
            writer.writerow([k, str(c) if isinstance(c, LambdaPoly) else rational_str(c)])
        sys.stdout.write(out.getvalue())
        return 0

    doc = {"family": args.family, "n": args.n}
    for name in needs:
        doc[name] = getattr(args, name)
    if args.eval_lam is not None:
        doc["lambda"] = rational_str(args.eval_lam)
        doc["rows"] = [{"k": k, "coeff": rational_str(c)} for k, c in rows]
    else:
        doc["rows"] = [{"k": k, "coeff": _poly_cells(c)} for k, c in rows]
    print(canonical_json(doc))
    return 0


# ---------------------------------------------------------------------------
# normal-order

def cmd_normal_order(args) -> int:
    nf = weyl.degenerate_product(args.n, args.r, args.s)
    records = [
        {"i": i, "j": j, "coeff": _poly_cells(c)}
        for (i, j), c in sorted(nf.terms.items(), reverse=True)
    ]
    print(canonical_json(records))
    return 0


# ---------------------------------------------------------------------------
# dobinski

def cmd_dobinski(args) -> int:
    res = bell.dobinski_eval(args.n, args.r, args.s, args.x, args.lam, args.tol)
    doc = {
        "n": args.n,
        "r": args.r,
        "s": args.s,
        "x": rational_str(args.x),
        "lambda": rational_str(args.lam),
        "tol": rational_str(args.tol),
        "value": rational_str(res.value),
        "terms_used": res.terms_used,
        "tail_bound": rational_str(res.tail_bound),
    }
    print(canonical_json(doc))
    return 0


# ---------------------------------------------------------------------------
# verify

def _check(identity: str, passed: bool, detail=None) -> dict:
    rec = {"identity": identity, "pass": bool(passed)}
    if detail is not None:
        rec["detail"] = detail
    return rec


def _egf_record(report: serieslab.CheckReport) -> dict:
    mism = None
    if report.first_mismatch is not None:
        mism = {
            "n": report.first_mismatch.n,
            "expected": str(report.first_mismatch.expected),
            "actual": str(report.first_mismatch.actual),
        }
    return {
        "identity": report.identity,
        "order": report.order,
        "pass": report.passed,
        "first_mismatch": mism,
    }


def _factored_product(n: int, r: int, s: int) -> XPoly:
    """prod_{j=1..n} [(x + (j-1)(r-s))_s - (n-j) l] built symbolically."""
    lhs = XPoly.one()
    for j in range(1, n + 1):
        shifted = XPoly.one()
        c = (j - 1) * (r - s)
        for i in range(s):
            shifted = shifted * (X + (c - i))
        lhs = lhs * (shifted - (n - j) * LAMBDA)
    return lhs


def _suite_oracles(max_n: int, max_r: int, max_s: int) -> list:
    checks = []
    pairs = [(r, s) for r in range(1, max_r + 1) for s in range(1, min(r, max_s) + 1)]
    for r, s in pairs:
        for n in range(1, max_n + 1):
            closed = [stirling.stirling_rs_degenerate(n, k, r, s) for k in range(n * s + 1)]
            engine = weyl.extract_stirling(weyl.degenerate_product(n, r, s), n, r, s)
            diff = [weyl.difference_extract(n, r, s, k) for k in range(n * s + 1)]
            bad = next(
                (k for k in range(n * s + 1) if not closed[k] == engine[k] == diff[k]),
                None,
            )
            checks.append(
                _check(
                    f"triple-oracle[n={n},r={r},s={s}]",
                    bad is None,
                    None if bad is None else f"first mismatch at k={bad}",
                )
            )
            lhs = _factored_product(n, r, s)
            rhs = XPoly.zero()
            for k in range(n * s + 1):
                rhs = rhs + stirling.falling_basis_poly(k) * closed[k]
            checks.append(_check(f"factored-identity[n={n},r={r},s={s}]", lhs == rhs))
            vanish = all(
                stirling.stirling_rs_degenerate(n, k, r, s).is_zero()
                for k in range(n * s + 1, n * s + 6)
            )
            checks.append(_check(f"vanish-beyond-ns[n={n},r={r},s={s}]", vanish))
    for r in range(1, max_r + 1):
        for n in range(1, max_n + 1):
            row = stirling.rr_basis_identity(n, r)
            ok = all(
                row.coefficient(k) == stirling.stirling_rr_degenerate(n, k, r)
                for k in range(n * r + 1)
            ) and all(
                stirling.stirling_rr_degenerate(n, k, r).is_zero() for k in range(r)
            )
            checks.append(_check(f"balanced-basis-row[n={n},r={r}]", ok))
        checks.append(
            _check(
                f"balanced-first-row[r={r}]",
                stirling.stirling_rr_degenerate(1, r, r) == LambdaPoly.one(),
            )
        )
    for n in range(1, max_n + 1):
        ok = all(
            stirling.lah_degenerate(n, k) == stirling.stirling_rs_degenerate(n, k, 2, 1)
            for k in range(n + 1)
        )
        checks.append(_check(f"lah-is-(2,1)-row[n={n}]", ok))
    return checks


def _suite_egf(order: int, max_r: int) -> list:
    checks = [
        _egf_record(serieslab.stirling_egf_check(k, order)) for k in range(min(6, order) + 1)
    ]
    checks.append(_egf_record(serieslab.bell_egf_check(order)))
    checks.extend(_egf_record(serieslab.r_bell_egf_check(r, order)) for r in range(max_r + 1))
    checks.extend(_egf_record(serieslab.rr_egf_check(r, order)) for r in range(1, max_r + 1))
    return checks


def _suite_recurrence(max_n: int, max_r: int) -> list:
    checks = []
    for r in range(max_r + 1):
        for n in range(max_n + 1):
            form_a, form_b = bell.r_bell_recurrence(n, r)
            target = bell.r_bell_poly(n + 1, r)
            checks.append(
                _check(
                    f"shifted-bell-recurrence[n={n},r={r}]",
                    form_a == target and form_b == target,
                )
            )
    return checks


_LAM_GRID = (Fraction(0), Fraction(1, 2), Fraction(1))
_X_GRID = (Fraction(1, 2), Fraction(1), Fraction(2))


def _suite_dobinski(max_n: int, max_r: int, max_s: int, tol: Fraction) -> list:
    checks = []
    pairs = [(r, s) for r in range(1, max_r + 1) for s in range(1, min(r, max_s) + 1)]
    for r, s in pairs:
        for n in range(1, max_n + 1):
            poly = bell.bell_rs_poly(n, r, s)
            worst = Fraction(0)
            ok = True
            for lam in _LAM_GRID:
                for xv in _X_GRID:
                    res = bell.dobinski_eval(n, r, s, xv, lam, tol)
                    exact = poly(xv)(lam)
                    gap = abs(res.value - exact)
                    worst = max(worst, gap)
                    ok = ok and gap <= tol and res.tail_bound <= tol
            checks.append(
                _check(f"dobinski-series[n={n},r={r},s={s}]", ok,
                       f"worst residual {rational_str(worst)}")
            )
    for r in range(1, max_r + 1):
        for n in range(1, max_n + 1):
            poly = bell.bell_rs_poly(n, r, r)
            ok = True
            for lam in _LAM_GRID:
                for xv in _X_GRID:
                    res = bell.dobinski_rr(n, r, xv, lam, tol)
                    ok = ok and abs(res.value - poly(xv)(lam)) <= tol
            checks.append(_check(f"dobinski-balanced[k={n},r={r}]", ok))
            ok = bell.bell_rr_from_double_sum(n, r) == poly
            checks.append(_check(f"double-sum-identity[n={n},r={r}]", ok))
    for r in range(2, max_r + 1):
        for s in range(1, r):
            for n in range(1, max_n + 1):
                exact = bell.bell_rs_poly(n, r, s)(1)(0)
                res = bell.gamma_formula_classical(n, r, s, tol)
                checks.append(
                    _check(
                        f"gamma-ratio-series[n={n},r={r},s={s}]",
                        abs(res.value - exact) <= tol,
                    )
                )
    return checks


def cmd_verify(args) -> int:
    suites = ("oracles", "egf", "recurrence", "dobinski")
    wanted = suites if args.suite == "all" else (args.suite,)
    checks = []
    for name in wanted:
        if name == "oracles":
            checks.extend(_suite_oracles(args.max_n, args.max_r, args.max_s))
        elif name == "egf":
            checks.extend(_suite_egf(args.order, args.max_r))
        elif name == "recurrence":
            checks.extend(_suite_recurrence(args.max_n, args.max_r))
        elif name == "dobinski":
            checks.extend(_suite_dobinski(args.max_n, args.max_r, args.max_s, args.tol))
    passed = all(c["pass"] for c in checks)
    print(canonical_json({"suite": args.suite, "pass": passed, "checks": checks}))
    return 0 if passed else 1


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="degenstirling",
        description="Exact degenerate Stirling/Bell/Lah tables, boson normal "
                    "ordering, and series verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table", help="print one coefficient row")
    p.add_argument("family", choices=sorted(_FAMILIES))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int)
    p.add_argument("--s", type=int)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--eval-lambda", dest="eval_lam", type=_rat, default=None,
                   help="evaluate every entry at this rational value of l")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("normal-order", help="normal form of the degenerate product")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.set_defaults(func=cmd_normal_order)

    p = sub.add_parser("verify", help="run an identity suite; exit 1 on failure")
    p.add_argument("--suite", choices=("oracles", "egf", "recurrence", "dobinski", "all"),
                   default="all")
    p.add_argument("--max-n", dest="max_n", type=int, default=4)
    p.add_argument("--max-r", dest="max_r", type=int, default=3)
    p.add_argument("--max-s", dest="max_s", type=int, default=3)
    p.add_argument("--order", type=int, default=10)
    p.add_argument("--tol", type=_rat, default=Fraction(1, 10 ** 12))
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("dobinski", help="evaluate one Dobinski-style series")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--x", type=_rat, required=True)
    p.add_argument("--lambda", dest="lam", type=_rat, required=True)
    p.add_argument("--tol", type=_rat, default=Fraction(1, 10 ** 12))
    p.set_defaults(func=cmd_dobinski)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
