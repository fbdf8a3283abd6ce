"""Command-line interface: family tables, identity verification, p-adic experiments.

Exit codes: 0 success, 1 a check ran and failed, 2 usage or invalid-family error,
3 computational precondition error (pole, congruence, budget).
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction
from math import factorial
from typing import Dict, List, Optional, Sequence

from . import padic
from .apostol import (
    ChangheeContext,
    DaeheeContext,
    changhee_numbers,
    changhee_polynomials,
    daehee_numbers,
    daehee_polynomials,
)
from .classical import FAMILY_IDS, FamilySpec, PoleError, bernoulli_numbers, family_values
from .dirichlet import parse_character
from .registry import (
    FAIL,
    THEOREM_IDS,
    Sample,
    default_samples,
    reports_to_json,
    run_suite,
    summarize,
)
from .rings import CycQ, LogExpr, parse_rational
from .series import SeriesError, default_truncation

EXIT_OK, EXIT_CHECK_FAILED, EXIT_USAGE, EXIT_PRECONDITION = 0, 1, 2, 3

APOSTOL_FAMILIES = ("apostol-daehee", "apostol-changhee")
TABLE_FAMILIES = tuple(f.replace("_", "-") for f in FAMILY_IDS) + APOSTOL_FAMILIES
PADIC_CHECKS = (
    "witt-bosonic",
    "witt-fermionic",
    "binom",
    "binom-fermionic",
    "mahler",
    "integral-daehee",
    "integral-changhee",
)


class UsageError(ValueError):
    pass


# --- parsing helpers ---

def _rat(text: Optional[str], name: str) -> Optional[Fraction]:
    if text is None:
        return None
    try:
        return parse_rational(str(text))
    except ValueError as exc:
        raise UsageError(f"--{name}: {exc}") from exc


def _rat_or(text: Optional[str], name: str, default: Fraction) -> Fraction:
    value = _rat(text, name)
    return default if value is None else value


def _q(text: Optional[str]) -> Optional[Fraction]:
    """None for the limit1 token (and when absent)."""
    if text is None or str(text).strip() == "limit1":
        return None
    return _rat(text, "q")


def _chi(text: Optional[str]):
    try:
        return parse_character(text or "trivial")
    except ValueError as exc:
        raise UsageError(f"--chi: {exc}") from exc


def _ring(value: LogExpr) -> str:
    coeffs = list(value.num.values()) + list(value.den.values())
    cyc = [c for c in coeffs if isinstance(c, CycQ) and not c.is_rational()]
    base = f"Q(zeta_{cyc[0].order})" if cyc else "Q"
    if value.symbols():
        return base + "(" + ",".join(sorted(value.symbols())) + ")"
    return base


# --- output ---

def _emit(rows: List[Dict], fmt: str, out, columns: Sequence[str]):
    if fmt == "json":
        out.write(json.dumps(rows, indent=2, ensure_ascii=False) + "\n")
    elif fmt == "csv":
        writer = csv.DictWriter(out, fieldnames=list(columns), extrasaction="ignore")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: json.dumps(v, ensure_ascii=False) if isinstance(v, dict) else v for k, v in row.items()})
    else:
        for row in rows:
            out.write("\t".join(str(row[c]) for c in columns if not isinstance(row.get(c), dict)) + "\n")


def _open_output(path: Optional[str]):
    if path is None or path == "-":
        return sys.stdout, False
    return open(path, "w", newline="", encoding="utf-8"), True


# --- commands ---

def _table_values(args) -> List[LogExpr]:
    family = args.family
    max_n = args.max_n
    if family in APOSTOL_FAMILIES:
        chi = _chi(args.chi)
        lam = _rat_or(args.lam, "lambda", Fraction(1))
        z = _rat(args.z, "z")
        T = max(default_truncation(), max_n)
        if family == "apostol-daehee":
            ctx = DaeheeContext(chi, lam, _q(args.q), T=T)
            return daehee_numbers(ctx, max_n) if z is None else daehee_polynomials(ctx, z, max_n)
        qv = _q(args.q)
        ctx = ChangheeContext(chi, lam, Fraction(1) if qv is None else qv, T=T)
        return changhee_numbers(ctx, max_n) if z is None else changhee_polynomials(ctx, z, max_n)
    spec = FamilySpec(
        family=family.replace("-", "_"),
        x=_rat_or(args.x, "x", Fraction(0)),
        lam=_rat_or(args.lam, "lambda", Fraction(1)),
        u=_rat(args.u, "u"),
        v=args.v or 0,
        chi=_chi(args.chi) if args.chi else None,
    )
    try:
        spec.validate()
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    return family_values(spec, max_n)


def _table_params(args) -> Dict[str, str]:
    keys = ("chi", "lam", "q", "x", "z", "u", "v")
    names = {"lam": "lambda"}
    out = {names.get(k, k): str(getattr(args, k)) for k in keys if getattr(args, k, None) is not None}
    out["coefficients"] = args.coefficients
    return out


def run_table(args) -> int:
    if args.family not in TABLE_FAMILIES:
        raise UsageError(f"unknown family {args.family!r}; choose from {', '.join(TABLE_FAMILIES)}")
    values = _table_values(args)
    if args.coefficients == "ordinary":
        values = [v * Fraction(1, factorial(n)) for n, v in enumerate(values)]
    params = _table_params(args)
    rows = [
        {"n": n, "value": str(v), "ring": _ring(v), "family": args.family, "params": params}
        for n, v in enumerate(values)
    ]
    out, close = _open_output(args.output)
    try:
        _emit(rows, args.format, out, ("n", "value", "ring", "family", "params"))
    finally:
        if close:
            out.close()
    return EXIT_OK


def _verify_samples(args):
    overrides = any(getattr(args, k) is not None for k in ("chi", "lam", "q", "z"))
    if not overrides:
        return lambda t: default_samples(t, max_n=args.max_n)

    def make(theorem: str) -> List[Sample]:
        kwargs = {"max_n": args.max_n}
        if args.chi is not None:
            _chi(args.chi)
            kwargs["characters"] = [args.chi]
        if args.lam is not None:
            kwargs["lambdas"] = [_rat(args.lam, "lambda")]
        if args.q is not None:
            kwargs["qs"] = [_q(args.q)]
        if args.z is not None:
            kwargs["zs"] = [_rat(args.z, "z")]
        return default_samples(theorem, **kwargs)

    return make


def run_verify(args) -> int:
    theorem = args.theorem or "all"
    if theorem == "all":
        theorems = THEOREM_IDS
    elif theorem in THEOREM_IDS:
        theorems = (theorem,)
    else:
        raise UsageError(f"unknown theorem id {theorem!r}; choose from all, {', '.join(THEOREM_IDS)}")
    reports = run_suite(theorems, _verify_samples(args), workers=args.workers)
    counts = summarize(reports)
    out, close = _open_output(args.output)
    try:
        if args.format == "json":
            out.write(reports_to_json(reports) + "\n")
        else:
            rows = [
                {"theorem": r.theorem, "params": json.dumps(r.params), "status": r.status, "note": r.note}
                for r in reports
            ]
            _emit(rows, args.format, out, ("theorem", "params", "status", "note"))
    finally:
        if close:
            out.close()
    print(" ".join(f"{k}={v}" for k, v in counts.items()), file=sys.stderr)
    return EXIT_CHECK_FAILED if counts[FAIL] else EXIT_OK


def _padic_rows(table: padic.ValuationTable) -> List[Dict]:
    return [{"N": N, "valuation": str(d), "check": table.label, "target": table.target} for N, d in table.rows]


def run_padic(args) -> int:
    check = "witt-fermionic" if args.check == "witt-fermonic" else args.check
    if check not in PADIC_CHECKS:
        raise UsageError(f"unknown check {args.check!r}; choose from {', '.join(PADIC_CHECKS)}")
    p = args.p
    Nmax = args.Nmax
    ok = True
    if check == "mahler":
        k = args.k if args.k is not None else 0
        value = padic.mahler_integral([0] * k + [1])
        target = bernoulli_numbers(k)[k]
        ok = value == target
        rows = [{"k": k, "value": str(value), "target": str(target), "match": ok}]
        columns = ("k", "value", "target", "match")
    else:
        if Nmax is None:
            raise UsageError("--Nmax is required for this check")
        columns = ("N", "valuation")
        if check.startswith("witt"):
            z = _rat_or(args.z, "z", Fraction(0))
            table = padic.witt_report(check.split("-")[1], args.n or 0, p, Nmax, z=z)
            ok = table.nondecreasing
        elif check.startswith("binom"):
            j = args.j or 0
            kind = "fermionic" if check == "binom-fermionic" else "bosonic"
            spec = padic.IntegrandSpec("binomial", n=j)
            exact = padic.mahler_integral(padic.binomial_poly(j), kind)
            partial = padic.volkenborn_partial if kind == "bosonic" else padic.fermionic_partial
            table = padic.ValuationTable(f"binom-{kind} j={j}", p, str(exact))
            for N in range(1, Nmax + 1):
                table.rows.append((N, partial(spec, p, N).distance(exact, p)))
            ok = table.nondecreasing
        else:
            chi = _chi(args.chi)
            lam = _rat_or(args.lam, "lambda", Fraction(1))
            qv = _q(args.q)
            n = args.n or 0
            if check == "integral-daehee":
                ctx = DaeheeContext(chi, lam, qv, T=max(default_truncation(), n))
            else:
                ctx = ChangheeContext(chi, lam, Fraction(1) if qv is None else qv, T=max(default_truncation(), n))
            table = padic.integral_rep_check(check.split("-")[1], ctx, n, p, Nmax, Nmin=args.Nmin)
            ok = table.strictly_increasing
        rows = _padic_rows(table)
    out, close = _open_output(args.output)
    try:
        _emit(rows, args.format, out, columns)
    finally:
        if close:
            out.close()
    return EXIT_OK if ok else EXIT_CHECK_FAILED


# --- argument parsing ---

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="apostol-lab", description=__doc__.splitlines()[0])
    parser.add_argument("--config", help="JSON file with default option values")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp):
        sp.add_argument("--chi", help='character: "trivial", "kronecker:D" or "mod:d:index"')
        sp.add_argument("--lambda", dest="lam", help="lambda as an exact rational a/b")
        sp.add_argument("--q", help='q as a/b, or "limit1"')
        sp.add_argument("--z", help="polynomial argument z as a/b")
        sp.add_argument("--format", choices=("json", "csv", "text"), default="text")
        sp.add_argument("--output", help="output path (default stdout)")

    t = sub.add_parser("table", help="emit a table of family values")
    common(t)
    t.add_argument("--family", required=True)
    t.add_argument("--x", help="polynomial argument x")
    t.add_argument("--u", help="Frobenius-Euler parameter u")
    t.add_argument("--v", type=int, help="Stirling column v")
    t.add_argument("--max-n", type=int, default=10)
    t.add_argument("--coefficients", choices=("egf", "ordinary"), default="egf",
                   help="egf: n! a_n (default); ordinary: a_n")

    v = sub.add_parser("verify", help="run the identity registry")
    common(v)
    v.add_argument("--theorem", default="all")
    v.add_argument("--max-n", type=int, default=10)
    v.add_argument("--workers", type=int, default=1)

    pa = sub.add_parser("padic", help="p-adic partial-sum experiments")
    common(pa)
    pa.add_argument("--check", required=True)
    pa.add_argument("--p", type=int, default=5)
    pa.add_argument("--n", type=int)
    pa.add_argument("--j", type=int)
    pa.add_argument("--k", type=int)
    pa.add_argument("--Nmax", type=int)
    pa.add_argument("--Nmin", type=int, default=1)
    return parser


def _apply_config(parser: argparse.ArgumentParser, argv: Sequence[str]) -> argparse.Namespace:
    args = parser.parse_args(argv)
    if not args.config:
        return args
    try:
        with open(args.config, encoding="utf-8") as fh:
            config = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"--config: {exc}") from exc
    if not isinstance(config, dict):
        raise UsageError("--config must hold a JSON object")
    renamed = {"lambda": "lam", "max-n": "max_n"}
    for key, value in config.items():
        attr = renamed.get(key, key.replace("-", "_"))
        if not hasattr(args, attr):
            raise UsageError(f"--config: unknown option {key!r}")
        if isinstance(value, float):
            raise UsageError(f"--config: {key} must be an exact value, not a float")
        flag = "--" + key
        if flag not in argv and not any(a.startswith(flag + "=") for a in argv):
            setattr(args, attr, value if isinstance(value, int) or attr in ("max_n",) else str(value))
    return args


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = _apply_config(parser, argv)
        if args.command == "table":
            return run_table(args)
        if args.command == "verify":
            return run_verify(args)
        return run_padic(args)
    except UsageError as exc:
        print(f"apostol-lab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (PoleError, SeriesError, padic.PadicPreconditionError, padic.BudgetError, ZeroDivisionError) as exc:
        print(f"apostol-lab: precondition error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except ValueError as exc:
        print(f"apostol-lab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
