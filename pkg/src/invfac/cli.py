"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 parse error, 3 spec
invariant violated, 4 pole, 5 range.
"""
from __future__ import annotations

import argparse
import csv
import json
import math
import os
import random
import re
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

import mpmath

from . import identities
from .errors import InvfacError, RangeError, SpecError
from .facseries import (
    abscissa,
    corollary_coeffs_nb,
    corollary_coeffs_stirling,
    evaluate,
    theorem_coeffs,
)
from .fixtures import generic_mu, random_balanced_spec
from .gammaexp import DEFAULT_PRECISION, GammaRatioSpec, c_coefficients, poincare_expansion
from .numerics import (
    RatPoly,
    format_number,
    is_exact,
    make_exact,
    parse_number,
    to_mp,
    working_precision,
)
from .oracle import log_gamma, w_direct
from .series import EXP_ROUTES
from .specialnumbers import (
    bernoulli_numbers,
    bernoulli_poly,
    noncentral_stirling_table,
    norlund_bernoulli_row,
    stirling_first,
)

PRECISION_ENV = "INVFAC_PRECISION_BITS"
DEFAULT_ORDER = 32
EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_SPEC, EXIT_POLE, EXIT_RANGE = range(6)


class ParseError(Exception):
    exit_code = EXIT_PARSE


def default_precision() -> int:
    raw = os.environ.get(PRECISION_ENV)
    if raw is None:
        return DEFAULT_PRECISION
    try:
        return int(raw)
    except ValueError:
        raise ParseError(f"{PRECISION_ENV}={raw!r} is not an integer") from None


def digits_for(bits: int) -> int:
    return max(15, int(bits * math.log10(2)))


# ---------------------------------------------------------------------------
# Input parsing


@dataclass(frozen=True)
class ProblemSpec:
    spec: GammaRatioSpec
    sigma: Any = None
    theta: Any = None
    order: int = DEFAULT_ORDER


def parse_complex(text: str):
    """``"2"``, ``"1/2"``, ``"1+2i"``, ``"-0.5-3/2i"`` or ``"2i"``."""
    s = text.strip().replace(" ", "")
    if not s:
        raise ParseError("empty complex number")
    try:
        if s[-1] not in "ij":
            return parse_number(s)
        body = s[:-1]
        split = None
        for i in range(len(body) - 1, 0, -1):
            if body[i] in "+-" and body[i - 1] not in "eE":
                split = i
                break
        re_part, im_part = ("0", body) if split is None else (body[:split], body[split:])
        if im_part in ("", "+", "-"):
            im_part += "1"
        re_v, im_v = parse_number(re_part), parse_number(im_part)
    except ValueError as exc:
        raise ParseError(f"cannot parse complex number {text!r}: {exc}") from None
    if is_exact(re_v) and is_exact(im_v):
        return make_exact(re_v, im_v)
    return mpmath.mpc(to_mp(re_v).real, to_mp(im_v).real)


def _parse_field(doc: dict, key: str, required: bool = True):
    if key not in doc:
        if required:
            raise ParseError(f"spec file is missing field {key!r}")
        return None
    value = doc[key]
    try:
        if key in ("A", "a", "B", "b"):
            if not isinstance(value, list):
                raise ParseError(f"field {key!r} must be an array")
            return tuple(parse_number(v) for v in value)
        return parse_number(value)
    except ValueError as exc:
        raise ParseError(f"field {key!r}: {exc}") from None


def load_problem(path: str, precision_override: int | None = None,
                 order_override: int | None = None) -> ProblemSpec:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise ParseError(f"{path}: top level must be an object")
    unknown = set(doc) - {"A", "a", "B", "b", "sigma", "theta", "precision_bits", "order"}
    if unknown:
        raise ParseError(f"{path}: unknown fields {sorted(unknown)}")
    prec = doc.get("precision_bits", default_precision())
    order = doc.get("order", DEFAULT_ORDER)
    for name, v in (("precision_bits", prec), ("order", order)):
        if not isinstance(v, int) or isinstance(v, bool):
            raise ParseError(f"{path}: {name} must be an integer")
    prec = precision_override or prec
    order = order_override if order_override is not None else order
    # decimals are parsed at the working precision of the run
    with working_precision(max(prec, 64)):
        A, a, B, b = (_parse_field(doc, k) for k in ("A", "a", "B", "b"))
        sigma = _parse_field(doc, "sigma", required=False)
        theta = _parse_field(doc, "theta", required=False)
    if sigma is not None and theta is not None:
        raise SpecError("give at most one of sigma and theta")
    if order < 0:
        raise SpecError("order must be nonnegative")
    return ProblemSpec(GammaRatioSpec(A, a, B, b, prec), sigma, theta, order)


# ---------------------------------------------------------------------------
# Output helpers


def _fmt(v, digits: int):
    if v in (math.inf, -math.inf):
        return "inf" if v > 0 else "-inf"
    return format_number(v, digits)


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def _series_for(problem: ProblemSpec, order: int, route: str):
    if problem.sigma is not None:
        return theorem_coeffs(problem.spec, problem.sigma, order)
    if problem.theta is not None:
        build = corollary_coeffs_nb if route == "nb" else corollary_coeffs_stirling
        return build(problem.spec, problem.theta, order)
    raise SpecError("the factorial form needs sigma (mu = 1) or theta in the spec file")


# ---------------------------------------------------------------------------
# Commands


def cmd_expand(args, out) -> int:
    problem = load_problem(args.specfile, args.precision_bits, args.order)
    spec = problem.spec
    spec.require_balanced()
    digits = digits_for(spec.precision_bits)
    fmt = lambda v: _fmt(v, digits)
    with working_precision(spec.precision_bits):
        if args.poincare:
            route = args.route if args.route in EXP_ROUTES else "recurrence"
            exp = poincare_expansion(spec, problem.order, route)
            doc = {
                "mode": exp.mode,
                "route": route,
                "nu": fmt(exp.nu),
                "log_rho": fmt(exp.log_rho),
                "mu": fmt(exp.mu),
                "C": [fmt(c) for c in exp.C],
            }
        else:
            fs = _series_for(problem, problem.order, args.route)
            if fs.form == "PlainShift":
                rep = abscissa(spec, sigma=fs.shift)
            else:
                rep = abscissa(spec, theta=fs.shift)
            doc = {
                "mode": "exact" if fs.exact else "float",
                "form": fs.form,
                "route": fs.route,
                "sigma_or_theta": fmt(fs.shift),
                "nu": fmt(fs.scale),
                "mu": fmt(fs.mu),
                "coeffs": [fmt(c) for c in fs.coeffs],
                "coeffs_include_nu": False,
                "abscissa_report": rep.to_json(fmt),
            }
    out.write(_dump(doc) + "\n")
    return EXIT_OK


def _parse_n_list(text: str) -> list[int]:
    try:
        values = [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise ParseError(f"--n-list must be comma-separated integers, got {text!r}") from None
    if not values or min(values) < 0:
        raise ParseError("--n-list needs nonnegative integers")
    return values


def cmd_eval(args, out) -> int:
    problem = load_problem(args.specfile, args.precision_bits, args.order)
    spec = problem.spec
    spec.require_balanced()
    n_list = _parse_n_list(args.n_list)
    with working_precision(spec.precision_bits):
        zs = [parse_complex(z) for z in args.z]
    if n_list and max(n_list) > problem.order:
        raise RangeError(f"N = {max(n_list)} exceeds the series order {problem.order}")
    fs = _series_for(problem, problem.order, args.route)
    digits = args.digits
    rows = [["z_re", "z_im", "N", "partial_sum_re", "partial_sum_im",
             "oracle_re", "oracle_im", "abs_error", "rel_error"]]
    with working_precision(spec.precision_bits):
        for z in zs:
            oracle = None
            for N in n_list:
                value, _ = evaluate(fs, z, N)
                if oracle is None:
                    oracle = w_direct(spec, z)
                v = to_mp(value)
                err = abs(v - oracle)
                rel = err / abs(oracle) if oracle != 0 else mpmath.inf
                zm = to_mp(z)
                rows.append([
                    mpmath.nstr(zm.real, digits), mpmath.nstr(zm.imag, digits), N,
                    mpmath.nstr(v.real, digits), mpmath.nstr(v.imag, digits),
                    mpmath.nstr(oracle.real, digits), mpmath.nstr(oracle.imag, digits),
                    mpmath.nstr(err, 6), mpmath.nstr(rel, 6),
                ])
    # nothing reaches stdout unless every row succeeded
    csv.writer(out, lineterminator="\n").writerows(rows)
    return EXIT_OK


def _routes_suite(count: int = 5, order: int = 8, seed: int = 2024) -> list[dict]:
    rng = random.Random(seed)
    out = []
    for i in range(count):
        spec = random_balanced_spec(rng)
        results = {r: c_coefficients(spec, order, r) for r in sorted(EXP_ROUTES)}
        first = results["recurrence"]
        out.append({"identity": "c_routes", "case": i, "order": order,
                    "holds": all(v == first for v in results.values()), "residual_terms": {}})
    for i in range(count):
        spec = random_balanced_spec(rng, mu_ok=generic_mu)
        theta = Fraction(rng.randint(-6, 12), rng.randint(1, 4))
        h1 = corollary_coeffs_stirling(spec, theta, 10).coeffs
        h2 = corollary_coeffs_nb(spec, theta, 10).coeffs
        diff = {str(n): format_number(x - y) for n, (x, y) in enumerate(zip(h1, h2)) if x != y}
        out.append({"identity": "h_routes", "case": i, "order": 10,
                    "holds": not diff, "residual_terms": diff})
    return out


def cmd_verify(args, out) -> int:
    suites = ["identities", "genfun", "routes"] if args.suite == "all" else [args.suite]
    report: dict[str, list] = {}
    for suite in suites:
        if suite == "identities":
            report[suite] = [c.to_json() for c in identities.identity_suite(args.max_m)]
        elif suite == "genfun":
            report[suite] = [c.to_json() for c in identities.genfun_suite()]
        else:
            report[suite] = _routes_suite()
    failures = [case for cases in report.values() for case in cases if not case["holds"]]
    doc = {"suites": report, "all_pass": not failures, "failures": failures}
    out.write(_dump(doc) + "\n")
    return EXIT_OK if not failures else EXIT_FAIL


def _symbol_or_number(text: str):
    if re.fullmatch(r"[A-Za-z_]\w*", text.strip()):
        return text.strip()
    return parse_complex(text)


def _cell(v) -> str:
    if isinstance(v, RatPoly):
        return str(v)
    out = format_number(v, 20)
    return json.dumps(out, sort_keys=True) if isinstance(out, dict) else out


def cmd_tables(args, out) -> int:
    writer = csv.writer(out, lineterminator="\n")
    n = args.max_n
    if args.family == "bernoulli":
        writer.writerow(["n", "B_n"])
        for i, v in enumerate(bernoulli_numbers(n)):
            writer.writerow([i, _cell(v)])
    elif args.family == "bernoulli-poly":
        writer.writerow(["n", "polynomial"])
        for i in range(n + 1):
            writer.writerow([i, str(bernoulli_poly(i))])
    elif args.family == "stirling":
        writer.writerow(["n", "k", "s"])
        for i in range(n + 1):
            for k in range(i + 1):
                writer.writerow([i, k, stirling_first(i, k)])
    elif args.family == "noncentral":
        sigma = _symbol_or_number(args.sigma)
        writer.writerow(["n", "r", "s_sigma"])
        for i, row in enumerate(noncentral_stirling_table(n, sigma)):
            for r, v in enumerate(row):
                writer.writerow([i, r, _cell(v)])
    else:
        gamma = _symbol_or_number(args.gamma)
        x = _symbol_or_number(args.x)
        writer.writerow(["k", "B_k"])
        for k, v in enumerate(norlund_bernoulli_row(n, gamma, x)):
            writer.writerow([k, _cell(v)])
    return EXIT_OK


def cmd_oracle(args, out) -> int:
    prec = args.precision_bits or default_precision()
    spec = load_problem(args.specfile, prec).spec if args.specfile else None
    if spec is not None:
        prec = spec.precision_bits
    digits = args.digits or digits_for(prec)
    rows = []
    with working_precision(prec):
        zs = [parse_complex(z) for z in args.z]
        for z in zs:
            row = {"z": format_number(z, digits)}
            if spec is None:
                row["log_gamma"] = format_number(log_gamma(z, prec), digits)
            else:
                row["W"] = format_number(w_direct(spec, z, prec), digits)
            rows.append(row)
    out.write(_dump({"precision_bits": prec, "values": rows}) + "\n")
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="invfac", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, spec=True):
        if spec:
            p.add_argument("specfile", help="JSON problem spec")
        p.add_argument("--precision-bits", type=int, default=None,
                       help=f"working precision (default: spec file, then ${PRECISION_ENV}, then 256)")

    p = sub.add_parser("expand", help="emit Poincare or factorial-series coefficients as JSON")
    common(p)
    form = p.add_mutually_exclusive_group(required=True)
    form.add_argument("--poincare", action="store_true")
    form.add_argument("--factorial", action="store_true")
    p.add_argument("--order", type=int, default=None)
    p.add_argument("--route", default="recurrence",
                   help="C_r route (recurrence, partition, nair) or h_n route (stirling, nb)")
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("eval", help="partial sums against the oracle, as CSV")
    common(p)
    p.add_argument("--z", action="append", required=True, help="evaluation point, e.g. 2 or 1+2i")
    p.add_argument("--n-list", required=True, help="comma-separated truncation orders")
    p.add_argument("--order", type=int, default=None)
    p.add_argument("--route", default="stirling", choices=["stirling", "nb"])
    p.add_argument("--digits", type=int, default=30)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("verify", help="run exact verification suites")
    p.add_argument("--suite", default="all", choices=["identities", "genfun", "routes", "all"])
    p.add_argument("--max-m", type=int, default=10)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("tables", help="CSV tables of special numbers")
    p.add_argument("family", choices=["bernoulli", "bernoulli-poly", "stirling", "noncentral", "norlund"])
    p.add_argument("--max-n", type=int, default=10)
    p.add_argument("--sigma", default="s", help="number or symbol name")
    p.add_argument("--gamma", default="g", help="order, number or symbol name")
    p.add_argument("--x", default="x", help="argument, number or symbol name")
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser("oracle", help="high-precision log Gamma, or W when a spec is given")
    p.add_argument("--spec", dest="specfile", default=None)
    p.add_argument("--z", action="append", required=True)
    p.add_argument("--precision-bits", type=int, default=None)
    p.add_argument("--digits", type=int, default=None)
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse usage errors are parse errors
        return EXIT_PARSE if exc.code else EXIT_OK
    try:
        return args.func(args, out)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except InvfacError as exc:
        hint = ""
        if exc.exit_code == EXIT_RANGE:
            hint = " (rerun with a larger --order)"
        print(f"{type(exc).__name__}: {exc}{hint}", file=sys.stderr)
        return exc.exit_code
    except (TypeError, ValueError) as exc:
        print(f"spec error: {exc}", file=sys.stderr)
        return EXIT_SPEC
