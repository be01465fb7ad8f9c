"""Command-line front end.

Examples::

    hadamard verify --ineq thm7 --f "x+y" --g "sqrt(x*y)" --rect 0,1,0,1 --s 0.5 --json
    hadamard sweep --ineq thm9 --f-family const --g-family power-s --g-params 0.5 \\
        --rect 0,1,0,1 --s 0.1:0.5:0.1
    hadamard certify --property convex-on-delta --f "x*y" --rect 0,1,0,1
    hadamard list

Exit codes: 0 satisfied / pass, 1 violated / fail, 2 usage error,
3 numerical failure (domain errors, overflow, quadrature non-convergence).
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import math
import sys
from typing import Optional, Sequence

from . import bounds, families
from .convexity import DEFAULT_GRID_N, DEFAULT_LAMBDA_N, DEFAULT_TOL as CERT_TOL, Property, certify
from .errors import DomainError, NumericalFailure, ParseError, UsageError
from .expr import compile_expr
from .quad import Interval, Rect

EXIT_OK, EXIT_VIOLATED, EXIT_USAGE, EXIT_NUMERICAL = 0, 1, 2, 3

INEQUALITY_SUMMARIES = {
    "eq11": "1-D Hadamard chain f(mid) <= mean f <= endpoint average",
    "eq12": "1-D product bound, f convex nonneg, g s-convex (--s)",
    "eq13": "1-D product bound, f s1-convex, g s2-convex (--s1, --s2)",
    "eq14": "1-D midpoint product bound, f convex nonneg, g s-convex (--s)",
    "eq15": "2-D Hadamard chain for f convex on the co-ordinates",
    "eq16": "product mean <= L/9 + M/18 + N/36",
    "eq17": "4 f(mid)g(mid) - mean <= 5L/36 + 7M/36 + 2N/9",
    "thm7": "product mean, f co-ordinated convex, g co-ordinated s-convex (--s)",
    "thm8": "product mean, f s1- and g s2-convex on the co-ordinates (--s1, --s2)",
    "thm9": "midpoint product bound (--s, --variant proof|statement)",
    "thm10": "corner-weighted kernel bound for co-ordinated convex f, g",
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# --------------------------------------------------------------------------
# Flag parsing helpers
# --------------------------------------------------------------------------

def parse_numbers(text: str, count: Optional[int] = None, what: str = "value") -> tuple[float, ...]:
    try:
        values = tuple(float(part) for part in text.split(","))
    except ValueError:
        raise UsageError(f"cannot parse {what} {text!r}") from None
    if count is not None and len(values) != count:
        raise UsageError(f"{what} needs {count} comma-separated numbers, got {text!r}")
    if not all(math.isfinite(v) for v in values):
        raise UsageError(f"{what} must be finite, got {text!r}")
    return values


def parse_rect(text: str) -> Rect:
    return Rect(*parse_numbers(text, 4, "rect"))


def parse_interval(text: str) -> Interval:
    return Interval(*parse_numbers(text, 2, "interval"))


def parse_range(text: str) -> list[float]:
    """``lo:hi:step`` (inclusive of lo, and of hi on an exact multiple) or a single number."""
    parts = text.split(":")
    if len(parts) == 1:
        return [parse_numbers(text, 1, "parameter")[0]]
    if len(parts) != 3:
        raise UsageError(f"range must be lo:hi:step, got {text!r}")
    lo, hi, step = (parse_numbers(p, 1, "range")[0] for p in parts)
    if step <= 0 or hi < lo:
        raise UsageError(f"range needs step > 0 and hi >= lo, got {text!r}")
    ratio = (hi - lo) / step
    count = math.floor(ratio + 1e-12)
    values = [lo + k * step for k in range(count + 1)]
    if abs(ratio - round(ratio)) <= 1e-12:
        values[-1] = hi
    return values


def _function(args, which: str):
    expr = getattr(args, which)
    family = getattr(args, f"{which}_family")
    params = getattr(args, f"{which}_params")
    if expr is not None and family is not None:
        raise UsageError(f"give either --{which} or --{which}-family, not both")
    if family is not None:
        values = parse_numbers(params, what=f"--{which}-params") if params else None
        return families.instantiate(family, values)
    if params is not None:
        raise UsageError(f"--{which}-params needs --{which}-family")
    if expr is None:
        return None
    return compile_expr(expr)


def _domain(args, one_d: bool):
    if args.rect is not None and args.interval is not None:
        raise UsageError("give either --rect or --interval, not both")
    if one_d:
        if args.interval is None:
            raise UsageError("this check needs --interval lo,hi")
        return parse_interval(args.interval)
    if args.rect is None:
        raise UsageError("this check needs --rect a,b,c,d")
    return parse_rect(args.rect)


# --------------------------------------------------------------------------
# Output
# --------------------------------------------------------------------------

def _fmt(value) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _report_text(rep: bounds.InequalityReport, indent: str = "") -> str:
    lines = [f"{indent}inequality: {rep.inequality}"]
    if rep.params:
        lines.append(indent + "params: " + ", ".join(f"{k}={_fmt(v)}" for k, v in rep.params.items()))
    if rep.variant:
        lines.append(f"{indent}variant: {rep.variant}")
    for key in ("lhs", "rhs", "margin", "quad_error"):
        lines.append(f"{indent}{key}: {_fmt(getattr(rep, key))}")
    lines.append(f"{indent}satisfied: {'yes' if rep.satisfied else 'NO'}")
    lines.append(f"{indent}tol: {_fmt(rep.tol)}  quad_tol: {_fmt(rep.quad_tol)}")
    if rep.variants:
        lines.append(f"{indent}rhs (proof): {_fmt(rep.variants['proof'])}")
        lines.append(f"{indent}rhs (statement): {_fmt(rep.variants['statement'])}")
        if rep.variants["discrepancy"]:
            lines.append(f"{indent}note: the two coefficient variants differ beyond tolerance")
    for link in rep.links:
        lines.append(f"{indent}link:")
        lines.append(_report_text(link, indent + "  "))
    return "\n".join(lines)


def _certificate_text(cert) -> str:
    lines = [f"property: {cert.prop.value}"]
    if cert.s is not None:
        lines.append(f"s: {_fmt(cert.s)}")
    lines.append(f"samples_checked: {cert.samples_checked}")
    if cert.passed:
        lines.append("status: pass (no violation found at the sampled resolution)")
    else:
        w = cert.witness
        lines.append("status: FAIL")
        lines.append("witness points: " + ", ".join(str(p) for p in w.points))
        lines.append("witness weights: " + ", ".join(_fmt(v) for v in w.weights))
        lines.append(f"lhs: {_fmt(w.lhs)}  rhs: {_fmt(w.rhs)}  violation: {_fmt(w.violation)}")
    return "\n".join(lines)


def _emit(text: str, path: Optional[str], out) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if path:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        out.write(text)


def _format(args, default: str) -> str:
    chosen = [name for name in ("json", "csv", "text") if getattr(args, name, False)]
    if len(chosen) > 1:
        raise UsageError("choose exactly one output format")
    return chosen[0] if chosen else default


SWEEP_PARAMS = ("s", "s1", "s2")


def _csv_rows(reports: list[bounds.InequalityReport], param_names: Sequence[str]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([*param_names, "lhs", "rhs", "margin", "satisfied", "err"])
    for rep in reports:
        writer.writerow([
            *(_fmt(rep.params.get(name, "")) for name in param_names),
            _fmt(rep.lhs), _fmt(rep.rhs), _fmt(rep.margin), "true" if rep.satisfied else "false",
            _fmt(rep.quad_error),
        ])
    return buf.getvalue()


# --------------------------------------------------------------------------
# Commands
# --------------------------------------------------------------------------

def _evaluate(args, s=None, s1=None, s2=None) -> bounds.InequalityReport:
    f = _function(args, "f")
    g = _function(args, "g")
    if f is None:
        raise UsageError("--f or --f-family is required")
    domain = _domain(args, args.ineq in bounds.ONE_D)
    return bounds.evaluate(
        args.ineq, f, g, domain, s=s, s1=s1, s2=s2, variant=args.variant,
        tol=args.tol, quad_tol=args.quad_tol,
    )


def _cmd_verify(args, out) -> int:
    s = parse_range(args.s)[0] if args.s else None
    s1 = parse_range(args.s1)[0] if args.s1 else None
    s2 = parse_range(args.s2)[0] if args.s2 else None
    rep = _evaluate(args, s, s1, s2)
    fmt = _format(args, "text")
    if fmt == "json":
        text = json.dumps(rep.to_dict(), indent=2)
    elif fmt == "csv":
        names = [n for n in SWEEP_PARAMS if n in rep.params]
        text = _csv_rows([rep], names)
    else:
        text = _report_text(rep)
    _emit(text, args.output, out)
    return EXIT_OK if rep.satisfied else EXIT_VIOLATED


def _cmd_sweep(args, out) -> int:
    grids = {name: parse_range(getattr(args, name)) for name in SWEEP_PARAMS if getattr(args, name)}
    names = list(grids)
    combos = list(itertools.product(*(grids[n] for n in names))) if names else [()]
    reports = [_evaluate(args, **dict(zip(names, combo))) for combo in combos]
    fmt = _format(args, "csv")
    if fmt == "json":
        text = json.dumps([rep.to_dict() for rep in reports], indent=2)
    elif fmt == "csv":
        text = _csv_rows(reports, names)
    else:
        text = "\n\n".join(_report_text(rep) for rep in reports)
    _emit(text, args.output, out)
    return EXIT_OK if all(rep.satisfied for rep in reports) else EXIT_VIOLATED


def _cmd_certify(args, out) -> int:
    try:
        prop = Property(args.property)
    except ValueError:
        raise UsageError(f"unknown property {args.property!r}") from None
    f = _function(args, "f")
    if f is None:
        raise UsageError("--f or --f-family is required")
    s = parse_range(args.s)[0] if args.s else None
    if prop.is_1d:
        domain = _domain(args, True)
        if "y" in f.variables:
            raise UsageError("a one-dimensional property needs a function of x only")
        target = f.slice("fix-y", 0.0)
    else:
        domain = _domain(args, False)
        target = f
    cert = certify(target, domain, prop, s, grid_n=args.grid_n, lambda_n=args.lambda_n, tol=args.tol)
    fmt = _format(args, "text")
    text = json.dumps(cert.to_dict(), indent=2) if fmt == "json" else _certificate_text(cert)
    _emit(text, args.output, out)
    return EXIT_OK if cert.passed else EXIT_VIOLATED


def _cmd_list(args, out) -> int:
    fams = families.list_families()
    if _format(args, "text") == "json":
        data = {
            "inequalities": dict(INEQUALITY_SUMMARIES),
            "families": [
                {
                    "name": fam.name,
                    "formula": fam.formula,
                    "params": [{"name": p.name, "lo": p.lo, "hi": p.hi, "default": p.default} for p in fam.params],
                    "declared": [
                        {"property": d.prop.value, "holds": d.holds, "s_max": d.s_max} for d in fam.declared()
                    ],
                }
                for fam in fams
            ],
        }
        text = json.dumps(data, indent=2)
    else:
        lines = ["inequalities:"]
        lines += [f"  {name:<6} {summary}" for name, summary in INEQUALITY_SUMMARIES.items()]
        lines.append("families (declared on [0,2]^2, default parameters):")
        for fam in fams:
            params = ", ".join(f"{p.name}={p.default!r}" for p in fam.params) or "-"
            decls = ", ".join(
                (d.prop.value + (f"(s<={d.s_max!r})" if d.s_max is not None else "")) if d.holds
                else "not " + d.prop.value
                for d in fam.declared()
            )
            lines.append(f"  {fam.name:<10} {fam.formula:<26} params: {params}")
            lines.append(f"  {'':<10} {decls}")
        text = "\n".join(lines)
    _emit(text, args.output, out)
    return EXIT_OK


def _add_output(p) -> None:
    p.add_argument("--json", action="store_true", help="emit JSON")
    p.add_argument("--csv", action="store_true", help="emit CSV")
    p.add_argument("--text", action="store_true", help="emit human-readable text")
    p.add_argument("--output", "-o", help="write to this path instead of stdout")


def _add_function(p, which: str) -> None:
    p.add_argument(f"--{which}", help=f"expression for {which} in x and y")
    p.add_argument(f"--{which}-family", dest=f"{which}_family", help=f"builtin family name for {which}")
    p.add_argument(f"--{which}-params", dest=f"{which}_params", help="comma-separated family parameters")


def _add_domain(p) -> None:
    p.add_argument("--rect", help="rectangle a,b,c,d")
    p.add_argument("--interval", help="interval lo,hi (1-D checks)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hadamard", description="Numerically verify Hadamard-type product inequalities.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    for name in ("verify", "sweep"):
        p = sub.add_parser(name, help="evaluate one inequality" if name == "verify" else "evaluate over a parameter grid")
        p.add_argument("--ineq", required=True, choices=bounds.INEQUALITIES)
        _add_function(p, "f")
        _add_function(p, "g")
        _add_domain(p)
        rng = " (lo:hi:step range allowed)" if name == "sweep" else ""
        p.add_argument("--s", help="s parameter" + rng)
        p.add_argument("--s1", help="s1 parameter" + rng)
        p.add_argument("--s2", help="s2 parameter" + rng)
        p.add_argument("--variant", choices=bounds.THM9_VARIANTS, default="proof")
        p.add_argument("--tol", type=float, default=bounds.DEFAULT_TOL)
        p.add_argument("--quad-tol", dest="quad_tol", type=float, default=bounds.DEFAULT_QUAD_TOL)
        _add_output(p)

    p = sub.add_parser("certify", help="sample a convexity hypothesis")
    p.add_argument("--property", required=True, choices=[prop.value for prop in Property])
    _add_function(p, "f")
    _add_domain(p)
    p.add_argument("--s", help="s for s-convexity properties")
    p.add_argument("--grid-n", dest="grid_n", type=int, default=DEFAULT_GRID_N)
    p.add_argument("--lambda-n", dest="lambda_n", type=int, default=DEFAULT_LAMBDA_N)
    p.add_argument("--tol", type=float, default=CERT_TOL)
    _add_output(p)

    p = sub.add_parser("list", help="list inequalities and builtin families")
    _add_output(p)
    return parser


# Flags whose values may legitimately start with "-" (negative bounds, "-x^2").
_VALUE_FLAGS = {"--f", "--g", "--f-params", "--g-params", "--rect", "--interval", "--s", "--s1", "--s2"}


def _attach_negative_values(argv: Sequence[str]) -> list[str]:
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        nxt = argv[i + 1] if i + 1 < len(argv) else None
        if tok in _VALUE_FLAGS and nxt is not None and nxt.startswith("-") and not nxt.startswith("--"):
            out.append(f"{tok}={nxt}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


_COMMANDS = {"verify": _cmd_verify, "sweep": _cmd_sweep, "certify": _cmd_certify, "list": _cmd_list}


def run(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    """Run the CLI and return the exit code; never raises on bad input."""
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        argv = sys.argv[1:] if argv is None else list(argv)
        args = build_parser().parse_args(_attach_negative_values(argv))
        return _COMMANDS[args.command](args, out)
    except (UsageError, ParseError) as exc:
        err.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except (DomainError, NumericalFailure) as exc:
        err.write(f"numerical failure: {exc}\n")
        return EXIT_NUMERICAL
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    except OSError as exc:
        err.write(f"usage error: {exc}\n")
        return EXIT_USAGE


def main() -> None:
    raise SystemExit(run())
