"""Command-line front end: ``table``, ``sweep``, ``crosscheck`` and ``eval``.

Exit status: 0 success, 1 a numerical acceptance check failed, 2 usage
error, 3 domain or convergence error (the structured error name is
printed on stderr).
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import json
import math
import re
import sys
from dataclasses import dataclass

from . import __version__
from .asym import Variant
from .errors import HypergeometricError
from .hyp import HypParams, SeriesControl, f11, f21, pfq_series
from .psi1 import DispatchConfig, Psi1Params, Psi1Point, psi1, psi1_leading_asym
from .verify import (
    CrossRow,
    SweepSpec,
    TableSpec,
    run_crosscheck,
    run_sweep,
    run_table,
)

EXIT_OK, EXIT_ACCEPTANCE, EXIT_USAGE, EXIT_DOMAIN = 0, 1, 2, 3


class UsageError(Exception):
    pass


# --- parsing and formatting --------------------------------------------------

_COMPLEX = re.compile(r"^\s*[-+]?[\d.eE+-]*[ij]?\s*$")


def parse_complex(text) -> complex:
    """Parse ``"re"``, ``"re+imi"``, ``"imj"`` and similar literals."""
    if isinstance(text, (int, float, complex)):
        return complex(text)
    s = str(text).strip().replace(" ", "")
    if not s or not _COMPLEX.match(s):
        raise UsageError(f"not a complex literal: {text!r}")
    s = s.replace("i", "j")
    try:
        return complex(s)
    except ValueError:
        raise UsageError(f"not a complex literal: {text!r}") from None


def parse_list(text: str) -> list[complex]:
    text = text.strip()
    return [] if not text else [parse_complex(t) for t in text.split(",")]


def fmt(v) -> str:
    """17 significant digits; complex values as ``re+imj``."""
    if isinstance(v, str):
        return v
    if isinstance(v, (int,)) and not isinstance(v, bool):
        return str(v)
    v = complex(v)
    if v.imag == 0:
        return f"{v.real:.17g}"
    return f"{v.real:.17g}{v.imag:+.17g}j"


def _scale_str(v) -> str:
    v = complex(v)
    if v.imag == 0 and v.real == int(v.real):
        return str(int(v.real))
    return fmt(v)


# --- configuration ------------------------------------------------------------


@dataclass(frozen=True)
class RunConfig:
    control: SeriesControl = SeriesControl()
    dispatch: DispatchConfig = DispatchConfig()

    @classmethod
    def load(cls, path=None, tol=None, max_terms=None) -> RunConfig:
        ctrl_fields = {f.name for f in dataclasses.fields(SeriesControl)}
        disp_fields = {f.name for f in dataclasses.fields(DispatchConfig)}
        ctrl, disp = {}, {}
        if path:
            try:
                with open(path, encoding="utf-8") as fh:
                    raw = json.load(fh)
            except (OSError, json.JSONDecodeError) as exc:
                raise UsageError(f"cannot read config {path}: {exc}") from None
            if not isinstance(raw, dict):
                raise UsageError("config file must hold a JSON object")
            for key, value in raw.items():
                if key in ctrl_fields:
                    ctrl[key] = value
                elif key in disp_fields:
                    disp[key] = value
                else:
                    raise UsageError(f"unknown config key {key!r}")
        if tol is not None:
            ctrl["rel_tol"] = tol
        if max_terms is not None:
            ctrl["max_terms"] = max_terms
        try:
            return cls(SeriesControl(**ctrl), DispatchConfig(**disp))
        except (TypeError, ValueError) as exc:
            raise UsageError(f"bad configuration: {exc}") from None


# --- output ------------------------------------------------------------------


def _write_csv(args, comment: str, header, rows) -> None:
    buf = io.StringIO()
    buf.write(f"# humbert {__version__} {comment}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(v) for v in row])
    text = buf.getvalue()
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# --- subcommands -------------------------------------------------------------


def cmd_table(args, cfg: RunConfig) -> int:
    spec = TableSpec.builtin(args.id, args.x)
    rows = run_table(spec, args.method, cfg.control, cfg.dispatch)
    p = spec.params
    comment = (f"table id={spec.table_id} a={fmt(p.a)} b={fmt(p.b)} c={fmt(p.c)} "
               f"c_prime={fmt(p.c_prime)} gamma={fmt(spec.gamma)}")
    header = ["x", "y", "log_psi1", "log_AE", "ratio", "method", "abs_err_est"]
    _write_csv(args, comment, header,
               [(r.x, r.y, r.log_psi1, r.log_ae, r.ratio, r.method, r.abs_err_est) for r in rows])
    failed = [r for r in rows if not r.ok]
    for r in failed:
        print(f"ratio at x={r.x:g} is {r.ratio:.7f}, printed {r.expected}", file=sys.stderr)
    return EXIT_ACCEPTANCE if failed else EXIT_OK


def cmd_sweep(args, cfg: RunConfig) -> int:
    target = Variant(args.target)
    if target is Variant.LARGE_Z_LEADING:
        raise UsageError("large_z_leading has no truncation order; sweep one of the other targets")
    base = SweepSpec.builtin(target)
    params = base.base_params
    if args.params:
        try:
            params = _complexify(json.loads(args.params))
        except json.JSONDecodeError as exc:
            raise UsageError(f"--params is not JSON: {exc}") from None
    scales = base.scale_points
    if args.scales:
        scales = [_parse_scale(v, target) for v in args.scales.split(",")]
    orders = [int(n) for n in args.orders.split(",")] if args.orders else (1, 2, 3)
    try:
        spec = SweepSpec(target, params, tuple(scales), tuple(orders))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    rows = run_sweep(spec)
    header = ["scale", "N", "expansion_value", "oracle_value", "abs_error", "fitted_slope"]
    _write_csv(args, f"sweep target={target} expected_slope_per_N=" + ";".join(
        f"{r.N}:{fmt(r.expected_slope)}" for r in rows[:: len(spec.scale_points)]), header,
        [(_scale_str(r.scale), r.N, r.expansion_value, r.oracle_value, r.abs_error, r.fitted_slope)
         for r in rows])
    failed = {r.N for r in rows if not r.ok}
    for N in sorted(failed):
        print(f"slope for N={N} misses its target by more than 0.5", file=sys.stderr)
    return EXIT_ACCEPTANCE if failed else EXIT_OK


def _parse_scale(text, target):
    v = parse_complex(text)
    if target is Variant.LARGE_LAMBDA:
        return v.real if v.imag == 0 else v
    if v.imag != 0 or v.real != int(v.real) or v.real < 1:
        raise UsageError(f"{target} needs positive integer scales, got {text!r}")
    return int(v.real)


def _complexify(obj):
    if isinstance(obj, dict):
        return {k: _complexify(v) for k, v in obj.items()}
    if isinstance(obj, list):
        return [_complexify(v) for v in obj]
    if isinstance(obj, str):
        return parse_complex(obj)
    if isinstance(obj, (int, float)) and not isinstance(obj, bool):
        return obj
    raise UsageError(f"unexpected parameter value {obj!r}")


def _cross_fields(r: CrossRow):
    p, pt = r.params, r.point
    return (r.index, r.category, p.a, p.b, p.c, p.c_prime, pt.x, pt.y, ";".join(r.methods),
            r.max_discrepancy, r.status)


def cmd_crosscheck(args, cfg: RunConfig) -> int:
    if args.count < 0:
        raise UsageError("--count must be nonnegative")
    rows = run_crosscheck(args.seed, args.count, cfg.control, cfg.dispatch)
    header = ["index", "category", "a", "b", "c", "c_prime", "x", "y", "methods",
              "max_discrepancy", "status"]
    _write_csv(args, f"crosscheck seed={args.seed} count={args.count}", header,
               [_cross_fields(r) for r in rows])
    unpaired = sum(not r.paired and not r.error for r in rows)
    if unpaired:
        print(f"{unpaired} of {len(rows)} points had fewer than two methods accurate enough to compare",
              file=sys.stderr)
    if any(r.error for r in rows):
        return EXIT_DOMAIN
    return EXIT_OK if all(r.ok for r in rows) else EXIT_ACCEPTANCE


def cmd_eval(args, cfg: RunConfig) -> int:
    ratio = None
    if args.function == "psi1":
        if len(args.params) != 4:
            raise UsageError("psi1 takes four parameters: a b c c_prime")
        if args.x is None or args.y is None:
            raise UsageError("psi1 needs --x and --y")
        p = Psi1Params(*(parse_complex(v) for v in args.params))
        pt = Psi1Point(parse_complex(args.x), parse_complex(args.y))
        res = psi1(p, pt, args.method or "auto", cfg.control, cfg.dispatch)
        if p.asym_ok and pt.y.imag == 0 and pt.y.real > 0:
            ratio = res.value.ratio(psi1_leading_asym(p, pt))
    else:
        if args.params:
            raise UsageError("pfq takes --num, --den and --z, not positional parameters")
        if args.z is None:
            raise UsageError("pfq needs --z")
        num, den, z = parse_list(args.num or ""), parse_list(args.den or ""), parse_complex(args.z)
        res = _eval_pfq(num, den, z, args.method or "auto", cfg.control)
    v = res.value
    plain = v.to_complex()
    shown = fmt(plain) if math.isfinite(abs(plain)) else "overflow"
    line = f"{shown} mantissa={fmt(v.mantissa)} exponent={fmt(v.exponent)} method={res.method}"
    if ratio is not None:
        line += f" ratio_AE={fmt(ratio)}"
    print(line)
    return EXIT_OK


def _eval_pfq(num, den, z, method, ctrl):
    if method == "direct":
        return pfq_series(HypParams(num, den), z, ctrl)
    if method != "auto":
        raise UsageError(f"pfq methods are 'auto' and 'direct', got {method!r}")
    if len(num) == 1 and len(den) == 1:
        return f11(num[0], den[0], z, ctrl)
    if len(num) == 2 and len(den) == 1:
        return f21(num[0], num[1], den[0], z, ctrl)
    return pfq_series(HypParams(num, den), z, ctrl)


# --- argument parser ---------------------------------------------------------


def _global_flags(parser, suppress: bool):
    default = argparse.SUPPRESS if suppress else None
    parser.add_argument("--tol", type=float, default=default, help="series relative tolerance")
    parser.add_argument("--max-terms", type=int, default=default, help="series term cap")
    parser.add_argument("--config", default=default, help="JSON file with control/dispatch settings")
    parser.add_argument("--out", default=default, help="write CSV here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="humbert-verify", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"humbert {__version__}")
    _global_flags(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    t = sub.add_parser("table", help="reproduce a printed ratio table")
    _global_flags(t, suppress=True)
    t.add_argument("--id", type=int, choices=(1, 2), required=True)
    t.add_argument("--x", type=float, action="append", help="x value (repeatable)")
    t.add_argument("--method", default="integral")
    t.set_defaults(func=cmd_table)

    s = sub.add_parser("sweep", help="error against scale for an expansion")
    _global_flags(s, suppress=True)
    s.add_argument("--target", choices=[v.value for v in Variant if v is not Variant.LARGE_Z_LEADING],
                   required=True)
    s.add_argument("--params", help="JSON object of base parameters")
    s.add_argument("--scales", help="comma-separated, strictly increasing")
    s.add_argument("--orders", help="comma-separated truncation orders (default 1,2,3)")
    s.set_defaults(func=cmd_sweep)

    c = sub.add_parser("crosscheck", help="random pairwise agreement of Psi1 evaluators")
    _global_flags(c, suppress=True)
    c.add_argument("--seed", type=int, default=1)
    c.add_argument("--count", type=int, default=50)
    c.set_defaults(func=cmd_crosscheck)

    e = sub.add_parser("eval", help="evaluate one value")
    _global_flags(e, suppress=True)
    e.add_argument("function", choices=("psi1", "pfq"))
    e.add_argument("params", nargs="*", help="psi1: a b c c_prime")
    e.add_argument("--x")
    e.add_argument("--y")
    e.add_argument("--z")
    e.add_argument("--num", help="comma-separated numerator parameters")
    e.add_argument("--den", help="comma-separated denominator parameters")
    e.add_argument("--method")
    e.set_defaults(func=cmd_eval)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = RunConfig.load(args.config, args.tol, args.max_terms)
        return args.func(args, cfg)
    except UsageError as exc:
        print(f"humbert-verify: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except HypergeometricError as exc:
        print(f"humbert-verify: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ValueError as exc:
        print(f"humbert-verify: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
