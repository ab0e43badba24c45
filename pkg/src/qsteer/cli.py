"""Command-line front end.

Usage examples:
  qsteer verify --n 16 --tol 1e-12
  qsteer scan --from 3 --to 64 --step 1 --format csv
  qsteer scan --from 1000 --to 1000000000000 --geometric 1000 --mode structured --format json
  qsteer collapse --n 4 --i 1 --target tilde-minus
  qsteer trace-distance --n 1000000000000 --method closed

Settings resolve as flag > QSTEER_DENSE_CAP environment variable > --config
file (key=value lines) > built-in defaults. Exit codes: 0 success,
1 verification failure, 2 usage or argument error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import formulas, linalg, states, verify
from .exceptions import DenseCapExceeded, DegenerateDimension, DimensionError, IndexOutOfRange
from .linalg import check_dense_cap
from .steering import project_alpha, steer_structured

DEFAULTS = {"dense_cap": linalg.DENSE_CAP, "tol": verify.VECTOR_TOL}
CONFIG_KEYS = {"dense_cap": int, "tol": float}
DENSE_PRINT_LIMIT = 16


class UsageError(Exception):
    pass


def load_config(path) -> dict:
    out = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip()
        if not sep or key not in CONFIG_KEYS:
            raise UsageError(f"{path}:{lineno}: expected one of {sorted(CONFIG_KEYS)} as key=value")
        try:
            out[key] = CONFIG_KEYS[key](value.strip())
        except ValueError:
            raise UsageError(f"{path}:{lineno}: bad value for {key}: {value.strip()!r}") from None
    return out


def resolve_settings(args, environ=None) -> dict:
    environ = os.environ if environ is None else environ
    settings = dict(DEFAULTS)
    if args.config:
        try:
            settings.update(load_config(args.config))
        except OSError as exc:
            raise UsageError(f"cannot read config file: {exc}") from None
    env_cap = environ.get("QSTEER_DENSE_CAP")
    if env_cap:
        try:
            settings["dense_cap"] = int(env_cap)
        except ValueError:
            raise UsageError(f"QSTEER_DENSE_CAP must be an integer, got {env_cap!r}") from None
    if args.dense_cap is not None:
        settings["dense_cap"] = args.dense_cap
    if getattr(args, "tol", None) is not None:
        settings["tol"] = args.tol
    if settings["dense_cap"] < 2:
        raise UsageError("dense cap must be >= 2")
    return settings


def fmt(x) -> str:
    """Shortest round-trip decimal; empty for missing values."""
    if x is None:
        return ""
    if isinstance(x, int):
        return str(x)
    return repr(float(x))


def _amp(x: float) -> str:
    return "0" if x == 0 else f"{x:.10g}"


def _vec(amps) -> str:
    return "(" + ", ".join(_amp(float(a)) for a in amps) + ")"


def _summary(k: states.StructuredKet) -> str:
    parts = [f"head={k.head!r}"]
    if k.spike_index is not None:
        parts.append(f"spike[{k.spike_index}]={k.spike!r}")
        parts.append(f"tail={k.tail!r} x {k.dim - 2}")
    else:
        parts.append(f"tail={k.tail!r} x {k.dim - 1}")
    return f"structured(n={k.dim}: " + ", ".join(parts) + ")"


# -- commands ----------------------------------------------------------------


def cmd_verify(n, tol, dense_cap, all_i=False, out=sys.stdout) -> int:
    check_dense_cap(n, dense_cap)
    rows = verify.verify_all(n, tol, dense_cap=dense_cap)
    print(f"{'quantity':<22} {'n':>5} {'analytic':>24} {'numeric':>24} {'abs_error':>24}  status", file=out)
    for r in rows:
        print(f"{r.quantity:<22} {r.n:>5} {fmt(r.analytic):>24} {fmt(r.numeric):>24} "
              f"{fmt(r.abs_error):>24}  {r.status}", file=out)
    failed = bool(verify.failures(rows))
    print("", file=out)
    for line in verify.erratum_report(n, dense_cap).lines():
        print(line, file=out)
    if all_i:
        failed |= _check_index_independence(n, tol, dense_cap, rows, out)
    return 1 if failed else 0


def _check_index_independence(n, tol, dense_cap, base_rows, out) -> bool:
    by_i = [base_rows] + [verify.verify_all(n, tol, i=i, dense_cap=dense_cap) for i in range(2, n)]
    failed = False
    print("", file=out)
    print(f"index independence over i = 1..{n - 1}", file=out)
    for k, ref in enumerate(base_rows):
        values = [rows[k].numeric for rows in by_i]
        spread = max(values) - min(values)
        bad = any(rows[k].status == verify.FAIL for rows in by_i) or spread > ref.tolerance
        failed |= bad
        print(f"  {ref.quantity:<22} spread={fmt(spread)} {'fail' if bad else 'pass'}", file=out)
    return failed


def scan_values(n_start, n_end, step=None, geometric=None):
    if n_start < 3:
        raise UsageError(f"degenerate dimension: n must be ≥ 3, got --from {n_start}")
    if n_end < n_start:
        raise UsageError(f"empty range: --to {n_end} < --from {n_start}")
    if geometric is not None:
        factor = Fraction(geometric)
        if factor <= 1:
            raise UsageError("--geometric factor must be > 1")
        values, n = [], n_start
        while n <= n_end:
            values.append(n)
            n = max(n + 1, int(n * factor))
        return values
    step = 1 if step is None else step
    if step < 1:
        raise UsageError("--step must be >= 1")
    return list(range(n_start, n_end + 1, step))


def render(rows, fmt_name) -> str:
    if fmt_name == "json":
        data = [{k: r.as_dict()[k] for k in verify.SCAN_COLUMNS} for r in rows]
        return json.dumps(data, indent=2) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(verify.SCAN_COLUMNS)
    for r in rows:
        d = r.as_dict()
        writer.writerow([fmt(d[k]) for k in verify.SCAN_COLUMNS])
    return buf.getvalue()


def cmd_scan(n_start, n_end, step, geometric, mode, fmt_name, output, dense_cap, out=sys.stdout) -> int:
    values = scan_values(n_start, n_end, step, geometric)
    if mode == "auto":
        mode = "dense" if n_end <= dense_cap else "structured"
    if mode == "dense" and n_end > dense_cap:
        raise UsageError(f"dense mode requested up to n={n_end} beyond the dense cap {dense_cap}; use --mode structured")
    text = render(verify.convergence_scan(values, mode, dense_cap), fmt_name)
    if output and output != "-":
        Path(output).write_text(text, encoding="utf-8", newline="")
    else:
        out.write(text)
    return 0


def cmd_collapse(n, i, target, dense_cap, out=sys.stdout) -> int:
    n = states.check_n(n)
    check_dense_cap(n, dense_cap)
    i = states.check_index(n, i)
    a = states.basis_state(n, i) if target == "plus" else states.alpha_tilde(n, i)
    label = f"alpha_{i}+" if target == "plus" else f"alpha~_{i}-"
    if n <= DENSE_PRINT_LIMIT:
        outcome = project_alpha(states.omega(n, dense_cap), a.to_dense(dense_cap))
        print(f"projecting {label}: {_vec(a.to_dense().amplitudes)}", file=out)
        print(f"probability: {fmt(outcome.probability)}", file=out)
        print(f"collapsed beta state: {_vec(outcome.collapsed.amplitudes)}", file=out)
    else:
        outcome = steer_structured(n, a)
        print(f"projecting {label}: {_summary(a)}", file=out)
        print(f"probability: {fmt(outcome.probability)}", file=out)
        print(f"collapsed beta state: {_summary(outcome.collapsed)}", file=out)
    return 0


def cmd_trace_distance(n, method, dense_cap, out=sys.stdout) -> int:
    n = states.check_n(n, 2)
    if method == "closed":
        d = formulas.trace_distance_closed(n)
    else:
        if n > dense_cap:
            raise UsageError(f"n={n} exceeds the dense cap {dense_cap}; use --method closed")
        d = verify.trace_distance_numeric(
            verify.density_of_set(n, "+", dense_cap), verify.density_of_set(n, "-", dense_cap), dense_cap
        )
    print(fmt(d), file=out)
    return 0


# -- argument parsing --------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--dense-cap", type=int, default=None, help="largest n handled densely")
    common.add_argument("--config", default=None, help="key=value defaults file")

    parser = argparse.ArgumentParser(prog="qsteer", description="Steering-chaos simulation and formula checks.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common], help="check every closed form against the dense oracle")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--all-i", action="store_true", help=argparse.SUPPRESS)

    p = sub.add_parser("scan", parents=[common], help="emit convergence data over a range of n")
    p.add_argument("--from", dest="n_start", type=int, required=True)
    p.add_argument("--to", dest="n_end", type=int, required=True)
    prog = p.add_mutually_exclusive_group()
    prog.add_argument("--step", type=int, default=None)
    prog.add_argument("--geometric", default=None, help="multiplicative factor > 1")
    p.add_argument("--mode", choices=("auto", "dense", "structured"), default="auto")
    p.add_argument("--format", dest="fmt", choices=("csv", "json"), default="csv")
    p.add_argument("--output", default=None, help="file path (default: stdout)")

    p = sub.add_parser("collapse", parents=[common], help="project alpha and show the steered beta state")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--target", choices=("plus", "tilde-minus"), required=True)

    p = sub.add_parser("trace-distance", parents=[common], help="trace distance between the two ensembles")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--method", choices=("closed", "numeric"), default="closed")
    parser.commands = sub.choices
    return parser


def main(argv=None, out=None, environ=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    subparser = parser.commands[args.command]
    try:
        settings = resolve_settings(args, environ)
        cap = settings["dense_cap"]
        if args.command == "verify":
            states.check_n(args.n)
            return cmd_verify(args.n, settings["tol"], cap, args.all_i, out)
        if args.command == "scan":
            return cmd_scan(args.n_start, args.n_end, args.step, args.geometric, args.mode,
                            args.fmt, args.output, cap, out)
        if args.command == "collapse":
            return cmd_collapse(args.n, args.i, args.target, cap, out)
        return cmd_trace_distance(args.n, args.method, cap, out)
    except (UsageError, DegenerateDimension, IndexOutOfRange, DenseCapExceeded, DimensionError, ValueError) as exc:
        subparser.print_usage(sys.stderr)
        print(f"{subparser.prog}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
