"""Command-line interface.

Subcommands::

    density {interval-hitting,jump,ladder,renewal,potential,overshoot,rogozin,avoid-zero}
    prob {avoidance,hit-zero-first}
    validate {wh,mass,mc,all}

Records are written as CSV (``abscissa,value``) or JSON
(``{command, params, grid, values, metadata}``) with 17 significant
digits.  Exit status is 0 on success, 1 when a validation check fails and
2 on usage or domain errors.  A relative ``--output`` path is placed in
``$STABLEPASSAGE_OUTPUT_DIR`` when that variable is set.
"""

import argparse
from decimal import Decimal, InvalidOperation
import math
import os
import sys
import time

from . import __version__
from .errors import DomainError, NonConvergenceError
from .hitting import (
    hit_zero_before_up_prob,
    interval_avoidance_prob,
    interval_hitting_density,
    killed_potential_density,
    passage_density_avoiding_zero,
    rogozin_overshoot_density,
    xi_overshoot_density_large,
    xi_overshoot_density_small,
)
from .lamperti import jump_density
from .stable import validate_params
from .validation import run_suite
from .wiener_hopf import ladder_levy_density, renewal_density

OUTPUT_DIR_ENV = "STABLEPASSAGE_OUTPUT_DIR"
DENSITY_TARGETS = (
    "interval-hitting",
    "jump",
    "ladder",
    "renewal",
    "potential",
    "overshoot",
    "rogozin",
    "avoid-zero",
)


class UsageError(Exception):
    pass


def parse_grid(text):
    """``lo:hi:step`` -> list of floats from lo in steps of step, stopping
    before values beyond hi.  Decimal arithmetic keeps nodes such as 0 exact."""
    try:
        lo, hi, step = (Decimal(t) for t in text.split(":"))
    except (ValueError, InvalidOperation):
        raise UsageError(f"grid must be lo:hi:step, got {text!r}")
    if step <= 0:
        raise UsageError("grid step must be positive")
    if hi < lo:
        raise UsageError("grid needs lo <= hi")
    n = int((hi - lo) / step) + 1
    return [float(lo + k * step) for k in range(n)]


def fmt(v):
    return format(float(v), ".17g")


def _json(obj):
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if obj is None:
        return "null"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return fmt(obj) if math.isfinite(obj) else "null"
    if isinstance(obj, str):
        import json

        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{_json(str(k))}: {_json(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_json(v) for v in obj) + "]"
    raise TypeError(f"cannot serialise {type(obj)}")


def render(record, fmt_name):
    if fmt_name == "csv":
        lines = ["abscissa,value"]
        lines += [f"{fmt(g)},{fmt(v)}" for g, v in zip(record["grid"], record["values"])]
        return "\n".join(lines) + "\n"
    return _json(record) + "\n"


def _record(command, params, grid, values, extra=None):
    meta = {"version": __version__, "params": dict(params), "tolerance": 1e-10}
    if extra:
        meta.update(extra)
    return {
        "command": command,
        "params": dict(params),
        "grid": list(grid),
        "values": [float(v) for v in values],
        "metadata": meta,
    }


def _need(args, name):
    v = getattr(args, name)
    if v is None:
        raise UsageError(f"--{name} is required for this target")
    return v


def _density_fn(args):
    p = validate_params(args.alpha, args.rho)
    t = args.target
    if t == "interval-hitting":
        x = _need(args, "x")
        return p, {"x": x}, lambda y: interval_hitting_density(p, x, y)
    if t == "jump":
        return p, {}, lambda y: jump_density(p, y)
    if t in ("ladder", "renewal"):
        side = args.side
        f = ladder_levy_density if t == "ladder" else renewal_density
        return p, {"side": side}, lambda y: f(p, side, y)
    if t == "potential":
        x = _need(args, "x")
        return p, {"x": x}, lambda y: killed_potential_density(p, x, y)
    if t == "overshoot":
        a = _need(args, "level")
        f = xi_overshoot_density_large if p.alpha > 1 else xi_overshoot_density_small
        return p, {"level": a}, lambda w: f(p, a, w)
    if t == "rogozin":
        x = _need(args, "x")
        return p, {"x": x}, lambda y: rogozin_overshoot_density(p, x, y)
    if t == "avoid-zero":
        x = _need(args, "x")
        return p, {"x": x}, lambda y: passage_density_avoiding_zero(p, x, y)
    raise UsageError(f"unknown density target {t!r}")


def cmd_density(args):
    grid = parse_grid(args.grid)
    p, extra, f = _density_fn(args)
    values = [f(y) for y in grid]
    params = {"alpha": p.alpha, "rho": p.rho, **extra}
    return _record(f"density {args.target}", params, grid, values), 0


def cmd_prob(args):
    p = validate_params(args.alpha, args.rho)
    x = args.x
    if args.target == "avoidance":
        v = interval_avoidance_prob(p, x)
    else:
        v = hit_zero_before_up_prob(p, x)
    params = {"alpha": p.alpha, "rho": p.rho, "x": x}
    return _record(f"prob {args.target}", params, [x], [v]), 0


def cmd_validate(args):
    checks = run_suite(args.suite, seed=args.seed, budget=args.budget)
    ok = all(c.passed for c in checks)
    params = {"suite": args.suite, "seed": args.seed, "budget": args.budget}
    rec = _record(
        f"validate {args.suite}",
        params,
        list(range(len(checks))),
        [c.measured for c in checks],
        {"seed": args.seed, "checks": [c.as_dict() for c in checks], "passed": ok},
    )
    return rec, 0 if ok else 1


def build_parser():
    ap = argparse.ArgumentParser(
        prog="stablepassage",
        description="First-passage laws of stable processes: tables, probabilities, self-checks.",
    )
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp, default_format="csv"):
        sp.add_argument("--format", choices=("csv", "json"), default=default_format)
        sp.add_argument("--output", help="output file (default: stdout)")
        sp.add_argument("--timing", action="store_true", help="record runtime in metadata")

    d = sub.add_parser("density", help="tabulate a density on a grid")
    d.add_argument("target", choices=DENSITY_TARGETS)
    d.add_argument("--alpha", type=float, required=True)
    d.add_argument("--rho", type=float, required=True)
    d.add_argument("--x", type=float, help="starting point")
    d.add_argument("--level", type=float, help="passage level a < 0 (overshoot)")
    d.add_argument("--side", choices=("asc", "desc"), default="asc")
    d.add_argument("--grid", required=True, help="lo:hi:step")
    common(d)
    d.set_defaults(handler=cmd_density)

    pr = sub.add_parser("prob", help="evaluate a hitting probability")
    pr.add_argument("target", choices=("avoidance", "hit-zero-first"))
    pr.add_argument("--alpha", type=float, required=True)
    pr.add_argument("--rho", type=float, required=True)
    pr.add_argument("--x", type=float, required=True)
    common(pr)
    pr.set_defaults(handler=cmd_prob)

    v = sub.add_parser("validate", help="run a self-check suite")
    v.add_argument("suite", choices=("wh", "mass", "mc", "all"))
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--budget", choices=("small", "medium", "full"), default="small")
    common(v, "json")
    v.set_defaults(handler=cmd_validate)
    return ap


def _output_path(name):
    if name is None:
        return None
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base and not os.path.isabs(name):
        return os.path.join(base, name)
    return name


def _join_grid(argv):
    # argparse would read a negative lower bound as an option
    out = []
    it = iter(argv)
    for tok in it:
        if tok == "--grid":
            nxt = next(it, None)
            out.append("--grid" if nxt is None else f"--grid={nxt}")
        else:
            out.append(tok)
    return out


def main(argv=None):
    argv = _join_grid(sys.argv[1:] if argv is None else list(argv))
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    try:
        record, status = args.handler(args)
    except (DomainError, UsageError, NonConvergenceError) as exc:
        kind = "usage" if isinstance(exc, UsageError) else type(exc).__name__
        msg = " ".join(str(exc).split())
        print(f"error: {kind}: {msg}", file=sys.stderr)
        return 2
    if args.timing:
        record["metadata"]["runtime_seconds"] = time.perf_counter() - start
    text = render(record, args.format)
    path = _output_path(args.output)
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
