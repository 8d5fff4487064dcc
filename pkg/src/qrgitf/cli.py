"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 scaling fit below the
r^2 threshold, 64 usage error, 74 output file could not be written.
"""
from __future__ import annotations

import argparse
import io
import json
import sys
from pathlib import Path

from .errors import QRGError
from .measures.closed import UNITS, MeasureId, closed_form
from .rgflow import flow
from .scaling import DEFAULT_GRID, DEFAULT_STEPS, GridSpec, fit_scaling, scaling_points, sweep
from .verify import run_all

EXIT_OK, EXIT_VERIFY, EXIT_FIT, EXIT_USAGE, EXIT_IO = 0, 1, 2, 64, 74
R2_THRESHOLD = 0.999
CHSH_CONVENTION = "horodecki"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def fmt(x):
    return format(float(x), ".9g")


def parse_steps(text):
    """'a..b' (inclusive), 'n', or a comma list; must be non-empty and ascending."""
    text = str(text).strip()
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            steps = list(range(int(lo), int(hi) + 1))
        else:
            steps = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"cannot parse steps {text!r}") from None
    if not steps or any(s < 0 for s in steps) or any(b <= a for a, b in zip(steps, steps[1:])):
        raise UsageError(f"steps must be a non-empty ascending list of non-negative integers, got {text!r}")
    return steps


def parse_measures(text):
    if str(text).lower() == "all":
        return list(MeasureId)
    try:
        return [MeasureId.parse(text)]
    except QRGError as exc:
        raise UsageError(str(exc)) from None


def _option(args, config, key, default=None):
    val = getattr(args, key, None)
    if val is not None:
        return val
    return config.get(key, config.get(key.replace("_", "-"), default))


def _write(path, text):
    if path is None or str(path) == "-":
        sys.stdout.write(text)
        return
    Path(path).write_text(text, encoding="utf-8", newline="\n")


def sweep_rows(measures, grid, steps):
    rows = []
    g = grid.values()
    for m in measures:
        for n in steps:
            res = sweep(m, grid, n)
            for gi, v, d in zip(g, res.values, res.derivative):
                rows.append((gi, n, m.value, v, d))
    return rows


def render_sweep_csv(rows):
    buf = io.StringIO()
    buf.write("g,step,measure,value,dvalue_dg\n")
    for g, n, m, v, d in rows:
        buf.write(f"{fmt(g)},{n},{m},{fmt(v)},{fmt(d)}\n")
    return buf.getvalue()


def render_sweep_json(rows):
    records = [
        {"g": float(fmt(g)), "step": n, "measure": m, "value": float(fmt(v)), "dvalue_dg": float(fmt(d))}
        for g, n, m, v, d in rows
    ]
    return json.dumps({"chsh_convention": CHSH_CONVENTION, "rows": records}, indent=1) + "\n"


def scaling_payload(measure, fit):
    return {
        "measure": measure.value,
        "points": [
            {"n": p.n, "N": p.N, "g_ext": float(fmt(p.g_ext)), "abs_deriv": float(fmt(p.abs_deriv))}
            for p in fit.points
        ],
        "theta": round(fit.theta, 6),
        "intercept": round(fit.intercept, 6),
        "r_squared": round(fit.r_squared, 6),
        "chsh_convention": CHSH_CONVENTION,
    }


def cmd_measure(args, config):
    (measure,) = parse_measures(_option(args, config, "measure"))
    g = float(_option(args, config, "g", 0.0))
    n = int(_option(args, config, "steps", 0))
    fc = flow(g, n)
    value = closed_form(measure, fc)
    print(
        f"measure={measure.value} g={fmt(g)} n={n} log_g={fmt(fc.log_g)} "
        f"saturated={fc.saturated} value={fmt(value)} units={UNITS[measure]}"
    )
    return EXIT_OK


def cmd_sweep(args, config):
    measures = parse_measures(_option(args, config, "measure", "all"))
    grid = GridSpec(
        float(_option(args, config, "g_min", DEFAULT_GRID.g_min)),
        float(_option(args, config, "g_max", DEFAULT_GRID.g_max)),
        int(_option(args, config, "points", DEFAULT_GRID.points)),
    )
    steps = parse_steps(_option(args, config, "steps", "0..2"))
    rows = sweep_rows(measures, grid, steps)
    fmt_name = _option(args, config, "format", "csv")
    text = render_sweep_json(rows) if fmt_name == "json" else render_sweep_csv(rows)
    _write(_option(args, config, "out"), text)
    return EXIT_OK


def cmd_scaling(args, config):
    (measure,) = parse_measures(_option(args, config, "measure"))
    steps_opt = _option(args, config, "steps")
    steps = parse_steps(steps_opt) if steps_opt is not None else list(DEFAULT_STEPS)
    fit = fit_scaling(scaling_points(measure, steps))
    payload = scaling_payload(measure, fit)
    _write(_option(args, config, "out"), json.dumps(payload, indent=2) + "\n")
    if fit.r_squared < R2_THRESHOLD:
        print(f"fit quality r^2={fit.r_squared:.6f} below {R2_THRESHOLD}", file=sys.stderr)
        return EXIT_FIT
    return EXIT_OK


def cmd_verify(args, config):
    tol = _option(args, config, "tol")
    checks = run_all(tol=None if tol is None else float(tol))
    failed = [c for c in checks if not c.passed]
    for c in failed:
        print(f"FAIL {c.name} g={fmt(c.g)} |delta|={c.delta:.3e} tol={c.tol:.1e}")
    print(f"{len(checks) - len(failed)}/{len(checks)} checks passed")
    return EXIT_VERIFY if failed else EXIT_OK


def build_parser():
    p = _Parser(prog="qrgitf", description="RG flow of the transverse-field Ising chain and its correlation measures.")
    p.add_argument("--config", help="JSON file with option values; command-line flags take precedence")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    m = sub.add_parser("measure", help="evaluate one closed-form measure")
    m.add_argument("--measure")
    m.add_argument("--g", type=float)
    m.add_argument("--steps", type=int)
    m.set_defaults(func=cmd_measure)

    s = sub.add_parser("sweep", help="measure and dM/dg on a field grid (CSV)")
    s.add_argument("--measure")
    s.add_argument("--g-min", dest="g_min", type=float)
    s.add_argument("--g-max", dest="g_max", type=float)
    s.add_argument("--points", type=int)
    s.add_argument("--steps")
    s.add_argument("--format", choices=("csv", "json"))
    s.add_argument("--out")
    s.set_defaults(func=cmd_sweep)

    c = sub.add_parser("scaling", help="fit |dM/dg|_ext ~ N^theta (JSON)")
    c.add_argument("--measure")
    c.add_argument("--steps")
    c.add_argument("--out")
    c.set_defaults(func=cmd_scaling)

    v = sub.add_parser("verify", help="closed forms vs oracles and the projection check")
    v.add_argument("--tol", type=float)
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    config = {}
    if args.config:
        try:
            config = json.loads(Path(args.config).read_text(encoding="utf-8"))
        except (OSError, ValueError) as exc:
            print(f"qrgitf: cannot read config: {exc}", file=sys.stderr)
            return EXIT_USAGE
    try:
        if args.command in ("measure", "scaling") and _option(args, config, "measure") is None:
            raise UsageError("--measure is required")
        return args.func(args, config)
    except UsageError as exc:
        print(f"qrgitf: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except QRGError as exc:
        print(f"qrgitf: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"qrgitf: cannot write output: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
