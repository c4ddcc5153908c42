"""Command-line front end.

Exit codes: 0 when every check passes, 1 when a mathematical check fails,
2 for usage or domain errors.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from bohrkit import harness, radii
from bohrkit import series as ps
from bohrkit.exceptions import BohrError
from bohrkit.harness import _round15, fmt

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

# which family parameterizes each scan target
SCAN_TARGETS = {
    "xi_a": ("classical", "lemma_B", "derivative"),
    "g_a": ("odd_majorization", "odd_derivative"),
    "mobius_fa": ("classical", "intro_mobius"),
}
SCAN_CSV_SCHEMA = "# bohrkit scan csv v1: a,threshold (final row: limit)"


class UsageError(Exception):
    pass


def _params(items):
    out = {}
    for item in items or []:
        key, sep, value = item.partition("=")
        if not sep or not key.strip():
            raise UsageError(f"parameter {item!r} is not of the form key=value")
        key = key.strip()
        if key == "coeffs":
            out[key] = [complex(v.strip().replace(" ", "")) for v in value.split(",") if v.strip()]
        elif key in ("m", "horizon"):
            out[key] = int(value)
        else:
            try:
                out[key] = float(value)
            except ValueError:
                raise UsageError(f"parameter {key} needs a real value, got {value!r}") from None
    return out


def parse_grid(text: str):
    """``start:stop:step`` (stop included) or a comma-separated list."""
    text = text.strip()
    try:
        if ":" in text:
            parts = text.split(":")
            if len(parts) != 3:
                raise UsageError(f"grid {text!r} must be start:stop:step")
            start, stop, step = (float(p) for p in parts)
            if step <= 0 or stop < start:
                raise UsageError(f"grid {text!r} needs step > 0 and stop >= start")
            vals = []
            k = 0
            while start + k * step < stop - 1e-12:
                vals.append(round(start + k * step, 12))
                k += 1
            vals.append(stop)
        else:
            vals = [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"grid {text!r} is not numeric") from None
    if not vals or any(not (0.0 <= v < 1.0) for v in vals):
        raise UsageError(f"grid values must lie in [0, 1): {text!r}")
    return vals


def _emit(out, rows, header, mode, schema=None):
    """Print ``rows`` (list of dicts) as json, csv or aligned plain text."""
    if mode == "json":
        out.write(json.dumps(_round15(rows), indent=2) + "\n")
    elif mode == "csv":
        if schema:
            out.write(schema + "\n")
        w = csv.writer(out, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([fmt(row[h]) if isinstance(row[h], float) else row[h] for h in header])
    else:
        for row in rows:
            out.write("  ".join(f"{h}={fmt(row[h]) if isinstance(row[h], float) else row[h]}" for h in header) + "\n")


# ----------------------------------------------------------------- commands


def cmd_radius(args, out):
    params = _params(args.param)
    if args.setting == "lemma1_ratio" and args.file:
        params["coeffs"] = list(ps.load(args.file).coeffs)
    setting = radii.RadiusSetting(args.setting, params)
    res = radii.compute(setting)
    row = res.to_dict()
    _emit(out, [row], ["setting", "closed_form", "bisected", "discrepancy", "iterations"], args.output)
    return EXIT_OK


def cmd_majorant(args, out):
    f = ps.load(args.file)
    m = ps.majorant_eval(f, args.r)
    row = {
        "r": float(args.r),
        "lower": m.lower,
        "upper": m.upper,
        "certified": m.certified,
        "note": "" if m.certified else "no tail bound",
    }
    _emit(out, [row], ["r", "lower", "upper", "certified", "note"], args.output)
    return EXIT_OK


def cmd_verify(args, out):
    suites = harness.SUITES if args.suite == "all" else (args.suite,)
    reports = [
        harness.run_suite(s, args.seed, args.order, args.samples, args.inject_radius_offset) for s in suites
    ]
    if args.output == "json":
        out.write(harness.reports_to_json(reports) + "\n")
    elif args.output == "csv":
        out.write(harness.reports_to_csv(reports))
    else:
        for rep in reports:
            out.write(rep.summary() + "\n")
            for line in rep.failures()[:10]:
                out.write(f"    {line}\n")
        ok = all(r.verdict == "pass" for r in reports)
        out.write(f"overall: {'pass' if ok else 'fail'}\n")
    return EXIT_OK if all(r.verdict == "pass" for r in reports) else EXIT_FAIL


def cmd_scan(args, out):
    allowed = SCAN_TARGETS.get(args.family)
    if allowed is None:
        raise UsageError(f"unknown scan family {args.family!r}; expected one of {tuple(SCAN_TARGETS)}")
    if args.target not in allowed:
        raise UsageError(f"family {args.family} does not parameterize target {args.target!r}; use one of {allowed}")
    grid = parse_grid(args.grid)
    rows = [{"a": a, "threshold": radii.family_threshold(a, args.target)} for a in grid]
    if args.target == "intro_mobius":
        limit = 1.0
        ok = all(b["threshold"] > a["threshold"] for a, b in zip(rows, rows[1:]))
    else:
        limit = radii.closed_form(radii.RadiusSetting(args.target))
        ok = all(b["threshold"] < a["threshold"] for a, b in zip(rows, rows[1:]))
        ok = ok and all(r["threshold"] > limit for r in rows)
    rows.append({"a": "limit", "threshold": limit})
    _emit(out, rows, ["a", "threshold"], args.output if args.output != "plain" else "csv", SCAN_CSV_SCHEMA)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_counterexample(args, out):
    params = _params(args.param)
    if args.name == "remark-f0" and "r" in params:
        params = {"rs": (params.pop("r"),)}
    if args.name == "local-univalence" and "alpha1" in params:
        params = {"alpha1": params["alpha1"]}
    ce = harness.counterexample(args.name, **params)
    if args.output == "json":
        out.write(json.dumps(_round15(ce.to_dict()), indent=2) + "\n")
    else:
        out.write(f"{ce.name}: {ce.description}\n")
        for k, v in ce.values.items():
            if k == "rows":
                for row in v:
                    out.write("  " + "  ".join(f"{kk}={fmt(vv)}" for kk, vv in row.items()) + "\n")
            else:
                out.write(f"  {k} = {v}\n")
        out.write(f"violation {'confirmed' if ce.confirmed else 'NOT confirmed'}\n")
    return EXIT_OK if ce.confirmed else EXIT_FAIL


# ------------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="bohrkit", description="Bohr-type radii, majorant series and verification suites")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--output", choices=("plain", "json", "csv"), default="plain")

    sp = sub.add_parser("radius", help="closed-form and bisected value of a radius")
    sp.add_argument("--setting", required=True, choices=radii.SETTINGS)
    sp.add_argument("--param", action="append", metavar="KEY=VALUE", help="a0, alpha, R2, delta, coeffs, m")
    sp.add_argument("--file", help="coefficient file for lemma1_ratio")
    common(sp)
    sp.set_defaults(func=cmd_radius)

    sp = sub.add_parser("majorant", help="majorant enclosure of a coefficient file")
    sp.add_argument("--file", required=True)
    sp.add_argument("--r", type=float, required=True)
    common(sp)
    sp.set_defaults(func=cmd_majorant)

    sp = sub.add_parser("verify", help="run verification suites")
    sp.add_argument("--suite", required=True, choices=harness.SUITES + ("all",))
    sp.add_argument("--seed", type=int, default=42)
    sp.add_argument("--order", type=int, default=256)
    sp.add_argument("--samples", type=int, default=100)
    sp.add_argument("--inject-radius-offset", type=float, default=0.0, help=argparse.SUPPRESS)
    common(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("scan", help="family thresholds over a parameter grid")
    sp.add_argument("--family", required=True)
    sp.add_argument("--target", required=True)
    sp.add_argument("--grid", default="0:0.999:0.1")
    common(sp)
    sp.set_defaults(func=cmd_scan)

    sp = sub.add_parser("counterexample", help="documented counterexamples")
    sp.add_argument("--name", required=True, choices=harness.COUNTEREXAMPLES)
    sp.add_argument("--param", action="append", metavar="KEY=VALUE")
    common(sp)
    sp.set_defaults(func=cmd_counterexample)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    buf = io.StringIO()
    try:
        code = args.func(args, buf)
    except (BohrError, UsageError, ValueError, TypeError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    out.write(buf.getvalue())
    return code


if __name__ == "__main__":
    sys.exit(main())
