"""Command-line front end.

Verbs: audit, tau, tau-h, hausdorff, interval-tau, embed, geodesic.
Exit codes: 0 success, 1 audit failure, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from pathlib import Path

from . import scenario as sc_mod
from .audits import AuditCase, run_case, shipped_cases
from .core import curve_length_tau, plain
from .diamond_hyperspace import (
    causal_geodesic,
    embed,
    hausdorff_diamonds,
    interpolate_diamonds,
    interval_tau_H,
    tau_H_diamonds,
)
from .errors import TaxicausalError
from .lorentz_hyperspace import tau_H
from .metric_hyperspace import hausdorff, hyperspace_geodesic
from .minkowski_taxi import MinkowskiTaxicab, alt_maximal_curves, event_tau, maximal_segment

KINDS = ("metric-sets", "causal-diamonds", "interp-diamonds", "maximal-segment", "staircase")

# default endpoints per geodesic kind, matching the shipped scenario
DEFAULT_ENDS = {
    "metric-sets": ("A", "B"),
    "causal-diamonds": ("D1", "D2"),
    "interp-diamonds": ("D1", "D2"),
    "maximal-segment": ("e1", "e2"),
    "staircase": ("e1", "e2"),
}


class UsageError(Exception):
    pass


def fmt(v) -> str:
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, (int, float)):
        v = float(v)
        if v == 0:
            v = 0.0  # no "-0"
        return format(v, ".12g")
    if isinstance(v, (tuple, list)):
        return "(" + ", ".join(fmt(x) for x in v) + ")"
    return str(v)


def _lookup(sc, name, *sections):
    if name is None:
        raise UsageError("missing --a/--b argument")
    try:
        section, obj = sc.lookup(name)
    except KeyError:
        raise UsageError(f"unknown name {name!r}") from None
    if sections and section not in sections:
        raise UsageError(f"{name!r} is in {section}, expected one of {', '.join(sections)}")
    return section, obj


def _interval(sc, text):
    if text is None:
        raise UsageError("missing --a/--b argument")
    if text in sc.intervals:
        lo, hi = sc.intervals[text]
    else:
        try:
            lo, hi = (float(v) for v in json.loads(text))
        except (ValueError, TypeError):
            raise UsageError(f"{text!r} is neither an interval name nor [lo, hi]") from None
        if lo > hi:
            raise UsageError(f"interval {text} has lo > hi")
    return sc_mod.interval_center(lo, hi)


# ------------------------------------------------------------------ verbs


def cmd_audit(sc, args, out) -> int:
    seed = sc.audit.seed if args.seed is None else args.seed
    n = sc.audit.samples if args.samples is None else args.samples
    cases = shipped_cases(seed, n)
    cases += [AuditCase(f"table {m.name}", m, list(m.elements)) for m in sc.table_models()]
    reports = [run_case(c, seed) for c in cases]
    ok = all(r.passed for r in reports)
    for r in reports:
        pairs = r.n_pairs
        print(f"{'PASS' if r.passed else 'FAIL'} {r.model}: {r.n_elements} elements, "
              f"{pairs} pairs, {r.n_triples} triples, seed {seed}", file=out)
        for name in r.failures():
            res = r.axioms[name]
            print(f"  {name}: {res.violations} violations of {res.checked}", file=out)
            for w in res.witnesses:
                print(f"    witness {json.dumps(plain(w))}", file=out)
    print(f"audit {'passed' if ok else 'FAILED'}: {sum(r.passed for r in reports)}/{len(reports)} models",
          file=out)
    if args.out:
        doc = {"seed": seed, "samples": n, "passed": ok, "models": [r.to_dict() for r in reports]}
        Path(args.out).write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")
    return 0 if ok else 1


def cmd_tau(sc, args, out) -> int:
    _, a = _lookup(sc, args.a, "events")
    _, b = _lookup(sc, args.b, "events")
    print(fmt(event_tau(sc.model, a, b)), file=out)
    return 0


def cmd_tau_h(sc, args, out) -> int:
    sa, a = _lookup(sc, args.a, "diamonds", "sets", "intervals")
    sb, b = _lookup(sc, args.b, "diamonds", "sets", "intervals")
    if sa != sb:
        raise UsageError(f"cannot compare {sa} with {sb}")
    if sa == "diamonds":
        v = tau_H_diamonds(sc.model, a, b)
    elif sa == "intervals":
        v = interval_tau_H(sc_mod.interval_center(*a), sc_mod.interval_center(*b))
    else:
        if not (isinstance(a.space, MinkowskiTaxicab) and isinstance(b.space, MinkowskiTaxicab)):
            raise UsageError("tau-h on sets needs event sets")
        v = tau_H(a, b)
    print(fmt(v), file=out)
    return 0


def cmd_hausdorff(sc, args, out) -> int:
    sa, a = _lookup(sc, args.a, "diamonds", "sets")
    sb, b = _lookup(sc, args.b, "diamonds", "sets")
    if sa != sb:
        raise UsageError(f"cannot compare {sa} with {sb}")
    if sa == "diamonds":
        v = hausdorff_diamonds(sc.model, a, b)
    else:
        if a.space != b.space:
            raise UsageError("sets of different kinds")
        v = hausdorff(a, b)
    print(fmt(v), file=out)
    return 0


def cmd_interval_tau(sc, args, out) -> int:
    print(fmt(interval_tau_H(_interval(sc, args.a), _interval(sc, args.b))), file=out)
    return 0


def cmd_embed(sc, args, out) -> int:
    _, D = _lookup(sc, args.a, "diamonds")
    print(fmt(embed(D)), file=out)
    return 0


def _event_row(e):
    return [e.t, *e.x]


def _write_csv(path, header, rows, out):
    if path is None:
        fh = out
    else:
        fh = open(path, "w", encoding="utf-8", newline="")
    try:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([fmt(v) for v in row])
    finally:
        if path is not None:
            fh.close()


def cmd_geodesic(sc, args, out) -> int:
    kind = args.kind
    steps = args.steps
    if steps < 1:
        raise UsageError("--steps must be positive")
    a_name, b_name = args.a or DEFAULT_ENDS[kind][0], args.b or DEFAULT_ENDS[kind][1]
    M = sc.model
    n = sc.backend.dim
    # with --out the CSV goes to the file and the summary to stdout;
    # otherwise the CSV takes stdout and the summary goes to stderr
    info = out if args.out else sys.stderr

    if kind in ("maximal-segment", "staircase"):
        _, e1 = _lookup(sc, a_name, "events")
        _, e2 = _lookup(sc, b_name, "events")
        header = ["u", "t", *(f"x{i}" for i in range(n))]
        if kind == "maximal-segment":
            c = maximal_segment(M, e1, e2, steps)
            _write_csv(args.out, header, ([u, *_event_row(p)] for u, p in zip(c.params, c.points)), out)
            print(f"tau-length {fmt(curve_length_tau(M, c))}, tau(endpoints) {fmt(M.tau(e1, e2))}", file=info)
            return 0
        if args.out is None:
            raise UsageError("staircase writes one file per curve and needs --out")
        if steps < 2:
            raise UsageError("a staircase needs --steps >= 2")
        seed = 0 if args.seed is None else args.seed
        curves = alt_maximal_curves(M, e1, e2, args.k, seed=seed, steps=steps)
        base = Path(args.out)
        for i, c in enumerate(curves, 1):
            path = base.with_name(f"{base.stem}_{i}{base.suffix}")
            _write_csv(path, header, ([u, *_event_row(p)] for u, p in zip(c.params, c.points)), out)
        lengths = [curve_length_tau(M, c) for c in curves]
        print(f"{len(curves)} staircases, tau-lengths " + " ".join(fmt(v) for v in lengths)
              + f", tau(endpoints) {fmt(M.tau(e1, e2))}", file=info)
        return 0

    if kind == "metric-sets":
        _, A = _lookup(sc, a_name, "sets")
        _, B = _lookup(sc, b_name, "sets")
        if A.space != sc.backend or B.space != sc.backend:
            raise UsageError("metric-sets needs point sets of the backend")
        h = sc.audit.grid if args.grid is None else args.grid
        r = hausdorff(A, B)
        rows, worst = [], 0.0
        for k in range(steps + 1):
            u = r * k / steps
            alpha = hyperspace_geodesic(A, B, u, h)
            d0, d1 = hausdorff(A, alpha), hausdorff(alpha, B)
            worst = max(worst, abs(d0 - u), abs(d1 - (r - u)))
            rows.append([u, len(alpha), d0, d1])
        _write_csv(args.out, ["u", "size", "dH_start", "dH_end"], rows, out)
        print(f"d_H(A, B) {fmt(r)}, grid {fmt(h)}, max endpoint-distance residual {fmt(worst)}", file=info)
        return 0

    _, D1 = _lookup(sc, a_name, "diamonds")
    _, D2 = _lookup(sc, b_name, "diamonds")
    r = hausdorff_diamonds(M, D1, D2)
    header = ["u", "bt", *(f"bx{i}" for i in range(n)), "tt", *(f"tx{i}" for i in range(n))]
    rows, worst = [], 0.0
    if kind == "causal-diamonds":
        g0 = causal_geodesic(M, D1, D2, 0.0)
        for k in range(steps + 1):
            u = r if k == steps else r * k / steps
            g = causal_geodesic(M, D1, D2, u)
            res = tau_H_diamonds(M, g0, g) - u
            worst = max(worst, abs(res))
            rows.append([u, *_event_row(g.bottom), *_event_row(g.top), res])
        _write_csv(args.out, header + ["tauH_residual"], rows, out)
        gap0, gap1 = hausdorff_diamonds(M, g0, D1), hausdorff_diamonds(M, causal_geodesic(M, D1, D2, r), D2)
        print(f"d_H {fmt(r)}, tau_H {fmt(tau_H_diamonds(M, D1, D2))}, max tau-affinity residual {fmt(worst)}, "
              f"endpoint gaps {fmt(gap0)} {fmt(gap1)}", file=info)
        return 0

    for k in range(steps + 1):
        u = r if k == steps else r * k / steps
        g = interpolate_diamonds(M, D1, D2, u)
        res = hausdorff_diamonds(M, D1, g) - u
        worst = max(worst, abs(res), abs(hausdorff_diamonds(M, g, D2) - (r - u)))
        rows.append([u, *_event_row(g.bottom), *_event_row(g.top), res])
    _write_csv(args.out, header + ["dH_residual"], rows, out)
    print(f"d_H {fmt(r)}, max distance residual {fmt(worst)}", file=info)
    return 0


COMMANDS = {
    "audit": cmd_audit,
    "tau": cmd_tau,
    "tau-h": cmd_tau_h,
    "hausdorff": cmd_hausdorff,
    "interval-tau": cmd_interval_tau,
    "embed": cmd_embed,
    "geodesic": cmd_geodesic,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--scenario", help="scenario JSON file (default: the shipped scenario)")
    common.add_argument("--seed", type=int, help="random seed (default: scenario value, else 0)")
    common.add_argument("--grid", type=float, help="grid spacing h for sampled constructions")
    common.add_argument("--out", help="output path")
    query = argparse.ArgumentParser(add_help=False)
    query.add_argument("--a", help="first named object")
    query.add_argument("--b", help="second named object")

    p = argparse.ArgumentParser(prog="taxicausal", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="verb", required=True)
    a = sub.add_parser("audit", parents=[common], help="audit every shipped model")
    a.add_argument("--samples", type=int, help="elements per model")
    sub.add_parser("tau", parents=[common, query], help="time separation of two events")
    sub.add_parser("tau-h", parents=[common, query], help="tau_H of two diamonds, event sets or intervals")
    sub.add_parser("hausdorff", parents=[common, query], help="Hausdorff distance of diamonds or sets")
    sub.add_parser("interval-tau", parents=[common, query], help="tau_H of two intervals")
    sub.add_parser("embed", parents=[common, query], help="vertex pair of a diamond")
    g = sub.add_parser("geodesic", parents=[common, query], help="write a sampled geodesic as CSV")
    g.add_argument("--kind", choices=KINDS, required=True)
    g.add_argument("--steps", type=int, default=8)
    g.add_argument("--k", type=int, default=5, help="number of staircases")
    return p


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    try:
        sc = sc_mod.load(args.scenario) if args.scenario else sc_mod.default()
        if args.grid is not None and not (args.grid > 0 and math.isfinite(args.grid)):
            raise UsageError("--grid must be positive")
        if args.seed is not None and args.seed < 0:
            raise UsageError("--seed must be nonnegative")
        return COMMANDS[args.verb](sc, args, out)
    except (UsageError, TaxicausalError, OSError) as exc:
        print(f"taxicausal {args.verb}: error: {exc}", file=sys.stderr)
        return 2
