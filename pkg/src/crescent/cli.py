"""Command-line front end: count, classify, realize, verify, rigidity, render.

Every JSON artifact embeds a manifest (command, version, parameters, paths) so
a run can be reproduced byte-for-byte from the artifact alone.  Classification
results are cached per (version, n) under --cache-dir, $CRESCENT_CACHE_DIR, or
./.crescent-cache.

Exit codes: 0 success, 1 verification failure, 2 invalid usage or budget
violation, 3 I/O failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import time

from . import __version__
from .classify import ClassificationReport, classify_pipeline
from .geometry import DistanceAssignment, verify_realizable
from .labelcore import LabelMatrix, count_by_streaming, count_matrices
from .refdata import reference_table_json
from .render import render_census
from .rigidity import census_rigidity
from .solver import Census, SolverConfig, realizable_census

DEFAULT_BUDGET = 6  # enumeration is O(n^n); larger n needs --allow-large
WIDENED_PLANARITY_TOL = 1e-3  # for four-decimal reference rows


def _manifest(command: str, params: dict, inputs: list[str],
              outputs: list[str]) -> dict:
    return {"tool": "crescent", "version": __version__, "command": command,
            "parameters": params, "inputs": inputs, "outputs": outputs}


def _write_json(path: str, payload: dict) -> None:
    parent = os.path.dirname(path)
    if parent:
        os.makedirs(parent, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        f.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def _cache_dir(args) -> str:
    return args.cache_dir or os.environ.get("CRESCENT_CACHE_DIR", ".crescent-cache")


def _check_budget(n: int, allow_large: bool) -> str | None:
    if n < 3:
        return f"n must be at least 3, got {n}"
    if n > DEFAULT_BUDGET and not allow_large:
        return (f"n={n} exceeds the default budget (n <= {DEFAULT_BUDGET}); "
                f"rerun with --allow-large if you really mean it")
    return None


def _classification(n: int, args) -> ClassificationReport:
    """Classification with a (version, n)-keyed JSON cache."""
    cache = os.path.join(_cache_dir(args), f"classify-n{n}-v{__version__}.json")
    if os.path.exists(cache):
        try:
            with open(cache, "r", encoding="utf-8") as f:
                return ClassificationReport.from_json_dict(json.load(f))
        except (ValueError, KeyError):
            pass  # stale or corrupt cache: recompute
    report = classify_pipeline(n)
    _write_json(cache, report.to_json_dict())
    return report


def cmd_count(args) -> int:
    if args.n < 3:
        print(f"n must be at least 3, got {args.n}", file=sys.stderr)
        return 2
    if args.stream:
        err = _check_budget(args.n, args.allow_large)
        if err:
            print(err, file=sys.stderr)
            return 2
        print(count_by_streaming(args.n))
    else:
        print(count_matrices(args.n))
    return 0


def cmd_classify(args) -> int:
    err = _check_budget(args.n, args.allow_large)
    if err:
        print(err, file=sys.stderr)
        return 2
    t0 = time.monotonic()
    report = _classification(args.n, args)
    out = args.out or f"classify-n{args.n}.json"
    payload = report.to_json_dict()
    payload["manifest"] = _manifest(
        "classify", {"n": args.n, "format": args.format}, [], [out])
    _write_json(out, payload)
    if args.format == "csv":
        csv_path = os.path.splitext(out)[0] + ".csv"
        with open(csv_path, "w", newline="", encoding="utf-8") as f:
            w = csv.writer(f)
            w.writerow(["class_id", "member_count", "representative", "distance_set"])
            for c in report.surviving:
                w.writerow([c.class_id, c.member_count,
                            c.representative.to_text().strip(),
                            ";".join("".join(map(str, coord)) for coord in c.key)])
    print(f"{report.summary()}  [{time.monotonic() - t0:.1f}s, {out}]")
    return 0


def _solver_config(args) -> SolverConfig:
    return SolverConfig(starts=args.starts, residual_tol=args.residual_tol,
                        margin_tol=args.margin_tol, rng_seed=args.seed)


def cmd_realize(args) -> int:
    err = _check_budget(args.n, args.allow_large)
    if err:
        print(err, file=sys.stderr)
        return 2
    t0 = time.monotonic()
    report = _classification(args.n, args)
    cfg = _solver_config(args)
    if args.class_id is not None:
        keep = [c for c in report.surviving if c.class_id == args.class_id]
        if not keep:
            print(f"unknown class id {args.class_id} (surviving ids: "
                  f"1..{len(report.surviving)})", file=sys.stderr)
            return 2
        report = ClassificationReport(
            n=report.n, total_matrices=report.total_matrices,
            class_count=report.class_count, star_rejected=report.star_rejected,
            shared_base_rejected=report.shared_base_rejected,
            trapezoid_rejected=report.trapezoid_rejected, surviving=keep)
    jobs = args.jobs if args.jobs else (os.cpu_count() or 1)
    census = realizable_census(args.n, cfg, report=report, jobs=jobs)
    out = args.out or f"realize-n{args.n}-seed{args.seed}.json"
    payload = census.to_json_dict()
    payload["manifest"] = _manifest(
        "realize",
        {"n": args.n, "seed": args.seed, "starts": args.starts,
         "residual_tol": args.residual_tol, "margin_tol": args.margin_tol,
         "class_id": args.class_id, "format": args.format}, [], [out])
    _write_json(out, payload)
    if args.format == "csv":
        csv_path = os.path.splitext(out)[0] + ".csv"
        labels = list(range(2, args.n))
        with open(csv_path, "w", newline="", encoding="utf-8") as f:
            w = csv.writer(f)
            w.writerow(["class_id", "realizable", "starts_used", "residual",
                        "solution_family"] + [f"d{k}" for k in labels])
            for c in census.classes:
                row = [c.class_id, c.realizable, c.starts_used,
                       c.residual if c.realizable else "",
                       c.solution_family if c.realizable else ""]
                row += [c.assignment[k] if c.realizable else "" for k in labels]
                w.writerow(row)
    print(f"{census.summary()}  [{time.monotonic() - t0:.1f}s, {out}]")
    return 0


def cmd_verify(args) -> int:
    if args.table:
        with open(args.table, "r", encoding="utf-8") as f:
            table = json.load(f)
    else:
        table = reference_table_json()
    rows = table.get("rows", [])
    exact_failures = 0
    for rec in rows:
        try:
            m = LabelMatrix.from_text(rec["matrix"])
            values = {int(k): float(v) for k, v in rec["values"].items()}
            values.setdefault(1, 1.0)
            a = DistanceAssignment(m.n, values)
        except (ValueError, KeyError) as e:
            print(f"row {rec.get('index', '?')}: malformed ({e})", file=sys.stderr)
            return 2
        exact = bool(rec.get("exact", True))
        tol_zero = args.residual_tol if exact else max(args.residual_tol,
                                                       WIDENED_PLANARITY_TOL)
        v = verify_realizable(m, a, tol_zero=tol_zero, tol_margin=args.margin_tol)
        kind = "exact" if exact else "dec4 "
        if v.ok:
            print(f"row {rec.get('index', '?'):>3} [{kind}] PASS")
        else:
            subset = ",".join(str(i + 1) for i in v.failing_subset)
            print(f"row {rec.get('index', '?'):>3} [{kind}] FAIL "
                  f"({v.reason} on points {subset})")
            if exact:
                exact_failures += 1
    print(f"checked {len(rows)} rows, {exact_failures} exact-row failures")
    return 1 if exact_failures else 0


def _load_census(path: str) -> Census:
    with open(path, "r", encoding="utf-8") as f:
        return Census.from_json_dict(json.load(f))


def cmd_rigidity(args) -> int:
    census = _load_census(args.census)
    reports = census_rigidity(census, rank_tol=args.rank_tol)
    out = args.out or f"rigidity-n{census.n}.json"
    payload = {
        "n": census.n,
        "reports": [r.to_json_dict() for _cid, r in reports],
        "manifest": _manifest("rigidity", {"rank_tol": args.rank_tol},
                              [args.census], [out]),
    }
    _write_json(out, payload)
    ranks = sorted({r.rank for _cid, r in reports})
    print(f"n={census.n}: {len(reports)} rigidity reports, ranks {ranks}  [{out}]")
    return 0


def cmd_render(args) -> int:
    census = _load_census(args.census)
    out_dir = args.out or "figures"
    written = render_census(census, out_dir)
    print(f"n={census.n}: wrote {len(written)} SVG files to {out_dir}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="crescent",
                                description="Crescent configuration census tools")
    sub = p.add_subparsers(dest="command", required=True)

    def add_common(sp, budget=True):
        sp.add_argument("--cache-dir", default=None,
                        help="classification cache directory")
        if budget:
            sp.add_argument("--allow-large", action="store_true",
                            help=f"lift the default n <= {DEFAULT_BUDGET} budget")

    sp = sub.add_parser("count", help="number of candidate label matrices")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--stream", action="store_true",
                    help="count by full enumeration instead of the formula")
    sp.add_argument("--allow-large", action="store_true")
    sp.set_defaults(func=cmd_count)

    sp = sub.add_parser("classify", help="group matrices into classes and filter")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--out", default=None)
    sp.add_argument("--format", choices=("json", "csv"), default="json")
    sp.add_argument("--jobs", type=int, default=None)
    add_common(sp)
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("realize", help="decide realizability per surviving class")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--class-id", type=int, default=None)
    sp.add_argument("--seed", type=int, default=42)
    sp.add_argument("--starts", type=int, default=200)
    sp.add_argument("--residual-tol", type=float, default=1e-10)
    sp.add_argument("--margin-tol", type=float, default=1e-6)
    sp.add_argument("--out", default=None)
    sp.add_argument("--format", choices=("json", "csv"), default="json")
    sp.add_argument("--jobs", type=int, default=None)
    add_common(sp)
    sp.set_defaults(func=cmd_realize)

    sp = sub.add_parser("verify", help="check (matrix, values) rows of a table")
    sp.add_argument("--table", default=None,
                    help="JSON table path (default: packaged reference table)")
    sp.add_argument("--residual-tol", type=float, default=1e-9,
                    help="planarity tolerance for exact rows")
    sp.add_argument("--margin-tol", type=float, default=1e-6)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("rigidity", help="rigidity reports for a census")
    sp.add_argument("census", help="census JSON from `crescent realize`")
    sp.add_argument("--out", default=None)
    sp.add_argument("--rank-tol", type=float, default=1e-8)
    sp.set_defaults(func=cmd_rigidity)

    sp = sub.add_parser("render", help="SVG figure per realized class")
    sp.add_argument("census", help="census JSON from `crescent realize`")
    sp.add_argument("--out", default=None, help="output directory")
    sp.set_defaults(func=cmd_render)

    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except OSError as e:
        print(f"I/O error: {e}", file=sys.stderr)
        return 3
    except (json.JSONDecodeError, KeyError) as e:
        print(f"malformed input file: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
