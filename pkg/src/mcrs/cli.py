"""Command-line front end.

    mcrs classify data.csv
    mcrs analyze data.csv --dmu DMU8 --format json

Exit status: 0 on success, 1 on input errors, 2 on solver errors (including
any per-DMU failure inside a report).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Sequence, TextIO

from .dataset import DatasetError, DMUDataset, load_dataset_path
from .lp import DEFAULT_TOLERANCES, SolverError, ToleranceConfig
from .milp import DEFAULT_NODE_LIMIT
from .models import NotParetoEfficientError, classify_all
from .pipeline import AnalysisConfig, AnalysisMode, AnalysisReport, CandidatePolicy, analyze_all

EXIT_OK, EXIT_INPUT, EXIT_SOLVER = 0, 1, 2


def _big_m(text: str) -> float | None:
    if text == "auto":
        return None
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'auto' or a positive number, got {text!r}") from None
    if not value > 0:
        raise argparse.ArgumentTypeError("big-M must be positive")
    return value


def _positive(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not value > 0:
        raise argparse.ArgumentTypeError("tolerance must be positive")
    return value


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="mcrs", description="Closest targets and maximal reference sets in DEA (CRS).")
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", help="efficiency status of every DMU")
    c.add_argument("dataset", help="CSV file with dmu, in:<label> and out:<label> columns")
    c.add_argument("--format", choices=("table", "csv", "json"), default="table")

    a = sub.add_parser("analyze", help="furthest/closest projections and reference sets")
    a.add_argument("dataset", help="CSV file with dmu, in:<label> and out:<label> columns")
    a.add_argument("--mode", choices=[m.value for m in AnalysisMode], default="both")
    a.add_argument("--dmu", action="append", default=None, metavar="NAME",
                   help="analyze only this DMU (repeatable, or comma separated)")
    a.add_argument("--big-m", type=_big_m, default=None, metavar="auto|M",
                   help="big-M constant for the closest-target MILP (default: auto = 1e5 * max data value)")
    a.add_argument("--candidates", choices=[p.value for p in CandidatePolicy], default="support",
                   help="candidate DMUs for the reference-set LP")
    a.add_argument("--extreme-only", action="store_true",
                   help="restrict closest-target candidates to extreme-efficient DMUs")
    a.add_argument("--format", choices=("table", "csv", "json"), default="table")
    a.add_argument("--node-limit", type=int, default=DEFAULT_NODE_LIMIT)
    a.add_argument("--workers", type=int, default=1)
    for name in ("pivot", "feasibility", "optimality", "integrality", "zero", "membership", "support"):
        a.add_argument(f"--{name}-tol", type=_positive, default=getattr(DEFAULT_TOLERANCES, name),
                       help=f"{name} tolerance (default %(default)g)")
    return ap


def _fmt(v: float) -> str:
    return f"{v:.6g}"


def _point(values: Sequence[float]) -> str:
    return "(" + ",".join(_fmt(v) for v in values) + ")"


def _table(rows: list[list[str]]) -> str:
    widths = [max(len(r[k]) for r in rows) for k in range(len(rows[0]))]
    return "\n".join("  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip() for r in rows) + "\n"


def render_classification(ds: DMUDataset, statuses, fmt: str) -> str:
    pairs = [(ds.names[j], statuses[j].value) for j in range(ds.n)]
    if fmt == "json":
        return json.dumps({"dmus": [{"name": n, "status": s} for n, s in pairs]}, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["dmu", "status"])
        w.writerows(pairs)
        return buf.getvalue()
    return _table([["DMU", "status"], *[[n, s] for n, s in pairs]])


def render_report(report: AnalysisReport, fmt: str) -> str:
    data = report.to_dict()
    if fmt == "json":
        return json.dumps(data, indent=2) + "\n"
    ds = report.dataset
    labels = [f"in:{h}" for h in ds.input_labels] + [f"out:{h}" for h in ds.output_labels]
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(
            ["dmu", "status", "furthest_objective", *(f"furthest_{h}" for h in labels), "maximal_frs",
             "closest_objective", *(f"closest_{h}" for h in labels), "mcrs", "eta",
             *(f"u_{h}" for h in ds.output_labels), *(f"v_{h}" for h in ds.input_labels), "error"]
        )
        for d in data["dmus"]:
            f, c = d["furthest"], d["closest"]
            hp = (c or {}).get("hyperplane") or {"u": [""] * ds.s, "v": [""] * ds.m}
            w.writerow(
                [d["name"], d["status"],
                 f["objective"] if f else "", *(f["point"] if f else [""] * len(labels)),
                 ";".join(f.get("maximal_frs", [])) if f else "",
                 c["objective"] if c else "", *(c["point"] if c else [""] * len(labels)),
                 ";".join(c.get("mcrs", [])) if c else "", c.get("eta", "") if c else "",
                 *hp["u"], *hp["v"], d.get("error", "")]
            )
        return buf.getvalue()

    rows = [["DMU", "status", "furthest point", "obj", "maximal FRS", "closest point", "obj", "MCRS", "eta"]]
    for d in data["dmus"]:
        f, c = d["furthest"], d["closest"]
        rows.append([
            d["name"],
            d["status"],
            _point(f["point"]) if f else "-",
            _fmt(f["objective"]) if f else "-",
            "{" + ",".join(f.get("maximal_frs", [])) + "}" if f and "maximal_frs" in f else "-",
            _point(c["point"]) if c else "-",
            _fmt(c["objective"]) if c else "-",
            "{" + ",".join(c["mcrs"]) + "}" if c and "mcrs" in c else "-",
            _fmt(c["eta"]) if c and "eta" in c else "-",
        ])
        if "error" in d:
            rows[-1][-1] += f"  [error in {d['stage']}]"
    out = _table(rows)
    for k, note in enumerate(report.notes, start=1):
        out += f"\n[{k}] {note}"
    return out + ("\n" if report.notes else "")


def _load(path: str, err: TextIO) -> DMUDataset | None:
    try:
        return load_dataset_path(path)
    except OSError as exc:
        print(f"error: cannot read {path}: {exc.strerror or exc}", file=err)
    except DatasetError as exc:
        print(f"error: {path}: {exc}", file=err)
    return None


def main(argv: Sequence[str] | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    args = build_parser().parse_args(argv)
    ds = _load(args.dataset, err)
    if ds is None:
        return EXIT_INPUT

    if args.command == "classify":
        try:
            statuses = classify_all(ds)
        except SolverError as exc:
            print(f"error: {exc}", file=err)
            return EXIT_SOLVER
        out.write(render_classification(ds, statuses, args.format))
        return EXIT_OK

    indices = None
    if args.dmu:
        wanted = [n.strip() for chunk in args.dmu for n in chunk.split(",") if n.strip()]
        try:
            indices = [ds.index(n) for n in wanted]
        except KeyError as exc:
            print(f"error: {exc.args[0]}", file=err)
            return EXIT_INPUT
    try:
        tol = ToleranceConfig(**{k: getattr(args, f"{k}_tol") for k in (
            "pivot", "feasibility", "optimality", "integrality", "zero", "membership", "support")})
        config = AnalysisConfig(
            mode=args.mode,
            big_m=args.big_m,
            candidates=args.candidates,
            extreme_only=args.extreme_only,
            tolerances=tol,
            node_limit=args.node_limit,
            workers=args.workers,
        )
    except ValueError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_INPUT
    try:
        report = analyze_all(ds, config, indices)
    except (SolverError, NotParetoEfficientError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_SOLVER
    out.write(render_report(report, args.format))
    if report.failed:
        for r in report.records:
            if r.error is not None:
                print(f"error: {r.name} ({r.stage}): {r.error}", file=err)
        return EXIT_SOLVER
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
