"""Command-line scenario runner.

Subcommands:

* ``run <config.json>``  validate, execute and write outputs
* ``validate <config.json>``  schema + semantic validation only
* ``repro <name>``  execute one of the built-in benchmark scenarios

Outputs per run: a trajectory CSV (one row per integration step), a metrics
JSON covering all runs, and an SVG sketch of the trajectories.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from .config import build_scenario, expand_batch, scenario_schema, validate_config
from .errors import ConfigValidationError, FabricError
from .repro import repro_config, repro_names
from .simulate import BatchResult, Metrics, RunRecord, Scenario, run_scenario

CSV_DIGITS = 9


def _fmt(value: float) -> str:
    return f"{value:.{CSV_DIGITS}g}"


def csv_header(n: int, k: int) -> str:
    cols = (["t"] + [f"q{i}" for i in range(n)] + [f"qd{i}" for i in range(k)]
            + ["xee0", "xee1", "min_dist", "solver_time_s"])
    return ",".join(cols)


def write_csv(record: RunRecord, path: Path) -> None:
    n = record.q.shape[1]
    k = record.qdot.shape[1]
    lines = [csv_header(n, k)]
    for i in range(record.steps):
        row = ([record.t[i]] + list(record.q[i]) + list(record.qdot[i])
               + list(record.x_task[i]) + [record.min_dist[i], record.solver_time[i]])
        lines.append(",".join(_fmt(v) for v in row))
    path.write_text("\n".join(lines) + "\n")


def _json_num(value):
    if value is None or (isinstance(value, float) and not math.isfinite(value)):
        return None
    return value


def metrics_payload(metrics: Metrics, record: RunRecord) -> dict:
    return {
        "clearance": _json_num(metrics.clearance),
        "path_length": metrics.path_length,
        "time_to_goal": _json_num(metrics.time_to_goal),
        "summed_error": _json_num(metrics.summed_error),
        "solver_time": metrics.solver_time,
        "success": metrics.success,
        "goal_reached": record.goal_reached,
        "collided": record.collided,
        "deadlocked": record.deadlocked,
        "numeric_failure": record.numeric_failure,
    }


def write_outputs(record: RunRecord, metrics: Metrics, paths: dict) -> None:
    """Write the outputs of a single run to ``paths`` (csv/json keys)."""
    if "csv" in paths:
        write_csv(record, Path(paths["csv"]))
    if "json" in paths:
        Path(paths["json"]).write_text(
            json.dumps(metrics_payload(metrics, record), indent=2, sort_keys=True) + "\n")


# -- SVG sketch -------------------------------------------------------------

_COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
           "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f"]


def write_svg(results: list[tuple[Scenario, RunRecord]], path: Path) -> None:
    """Trajectory polylines, obstacle circles and the goal marker."""
    if not results:
        return
    pts = np.vstack([rec.x_task for _, rec in results])
    scenario = results[0][0]
    centers = [obs.center_at(0.0) for obs in scenario.obstacles]
    radii = [obs.radius for obs in scenario.obstacles]
    goal0 = scenario.goal_reference.eval(0.0)[0][:2]
    lo = np.minimum(pts.min(axis=0), goal0)
    hi = np.maximum(pts.max(axis=0), goal0)
    for c, r in zip(centers, radii):
        lo = np.minimum(lo, np.asarray(c) - r)
        hi = np.maximum(hi, np.asarray(c) + r)
    span = np.maximum(hi - lo, 1e-6)
    pad = 0.05 * span.max()
    lo, hi = lo - pad, hi + pad
    size = 640.0
    scale = size / (hi - lo).max()

    def sx(v):
        return (v - lo[0]) * scale

    def sy(v):
        return size - (v - lo[1]) * scale  # flip y for screen coordinates

    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size:.0f}" '
             f'height="{size:.0f}" viewBox="0 0 {size:.0f} {size:.0f}">',
             f'<rect width="{size:.0f}" height="{size:.0f}" fill="white"/>']
    for c, r in zip(centers, radii):
        parts.append(f'<circle cx="{sx(c[0]):.2f}" cy="{sy(c[1]):.2f}" '
                     f'r="{r * scale:.2f}" fill="#444" fill-opacity="0.5"/>')
    for i, (_, rec) in enumerate(results):
        coords = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in rec.x_task)
        color = _COLORS[i % len(_COLORS)]
        parts.append(f'<polyline points="{coords}" fill="none" '
                     f'stroke="{color}" stroke-width="1.5"/>')
    gx, gy = sx(goal0[0]), sy(goal0[1])
    parts.append(f'<circle cx="{gx:.2f}" cy="{gy:.2f}" r="6" fill="none" '
                 f'stroke="green" stroke-width="2"/>')
    parts.append(f'<line x1="{gx - 8:.2f}" y1="{gy:.2f}" x2="{gx + 8:.2f}" '
                 f'y2="{gy:.2f}" stroke="green" stroke-width="1"/>')
    parts.append(f'<line x1="{gx:.2f}" y1="{gy - 8:.2f}" x2="{gx:.2f}" '
                 f'y2="{gy + 8:.2f}" stroke="green" stroke-width="1"/>')
    parts.append("</svg>")
    path.write_text("\n".join(parts) + "\n")


# -- execution ---------------------------------------------------------------


def _run_one(item: tuple[str, Scenario]) -> tuple[str, Scenario, BatchResult]:
    name, scenario = item
    return name, scenario, run_scenario(scenario)


def execute_config(cfg: dict, out_dir: Path, seed: int | None = None,
                   jobs: int = 1, planner_mode: str | None = None) -> dict:
    """Run a validated config (expanding any batch) and write all outputs."""
    validate_config(cfg)
    items = expand_batch(cfg, mode_override=planner_mode, seed_override=seed)
    out_dir.mkdir(parents=True, exist_ok=True)

    if jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_one, items))
    else:
        results = [_run_one(item) for item in items]

    outputs = cfg.get("outputs", {})
    csv_prefix = outputs.get("csv", "run")
    run_rows = []
    svg_items = []
    idx = 0
    for name, scenario, batch in results:
        for state_idx, run in enumerate(batch.runs):
            write_csv(run.record, out_dir / f"{csv_prefix}_{idx:03d}.csv")
            entry = {"name": name, "state_index": state_idx,
                     **metrics_payload(run.metrics, run.record)}
            run_rows.append(entry)
            svg_items.append((scenario, run.record))
            idx += 1

    clearances = [r["clearance"] for r in run_rows if r["clearance"] is not None]
    errors = [r["summed_error"] for r in run_rows if r["summed_error"] is not None]
    payload = {
        "scenario": cfg.get("name", "scenario"),
        "description": cfg.get("description", ""),
        "mode": planner_mode or cfg.get("planner", {}).get("mode", "dynamic"),
        "seed": seed if seed is not None else cfg.get("batch", {}).get("seed"),
        "runs": run_rows,
        "aggregate": {
            "success_rate": sum(r["success"] for r in run_rows) / len(run_rows),
            "collisions": sum(r["collided"] for r in run_rows),
            "deadlocks": sum(r["deadlocked"] for r in run_rows),
            "mean_clearance": sum(clearances) / len(clearances) if clearances else None,
            "mean_solver_time": sum(r["solver_time"] for r in run_rows) / len(run_rows),
            "mean_summed_error": sum(errors) / len(errors) if errors else None,
        },
    }
    (out_dir / outputs.get("json", "metrics.json")).write_text(
        json.dumps(payload, indent=2, sort_keys=True) + "\n")
    write_svg(svg_items, out_dir / outputs.get("svg", "trajectories.svg"))
    return payload


def _load_config(path: str) -> dict:
    p = Path(path)
    if not p.exists():
        raise ConfigValidationError(f"config file not found: {path}", ["<path>"])
    try:
        return json.loads(p.read_text())
    except json.JSONDecodeError as exc:
        raise ConfigValidationError(f"{path}: not valid JSON ({exc})", ["<root>"]) from exc


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="motionfabrics",
        description="Run motion-generation benchmark scenarios.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--out-dir", default=None, help="output directory")
        p.add_argument("--seed", type=int, default=None, help="override batch seed")
        p.add_argument("--jobs", type=int, default=1, help="parallel batch workers")
        p.add_argument("--planner", choices=["static", "dynamic"], default=None,
                       help="override planner mode")

    p_run = sub.add_parser("run", help="execute a scenario config")
    p_run.add_argument("config")
    add_common(p_run)

    p_val = sub.add_parser("validate", help="validate a scenario config")
    p_val.add_argument("config")

    p_rep = sub.add_parser("repro", help="run a built-in benchmark scenario")
    p_rep.add_argument("name", choices=repro_names(), metavar="name",
                       help="one of: " + ", ".join(repro_names()))
    add_common(p_rep)

    sub.add_parser("schema", help="print the scenario config JSON schema")
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "schema":
            print(json.dumps(scenario_schema(), indent=2, sort_keys=True))
            return 0
        if args.command == "validate":
            cfg = _load_config(args.config)
            validate_config(cfg)
            build_scenario(cfg)  # semantic checks (dimensions etc.)
            print(f"{args.config}: ok")
            return 0
        if args.command == "run":
            cfg = _load_config(args.config)
        else:
            cfg = repro_config(args.name)
        out_dir = Path(args.out_dir) if args.out_dir else Path("out") / cfg.get("name", "scenario")
        payload = execute_config(cfg, out_dir, seed=args.seed, jobs=args.jobs,
                                 planner_mode=args.planner)
        agg = payload["aggregate"]
        print(f"{payload['scenario']}: {len(payload['runs'])} runs, "
              f"success_rate={agg['success_rate']:.2f}, "
              f"collisions={agg['collisions']}, deadlocks={agg['deadlocks']}")
        print(f"outputs written to {out_dir}")
        return 0
    except ConfigValidationError as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return 2
    except FabricError as exc:
        print(f"run failed: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
