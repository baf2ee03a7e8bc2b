"""Batch front end: a thin client over the experiment service.

Subcommands build the same pydantic requests the HTTP endpoints accept and
either execute them in-process (default) or POST them to a running server
(--server URL). Results land as CSV with a fixed header and 6-digit decimal
formatting, so identical arguments and seed produce byte-identical files.

Exit codes: 0 success, 2 configuration/usage error, 1 runtime failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import httpx
from pydantic import ValidationError

from . import __version__
from .errors import ConfigError, InvariantViolation
from .service import handlers
from .service.schemas import ResultRecord, RunRequest, SimParams, SweepRequest
from .sweep import FIGURE_NAMES

CSV_HEADER = "policy,S,n_d,K,alpha,N,runs,eta_mean,eta_std,eta_max_mean,d0_mean,d1_mean,seed"

SEED_ENV_VAR = "UPCACHE_SEED"

# CLI flag -> SimParams field
_CONFIG_FLAGS = [
    ("--users", "user_count", int, "number of uplink users (K)"),
    ("--slots", "slot_count", int, "slots in the horizon (N)"),
    ("--slot-duration", "slot_duration", float, "slot length in seconds"),
    ("--files", "file_count", int, "catalog size (F)"),
    ("--alpha", "zipf_alpha", float, "Zipf popularity skew"),
    ("--cache-size", "cache_capacity", int, "SBS cache capacity in Mbit (S)"),
    ("--deadline-slots", "deadline_slots", int, "delay tolerance in slots (n_d)"),
    ("--silence-prob", "silence_prob", float, "per-slot probability a user stays silent"),
    ("--runs", "runs", int, "Monte Carlo episodes per point"),
    ("--seed", "master_seed", int, "master RNG seed"),
]

_AXIS_BY_FLAG = {
    "cache-size": "cache_capacity",
    "deadline-slots": "deadline_slots",
    "alpha": "zipf_alpha",
    "users": "user_count",
}


def _comma_list(text: str) -> list[str]:
    return [part.strip() for part in text.split(",") if part.strip()]


def _comma_floats(text: str) -> list[float]:
    try:
        return [float(part) for part in _comma_list(text)]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _add_common_output_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--out", help="CSV output path (default: stdout)")
    sub.add_argument(
        "--emit-plot-script",
        action="store_true",
        help="also write a matplotlib companion script next to the CSV",
    )
    sub.add_argument("--server", help="base URL of a running upcache service")


def _add_config_flags(sub: argparse.ArgumentParser) -> None:
    for flag, field, kind, help_text in _CONFIG_FLAGS:
        sub.add_argument(flag, dest=field, type=kind, default=None, help=help_text)
    sub.add_argument("--config", help="JSON file with simulation parameters")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="upcache",
        description="Uplink cache dedup simulator: single runs, sweeps, figure presets.",
    )
    parser.add_argument("--version", action="version", version=f"upcache {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)

    run = commands.add_parser("run", help="one configuration, one row per policy")
    _add_config_flags(run)
    run.add_argument(
        "--policy",
        type=_comma_list,
        default=None,
        help="policy or comma-separated policies: infinite, dp, greedy, oracle (default dp)",
    )
    _add_common_output_flags(run)

    sweep = commands.add_parser("sweep", help="vary one axis over increasing values")
    _add_config_flags(sweep)
    sweep.add_argument("--axis", required=True, choices=sorted(_AXIS_BY_FLAG))
    sweep.add_argument("--values", required=True, type=_comma_floats, help="e.g. 100,200,400,800")
    sweep.add_argument("--policies", type=_comma_list, default=None, help="e.g. dp,greedy")
    _add_common_output_flags(sweep)

    for name in FIGURE_NAMES:
        fig = commands.add_parser(name, help=f"preset grid behind {name}")
        fig.add_argument("--runs", dest="runs", type=int, default=None)
        fig.add_argument("--seed", dest="master_seed", type=int, default=None)
        _add_common_output_flags(fig)

    serve = commands.add_parser("serve", help="start the HTTP service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    return parser


def _load_config_file(path: str) -> dict:
    try:
        with open(path) as handle:
            loaded = json.load(handle)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    if not isinstance(loaded, dict):
        raise ConfigError(f"config file {path} must hold a JSON object")
    return loaded


def build_params(args: argparse.Namespace) -> tuple[SimParams, list[str] | None]:
    """Merge defaults < config file < flags; returns params and any file policies."""
    merged: dict = {}
    if getattr(args, "config", None):
        merged.update(_load_config_file(args.config))
    file_policies = merged.pop("policies", None)
    for _, field, _, _ in _CONFIG_FLAGS:
        value = getattr(args, field, None)
        if value is not None:
            merged[field] = value
    if "master_seed" not in merged and os.environ.get(SEED_ENV_VAR):
        merged["master_seed"] = int(os.environ[SEED_ENV_VAR])
    try:
        return SimParams(**merged), file_policies
    except ValidationError as exc:
        raise ConfigError(f"bad simulation parameters: {exc}") from exc


def _rows_from_server(
    server: str,
    endpoint: str,
    payload: dict | None = None,
    params: dict | None = None,
) -> list[ResultRecord]:
    with httpx.Client(base_url=server, timeout=600.0) as client:
        if payload is None:
            response = client.get(endpoint, params=params)
        else:
            response = client.post(endpoint, json=payload)
    if response.status_code in (400, 422):
        raise ConfigError(f"server rejected the request: {response.text}")
    response.raise_for_status()
    return [ResultRecord(**row) for row in response.json()["rows"]]


def _dispatch(args: argparse.Namespace) -> list[ResultRecord]:
    if args.command == "run":
        params, file_policies = build_params(args)
        policies = args.policy or file_policies or ["dp"]
        request = RunRequest(params=params, policies=policies)
        if args.server:
            return _rows_from_server(args.server, "/run", payload=request.model_dump())
        return handlers.run_rows(request)

    if args.command == "sweep":
        params, file_policies = build_params(args)
        policies = args.policies or file_policies or ["dp"]
        request = SweepRequest(
            params=params,
            axis=_AXIS_BY_FLAG[args.axis],
            values=args.values,
            policies=policies,
        )
        if args.server:
            return _rows_from_server(args.server, "/sweep", payload=request.model_dump())
        return handlers.sweep_rows(request)

    # figure presets
    runs, seed = args.runs, args.master_seed
    if args.server:
        query = {k: v for k, v in (("runs", runs), ("seed", seed)) if v is not None}
        return _rows_from_server(args.server, f"/figures/{args.command}", params=query)
    return handlers.figure_rows(args.command, runs=runs, seed=seed)


def format_row(row: ResultRecord) -> str:
    return ",".join(
        [
            row.policy,
            str(row.cache_capacity),
            str(row.deadline_slots),
            str(row.user_count),
            f"{row.zipf_alpha:.6f}",
            str(row.slot_count),
            str(row.runs),
            f"{row.eta_mean:.6f}",
            f"{row.eta_std:.6f}",
            f"{row.eta_max_mean:.6f}",
            f"{row.d0_mean:.6f}",
            f"{row.d1_mean:.6f}",
            str(row.seed),
        ]
    )


def write_csv(rows: list[ResultRecord], path: str | None) -> None:
    """Render rows in input order under the fixed header; path None = stdout."""
    text = "\n".join([CSV_HEADER, *(format_row(row) for row in rows)]) + "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="\n") as handle:
            handle.write(text)


_PLOT_TEMPLATE = '''#!/usr/bin/env python3
# Auto-generated companion for %(csv)s; requires matplotlib.
import csv
from collections import defaultdict

import matplotlib.pyplot as plt

CSV_PATH = %(csv)r
CANDIDATE_AXES = ["S", "n_d", "alpha", "K"]

with open(CSV_PATH) as handle:
    rows = list(csv.DictReader(handle))
if not rows:
    raise SystemExit("no data rows in " + CSV_PATH)

distinct = {axis: len({row[axis] for row in rows}) for axis in CANDIDATE_AXES}
x_axis = max(CANDIDATE_AXES, key=lambda axis: distinct[axis])
group_cols = ["policy"] + [a for a in CANDIDATE_AXES if a != x_axis and distinct[a] > 1]

series = defaultdict(list)
for row in rows:
    label = ", ".join(col + "=" + row[col] for col in group_cols)
    series[label].append((float(row[x_axis]), float(row["eta_mean"])))

for label, points in sorted(series.items()):
    points.sort()
    plt.plot([p[0] for p in points], [p[1] for p in points], marker="o", label=label)
plt.xlabel(x_axis)
plt.ylabel("mean saved-traffic ratio")
plt.grid(True)
plt.legend(fontsize=8)
plt.tight_layout()
plt.savefig(CSV_PATH + ".png", dpi=150)
print("wrote " + CSV_PATH + ".png")
'''


def write_plot_script(csv_path: str) -> Path:
    script_path = Path(csv_path).with_suffix(".plot.py")
    with open(script_path, "w", newline="\n") as handle:
        handle.write(_PLOT_TEMPLATE % {"csv": str(csv_path)})
    return script_path


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)

    if args.command == "serve":
        import uvicorn

        uvicorn.run("upcache.service.app:app", host=args.host, port=args.port)
        return 0

    if args.emit_plot_script and not args.out:
        print("error: --emit-plot-script requires --out", file=sys.stderr)
        return 2

    try:
        rows = _dispatch(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InvariantViolation as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 1
    except httpx.HTTPError as exc:
        print(f"server error: {exc}", file=sys.stderr)
        return 1

    try:
        write_csv(rows, args.out)
        if args.emit_plot_script:
            write_plot_script(args.out)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
