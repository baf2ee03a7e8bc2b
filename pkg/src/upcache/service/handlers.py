"""Service-layer entry points: pydantic request in, result records out.

Both the HTTP endpoints and the CLI's local mode call these, so every client
goes through the exact same path; ConfigError signals a bad request.
"""

from __future__ import annotations

from .. import sweep as sweeps
from ..errors import ConfigError
from .schemas import ResultRecord, RunRequest, SweepRequest, parse_policy


def _policies(names: list[str]):
    if not names:
        raise ConfigError("at least one policy is required")
    return tuple(parse_policy(name) for name in names)


def run_rows(request: RunRequest) -> list[ResultRecord]:
    policies = _policies(request.policies)
    config = request.params.to_config(policies[0])
    rows = sweeps.run_single(config, policies)
    return [ResultRecord.from_row(row) for row in rows]


def sweep_rows(request: SweepRequest) -> list[ResultRecord]:
    policies = _policies(request.policies)
    spec = sweeps.SweepSpec(
        base=request.params.to_config(policies[0]),
        axis=request.axis,
        values=tuple(request.values),
        policies=policies,
    )
    return [ResultRecord.from_row(row) for row in sweeps.run_sweep(spec)]


def figure_rows(name: str, runs: int | None = None, seed: int | None = None) -> list[ResultRecord]:
    rows = sweeps.run_figure(name, runs=runs, seed=seed)
    return [ResultRecord.from_row(row) for row in rows]
