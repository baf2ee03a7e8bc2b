"""Parameter sweeps over the Monte Carlo engine and the figure presets.

A sweep varies one config axis over an increasing value list and runs every
requested policy at each point; rows come back in (value outer, policy inner)
order. The fig2..fig5 presets are the standard experiment grids: saved
traffic vs cache size, vs deadline (100-slot horizon), vs popularity skew,
and vs user count.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .engine import SimConfig, run_monte_carlo
from .errors import ConfigError
from .scheduler import Policy

SWEEP_AXES = ("cache_capacity", "deadline_slots", "zipf_alpha", "user_count")
_INT_AXES = {"cache_capacity", "deadline_slots", "user_count"}

FIGURE_NAMES = ("fig2", "fig3", "fig4", "fig5")


@dataclass(frozen=True)
class ResultRow:
    """One aggregated experiment point; maps 1:1 onto a CSV line."""

    policy: str
    cache_capacity: int
    deadline_slots: int
    user_count: int
    zipf_alpha: float
    slot_count: int
    runs: int
    eta_mean: float
    eta_std: float
    eta_max_mean: float
    d0_mean: float
    d1_mean: float
    seed: int


@dataclass(frozen=True)
class SweepSpec:
    base: SimConfig
    axis: str
    values: tuple
    policies: tuple[Policy, ...]

    def __post_init__(self):
        if self.axis not in SWEEP_AXES:
            raise ConfigError(f"unknown sweep axis {self.axis!r}; pick one of {SWEEP_AXES}")
        if not self.values:
            raise ConfigError("sweep needs at least one value")
        if any(b <= a for a, b in zip(self.values, self.values[1:])):
            raise ConfigError(f"sweep values must be strictly increasing, got {self.values}")
        if not self.policies:
            raise ConfigError("sweep needs at least one policy")
        # fail fast: every point must make a valid config
        for value in self.values:
            self.config_at(value)

    def config_at(self, value) -> SimConfig:
        value = int(value) if self.axis in _INT_AXES else float(value)
        return replace(self.base, **{self.axis: value})


def result_row(config: SimConfig) -> ResultRow:
    aggregate = run_monte_carlo(config)
    return ResultRow(
        policy=config.policy.value,
        cache_capacity=config.cache_capacity,
        deadline_slots=config.deadline_slots,
        user_count=config.user_count,
        zipf_alpha=config.zipf_alpha,
        slot_count=config.slot_count,
        runs=config.runs,
        eta_mean=aggregate.mean_eta,
        eta_std=aggregate.std_eta,
        eta_max_mean=aggregate.mean_eta_max,
        d0_mean=aggregate.mean_d0,
        d1_mean=aggregate.mean_d1,
        seed=config.master_seed,
    )


def run_single(config: SimConfig, policies: tuple[Policy, ...]) -> list[ResultRow]:
    """One row per requested policy, everything else held fixed."""
    return [result_row(replace(config, policy=policy)) for policy in policies]


def run_sweep(spec: SweepSpec) -> list[ResultRow]:
    rows = []
    for value in spec.values:
        point = spec.config_at(value)
        rows.extend(result_row(replace(point, policy=policy)) for policy in spec.policies)
    return rows


def figure_sweeps(name: str, runs: int | None = None, seed: int | None = None) -> list[SweepSpec]:
    """The four preset sweep grids; runs/seed may be overridden for quick looks."""
    base = SimConfig(
        runs=200 if runs is None else runs,
        master_seed=0 if seed is None else seed,
    )
    both = (Policy.FINITE_DP, Policy.FINITE_GREEDY)
    if name == "fig2":
        # saved traffic vs cache size, one curve per deadline, 20-slot horizon
        return [
            SweepSpec(
                base=replace(base, deadline_slots=deadline),
                axis="cache_capacity",
                values=(100, 200, 300, 400, 500, 600, 700, 800),
                policies=both,
            )
            for deadline in (1, 5, 10, 20)
        ]
    if name == "fig3":
        # saved traffic vs deadline over a 100-slot horizon, one curve per cache size
        return [
            SweepSpec(
                base=replace(base, slot_count=100, cache_capacity=capacity),
                axis="deadline_slots",
                values=(1, 5, 10, 20, 30, 40, 60, 80, 100),
                policies=both,
            )
            for capacity in (100, 200, 800)
        ]
    if name == "fig4":
        # saved traffic vs popularity skew at deadline 20, cache 200
        return [
            SweepSpec(
                base=replace(base, deadline_slots=20, cache_capacity=200),
                axis="zipf_alpha",
                values=(0.0, 0.4, 0.8, 1.2, 1.6, 2.0),
                policies=both,
            )
        ]
    if name == "fig5":
        # saved traffic vs user count at cache 200, deadlines 1 and 20
        return [
            SweepSpec(
                base=replace(base, cache_capacity=200, deadline_slots=deadline),
                axis="user_count",
                values=(2, 3, 4, 5, 6, 7, 8, 9, 10),
                policies=both,
            )
            for deadline in (1, 20)
        ]
    raise ConfigError(f"unknown figure {name!r}; pick one of {FIGURE_NAMES}")


def run_figure(name: str, runs: int | None = None, seed: int | None = None) -> list[ResultRow]:
    rows = []
    for spec in figure_sweeps(name, runs=runs, seed=seed):
        rows.extend(run_sweep(spec))
    return rows
