"""Slotted small-cell uplink cache simulator.

Users upload chunk files to a small base station that caches them briefly,
deletes duplicates against its cache, and forwards the survivors upstream
under deadline and cache-size constraints. The package provides the workload
generator, the dedup cache, deadline/knapsack scheduling policies, a Monte
Carlo engine, parameter sweeps, an HTTP service, and a CLI.
"""

__version__ = "0.1.0"

from .cache import AdmitResult, CachedItem, CacheState
from .engine import (
    AggregateMetrics,
    EpisodeMetrics,
    SimConfig,
    replay_episode,
    run_episode,
    run_monte_carlo,
    run_oracle_bound,
)
from .errors import ConfigError, InvariantViolation
from .knapsack import (
    KnapsackInstance,
    KnapsackItem,
    Selection,
    solve_dp,
    solve_exhaustive,
    solve_greedy,
)
from .scheduler import Decision, Policy, cbs, decide, needs_knapsack
from .sweep import ResultRow, SweepSpec, figure_sweeps, run_figure, run_single, run_sweep
from .workload import FileCatalog, SlotRequests, build_catalog, sample_slot_requests, zipf_pmf

__all__ = [
    "AdmitResult",
    "AggregateMetrics",
    "CacheState",
    "CachedItem",
    "ConfigError",
    "Decision",
    "EpisodeMetrics",
    "FileCatalog",
    "InvariantViolation",
    "KnapsackInstance",
    "KnapsackItem",
    "Policy",
    "ResultRow",
    "Selection",
    "SimConfig",
    "SlotRequests",
    "SweepSpec",
    "build_catalog",
    "cbs",
    "decide",
    "figure_sweeps",
    "needs_knapsack",
    "replay_episode",
    "run_episode",
    "run_figure",
    "run_monte_carlo",
    "run_oracle_bound",
    "run_single",
    "run_sweep",
    "sample_slot_requests",
    "solve_dp",
    "solve_exhaustive",
    "solve_greedy",
    "zipf_pmf",
]
