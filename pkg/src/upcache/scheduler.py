"""Transmit/stay decisions at each slot boundary.

At the end of slot n the freshly received uploads have just been deduplicated
into the cache. Items past their deadline must be sent during slot n+1. Under
the finite-cache policies, whenever the next slot's raw arrivals would not fit
the space freed by those forced transmissions, the unexpired items compete for
the right to stay via a 0-1 knapsack whose value is each item's cache benefit
score (expected future-dedup volume if it is held until its deadline).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import TYPE_CHECKING

from .cache import CachedItem, CacheState, Key
from .errors import InvariantViolation
from .knapsack import KnapsackInstance, KnapsackItem, Solver, solve_dp, solve_greedy

if TYPE_CHECKING:
    from .engine import SimConfig


class Policy(Enum):
    """SBS scheduling policies; the values are the CLI / service names."""

    INFINITE_CACHE = "infinite"
    FINITE_DP = "dp"
    FINITE_GREEDY = "greedy"
    ORACLE_HOLD_ALL = "oracle"


# policies that never run the knapsack and treat the cache as unbounded
UNBOUNDED_POLICIES = frozenset({Policy.INFINITE_CACHE, Policy.ORACLE_HOLD_ALL})


def effective_deadline(policy: Policy, config: "SimConfig") -> int:
    """Hold-all ignores the configured deadline so nothing expires mid-horizon."""
    return config.slot_count if policy is Policy.ORACLE_HOLD_ALL else config.deadline_slots


def effective_capacity(policy: Policy, config: "SimConfig") -> int | None:
    return None if policy in UNBOUNDED_POLICIES else config.cache_capacity


@dataclass(frozen=True)
class Decision:
    """One slot boundary's outcome: keys to send next slot and keys kept."""

    transmit: tuple[Key, ...]  # canonical order, expired items first
    stay: tuple[Key, ...]
    sbs_rate: float  # Mbit/s the SBS forwards during the next slot


def cbs(item: CachedItem, current_slot: int, deadline_slots: int, user_count: int) -> float:
    """Cache benefit score: expected volume deduped by holding item to its deadline.

    With q remaining upload opportunities before the deadline (user_count per
    slot), the chance of at least one future duplicate is 1 - (1-p)**q.
    """
    slots_left = deadline_slots - (current_slot - item.arrival_slot + 1)
    q = user_count * slots_left
    if q < 0:
        raise InvariantViolation(
            f"CBS requested for expired item {item.key} at slot {current_slot}"
        )
    if q == 0:
        return 0.0
    return (1.0 - (1.0 - item.popularity) ** q) * item.weight


def needs_knapsack(
    cache: CacheState,
    expired: list[CachedItem],
    next_slot_load: int,
    capacity: int,
) -> bool:
    """True when next slot's raw arrivals exceed free space plus forced evictions."""
    freed = sum(item.weight for item in expired)
    return next_slot_load > capacity - cache.occupancy + freed


def decide(
    cache: CacheState,
    current_slot: int,
    config: "SimConfig",
    policy: Policy,
    next_slot_load: int,
    solver: Solver | None = None,
) -> Decision:
    """Pick the transmit/stay partition of the cache at the end of current_slot.

    next_slot_load is the users' raw upload volume for the following slot
    (0 at the final slot boundary). The solver argument overrides the
    policy's default knapsack solver; it is ignored by the unbounded policies.
    """
    deadline = effective_deadline(policy, config)
    expired = cache.expired_set(current_slot, deadline)
    expired_keys = {item.key for item in expired}
    unexpired = [item for item in cache.items.values() if item.key not in expired_keys]

    overflow: list[CachedItem] = []
    if policy not in UNBOUNDED_POLICIES and needs_knapsack(
        cache, expired, next_slot_load, config.cache_capacity
    ):
        room = config.cache_capacity - next_slot_load
        if room < 0:
            raise InvariantViolation(
                f"negative knapsack capacity {room} at slot {current_slot}; "
                f"capacity {config.cache_capacity} cannot absorb load {next_slot_load}"
            )
        instance = KnapsackInstance(
            items=tuple(
                KnapsackItem(
                    key=item.key,
                    weight=item.weight,
                    value=cbs(item, current_slot, deadline, config.user_count),
                )
                for item in unexpired
            ),
            capacity=room,
        )
        if solver is None:
            solver = solve_dp if policy is Policy.FINITE_DP else solve_greedy
        kept = solver(instance).chosen
        overflow = [item for item in unexpired if item.key not in kept]
        unexpired = [item for item in unexpired if item.key in kept]

    # expired arrivals all precede unexpired ones, so this stays canonical
    transmit = expired + overflow
    volume = sum(item.weight for item in transmit)
    return Decision(
        transmit=tuple(item.key for item in transmit),
        stay=tuple(item.key for item in unexpired),
        sbs_rate=volume / config.slot_duration,
    )
