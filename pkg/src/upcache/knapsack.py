"""0-1 knapsack solvers: exact dynamic programming, density greedy, exhaustive oracle.

Weights and the capacity are non-negative integers (Mbit here); values are
floats. The input item order is the canonical order, and all three solvers
are deterministic: ties resolve toward earlier items, and the DP inclusion
rule is strict improvement (a tie keeps the item out). Reported totals are
accumulated over chosen items in canonical order, so solvers that agree on
the optimum report bit-identical values.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Hashable

import numpy as np

# guard for the exhaustive oracle
_MAX_EXHAUSTIVE_ITEMS = 25
_MASK_CHUNK = 1 << 16


@dataclass(frozen=True)
class KnapsackItem:
    key: Hashable
    weight: int
    value: float


@dataclass(frozen=True)
class KnapsackInstance:
    items: tuple[KnapsackItem, ...]
    capacity: int

    def __post_init__(self):
        if self.capacity < 0:
            raise ValueError(f"capacity must be >= 0, got {self.capacity}")
        for item in self.items:
            if item.weight < 1:
                raise ValueError(f"item {item.key!r} has weight {item.weight} < 1")
            if not np.isfinite(item.value) or item.value < 0:
                raise ValueError(f"item {item.key!r} has bad value {item.value!r}")


@dataclass(frozen=True)
class Selection:
    chosen: frozenset
    total_value: float
    total_weight: int


Solver = Callable[[KnapsackInstance], Selection]


def _selection(instance: KnapsackInstance, chosen_keys: set) -> Selection:
    total_value = 0.0
    total_weight = 0
    for item in instance.items:  # canonical accumulation order
        if item.key in chosen_keys:
            total_value += item.value
            total_weight += item.weight
    return Selection(
        chosen=frozenset(chosen_keys), total_value=total_value, total_weight=total_weight
    )


def solve_dp(instance: KnapsackInstance) -> Selection:
    """Exact optimum by dynamic programming over integer capacities."""
    items, capacity = instance.items, instance.capacity
    m = len(items)
    if m == 0 or capacity == 0:
        return _selection(instance, set())
    best = np.zeros(capacity + 1)
    taken = np.zeros((m, capacity + 1), dtype=bool)
    for i, item in enumerate(items):
        w = item.weight
        if w > capacity:
            continue
        candidate = best[: capacity - w + 1] + item.value
        improves = candidate > best[w:]
        taken[i, w:] = improves
        np.copyto(best[w:], candidate, where=improves)
    chosen: set = set()
    c = capacity
    for i in range(m - 1, -1, -1):
        if taken[i, c]:
            chosen.add(items[i].key)
            c -= items[i].weight
    return _selection(instance, chosen)


def solve_greedy(instance: KnapsackInstance) -> Selection:
    """Density-ordered fit scan: take any item that fits the remaining space."""
    items = instance.items
    order = sorted(range(len(items)), key=lambda i: (-items[i].value / items[i].weight, i))
    remaining = instance.capacity
    chosen: set = set()
    for i in order:
        if items[i].weight <= remaining:
            chosen.add(items[i].key)
            remaining -= items[i].weight
    return _selection(instance, chosen)


def solve_exhaustive(instance: KnapsackInstance) -> Selection:
    """True optimum by subset enumeration; test oracle, not for production sizes.

    Among equal-value optima returns the lexicographically smallest sorted key
    tuple, so the result is fully deterministic.
    """
    items, capacity = instance.items, instance.capacity
    m = len(items)
    if m > _MAX_EXHAUSTIVE_ITEMS:
        raise ValueError(f"exhaustive solver capped at {_MAX_EXHAUSTIVE_ITEMS} items, got {m}")
    weights = np.array([item.weight for item in items], dtype=np.int64)
    best_value = 0.0
    best_masks: list[int] = [0]
    for start in range(0, 1 << m, _MASK_CHUNK):
        masks = np.arange(start, min(start + _MASK_CHUNK, 1 << m), dtype=np.int64)
        bits = ((masks[:, None] >> np.arange(m)) & 1).astype(bool)
        totals = np.zeros(len(masks))
        for i, item in enumerate(items):  # canonical accumulation order
            totals[bits[:, i]] += item.value
        feasible = bits @ weights <= capacity
        totals[~feasible] = -1.0
        chunk_best = totals.max(initial=-1.0)
        if chunk_best > best_value:
            best_value = chunk_best
            best_masks = [int(masks[i]) for i in np.flatnonzero(totals == chunk_best)]
        elif chunk_best == best_value:
            best_masks.extend(int(masks[i]) for i in np.flatnonzero(totals == chunk_best))

    def sorted_keys(mask: int):
        return sorted(items[i].key for i in range(m) if mask >> i & 1)

    winner = min(best_masks, key=sorted_keys)
    return _selection(instance, {items[i].key for i in range(m) if winner >> i & 1})
