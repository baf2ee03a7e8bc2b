"""Shared helpers: random knapsack instances and an invariant-checking episode loop."""

from __future__ import annotations

import numpy as np

from upcache import CacheState, SimConfig, build_catalog, sample_slot_requests
from upcache.knapsack import KnapsackInstance, KnapsackItem
from upcache.scheduler import (
    Policy,
    decide,
    effective_capacity,
    effective_deadline,
    needs_knapsack,
)

FINITE_POLICIES = (Policy.FINITE_DP, Policy.FINITE_GREEDY)


def random_instance(
    rng: np.random.Generator,
    max_items: int = 15,
    max_weight: int = 20,
    max_capacity: int = 200,
) -> KnapsackInstance:
    """Instance family from the acceptance grid: values are U[0,1] per weight unit."""
    count = int(rng.integers(0, max_items + 1))
    weights = rng.integers(1, max_weight + 1, size=count)
    values = rng.random(count) * weights
    return KnapsackInstance(
        items=tuple(
            KnapsackItem(key=i, weight=int(weights[i]), value=float(values[i]))
            for i in range(count)
        ),
        capacity=int(rng.integers(0, max_capacity + 1)),
    )


def run_checked_episode(config: SimConfig, policy: Policy, episode_seed: int) -> dict:
    """Engine loop restated with assertions; independent harness for the invariants.

    Checks at every slot boundary: occupancy within capacity, post-dedup
    file-id uniqueness, volume conservation, expired items always transmitted,
    transmit/stay partitioning, the knapsack stay-weight bound when triggered,
    and that nothing outlives its deadline.
    """
    rng = np.random.default_rng(episode_seed)
    catalog = build_catalog(
        config.file_count, config.zipf_alpha, config.length_min, config.length_max, rng
    )
    log = [
        sample_slot_requests(catalog, config.user_count, n, config.silence_prob, rng)
        for n in range(1, config.slot_count + 1)
    ]
    cache = CacheState(capacity=effective_capacity(policy, config))
    deadline = effective_deadline(policy, config)
    admitted_total = evicted_total = 0
    d0 = d1 = 0
    for n in range(1, config.slot_count + 1):
        result = cache.admit_and_dedup(log[n - 1], catalog)
        assert result.unique_volume <= result.raw_volume
        assert result.unique_volume == sum(item.weight for item in result.admitted)
        d0 += result.raw_volume
        d1 += result.unique_volume
        admitted_total += result.unique_volume

        if cache.capacity is not None:
            assert cache.occupancy <= cache.capacity, f"overflow at slot {n}"
        ids = [item.file_id for item in cache.items.values()]
        assert len(ids) == len(set(ids)), f"duplicate file ids cached at slot {n}"
        assert cache.resident_file_ids == set(ids)
        assert admitted_total - evicted_total == cache.occupancy, f"leak at slot {n}"

        next_load = log[n].total_load if n < config.slot_count else 0
        expired = cache.expired_set(n, deadline)
        triggered = policy in FINITE_POLICIES and needs_knapsack(
            cache, expired, next_load, config.cache_capacity
        )
        decision = decide(cache, n, config, policy, next_load)

        transmit, stay = set(decision.transmit), set(decision.stay)
        assert {item.key for item in expired} <= transmit, f"expired item kept at slot {n}"
        assert transmit | stay == set(cache.items)
        assert not transmit & stay
        if triggered:
            stay_weight = sum(cache.items[key].weight for key in stay)
            assert stay_weight <= config.cache_capacity - next_load, f"stay too big at slot {n}"

        outgoing = [cache.items[key] for key in decision.transmit]
        cache.evict(outgoing)
        evicted_total += sum(item.weight for item in outgoing)
        for item in cache.items.values():
            assert item.arrival_slot > n - deadline + 1, f"item outlived deadline at slot {n}"

    return {
        "d0": d0,
        "d1": d1,
        "eta": (d0 - d1) / d0 if d0 else 0.0,
        "catalog": catalog,
        "log": log,
    }


def random_config(rng: np.random.Generator) -> SimConfig:
    """Small, fast, valid config with every knob randomized."""
    user_count = int(rng.integers(1, 7))
    length_max = int(rng.integers(1, 21))
    length_min = int(rng.integers(1, length_max + 1))
    slot_count = int(rng.integers(1, 26))
    return SimConfig(
        user_count=user_count,
        slot_count=slot_count,
        file_count=int(rng.integers(1, 81)),
        zipf_alpha=float(rng.uniform(0.0, 2.5)),
        length_min=length_min,
        length_max=length_max,
        cache_capacity=user_count * length_max + int(rng.integers(0, 120)),
        deadline_slots=int(rng.integers(1, slot_count + 6)),
        silence_prob=float(rng.choice([0.0, 0.0, 0.1, 0.5])),
        policy=Policy(rng.choice([p.value for p in Policy])),
        runs=1,
        master_seed=int(rng.integers(0, 2**31)),
    )
