from __future__ import annotations

import numpy as np
import pytest

from conftest import random_instance
from upcache import KnapsackInstance, KnapsackItem, solve_dp, solve_exhaustive, solve_greedy


def make_instance(weights, values, capacity):
    return KnapsackInstance(
        items=tuple(
            KnapsackItem(key=i, weight=w, value=v) for i, (w, v) in enumerate(zip(weights, values))
        ),
        capacity=capacity,
    )


def test_dp_small_optimum():
    selection = solve_dp(make_instance([3, 4, 5], [3.0, 4.0, 5.0], 7))
    assert selection.total_value == 7.0
    assert selection.chosen == {0, 1}
    assert selection.total_weight == 7


def test_dp_beats_greedy_trap():
    selection = solve_dp(make_instance([5, 4, 4], [10.0, 7.2, 7.2], 8))
    assert selection.chosen == {1, 2}
    assert selection.total_value == pytest.approx(14.4)


def test_dp_zero_capacity():
    selection = solve_dp(make_instance([3], [3.0], 0))
    assert selection.chosen == frozenset()
    assert selection.total_value == 0.0


def test_greedy_fit_scan_takes_first_density():
    selection = solve_greedy(make_instance([5, 4, 4], [10.0, 7.2, 7.2], 8))
    assert selection.chosen == {0}
    assert selection.total_value == 10.0


def test_greedy_fit_scan_continues_after_misfit():
    selection = solve_greedy(make_instance([5, 4, 4], [10.0, 7.2, 7.2], 9))
    assert selection.chosen == {0, 1}
    assert selection.total_value == pytest.approx(17.2)


def test_greedy_takes_everything_that_fits():
    selection = solve_greedy(make_instance([2, 3, 4], [1.0, 1.0, 1.0], 9))
    assert selection.chosen == {0, 1, 2}


def test_greedy_density_tie_prefers_earlier_item():
    # identical density 1.0; canonical order breaks the tie
    selection = solve_greedy(make_instance([4, 4], [4.0, 4.0], 4))
    assert selection.chosen == {0}


def test_exhaustive_single_item():
    assert solve_exhaustive(make_instance([3], [1.0], 3)).chosen == {0}
    assert solve_exhaustive(make_instance([4], [1.0], 3)).chosen == frozenset()


def test_exhaustive_item_guard():
    too_many = make_instance([1] * 26, [1.0] * 26, 5)
    with pytest.raises(ValueError):
        solve_exhaustive(too_many)


def test_exhaustive_prefers_lexicographically_smallest_optimum():
    # items 0 and 1 are interchangeable; {0} must win over {1}
    selection = solve_exhaustive(make_instance([4, 4], [4.0, 4.0], 4))
    assert selection.chosen == {0}


def test_instance_validation():
    with pytest.raises(ValueError):
        make_instance([0], [1.0], 5)
    with pytest.raises(ValueError):
        make_instance([2], [-1.0], 5)
    with pytest.raises(ValueError):
        make_instance([2], [float("nan")], 5)
    with pytest.raises(ValueError):
        make_instance([2], [1.0], -1)


def test_dp_ignores_zero_value_items():
    selection = solve_dp(make_instance([2, 3], [0.0, 0.0], 10))
    assert selection.chosen == frozenset()


def test_empty_instance_everywhere():
    empty = KnapsackInstance(items=(), capacity=10)
    for solver in (solve_dp, solve_greedy, solve_exhaustive):
        selection = solver(empty)
        assert selection.chosen == frozenset()
        assert selection.total_value == 0.0
        assert selection.total_weight == 0


def test_dp_matches_exhaustive_on_random_instances():
    rng = np.random.default_rng(2024)
    for _ in range(300):
        instance = random_instance(rng, max_items=10)
        assert solve_dp(instance).total_value == solve_exhaustive(instance).total_value


def test_greedy_never_beats_dp_and_both_fit():
    rng = np.random.default_rng(77)
    for _ in range(300):
        instance = random_instance(rng)
        dp = solve_dp(instance)
        greedy = solve_greedy(instance)
        assert greedy.total_value <= dp.total_value
        assert dp.total_weight <= instance.capacity
        assert greedy.total_weight <= instance.capacity


def test_solvers_deterministic():
    rng = np.random.default_rng(5)
    for _ in range(50):
        instance = random_instance(rng)
        for solver in (solve_dp, solve_greedy, solve_exhaustive):
            assert solver(instance) == solver(instance)
