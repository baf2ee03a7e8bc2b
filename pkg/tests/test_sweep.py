from __future__ import annotations

import pytest

from upcache import ConfigError, Policy, SimConfig, SweepSpec, figure_sweeps, run_single, run_sweep
from upcache.sweep import run_figure

TINY = SimConfig(file_count=40, runs=2)


def test_run_single_one_row_per_policy():
    rows = run_single(TINY, (Policy.FINITE_DP, Policy.FINITE_GREEDY, Policy.INFINITE_CACHE))
    assert [row.policy for row in rows] == ["dp", "greedy", "infinite"]
    for row in rows:
        assert row.runs == 2
        assert row.seed == 0
        assert 0.0 <= row.eta_mean <= row.eta_max_mean
        assert row.d1_mean <= row.d0_mean


def test_sweep_grid_order_and_size():
    spec = SweepSpec(
        base=TINY,
        axis="cache_capacity",
        values=(100, 200, 400, 800),
        policies=(Policy.FINITE_DP, Policy.FINITE_GREEDY),
    )
    rows = run_sweep(spec)
    assert len(rows) == 8
    assert [(row.cache_capacity, row.policy) for row in rows] == [
        (100, "dp"), (100, "greedy"),
        (200, "dp"), (200, "greedy"),
        (400, "dp"), (400, "greedy"),
        (800, "dp"), (800, "greedy"),
    ]


def test_sweep_spec_validation():
    with pytest.raises(ConfigError):
        SweepSpec(base=TINY, axis="nope", values=(1, 2), policies=(Policy.FINITE_DP,))
    with pytest.raises(ConfigError):
        SweepSpec(base=TINY, axis="zipf_alpha", values=(), policies=(Policy.FINITE_DP,))
    with pytest.raises(ConfigError):
        SweepSpec(base=TINY, axis="zipf_alpha", values=(1.0, 1.0), policies=(Policy.FINITE_DP,))
    with pytest.raises(ConfigError):
        SweepSpec(base=TINY, axis="zipf_alpha", values=(2.0, 1.0), policies=(Policy.FINITE_DP,))
    with pytest.raises(ConfigError):
        SweepSpec(base=TINY, axis="zipf_alpha", values=(1.0,), policies=())
    with pytest.raises(ConfigError):
        # user_count = 50 breaks the cache sizing assumption at S=100
        SweepSpec(base=TINY, axis="user_count", values=(2, 50), policies=(Policy.FINITE_DP,))


def test_fig2_preset_grid():
    specs = figure_sweeps("fig2")
    assert [spec.base.deadline_slots for spec in specs] == [1, 5, 10, 20]
    for spec in specs:
        assert spec.axis == "cache_capacity"
        assert spec.values == (100, 200, 300, 400, 500, 600, 700, 800)
        assert spec.policies == (Policy.FINITE_DP, Policy.FINITE_GREEDY)
        assert spec.base.slot_count == 20
        assert spec.base.user_count == 5
        assert spec.base.file_count == 1000
        assert spec.base.zipf_alpha == 1.0
        assert spec.base.slot_duration == 10.0
        assert spec.base.runs == 200


def test_fig3_preset_uses_hundred_slots():
    specs = figure_sweeps("fig3")
    assert [spec.base.cache_capacity for spec in specs] == [100, 200, 800]
    for spec in specs:
        assert spec.base.slot_count == 100
        assert spec.axis == "deadline_slots"
        assert spec.base.runs == 200


def test_fig4_and_fig5_presets():
    (fig4,) = figure_sweeps("fig4")
    assert fig4.axis == "zipf_alpha"
    assert fig4.base.deadline_slots == 20
    assert fig4.base.cache_capacity == 200
    fig5 = figure_sweeps("fig5")
    assert [spec.base.deadline_slots for spec in fig5] == [1, 20]
    for spec in fig5:
        assert spec.axis == "user_count"
        assert spec.values == (2, 3, 4, 5, 6, 7, 8, 9, 10)


def test_figure_overrides_and_unknown_name():
    specs = figure_sweeps("fig2", runs=3, seed=11)
    assert all(spec.base.runs == 3 and spec.base.master_seed == 11 for spec in specs)
    with pytest.raises(ConfigError):
        figure_sweeps("fig9")


def test_run_figure_row_count():
    rows = run_figure("fig4", runs=1, seed=5)
    # one spec, six alpha values, two policies
    assert len(rows) == 12
    assert all(row.seed == 5 and row.runs == 1 for row in rows)
