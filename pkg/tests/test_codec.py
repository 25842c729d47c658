"""Discretization and feature-encoding contract tests."""

import math

import numpy as np
import pytest

from balancebot.codec import (
    DEFAULT_ACTIONS,
    DEFAULT_BINS,
    ActionTable,
    StateBins,
    action_value,
    bin_center,
    bin_pitch,
    make_obs,
)
from balancebot.simulator import SimState


def test_default_bin_width_is_one_degree():
    assert DEFAULT_BINS.width == 1.0
    assert DEFAULT_BINS.count == 20


def test_bin_pitch_worked_examples():
    assert bin_pitch(-10.0001) == 0
    assert bin_pitch(-9.2014) == 0
    assert bin_pitch(0.0) == 10
    assert bin_pitch(9.9) == 19
    assert bin_pitch(12.0) == 19
    assert bin_pitch(-0.0001) == 9
    assert bin_pitch(-10.0) == 0
    assert bin_pitch(10.0) == 19


def test_bin_centers():
    assert bin_center(0) == -9.5
    assert bin_center(19) == 9.5
    assert bin_center(10) == 0.5
    with pytest.raises(IndexError):
        bin_center(20)
    with pytest.raises(IndexError):
        bin_center(-1)


def test_action_table_values_and_ranges():
    expected = [-200, -100, -50, -25, -10, 10, 25, 50, 100, 200]
    assert [action_value(i) for i in range(10)] == expected
    with pytest.raises(IndexError):
        action_value(10)
    with pytest.raises(IndexError):
        action_value(-1)


def test_action_table_validation():
    with pytest.raises(ValueError):
        ActionTable(values=(1.0, 1.0))  # not strictly increasing
    with pytest.raises(ValueError):
        ActionTable(values=(-3.0, -1.0, 2.0, 3.0))  # not antisymmetric


def test_bins_validation():
    with pytest.raises(ValueError):
        StateBins(lo=5.0, hi=-5.0)
    with pytest.raises(ValueError):
        StateBins(count=1)


def test_scan_partition_monotone_and_total():
    # Dense scan over [-15, 15] degrees: every pitch maps to exactly one of
    # the 20 bin indices and the mapping is monotone non-decreasing.
    xs = np.linspace(-15.0, 15.0, 200_001)
    idx = [bin_pitch(float(x)) for x in xs]
    assert min(idx) == 0 and max(idx) == 19
    assert all(0 <= i < 20 for i in idx)
    assert all(b >= a for a, b in zip(idx, idx[1:]))


def test_round_trip_center_of_every_bin():
    for i in range(DEFAULT_BINS.count):
        assert bin_pitch(bin_center(i)) == i


def test_round_trip_interior_points():
    rng = np.random.default_rng(99)
    for _ in range(5000):
        i = int(rng.integers(0, 20))
        # stay strictly inside the bin
        x = DEFAULT_BINS.lo + (i + float(rng.uniform(0.01, 0.99))) * DEFAULT_BINS.width
        assert bin_pitch(x) == i


def test_bin_antisymmetry_off_boundary():
    rng = np.random.default_rng(4)
    for _ in range(5000):
        x = float(rng.uniform(0.0, 12.0))
        if (x % DEFAULT_BINS.width) < 1e-9:  # skip exact boundaries
            continue
        assert bin_pitch(-x) == DEFAULT_BINS.count - 1 - bin_pitch(x)


def test_action_antisymmetry():
    n = len(DEFAULT_ACTIONS)
    for i in range(n):
        assert action_value(i) == -action_value(n - 1 - i)


def test_non_finite_pitch_rejected():
    for bad in (math.nan, math.inf, -math.inf):
        with pytest.raises(ValueError):
            bin_pitch(bad)


def test_make_obs_pitch_only():
    state = SimState(pitch=math.radians(2.5), pitch_rate=1.0)
    obs = make_obs(state, "pitch-only")
    assert obs.shape == (1,)
    assert obs.dtype == np.float64
    assert obs[0] == math.degrees(state.pitch) / 10.0


def test_make_obs_pitch_and_rate():
    state = SimState(pitch=math.radians(-4.0), pitch_rate=0.5)
    obs = make_obs(state, "pitch-and-rate")
    assert obs.shape == (2,)
    assert obs[0] == math.degrees(state.pitch) / 10.0
    assert obs[1] == 0.25


def test_make_obs_injective_in_pitch():
    pitches = np.linspace(-0.08, 0.08, 400)
    seen = {make_obs(SimState(pitch=float(p)), "pitch-only")[0]
            for p in pitches}
    assert len(seen) == len(pitches)


def test_make_obs_unknown_mode():
    with pytest.raises(ValueError):
        make_obs(SimState(), "pitch-and-everything")
