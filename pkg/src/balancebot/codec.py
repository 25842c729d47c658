"""Mapping between continuous simulator state and the discrete agent view.

The tabular agent sees a pitch bin index; the network agent sees a small
normalized feature vector. Both agents emit an index into a fixed table of
velocity commands.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .simulator import SimState

OBS_MODES = ("pitch-only", "pitch-and-rate")


@dataclass(frozen=True)
class StateBins:
    """Uniform pitch bins over [lo, hi] degrees; outside pitches clamp to
    the edge bins."""

    lo: float = -10.0
    hi: float = 10.0
    count: int = 20

    def __post_init__(self) -> None:
        if not self.lo < self.hi:
            raise ValueError("bins need lo < hi")
        if self.count < 2:
            raise ValueError("need at least 2 bins")

    @property
    def width(self) -> float:
        return (self.hi - self.lo) / self.count


@dataclass(frozen=True)
class ActionTable:
    """Strictly increasing, antisymmetric table of velocity commands."""

    values: tuple[float, ...] = (
        -200.0, -100.0, -50.0, -25.0, -10.0, 10.0, 25.0, 50.0, 100.0, 200.0
    )

    def __post_init__(self) -> None:
        n = len(self.values)
        if n < 2:
            raise ValueError("need at least 2 actions")
        for a, b in zip(self.values, self.values[1:]):
            if not a < b:
                raise ValueError("action table must be strictly increasing")
        for i in range(n):
            if self.values[i] != -self.values[n - 1 - i]:
                raise ValueError(
                    "action table must be antisymmetric: "
                    f"values[{i}] != -values[{n - 1 - i}]"
                )

    def __len__(self) -> int:
        return len(self.values)


DEFAULT_BINS = StateBins()
DEFAULT_ACTIONS = ActionTable()


def bin_pitch(pitch_deg: float, bins: StateBins = DEFAULT_BINS) -> int:
    """Bin index for a pitch in degrees. Half-open bins [edge, edge+width),
    clamped so every real pitch maps to exactly one of the count bins."""
    if not math.isfinite(pitch_deg):
        raise ValueError(f"pitch must be finite, got {pitch_deg!r}")
    idx = math.floor((pitch_deg - bins.lo) / bins.width)
    if idx < 0:
        return 0
    if idx >= bins.count:
        return bins.count - 1
    return idx


def bin_center(index: int, bins: StateBins = DEFAULT_BINS) -> float:
    """Center pitch (degrees) of a bin."""
    if not 0 <= index < bins.count:
        raise IndexError(f"bin index {index} out of range 0..{bins.count - 1}")
    return bins.lo + (index + 0.5) * bins.width


def action_value(index: int, table: ActionTable = DEFAULT_ACTIONS) -> float:
    """Velocity command for an action index."""
    if not 0 <= index < len(table):
        raise IndexError(
            f"action index {index} out of range 0..{len(table) - 1}"
        )
    return table.values[index]


def make_obs(state: SimState, mode: str = "pitch-only") -> np.ndarray:
    """Network input features. Pitch is scaled by 1/10 deg, rate by 1/2
    rad/s, so the live range is roughly unit scale."""
    pitch_deg = math.degrees(state.pitch)
    if mode == "pitch-only":
        return np.array([pitch_deg / 10.0], dtype=np.float64)
    if mode == "pitch-and-rate":
        return np.array(
            [pitch_deg / 10.0, state.pitch_rate / 2.0], dtype=np.float64
        )
    raise ValueError(f"unknown obs mode {mode!r}, expected one of {OBS_MODES}")
