"""Raster report figures rendered with matplotlib, written next to the
delimited logs. The SVG renderer stays dependency-free; this module is the
nicer-looking companion output."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)


def save_reward_png(
    curves,
    path,
    y_floor: float | None = None,
    y_ceil: float | None = None,
    title: str = "Accumulated reward per episode",
) -> None:
    """Plot one reward curve per (name, rewards) pair to a PNG file."""
    curves = list(curves)
    if not curves:
        raise ValueError("need at least one curve")
    fig, ax = plt.subplots(figsize=(8, 5), dpi=120)
    try:
        for name, values in curves:
            ax.plot(range(len(values)), values, label=str(name), linewidth=1.2)
        lo, hi = ax.get_ylim()
        if y_floor is not None:
            lo = min(lo, float(y_floor))
        if y_ceil is not None:
            hi = max(hi, float(y_ceil))
        ax.set_ylim(lo, hi)
        ax.set_xlabel("Episode")
        ax.set_ylabel("Accumulated reward")
        ax.set_title(title)
        ax.grid(True, alpha=0.3)
        ax.legend(loc="best", fontsize=9)
        fig.tight_layout()
        fig.savefig(path)
    finally:
        plt.close(fig)
