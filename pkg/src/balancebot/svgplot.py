"""Self-contained SVG reward plots, no plotting library.

One `<polyline>` per curve, axis lines, tick labels and a legend entry per
curve. The y range always covers the requested floor and ceiling (penalty
and iteration cap) in addition to the data, so curves from different runs
share comparable frames.
"""

from __future__ import annotations

from xml.sax.saxutils import escape

WIDTH = 760
HEIGHT = 480
MARGIN_LEFT = 72
MARGIN_RIGHT = 160
MARGIN_TOP = 32
MARGIN_BOTTOM = 56

PALETTE = (
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd",
    "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f",
)


def _ticks(lo: float, hi: float, count: int = 5) -> list[float]:
    if count < 2:
        return [lo, hi]
    span = hi - lo
    return [lo + span * i / (count - 1) for i in range(count)]


def _fmt(value: float) -> str:
    if float(value).is_integer():
        return str(int(value))
    return f"{value:.6g}"


def render_reward_plot(
    curves,
    path,
    y_floor: float | None = None,
    y_ceil: float | None = None,
    title: str = "Accumulated reward per episode",
) -> None:
    """Write an SVG file plotting one reward curve per (name, rewards) pair.

    y_floor/y_ceil extend the y axis (typically to the penalty and the
    iteration cap) regardless of the data range.
    """
    curves = [(str(name), [float(v) for v in values]) for name, values in curves]
    if not curves:
        raise ValueError("need at least one curve")
    if any(not values for _, values in curves):
        raise ValueError("curves must be non-empty")

    x_max = max(len(values) - 1 for _, values in curves)
    x_max = max(x_max, 1)
    y_lo = min(min(values) for _, values in curves)
    y_hi = max(max(values) for _, values in curves)
    if y_floor is not None:
        y_lo = min(y_lo, float(y_floor))
    if y_ceil is not None:
        y_hi = max(y_hi, float(y_ceil))
    if y_lo == y_hi:
        y_lo -= 1.0
        y_hi += 1.0

    plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT
    plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM

    def sx(x: float) -> float:
        return MARGIN_LEFT + plot_w * (x / x_max)

    def sy(y: float) -> float:
        return MARGIN_TOP + plot_h * (1.0 - (y - y_lo) / (y_hi - y_lo))

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" '
        f'height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<text x="{WIDTH / 2:.1f}" y="20" text-anchor="middle" '
        f'font-family="sans-serif" font-size="14">{escape(title)}</text>',
    ]

    x0, y0 = sx(0), sy(y_lo)
    x1, y1 = sx(x_max), sy(y_hi)
    parts.append(
        f'<line x1="{x0:.1f}" y1="{y0:.1f}" x2="{x1:.1f}" '
        f'y2="{y0:.1f}" stroke="black"/>'
    )
    parts.append(
        f'<line x1="{x0:.1f}" y1="{y0:.1f}" x2="{x0:.1f}" y2="{y1:.1f}" '
        f'stroke="black"/>'
    )

    for tick in _ticks(0, x_max):
        px = sx(tick)
        parts.append(
            f'<line x1="{px:.1f}" y1="{y0:.1f}" x2="{px:.1f}" '
            f'y2="{y0 + 5:.1f}" stroke="black"/>'
        )
        parts.append(
            f'<text x="{px:.1f}" y="{y0 + 20:.1f}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="11" class="xtick">'
            f"{escape(_fmt(tick))}</text>"
        )
    for tick in _ticks(y_lo, y_hi):
        py = sy(tick)
        parts.append(
            f'<line x1="{x0 - 5:.1f}" y1="{py:.1f}" x2="{x0:.1f}" '
            f'y2="{py:.1f}" stroke="black"/>'
        )
        parts.append(
            f'<text x="{x0 - 8:.1f}" y="{py + 4:.1f}" text-anchor="end" '
            f'font-family="sans-serif" font-size="11" class="ytick">'
            f"{escape(_fmt(tick))}</text>"
        )

    parts.append(
        f'<text x="{MARGIN_LEFT + plot_w / 2:.1f}" y="{HEIGHT - 12}" '
        f'text-anchor="middle" font-family="sans-serif" font-size="12">'
        "Episode</text>"
    )
    parts.append(
        f'<text x="18" y="{MARGIN_TOP + plot_h / 2:.1f}" '
        f'text-anchor="middle" font-family="sans-serif" font-size="12" '
        f'transform="rotate(-90 18 {MARGIN_TOP + plot_h / 2:.1f})">'
        "Accumulated reward</text>"
    )

    for i, (name, values) in enumerate(curves):
        color = PALETTE[i % len(PALETTE)]
        points = " ".join(
            f"{sx(k):.2f},{sy(v):.2f}" for k, v in enumerate(values)
        )
        parts.append(
            f'<polyline fill="none" stroke="{color}" stroke-width="1.5" '
            f'points="{points}"/>'
        )

    legend_x = WIDTH - MARGIN_RIGHT + 12
    parts.append('<g id="legend">')
    for i, (name, _) in enumerate(curves):
        color = PALETTE[i % len(PALETTE)]
        ly = MARGIN_TOP + 16 + 18 * i
        parts.append(
            f'<line x1="{legend_x}" y1="{ly - 4}" x2="{legend_x + 22}" '
            f'y2="{ly - 4}" stroke="{color}" stroke-width="1.5"/>'
        )
        parts.append(
            f'<text x="{legend_x + 28}" y="{ly}" font-family="sans-serif" '
            f'font-size="11" class="legend">{escape(name)}</text>'
        )
    parts.append("</g>")
    parts.append("</svg>")

    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write("\n".join(parts) + "\n")
    except OSError as exc:
        raise OSError(f"cannot write plot to {path}: {exc}") from None
