"""Self-contained SVG line charts: median line, quartile band, log x-axis."""

from __future__ import annotations

import math
from dataclasses import dataclass
from xml.sax.saxutils import escape

__all__ = ["Series", "render_feature_plot"]

WIDTH, HEIGHT = 720, 480
MARGIN_L, MARGIN_R, MARGIN_T, MARGIN_B = 70, 20, 30, 50

PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"]


@dataclass
class Series:
    label: str
    rows: list[tuple[int, float | None, float | None, float | None]]

    def defined_rows(self):
        return [r for r in self.rows if r[1] is not None]


def _fmt(v: float) -> str:
    return f"{v:.2f}"


def _log_ticks(x_min: float, x_max: float) -> list[float]:
    lo = math.floor(math.log10(x_min))
    hi = math.ceil(math.log10(x_max))
    return [10.0**e for e in range(int(lo), int(hi) + 1) if x_min <= 10.0**e <= x_max]


def render_feature_plot(
    series: list[Series],
    feature_code: str,
    marker: int | None = None,
) -> str:
    """A standalone SVG document for one feature's trajectories."""
    points = [r for s in series for r in s.defined_rows()]
    if not points:
        raise ValueError("nothing to plot: no defined values")

    xs = [r[0] for r in points]
    ys = [v for r in points for v in (r[1], r[2], r[3])]
    x_min, x_max = min(xs), max(xs)
    if x_min <= 0:
        raise ValueError("evaluation counts must be positive for a log axis")
    if x_min == x_max:
        x_min, x_max = x_min / 2.0, x_max * 2.0
    y_min, y_max = min(ys), max(ys)
    pad = (y_max - y_min) * 0.08 or max(abs(y_max), 1.0) * 0.08
    y_min, y_max = y_min - pad, y_max + pad

    lx_min, lx_max = math.log10(x_min), math.log10(x_max)
    plot_w = WIDTH - MARGIN_L - MARGIN_R
    plot_h = HEIGHT - MARGIN_T - MARGIN_B

    def sx(x: float) -> float:
        return MARGIN_L + (math.log10(x) - lx_min) / (lx_max - lx_min) * plot_w

    def sy(y: float) -> float:
        return MARGIN_T + (y_max - y) / (y_max - y_min) * plot_h

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<text x="{WIDTH / 2}" y="18" text-anchor="middle" font-size="14">'
        f"{escape(feature_code)}</text>",
    ]

    # axes
    x0, y0 = MARGIN_L, MARGIN_T + plot_h
    parts.append(
        f'<line x1="{x0}" y1="{y0}" x2="{x0 + plot_w}" y2="{y0}" stroke="black"/>'
    )
    parts.append(f'<line x1="{x0}" y1="{MARGIN_T}" x2="{x0}" y2="{y0}" stroke="black"/>')
    for t in _log_ticks(x_min, x_max):
        px = sx(t)
        parts.append(f'<line x1="{_fmt(px)}" y1="{y0}" x2="{_fmt(px)}" y2="{y0 + 5}" stroke="black"/>')
        parts.append(
            f'<text x="{_fmt(px)}" y="{y0 + 18}" text-anchor="middle">1e{int(math.log10(t))}</text>'
        )
    for i in range(5):
        ty = y_min + i * (y_max - y_min) / 4.0
        py = sy(ty)
        parts.append(f'<line x1="{x0 - 5}" y1="{_fmt(py)}" x2="{x0}" y2="{_fmt(py)}" stroke="black"/>')
        parts.append(
            f'<text x="{x0 - 8}" y="{_fmt(py + 4)}" text-anchor="end">{ty:.3g}</text>'
        )
    parts.append(
        f'<text x="{MARGIN_L + plot_w / 2}" y="{HEIGHT - 12}" text-anchor="middle">evaluations</text>'
    )

    if marker is not None and x_min <= marker <= x_max:
        px = sx(marker)
        parts.append(
            f'<line x1="{_fmt(px)}" y1="{MARGIN_T}" x2="{_fmt(px)}" y2="{y0}" '
            'stroke="black" stroke-dasharray="6,4"/>'
        )

    for k, s in enumerate(series):
        colour = PALETTE[k % len(PALETTE)]
        rows = s.defined_rows()
        if not rows:
            continue
        band = [(sx(x), sy(q1)) for x, _, q1, _ in rows] + [
            (sx(x), sy(q3)) for x, _, _, q3 in reversed(rows)
        ]
        band_pts = " ".join(f"{_fmt(px)},{_fmt(py)}" for px, py in band)
        parts.append(f'<polygon points="{band_pts}" fill="{colour}" fill-opacity="0.2"/>')
        line_pts = " ".join(f"{_fmt(sx(x))},{_fmt(sy(med))}" for x, med, _, _ in rows)
        parts.append(
            f'<polyline points="{line_pts}" fill="none" stroke="{colour}" stroke-width="1.5"/>'
        )
        for x, med, _, _ in rows:
            parts.append(
                f'<circle cx="{_fmt(sx(x))}" cy="{_fmt(sy(med))}" r="3" fill="{colour}"/>'
            )
        ly = MARGIN_T + 16 + 16 * k
        parts.append(
            f'<line x1="{x0 + plot_w - 150}" y1="{ly - 4}" x2="{x0 + plot_w - 125}" '
            f'y2="{ly - 4}" stroke="{colour}" stroke-width="2"/>'
        )
        parts.append(
            f'<text x="{x0 + plot_w - 120}" y="{ly}">{escape(s.label)}</text>'
        )

    parts.append("</svg>")
    return "\n".join(parts) + "\n"
