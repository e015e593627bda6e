"""Native SVG 1.1 emission for the growth plots (no plotting dependency).

Log-log axes with decade ticks, one polyline per series, inline legend.
Output is a deterministic function of the input series.
"""

from __future__ import annotations

import math

WIDTH, HEIGHT = 720, 480
MARGIN_L, MARGIN_R, MARGIN_T, MARGIN_B = 70, 160, 40, 50

PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"]


def _decades(lo: float, hi: float) -> list[int]:
    return list(range(math.floor(lo), math.ceil(hi) + 1))


def render_loglog_svg(series: list[tuple[str, list[tuple[float, float]]]], title: str) -> str:
    """series: (label, [(x, y), ...]) pairs; points with y <= 0 are dropped
    (they have no place on a log axis)."""
    pts = [
        (math.log10(x), math.log10(y))
        for _, data in series
        for x, y in data
        if x > 0 and y > 0
    ]
    if not pts:
        raise ValueError("nothing to plot: no positive data points")
    lx = [u for u, _ in pts]
    ly = [v for _, v in pts]
    x0, x1 = min(lx), max(lx)
    y0, y1 = min(ly), max(ly)
    if x1 - x0 < 1e-9:
        x0, x1 = x0 - 0.5, x1 + 0.5
    if y1 - y0 < 1e-9:
        y0, y1 = y0 - 0.5, y1 + 0.5
    plot_w = WIDTH - MARGIN_L - MARGIN_R
    plot_h = HEIGHT - MARGIN_T - MARGIN_B

    def px(u: float) -> float:
        return MARGIN_L + (u - x0) / (x1 - x0) * plot_w

    def py(v: float) -> float:
        return MARGIN_T + (y1 - v) / (y1 - y0) * plot_h

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<text x="{WIDTH / 2:.1f}" y="24" text-anchor="middle" font-family="sans-serif" '
        f'font-size="15">{title}</text>',
        f'<rect x="{MARGIN_L}" y="{MARGIN_T}" width="{plot_w}" height="{plot_h}" '
        f'fill="none" stroke="#333"/>',
    ]
    for e in _decades(x0, x1):
        if x0 <= e <= x1:
            xx = px(e)
            out.append(
                f'<line x1="{xx:.2f}" y1="{MARGIN_T}" x2="{xx:.2f}" '
                f'y2="{MARGIN_T + plot_h}" stroke="#ddd"/>'
            )
            out.append(
                f'<text x="{xx:.2f}" y="{MARGIN_T + plot_h + 18}" text-anchor="middle" '
                f'font-family="sans-serif" font-size="11">1e{e}</text>'
            )
    for e in _decades(y0, y1):
        if y0 <= e <= y1:
            yy = py(e)
            out.append(
                f'<line x1="{MARGIN_L}" y1="{yy:.2f}" x2="{MARGIN_L + plot_w}" '
                f'y2="{yy:.2f}" stroke="#ddd"/>'
            )
            out.append(
                f'<text x="{MARGIN_L - 6}" y="{yy + 4:.2f}" text-anchor="end" '
                f'font-family="sans-serif" font-size="11">1e{e}</text>'
            )
    for k, (label, data) in enumerate(series):
        color = PALETTE[k % len(PALETTE)]
        path = " ".join(
            f"{px(math.log10(x)):.2f},{py(math.log10(y)):.2f}"
            for x, y in data
            if x > 0 and y > 0
        )
        if path:
            out.append(
                f'<polyline points="{path}" fill="none" stroke="{color}" stroke-width="1.8"/>'
            )
        ly_leg = MARGIN_T + 16 + 20 * k
        lx_leg = WIDTH - MARGIN_R + 10
        out.append(
            f'<line x1="{lx_leg}" y1="{ly_leg}" x2="{lx_leg + 22}" y2="{ly_leg}" '
            f'stroke="{color}" stroke-width="2.5"/>'
        )
        out.append(
            f'<text x="{lx_leg + 28}" y="{ly_leg + 4}" font-family="sans-serif" '
            f'font-size="12">{label}</text>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"
