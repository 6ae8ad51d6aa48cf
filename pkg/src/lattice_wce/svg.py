"""Minimal standalone SVG line plots for the scaled T_N profiles."""

from __future__ import annotations

import math
from typing import Mapping, Sequence
from xml.sax.saxutils import escape

_COLOURS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


def _nice_ticks(lo: float, hi: float, count: int = 6) -> list[float]:
    span = hi - lo
    if span <= 0:
        return [lo]
    raw = span / count
    mag = 10 ** math.floor(math.log10(raw))
    step = min((m * mag for m in (1, 2, 5, 10) if m * mag >= raw), default=10 * mag)
    first = math.ceil(lo / step) * step
    ticks = []
    t = first
    while t <= hi + 1e-9 * span:
        ticks.append(round(t, 12))
        t += step
    return ticks


def _fmt(v: float) -> str:
    return f"{v:g}"


def line_plot(
    series: Mapping[str, tuple[Sequence[float], Sequence[float]]],
    *,
    title: str = "",
    xlabel: str = "",
    ylabel: str = "",
    log_y: bool = True,
    hline: float | None = None,
    vline: float | None = None,
    width: int = 800,
    height: int = 500,
) -> str:
    """Render named (x, y) series as polylines in one SVG 1.1 document.

    Points landing on the same pixel as their predecessor are dropped, which
    keeps documents small for profiles with ~10^5 entries.
    """
    left, right, top, bottom = 80, 20, 40, 60
    pw, ph = width - left - right, height - top - bottom
    xs_all = [x for xs, _ in series.values() for x in xs]
    ys_all = [y for _, ys in series.values() for y in ys if not log_y or y > 0]
    x_lo, x_hi = 0.0, max(xs_all) if xs_all else 1.0
    if log_y:
        y_lo = math.floor(math.log10(min(ys_all))) if ys_all else 0
        y_hi = math.ceil(math.log10(max(ys_all))) if ys_all else 1
        if y_hi == y_lo:
            y_hi += 1
    else:
        y_lo, y_hi = min(ys_all + [0.0]), max(ys_all + [1.0])

    def px(x: float) -> float:
        return left + (x - x_lo) / (x_hi - x_lo or 1.0) * pw

    def py(y: float) -> float:
        v = math.log10(y) if log_y else y
        return top + ph - (v - y_lo) / (y_hi - y_lo) * ph

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" '
        f'height="{height}" viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="12">',
        f'<rect x="{left}" y="{top}" width="{pw}" height="{ph}" fill="none" stroke="black"/>',
    ]
    if title:
        out.append(f'<text x="{width / 2}" y="24" text-anchor="middle" font-size="14">{escape(title)}</text>')
    for t in _nice_ticks(x_lo, x_hi):
        x = px(t)
        out.append(f'<line x1="{x:.1f}" y1="{top + ph}" x2="{x:.1f}" y2="{top + ph + 5}" stroke="black"/>')
        out.append(f'<text x="{x:.1f}" y="{top + ph + 18}" text-anchor="middle">{_fmt(t)}</text>')
    if log_y:
        yticks = [(10.0 ** e, f"1e{e}") for e in range(int(y_lo), int(y_hi) + 1)]
    else:
        yticks = [(t, _fmt(t)) for t in _nice_ticks(y_lo, y_hi)]
    for t, label in yticks:
        y = py(t)
        out.append(f'<line x1="{left - 5}" y1="{y:.1f}" x2="{left}" y2="{y:.1f}" stroke="black"/>')
        out.append(f'<text x="{left - 8}" y="{y + 4:.1f}" text-anchor="end">{label}</text>')
    out.append(
        f'<text x="{left + pw / 2}" y="{height - 15}" text-anchor="middle">{escape(xlabel)}</text>'
    )
    out.append(
        f'<text x="18" y="{top + ph / 2}" text-anchor="middle" '
        f'transform="rotate(-90 18 {top + ph / 2})">{escape(ylabel)}</text>'
    )
    if hline is not None and (not log_y or hline > 0):
        y = py(hline)
        out.append(f'<line x1="{left}" y1="{y:.1f}" x2="{left + pw}" y2="{y:.1f}" stroke="gray" stroke-dasharray="4 3"/>')
    if vline is not None and x_lo <= vline <= x_hi:
        x = px(vline)
        out.append(f'<line x1="{x:.1f}" y1="{top}" x2="{x:.1f}" y2="{top + ph}" stroke="gray" stroke-dasharray="4 3"/>')
    for i, (name, (xs, ys)) in enumerate(series.items()):
        colour = _COLOURS[i % len(_COLOURS)]
        pts = []
        last = None
        for x, y in zip(xs, ys):
            if log_y and y <= 0:
                continue
            p = (round(px(x), 1), round(py(y), 1))
            if p != last:
                pts.append(f"{p[0]},{p[1]}")
                last = p
        out.append(f'<polyline fill="none" stroke="{colour}" stroke-width="1.2" points="{" ".join(pts)}"/>')
        ly = top + 16 + 16 * i
        out.append(f'<line x1="{left + pw - 120}" y1="{ly}" x2="{left + pw - 100}" y2="{ly}" stroke="{colour}" stroke-width="2"/>')
        out.append(f'<text x="{left + pw - 95}" y="{ly + 4}">{escape(name)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
