"""Minimal SVG line plot: negativity solid red, CCNR dashed blue."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence
from xml.sax.saxutils import escape

import numpy as np

from .errors import EmptySweepError
from .sweep import SweepRecord, atomic_write_text


@dataclass(frozen=True)
class PlotOptions:
    title: str = "Negativity and CCNR"
    x_label: str = "t/T"
    width: int = 640
    height: int = 400
    ticks: int = 5


_MARGIN_L, _MARGIN_R, _MARGIN_T, _MARGIN_B = 70, 20, 40, 50


def _tick_values(lo: float, hi: float, n: int) -> np.ndarray:
    return np.linspace(lo, hi, n)


def _num(v: float) -> str:
    return f"{v:.4g}"


def svg_text(records: Sequence[SweepRecord], options: PlotOptions = PlotOptions()) -> str:
    if not records:
        raise EmptySweepError("no records to plot")
    x = np.array([r.x for r in records], dtype=float)
    neg = np.array([r.negativity for r in records], dtype=float)
    cc = np.array([r.ccnr for r in records], dtype=float)

    x_lo, x_hi = float(x.min()), float(x.max())
    if x_hi == x_lo:
        x_hi = x_lo + 1.0
    # y range always includes the zero axis.
    y_lo = min(0.0, float(neg.min()), float(cc.min()))
    y_hi = max(0.0, float(neg.max()), float(cc.max()))
    if y_hi - y_lo < 1e-12:
        y_hi = y_lo + 1.0

    w, h = options.width, options.height
    pw = w - _MARGIN_L - _MARGIN_R
    ph = h - _MARGIN_T - _MARGIN_B

    def px(v):
        return _MARGIN_L + (v - x_lo) / (x_hi - x_lo) * pw

    def py(v):
        return _MARGIN_T + (y_hi - v) / (y_hi - y_lo) * ph

    def points(ys):
        return " ".join(f"{px(a):.3f},{py(b):.3f}" for a, b in zip(x, ys))

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">',
        f'<rect x="0" y="0" width="{w}" height="{h}" fill="white"/>',
        f'<text x="{w / 2:.1f}" y="{_MARGIN_T / 2 + 6:.1f}" text-anchor="middle" font-family="sans-serif" font-size="15">{escape(options.title)}</text>',
        f'<line x1="{_MARGIN_L}" y1="{_MARGIN_T}" x2="{_MARGIN_L}" y2="{_MARGIN_T + ph}" stroke="black"/>',
        f'<line x1="{_MARGIN_L}" y1="{_MARGIN_T + ph}" x2="{_MARGIN_L + pw}" y2="{_MARGIN_T + ph}" stroke="black"/>',
        f'<line x1="{_MARGIN_L}" y1="{py(0.0):.3f}" x2="{_MARGIN_L + pw}" y2="{py(0.0):.3f}" stroke="#999" stroke-width="0.5"/>',
    ]
    for v in _tick_values(x_lo, x_hi, options.ticks):
        out.append(f'<line x1="{px(v):.3f}" y1="{_MARGIN_T + ph}" x2="{px(v):.3f}" y2="{_MARGIN_T + ph + 5}" stroke="black"/>')
        out.append(
            f'<text x="{px(v):.3f}" y="{_MARGIN_T + ph + 18}" text-anchor="middle" font-family="sans-serif" font-size="11">{_num(v)}</text>'
        )
    for v in _tick_values(y_lo, y_hi, options.ticks):
        out.append(f'<line x1="{_MARGIN_L - 5}" y1="{py(v):.3f}" x2="{_MARGIN_L}" y2="{py(v):.3f}" stroke="black"/>')
        out.append(
            f'<text x="{_MARGIN_L - 8}" y="{py(v) + 4:.3f}" text-anchor="end" font-family="sans-serif" font-size="11">{_num(v)}</text>'
        )
    out.append(
        f'<text x="{_MARGIN_L + pw / 2:.1f}" y="{h - 10}" text-anchor="middle" font-family="sans-serif" font-size="12">{escape(options.x_label)}</text>'
    )
    out.append(f'<polyline class="negativity" fill="none" stroke="red" stroke-width="1.5" points="{points(neg)}"/>')
    out.append(
        f'<polyline class="ccnr" fill="none" stroke="blue" stroke-width="1.5" stroke-dasharray="6,4" points="{points(cc)}"/>'
    )
    lx = _MARGIN_L + pw - 110
    out.append(f'<line x1="{lx}" y1="{_MARGIN_T + 12}" x2="{lx + 25}" y2="{_MARGIN_T + 12}" stroke="red" stroke-width="1.5"/>')
    out.append(f'<text x="{lx + 30}" y="{_MARGIN_T + 16}" font-family="sans-serif" font-size="11">N</text>')
    out.append(
        f'<line x1="{lx}" y1="{_MARGIN_T + 28}" x2="{lx + 25}" y2="{_MARGIN_T + 28}" stroke="blue" stroke-width="1.5" stroke-dasharray="6,4"/>'
    )
    out.append(f'<text x="{lx + 30}" y="{_MARGIN_T + 32}" font-family="sans-serif" font-size="11">CCNR</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_svg(records: Sequence[SweepRecord], destination, options: PlotOptions = PlotOptions()):
    return atomic_write_text(destination, svg_text(records, options))
