"""Minimal line-plot SVG writer (no plotting library needed).

Each data series becomes exactly one ``<polyline>``; axes, ticks and the
legend use only ``<line>``, ``<rect>`` and ``<text>`` elements.
"""

from dataclasses import dataclass, field
from xml.sax.saxutils import escape

import numpy as np

WIDTH, HEIGHT = 640, 440
MARGIN = dict(left=80, right=170, top=40, bottom=60)
PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f")


@dataclass
class Series:
    label: str
    x: np.ndarray
    y: np.ndarray
    dashed: bool = False
    color: str = None


@dataclass
class Plot:
    title: str
    xlabel: str
    ylabel: str
    logx: bool = False
    logy: bool = False
    series: list = field(default_factory=list)

    def add(self, label, x, y, *, dashed=False, color=None):
        self.series.append(Series(label, np.asarray(x, float), np.asarray(y, float), dashed, color))
        return self


def _fmt(v):
    return f"{v:.2f}"


def _tick_label(v, log):
    if log:
        return f"1e{int(round(np.log10(v)))}"
    return f"{v:.3g}"


def _ticks(lo, hi, log):
    if log:
        return [10.0**k for k in range(int(np.ceil(lo)), int(np.floor(hi)) + 1)]
    span = hi - lo
    step = 10 ** np.floor(np.log10(span / 5)) if span > 0 else 1.0
    for mult in (1, 2, 5, 10):
        if span / (step * mult) <= 6:
            step *= mult
            break
    return list(np.arange(np.ceil(lo / step) * step, hi + 0.5 * step, step))


def _transform(v, log):
    v = np.asarray(v, float)
    if log:
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.where(v > 0, np.log10(np.where(v > 0, v, 1.0)), np.nan)
    return v


def render(plot):
    """SVG document for ``plot`` as a string."""
    xs = [_transform(s.x, plot.logx) for s in plot.series]
    ys = [_transform(s.y, plot.logy) for s in plot.series]
    finite_x = np.concatenate([x[np.isfinite(x) & np.isfinite(y)] for x, y in zip(xs, ys)] or [[0.0]])
    finite_y = np.concatenate([y[np.isfinite(x) & np.isfinite(y)] for x, y in zip(xs, ys)] or [[0.0]])
    if finite_x.size == 0:
        finite_x = finite_y = np.array([0.0])
    x0, x1 = float(finite_x.min()), float(finite_x.max())
    y0, y1 = float(finite_y.min()), float(finite_y.max())
    if x1 == x0:
        x0, x1 = x0 - 0.5, x1 + 0.5
    if y1 == y0:
        y0, y1 = y0 - 0.5, y1 + 0.5
    pad = 0.04 * (y1 - y0)
    y0, y1 = y0 - pad, y1 + pad

    left, top = MARGIN["left"], MARGIN["top"]
    pw = WIDTH - MARGIN["left"] - MARGIN["right"]
    ph = HEIGHT - MARGIN["top"] - MARGIN["bottom"]

    def px(x):
        return left + (x - x0) / (x1 - x0) * pw

    def py(y):
        return top + ph - (y - y0) / (y1 - y0) * ph

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<text x="{left + pw / 2:.1f}" y="22" text-anchor="middle" font-size="14">{escape(plot.title)}</text>',
        f'<rect x="{left}" y="{top}" width="{pw}" height="{ph}" fill="none" stroke="black"/>',
    ]
    for t in _ticks(x0, x1, plot.logx):
        tx = np.log10(t) if plot.logx else t
        if x0 <= tx <= x1:
            X = px(tx)
            out.append(f'<line x1="{_fmt(X)}" y1="{top + ph}" x2="{_fmt(X)}" y2="{top + ph + 5}" stroke="black"/>')
            out.append(f'<text x="{_fmt(X)}" y="{top + ph + 18}" text-anchor="middle">'
                       f'{escape(_tick_label(t, plot.logx))}</text>')
    for t in _ticks(y0, y1, plot.logy):
        ty = np.log10(t) if plot.logy else t
        if y0 <= ty <= y1:
            Y = py(ty)
            out.append(f'<line x1="{left - 5}" y1="{_fmt(Y)}" x2="{left}" y2="{_fmt(Y)}" stroke="black"/>')
            out.append(f'<text x="{left - 8}" y="{_fmt(Y + 4)}" text-anchor="end">'
                       f'{escape(_tick_label(t, plot.logy))}</text>')
    out.append(f'<text x="{left + pw / 2:.1f}" y="{HEIGHT - 15}" text-anchor="middle">{escape(plot.xlabel)}</text>')
    out.append(f'<text x="18" y="{top + ph / 2:.1f}" text-anchor="middle" '
               f'transform="rotate(-90 18 {top + ph / 2:.1f})">{escape(plot.ylabel)}</text>')

    for i, (s, x, y) in enumerate(zip(plot.series, xs, ys)):
        color = s.color or PALETTE[i % len(PALETTE)]
        ok = np.isfinite(x) & np.isfinite(y)
        pts = " ".join(f"{_fmt(px(a))},{_fmt(py(b))}" for a, b in zip(x[ok], y[ok]))
        dash = ' stroke-dasharray="6,4"' if s.dashed else ""
        out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5"{dash} points="{pts}">'
                   f'<title>{escape(s.label)}</title></polyline>')
        ly = top + 14 + 18 * i
        lx = left + pw + 12
        out.append(f'<line x1="{lx}" y1="{ly}" x2="{lx + 24}" y2="{ly}" stroke="{color}" stroke-width="1.5"{dash}/>')
        out.append(f'<text class="legend" x="{lx + 30}" y="{ly + 4}">{escape(s.label)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
