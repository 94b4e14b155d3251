"""Static SVG 1.1 barcodes and persistence diagrams.

Styling is fixed by the constants below. Every drawn element carries a
``class`` attribute so tests and downstream tooling can pick them out:
``axis``, ``tick``, ``diagonal``, ``point``, ``essential``, ``multiplicity``,
``bar``, ``infinity``, plus ``dim-<k>`` on points and bars.
"""

from __future__ import annotations

import math
from typing import Iterable, Optional
from xml.sax.saxutils import escape

import numpy as np

from .persistence import PersistenceDiagram, PersistencePair, build_diagram, format_number

WIDTH = 480
HEIGHT = 480
MARGIN = 56
BAR_HEIGHT = 14
POINT_RADIUS = 4
N_TICKS = 5
DIM_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")
FONT = 'font-family="sans-serif" font-size="11"'

_HEADER = ('<?xml version="1.0" encoding="UTF-8" standalone="no"?>\n'
           '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
           'width="{w}" height="{h}" viewBox="0 0 {w} {h}">\n')

_ARROW_DEF = ('<defs><marker id="arrow" markerWidth="8" markerHeight="8" refX="6" refY="4" '
              'orient="auto" markerUnits="userSpaceOnUse">'
              '<path d="M0,0 L8,4 L0,8 z" fill="#333333"/></marker></defs>\n')


def color(dim: int) -> str:
    return DIM_COLORS[dim % len(DIM_COLORS)]


def _f(x: float) -> str:
    return f"{x:.2f}"


def _range(values: list[float]) -> tuple[float, float]:
    if not values:
        return 0.0, 1.0
    lo, hi = min(0.0, min(values)), max(values)
    if hi <= lo:
        hi = lo + 1.0
    return lo, hi


def _ticks(lo: float, hi: float) -> list[float]:
    return [float(t) for t in np.linspace(lo, hi, N_TICKS)]


def _text(x, y, s, cls, anchor="middle", extra=""):
    return (f'<text class="{cls}" x="{_f(x)}" y="{_f(y)}" text-anchor="{anchor}" {FONT}{extra}>'
            f"{escape(s)}</text>\n")


def render_diagram(diagram: PersistenceDiagram) -> str:
    finite = [v for q in diagram.points for v in (q.birth, q.death) if math.isfinite(v)]
    lo, hi = _range(finite)
    has_inf = any(math.isinf(q.death) for q in diagram.points)
    if diagram.infinity_cap is not None:
        cap = max(diagram.infinity_cap, hi)
    else:
        cap = hi + 0.1 * (hi - lo)
    top = cap if has_inf else hi
    span = top - lo
    plot = WIDTH - 2 * MARGIN

    def sx(v):
        return MARGIN + (v - lo) / span * plot

    def sy(v):
        return HEIGHT - MARGIN - (v - lo) / span * plot

    out = [_HEADER.format(w=WIDTH, h=HEIGHT)]
    out.append(f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>\n')
    x0, y0, x1, y1 = sx(lo), sy(lo), sx(top), sy(top)
    out.append(f'<line class="axis" x1="{_f(x0)}" y1="{_f(y0)}" x2="{_f(x1)}" y2="{_f(y0)}" stroke="black"/>\n')
    out.append(f'<line class="axis" x1="{_f(x0)}" y1="{_f(y0)}" x2="{_f(x0)}" y2="{_f(y1)}" stroke="black"/>\n')
    for t in _ticks(lo, hi):
        out.append(_text(sx(t), y0 + 16, format_number(round(t, 6)), "tick"))
        out.append(_text(x0 - 6, sy(t) + 4, format_number(round(t, 6)), "tick", anchor="end"))
    out.append(_text((x0 + x1) / 2, HEIGHT - 14, "birth", "label"))
    out.append(_text(16, (y0 + y1) / 2, "death", "label",
                     extra=f' transform="rotate(-90 16 {_f((y0 + y1) / 2)})"'))
    out.append(f'<line id="diagonal" class="diagonal" x1="{_f(x0)}" y1="{_f(y0)}" '
               f'x2="{_f(x1)}" y2="{_f(y1)}" stroke="#888888" stroke-dasharray="4 3"/>\n')
    if has_inf:
        out.append(f'<line class="infinity" x1="{_f(x0)}" y1="{_f(sy(cap))}" x2="{_f(x1)}" '
                   f'y2="{_f(sy(cap))}" stroke="#888888" stroke-dasharray="1 3"/>\n')
        out.append(_text(x0 - 6, sy(cap) + 4, "∞", "tick", anchor="end"))

    for q in diagram.points:
        essential = math.isinf(q.death)
        cx, cy = sx(q.birth), sy(cap if essential else q.death)
        cls = f"point dim-{q.dim}" + (" essential" if essential else "")
        death = "inf" if essential else format_number(q.death)
        title = f"H{q.dim} ({format_number(q.birth)}, {death}) x{q.multiplicity}"
        out.append(f'<circle class="{cls}" cx="{_f(cx)}" cy="{_f(cy)}" r="{POINT_RADIUS}" '
                   f'fill="{color(q.dim)}"><title>{escape(title)}</title></circle>\n')
        if essential:
            out.append(f'<path class="essential-mark" d="M{_f(cx - 4)},{_f(cy - 6)} L{_f(cx)},{_f(cy - 12)} '
                       f'L{_f(cx + 4)},{_f(cy - 6)} z" fill="{color(q.dim)}"/>\n')
        if q.multiplicity > 1:
            out.append(_text(cx + 7, cy - 5, str(q.multiplicity), "multiplicity", anchor="start"))

    dims = sorted({q.dim for q in diagram.points})
    for n, k in enumerate(dims):
        out.append(f'<circle class="legend" cx="{_f(WIDTH - MARGIN - 40)}" cy="{_f(MARGIN + 14 * n)}" '
                   f'r="{POINT_RADIUS}" fill="{color(k)}"/>\n')
        out.append(_text(WIDTH - MARGIN - 32, MARGIN + 14 * n + 4, f"H{k}", "legend-label", anchor="start"))
    out.append("</svg>\n")
    return "".join(out)


def render_barcode(pairs: Iterable[PersistencePair]) -> str:
    bars = sorted(pairs)
    finite = [v for q in bars for v in (q.birth, q.death) if math.isfinite(v)]
    lo, hi = _range(finite)
    right = WIDTH - MARGIN
    plot = right - MARGIN - 16  # room for arrowheads of infinite bars
    height = max(HEIGHT // 2, 2 * MARGIN + BAR_HEIGHT * (len(bars) + len({q.dim for q in bars})))

    def sx(v):
        return MARGIN + (v - lo) / (hi - lo) * plot

    out = [_HEADER.format(w=WIDTH, h=height), _ARROW_DEF]
    out.append(f'<rect x="0" y="0" width="{WIDTH}" height="{height}" fill="white"/>\n')
    base = height - MARGIN
    out.append(f'<line class="axis" x1="{MARGIN}" y1="{base}" x2="{right}" y2="{base}" stroke="black"/>\n')
    for t in _ticks(lo, hi):
        out.append(f'<line class="tick-mark" x1="{_f(sx(t))}" y1="{base}" x2="{_f(sx(t))}" '
                   f'y2="{base + 4}" stroke="black"/>\n')
        out.append(_text(sx(t), base + 16, format_number(round(t, 6)), "tick"))
    out.append(_text((MARGIN + right) / 2, height - 14, "scale", "label"))

    y = MARGIN
    prev_dim = None
    for q in bars:
        if q.dim != prev_dim:
            out.append(_text(MARGIN - 8, y + BAR_HEIGHT / 2 + 4, f"H{q.dim}", "legend-label", anchor="end"))
            if prev_dim is not None:
                y += BAR_HEIGHT / 2
            prev_dim = q.dim
        yy = y + BAR_HEIGHT / 2
        if q.essential:
            out.append(f'<line class="bar dim-{q.dim} essential" x1="{_f(sx(q.birth))}" y1="{_f(yy)}" '
                       f'x2="{_f(right - 8)}" y2="{_f(yy)}" stroke="{color(q.dim)}" stroke-width="3" '
                       f'marker-end="url(#arrow)"/>\n')
        else:
            out.append(f'<line class="bar dim-{q.dim}" x1="{_f(sx(q.birth))}" y1="{_f(yy)}" '
                       f'x2="{_f(sx(q.death))}" y2="{_f(yy)}" stroke="{color(q.dim)}" stroke-width="3"/>\n')
        y += BAR_HEIGHT
    out.append("</svg>\n")
    return "".join(out)


def render(pairs: Iterable[PersistencePair], kind: str, infinity_cap: Optional[float] = None) -> str:
    if kind == "diagram":
        return render_diagram(build_diagram(pairs, drop_zero=True, infinity_cap=infinity_cap))
    if kind == "barcode":
        return render_barcode(pairs)
    raise ValueError(f"unknown plot kind {kind!r}")
