"""Minimal static SVG output: line plots and tiles drawn in the Poincare disc."""

from __future__ import annotations

import math
from typing import Iterable, List, Sequence, Tuple
from xml.sax.saxutils import escape

import numpy as np

from .hplane import Geodesic, Isometry, Point

_W, _H, _PAD = 640, 420, 50


def _fmt(x: float) -> str:
    return f"{x:.3f}"


def line_plot(xs: Sequence[float], series: dict, title: str = "", ylog: bool = False) -> str:
    """One polyline per entry of ``series`` (name -> y values)."""
    ys_all = []
    clean = {}
    for name, ys in series.items():
        vals = []
        for y in ys:
            if ylog:
                y = math.log10(abs(y)) if y != 0 else float("nan")
            vals.append(y)
        clean[name] = vals
        ys_all.extend(v for v in vals if math.isfinite(v))
    x0, x1 = min(xs), max(xs)
    y0, y1 = (min(ys_all), max(ys_all)) if ys_all else (0.0, 1.0)
    if y1 == y0:
        y1 = y0 + 1.0
    if x1 == x0:
        x1 = x0 + 1.0

    def sx(x):
        return _PAD + (x - x0) / (x1 - x0) * (_W - 2 * _PAD)

    def sy(y):
        return _H - _PAD - (y - y0) / (y1 - y0) * (_H - 2 * _PAD)

    colours = ["#c0392b", "#2471a3", "#229954", "#7d3c98", "#b9770e"]
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}" font-family="sans-serif" font-size="12">',
        f'<rect width="{_W}" height="{_H}" fill="white"/>',
        f'<line x1="{_PAD}" y1="{_H - _PAD}" x2="{_W - _PAD}" y2="{_H - _PAD}" stroke="black"/>',
        f'<line x1="{_PAD}" y1="{_PAD}" x2="{_PAD}" y2="{_H - _PAD}" stroke="black"/>',
        f'<text x="{_W / 2}" y="20" text-anchor="middle">{escape(title)}</text>',
        f'<text x="{_PAD}" y="{_H - 15}">{_fmt(x0)}</text>',
        f'<text x="{_W - _PAD}" y="{_H - 15}" text-anchor="end">{_fmt(x1)}</text>',
        f'<text x="5" y="{_H - _PAD}">{_fmt(y0)}</text>',
        f'<text x="5" y="{_PAD}">{_fmt(y1)}</text>',
    ]
    for i, (name, vals) in enumerate(clean.items()):
        pts = " ".join(f"{_fmt(sx(x))},{_fmt(sy(y))}" for x, y in zip(xs, vals) if math.isfinite(y))
        col = colours[i % len(colours)]
        parts.append(f'<polyline points="{pts}" fill="none" stroke="{col}" stroke-width="1.5"/>')
        parts.append(f'<text x="{_W - _PAD - 100}" y="{_PAD + 15 * i}" fill="{col}">{escape(name)}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _disc_xy(p) -> Tuple[float, float]:
    x, y, z = np.asarray(p, dtype=float)
    return x / (1 + z), y / (1 + z)


def _segment(a: Point, b: Point, n: int = 24) -> List[Tuple[float, float]]:
    g = Geodesic.through(a, b)
    t1 = g.parameter_of(b)
    return [_disc_xy(g.point_at(t1 * i / n).vec) for i in range(n + 1)]


def disc_tiles(tiles: Iterable[Tuple[Isometry, Sequence[Point]]], title: str = "") -> str:
    """Polygons given by their vertices, each moved by its isometry, in the unit disc."""
    r = (_H - 2 * _PAD) / 2
    cx, cy = _W / 2, _H / 2

    def pt(xy):
        return f"{_fmt(cx + r * xy[0])},{_fmt(cy - r * xy[1])}"

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}" font-family="sans-serif" font-size="12">',
        f'<rect width="{_W}" height="{_H}" fill="white"/>',
        f'<circle cx="{cx}" cy="{cy}" r="{r}" fill="none" stroke="#888"/>',
        f'<text x="{_W / 2}" y="20" text-anchor="middle">{escape(title)}</text>',
    ]
    for g, verts in tiles:
        moved = [g(v) for v in verts]
        for i in range(len(moved)):
            a, b = moved[i], moved[(i + 1) % len(moved)]
            col = "#c0392b" if i % 2 == 0 else "#2471a3"
            pts = " ".join(pt(xy) for xy in _segment(a, b))
            parts.append(f'<polyline points="{pts}" fill="none" stroke="{col}" stroke-width="1.2"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
