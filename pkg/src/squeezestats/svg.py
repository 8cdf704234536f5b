"""Minimal SVG emitters for line plots and heat maps.

Plots are for inspection only; nothing compares SVG bytes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

_DASHES = {"solid": None, "dashed": "8,4", "dotted": "2,3"}


@dataclass
class Series:
    x: Sequence[float]
    y: Sequence[float]
    label: str
    style: str = "solid"


@dataclass
class _Frame:
    left: float = 70
    top: float = 30
    width: float = 520
    height: float = 340
    parts: list = field(default_factory=list)


def _header(width: float, height: float) -> list[str]:
    return [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:g}" height="{height:g}" '
        f'viewBox="0 0 {width:g} {height:g}" font-family="sans-serif" font-size="12">',
        f'<rect width="{width:g}" height="{height:g}" fill="white"/>',
    ]


def line_plot_log(series: Sequence[Series], title: str, xlabel: str, ylabel: str) -> str:
    """Lines on a logarithmic y axis; non-positive values are dropped."""
    f = _Frame()
    xs = np.concatenate([np.asarray(s.x, float) for s in series])
    ys = np.concatenate([np.asarray(s.y, float) for s in series])
    ys = ys[ys > 0]
    x0, x1 = float(xs.min()), float(xs.max())
    d0, d1 = math.floor(math.log10(ys.min())), math.ceil(math.log10(ys.max()))
    if d0 == d1:
        d0 -= 1
    x1 = x1 if x1 > x0 else x0 + 1

    def px(x):
        return f.left + (x - x0) / (x1 - x0) * f.width

    def py(y):
        return f.top + (d1 - math.log10(y)) / (d1 - d0) * f.height

    out = _header(f.left + f.width + 180, f.top + f.height + 60)
    out.append(f'<text x="{f.left + f.width / 2:.1f}" y="18" text-anchor="middle">{title}</text>')
    out.append(f'<rect x="{f.left}" y="{f.top}" width="{f.width}" height="{f.height}" fill="none" stroke="black"/>')
    step = max(1, (d1 - d0) // 8)
    for d in range(d0, d1 + 1, step):
        y = py(10.0**d)
        out.append(f'<line x1="{f.left - 4}" y1="{y:.1f}" x2="{f.left}" y2="{y:.1f}" stroke="black"/>')
        out.append(f'<text x="{f.left - 6}" y="{y + 4:.1f}" text-anchor="end">1e{d}</text>')
    for t in np.linspace(x0, x1, 6):
        x = px(t)
        out.append(f'<line x1="{x:.1f}" y1="{f.top + f.height}" x2="{x:.1f}" y2="{f.top + f.height + 4}" stroke="black"/>')
        out.append(f'<text x="{x:.1f}" y="{f.top + f.height + 18}" text-anchor="middle">{t:g}</text>')
    out.append(f'<text x="{f.left + f.width / 2:.1f}" y="{f.top + f.height + 40}" text-anchor="middle">{xlabel}</text>')
    out.append(
        f'<text x="16" y="{f.top + f.height / 2:.1f}" text-anchor="middle" '
        f'transform="rotate(-90 16 {f.top + f.height / 2:.1f})">{ylabel}</text>'
    )
    for i, s in enumerate(series):
        pts = [(px(a), py(b)) for a, b in zip(s.x, s.y) if b > 0]
        path = " ".join(f"{a:.2f},{b:.2f}" for a, b in pts)
        dash = _DASHES.get(s.style)
        dash_attr = f' stroke-dasharray="{dash}"' if dash else ""
        out.append(f'<polyline points="{path}" fill="none" stroke="black" stroke-width="1.5"{dash_attr}/>')
        ly = f.top + 20 + 20 * i
        lx = f.left + f.width + 15
        out.append(f'<line x1="{lx}" y1="{ly}" x2="{lx + 30}" y2="{ly}" stroke="black" stroke-width="1.5"{dash_attr}/>')
        out.append(f'<text x="{lx + 36}" y="{ly + 4}">{s.label}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _color(v: float) -> str:
    # white -> dark blue
    v = min(max(v, 0.0), 1.0)
    r = int(255 * (1 - v))
    g = int(255 * (1 - 0.8 * v))
    b = int(255 * (1 - 0.45 * v))
    return f"#{r:02x}{g:02x}{b:02x}"


def heatmap(values: np.ndarray, title: str, xlabel: str, ylabel: str, cell_size: float = 1.0, log_decades: float | None = None) -> str:
    """Rectangle-per-cell map of a non-negative matrix; rows are ``x``, columns ``y``.

    ``cell_size`` is the photon-number extent of one cell (the bin width).
    With ``log_decades`` the colour scale spans that many decades below the max.
    """
    f = _Frame(width=420, height=420)
    nx, ny = values.shape
    vmax = float(values.max()) if values.size else 0.0
    cw, ch = f.width / nx, f.height / ny
    out = _header(f.left + f.width + 40, f.top + f.height + 60)
    out.append(f'<text x="{f.left + f.width / 2:.1f}" y="18" text-anchor="middle">{title}</text>')
    if vmax > 0:
        with np.errstate(divide="ignore"):
            if log_decades:
                scaled = (np.log10(values / vmax) + log_decades) / log_decades
            else:
                scaled = values / vmax
        for i in range(nx):
            for j in range(ny):
                v = scaled[i, j]
                if not v > 0:
                    continue
                x = f.left + i * cw
                y = f.top + f.height - (j + 1) * ch
                out.append(f'<rect x="{x:.2f}" y="{y:.2f}" width="{cw + 0.05:.2f}" height="{ch + 0.05:.2f}" fill="{_color(v)}"/>')
    out.append(f'<rect x="{f.left}" y="{f.top}" width="{f.width}" height="{f.height}" fill="none" stroke="black"/>')
    for t in np.linspace(0, nx, 6):
        x = f.left + t * cw
        out.append(f'<text x="{x:.1f}" y="{f.top + f.height + 16}" text-anchor="middle">{t * cell_size:g}</text>')
    for t in np.linspace(0, ny, 6):
        y = f.top + f.height - t * ch
        out.append(f'<text x="{f.left - 6}" y="{y + 4:.1f}" text-anchor="end">{t * cell_size:g}</text>')
    out.append(f'<text x="{f.left + f.width / 2:.1f}" y="{f.top + f.height + 38}" text-anchor="middle">{xlabel}</text>')
    out.append(
        f'<text x="16" y="{f.top + f.height / 2:.1f}" text-anchor="middle" '
        f'transform="rotate(-90 16 {f.top + f.height / 2:.1f})">{ylabel}</text>'
    )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def side_by_side(*documents: str) -> str:
    """Place complete SVG documents next to each other in one document."""
    widths, heights, bodies = [], [], []
    for doc in documents:
        head, _, rest = doc.partition(">")
        w = float(head.split('width="')[1].split('"')[0])
        h = float(head.split('height="')[1].split('"')[0])
        widths.append(w)
        heights.append(h)
        bodies.append(rest.rsplit("</svg>", 1)[0])
    out = _header(sum(widths), max(heights))
    offset = 0.0
    for w, body in zip(widths, bodies):
        out.append(f'<g transform="translate({offset:g},0)">{body}</g>')
        offset += w
    out.append("</svg>")
    return "\n".join(out) + "\n"
