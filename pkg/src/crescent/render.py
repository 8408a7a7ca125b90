"""Deterministic SVG rendering of realized configurations.

Output is plain hand-assembled SVG: labeled point circles, edges styled per
distance label (distinct stroke color and dash pattern), and a legend mapping
each label to its numeric distance.  The viewBox is autoscaled to the point
bounding box with a 10% margin; all numbers are fixed-format so identical
inputs yield byte-identical files.
"""

from __future__ import annotations

import os
from typing import Mapping, Sequence

from .labelcore import LabelMatrix

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd",
           "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f")
DASHES = ("none", "6,3", "2,2", "8,3,2,3", "1,3", "10,4", "4,4,1,4", "3,1")


def _fmt(x: float) -> str:
    s = f"{x:.6f}"
    return "0.000000" if s == "-0.000000" else s


def _style(label: int) -> tuple[str, str]:
    i = (label - 1) % len(PALETTE)
    return PALETTE[i], DASHES[i]


def render_svg(points: Sequence[Sequence[float]], m: LabelMatrix,
               assignment: Mapping[int, float], title: str = "") -> str:
    """SVG document for one realized configuration."""
    n = m.n
    xs = [float(p[0]) for p in points]
    ys = [-float(p[1]) for p in points]  # svg y axis points down
    xmin, xmax = min(xs), max(xs)
    ymin, ymax = min(ys), max(ys)
    span = max(xmax - xmin, ymax - ymin, 1e-9)
    pad = 0.1 * span
    row_h = 0.09 * span
    legend_h = row_h * (n - 1) + 0.5 * row_h
    vb_x, vb_y = xmin - pad, ymin - pad
    vb_w = (xmax - xmin) + 2 * pad
    vb_h = (ymax - ymin) + 2 * pad + legend_h

    stroke_w = 0.012 * span
    radius = 0.03 * span
    font = 0.07 * span

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" '
        f'viewBox="{_fmt(vb_x)} {_fmt(vb_y)} {_fmt(vb_w)} {_fmt(vb_h)}">',
    ]
    if title:
        out.append(f"<title>{title}</title>")
    out.append('<g fill="none">')
    for i in range(n):
        for j in range(i + 1, n):
            color, dash = _style(m.entries[i][j])
            out.append(
                f'<line x1="{_fmt(xs[i])}" y1="{_fmt(ys[i])}" '
                f'x2="{_fmt(xs[j])}" y2="{_fmt(ys[j])}" '
                f'stroke="{color}" stroke-width="{_fmt(stroke_w)}" '
                f'stroke-dasharray="{dash}"/>'
            )
    out.append("</g>")
    for i in range(n):
        out.append(
            f'<circle cx="{_fmt(xs[i])}" cy="{_fmt(ys[i])}" r="{_fmt(radius)}" '
            f'fill="#ffffff" stroke="#000000" stroke-width="{_fmt(0.5 * stroke_w)}"/>'
        )
        out.append(
            f'<text x="{_fmt(xs[i] + 1.4 * radius)}" y="{_fmt(ys[i] - 1.4 * radius)}" '
            f'font-family="monospace" font-size="{_fmt(font)}" '
            f'fill="#000000">{i + 1}</text>'
        )
    legend_top = ymax + pad + 0.6 * row_h
    for k in range(1, n):
        color, dash = _style(k)
        y = legend_top + (k - 1) * row_h
        out.append(
            f'<line x1="{_fmt(vb_x + pad)}" y1="{_fmt(y)}" '
            f'x2="{_fmt(vb_x + pad + 1.6 * row_h)}" y2="{_fmt(y)}" '
            f'stroke="{color}" stroke-width="{_fmt(stroke_w)}" '
            f'stroke-dasharray="{dash}"/>'
        )
        out.append(
            f'<text x="{_fmt(vb_x + pad + 2.0 * row_h)}" y="{_fmt(y + 0.3 * font)}" '
            f'font-family="monospace" font-size="{_fmt(font)}" '
            f'fill="#000000">d{k} = {_fmt(float(assignment[k]))}</text>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_census(census, out_dir: str) -> list[str]:
    """One class_<id>.svg per realized class; returns the written paths."""
    os.makedirs(out_dir, exist_ok=True)
    written = []
    for c in census.classes:
        if not c.realizable:
            continue
        svg = render_svg(c.coordinates, c.representative, c.assignment,
                         title=f"class {c.class_id}")
        path = os.path.join(out_dir, f"class_{c.class_id}.svg")
        with open(path, "w", encoding="utf-8") as f:
            f.write(svg)
        written.append(path)
    return written
