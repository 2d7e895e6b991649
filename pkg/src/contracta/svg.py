"""Deterministic SVG rendering of nested planar sets.

Output bytes are a pure function of the input sets: vertices are ordered by
angle, floats formatted at fixed precision, and sets drawn outermost first
(sorted by circumscribed radius) so smaller sets stay visible.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DimensionError
from .polytope import CSetPolytope, outer_radius, vertices

_PALETTE = ("#4878a8", "#e49444", "#5ba053", "#bf5b5b", "#8268a8", "#767676")
_CANVAS = 480.0
_MARGIN = 20.0


def _fmt(value: float) -> str:
    out = f"{value:.4f}"
    return "0.0000" if out == "-0.0000" else out


def _ordered_vertices(p: CSetPolytope) -> list[np.ndarray]:
    verts = vertices(p)
    return sorted(verts, key=lambda v: math.atan2(v[1], v[0]))


def render_svg(sets: list[CSetPolytope], path: str) -> None:
    """Write nested 2-D sets as an SVG file with polygon and vertex outlines."""
    for p in sets:
        if p.dim != 2:
            raise DimensionError("SVG rendering requires 2-D sets")
    ordered = sorted(sets, key=outer_radius, reverse=True) if sets else []
    radius = max((outer_radius(p) for p in ordered), default=1.0)
    span = 2.0 * radius
    unit = (_CANVAS - 2.0 * _MARGIN) / span

    def to_px(point):
        x = _MARGIN + (point[0] + radius) * unit
        y = _MARGIN + (radius - point[1]) * unit
        return x, y

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{int(_CANVAS)}" '
        f'height="{int(_CANVAS)}" viewBox="0 0 {int(_CANVAS)} {int(_CANVAS)}">',
        f'<rect width="{int(_CANVAS)}" height="{int(_CANVAS)}" fill="#ffffff"/>',
    ]
    for idx, p in enumerate(ordered):
        color = _PALETTE[idx % len(_PALETTE)]
        pts = [to_px(v) for v in _ordered_vertices(p)]
        joined = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in pts)
        lines.append(
            f'<polygon points="{joined}" fill="{color}" fill-opacity="0.25" '
            f'stroke="{color}" stroke-width="1.5"/>'
        )
        for x, y in pts:
            lines.append(
                f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="2.5" fill="{color}"/>'
            )
    lines.append("</svg>")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
