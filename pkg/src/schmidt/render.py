"""Deterministic SVG rendering of arrangements.

Exact data goes in, floats come out only at the last step; circles are
emitted in canonical key order and floats printed with 9 significant
digits, so identical requests produce byte-identical files.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from math import isqrt

from .arrangement import Window, enumerate_arrangement, ghost_circle
from .circle import OrientedCircle
from .quadint import Discriminant

_PALETTE = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
    "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f",
]


@dataclass(frozen=True)
class RenderSpec:
    """Figure parameters; identical specs yield byte-identical SVG."""

    window: Window
    bound: int = 20
    absolute_bound: bool = False
    width_px: int = 800
    stroke_scale: float = 0.01
    color: str = "#18186b"
    color_by_curv: bool = False
    include_lines: bool = True
    show_ghost: bool = False


def _fmt(v: float) -> str:
    s = f"{v:.9g}"
    return "0" if s == "-0" else s


def reduced_bound(ctx: Discriminant, bound: int, absolute: bool) -> int:
    """Reduced curvature cut-off; an absolute bound caps f*sqrt(-D)."""
    if not absolute:
        return bound
    return isqrt(bound * bound // (-ctx.delta))


def render_svg(ctx: Discriminant, spec: RenderSpec) -> tuple[str, int]:
    """Render the windowed arrangement; returns (svg text, circle count)."""
    w = spec.window
    fmax = reduced_bound(ctx, spec.bound, spec.absolute_bound)
    circles = enumerate_arrangement(ctx, fmax, w, include_lines=spec.include_lines)
    im = math.sqrt(-ctx.delta) / 2.0

    x0, x1 = float(w.x0), float(w.x1)
    ya0, ya1 = float(w.y0) * im, float(w.y1) * im
    scale = spec.width_px / (x1 - x0)
    height = (ya1 - ya0) * scale

    def to_px(x: float, y_actual: float) -> tuple[float, float]:
        return (x - x0) * scale, height - (y_actual - ya0) * scale

    def stroke(radius_px: float) -> float:
        return max(0.2, spec.stroke_scale * radius_px)

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(spec.width_px)}" '
        f'height="{_fmt(height)}" viewBox="0 0 {_fmt(spec.width_px)} {_fmt(height)}">',
        f'<rect width="{_fmt(spec.width_px)}" height="{_fmt(height)}" fill="#ffffff"/>',
    ]
    count = 0
    for c in circles:
        count += 1
        color = _PALETTE[abs(c.curv_red) % len(_PALETTE)] if spec.color_by_curv else spec.color
        if c.is_line():
            seg = _clip_line(c, w)
            if seg is None:
                continue
            (ax, ay), (bx, by) = seg
            pax, pay = to_px(ax, ay * im)
            pbx, pby = to_px(bx, by * im)
            # lines get the stroke of the largest proper circle (f = 1)
            parts.append(
                f'<line x1="{_fmt(pax)}" y1="{_fmt(pay)}" x2="{_fmt(pbx)}" y2="{_fmt(pby)}" '
                f'stroke="{color}" stroke-width="{_fmt(stroke(scale / (2.0 * im)))}" fill="none"/>'
            )
        else:
            x, y = c.center_xy()
            px, py = to_px(float(x), float(y) * im)
            r = scale / (abs(c.curv_red) * 2.0 * im)
            parts.append(
                f'<circle cx="{_fmt(px)}" cy="{_fmt(py)}" r="{_fmt(r)}" '
                f'stroke="{color}" stroke-width="{_fmt(stroke(r))}" fill="none"/>'
            )
    if spec.show_ghost:
        g = ghost_circle(ctx)
        if g is not None:
            gx, gy = g.center_float
            px, py = to_px(gx, gy)
            r = g.radius_float * scale
            parts.append(
                f'<circle cx="{_fmt(px)}" cy="{_fmt(py)}" r="{_fmt(r)}" '
                f'stroke="#cc0000" stroke-width="{_fmt(max(0.6, stroke(r)))}" '
                f'stroke-dasharray="6 3" fill="none"/>'
            )
    parts.append("</svg>")
    return "\n".join(parts) + "\n", count


def _clip_line(c: OrientedCircle, w: Window):
    """Clip the line -q*x + re*y = k to the window; window coordinates."""
    z = c.zeta
    q = float(z.b)
    re = z.a + z.b * (c.disc % 4) / 2.0
    k = float(c.cocurv_red)
    x0, x1, y0, y1 = float(w.x0), float(w.x1), float(w.y0), float(w.y1)
    pts = []
    if abs(re) > 1e-12:
        for xc in (x0, x1):
            y = (k + q * xc) / re
            if y0 - 1e-9 <= y <= y1 + 1e-9:
                pts.append((xc, y))
    if abs(q) > 1e-12:
        for yc in (y0, y1):
            x = (re * yc - k) / q
            if x0 - 1e-9 <= x <= x1 + 1e-9:
                pts.append((x, yc))
    uniq = []
    for p in pts:
        if all(abs(p[0] - u[0]) + abs(p[1] - u[1]) > 1e-9 for u in uniq):
            uniq.append(p)
    if len(uniq) < 2:
        return None
    uniq.sort()
    return uniq[0], uniq[-1]
