"""Deterministic SVG drawings of 1D and 2D arrangements."""

from __future__ import annotations

from fractions import Fraction

from ._exact import sqrt_upper
from .bodies import Arrangement, Disk, Interval, Offset, Polygon, Segment
from .geometry import core_info

PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf",
           "#7f7f7f", "#bcbd22"]


class Unrenderable(ValueError):
    pass


def num(x) -> str:
    """Decimal with three digits, truncated toward zero."""
    x = Fraction(x)
    m = abs(x.numerator) * 1000 // x.denominator
    s = "-" if x < 0 and m else ""
    return f"{s}{m // 1000}.{m % 1000:03d}"


def _radius(body) -> Fraction:
    return sqrt_upper(body.rho_sq, 24) if body.rho_sq else Fraction(0)


def _bounds(arr: Arrangement):
    live = [b for b in arr.bodies if not b.is_empty]
    if not live:
        return Fraction(0), Fraction(0), Fraction(1), Fraction(1)
    xs0, ys0, xs1, ys1 = [], [], [], []
    for b in live:
        inf = core_info(b.core)
        r = _radius(b)
        xs0.append(inf.lo[0] - r)
        xs1.append(inf.hi[0] + r)
        if arr.dim == 2:
            ys0.append(inf.lo[1] - r)
            ys1.append(inf.hi[1] + r)
    if arr.dim == 1:
        return min(xs0), Fraction(0), max(xs1), Fraction(len(arr.bodies) + 1)
    return min(xs0), min(ys0), max(xs1), max(ys1)


def _pts(ps) -> str:
    return " ".join(f"{num(p[0])},{num(-p[1])}" for p in ps)


def render(arr: Arrangement) -> str:
    if arr.dim not in (1, 2):
        raise Unrenderable(f"cannot draw a {arr.dim}-dimensional arrangement")
    x0, y0, x1, y1 = _bounds(arr)
    size = max(x1 - x0, y1 - y0, Fraction(1, 1000))
    pad = size / 20
    sw = size / 300
    fs = size / 25
    vb = (x0 - pad, -(y1 + pad), x1 - x0 + 2 * pad, y1 - y0 + 2 * pad)
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="{" ".join(num(v) for v in vb)}" '
        f'width="600" height="{num(600 * vb[3] / vb[2])}">',
    ]
    for k, b in enumerate(arr.bodies):
        if b.is_empty:
            continue
        col = PALETTE[k % len(PALETTE)]
        style = f'fill="{col}" fill-opacity="0.25" stroke="{col}" stroke-width="{num(sw)}"'
        inf = core_info(b.core)
        cx = sum(p[0] for p in inf.points) / len(inf.points)
        cy = sum(p[1] for p in inf.points) / len(inf.points) if arr.dim == 2 else Fraction(k + 1)
        out.append(f'<g id="body{k + 1}">')
        if isinstance(b, Interval):
            h = Fraction(1, 4)
            out.append(f'<rect x="{num(b.lo)}" y="{num(-(cy + h))}" width="{num(b.hi - b.lo)}" '
                       f'height="{num(2 * h)}" {style}/>')
        elif isinstance(b, Disk):
            out.append(f'<circle cx="{num(cx)}" cy="{num(-cy)}" r="{num(_radius(b))}" {style}/>')
        elif isinstance(b, Segment):
            out.append(f'<polyline points="{_pts(inf.points)}" fill="none" stroke="{col}" '
                       f'stroke-width="{num(sw * 2)}" stroke-linecap="round"/>')
        elif isinstance(b, Polygon):
            out.append(f'<polygon points="{_pts(b.vertices)}" {style}/>')
        elif isinstance(b, Offset):
            # the offset is the core swept by a disk: a thick round-joined outline
            r = _radius(b)
            if isinstance(b.base, Interval):
                h = Fraction(1, 4)
                out.append(f'<rect x="{num(b.base.lo - r)}" y="{num(-(cy + h))}" '
                           f'width="{num(b.base.hi - b.base.lo + 2 * r)}" height="{num(2 * h)}" '
                           f'rx="{num(min(r, h))}" {style}/>')
            else:
                ring = list(b.base.vertices) if isinstance(b.base, Polygon) else list(inf.points)
                tag = "polygon" if len(ring) > 2 else "polyline"
                out.append(f'<{tag} points="{_pts(ring)}" fill="{col}" fill-opacity="0.25" stroke="{col}" '
                           f'stroke-opacity="0.25" stroke-width="{num(2 * r)}" stroke-linejoin="round" '
                           f'stroke-linecap="round"/>')
        out.append(f'<text x="{num(cx)}" y="{num(-cy)}" font-size="{num(fs)}" text-anchor="middle" '
                   f'fill="black">{k + 1}</text>')
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
