"""Deterministic SVG rendering of planar polytopes.

Coordinates are written in polytope units (the y axis flipped through a
transform) as exact rationals rounded to six decimals, so identical
inputs always give byte-identical files.
"""
from fractions import Fraction
from math import floor, ceil

from .geometry.polytope import edges

PRECISION = 6


def fmt(x):
    """Decimal rendering of a rational at fixed precision (half-even rounding)."""
    q = round(Fraction(x) * 10**PRECISION)
    sign = "-" if q < 0 else ""
    q = abs(q)
    return f"{sign}{q // 10**PRECISION}.{q % 10**PRECISION:0{PRECISION}d}"


def cyclic_vertices(P):
    """Vertices of a polygon in boundary order, starting from the smallest."""
    if P.dim != 2:
        raise ValueError("only polygons can be drawn")
    adj = {i: [] for i in range(len(P.vertices))}
    for i, j in edges(P):
        adj[i].append(j)
        adj[j].append(i)
    order = [0]
    prev = None
    while len(order) < len(P.vertices):
        cur = order[-1]
        nxt = min(j for j in adj[cur] if j != prev)
        prev = cur
        order.append(nxt)
    pts = [P.vertices[i] for i in order]
    # orient counter-clockwise in polytope coordinates
    area2 = sum(a[0] * b[1] - a[1] * b[0] for a, b in zip(pts, pts[1:] + pts[:1]))
    if area2 < 0:
        pts = [pts[0]] + pts[:0:-1]
    return pts


def _points_attr(pts):
    return " ".join(f"{fmt(x)},{fmt(y)}" for x, y in pts)


def render(P, levels=(), dots=(), grid=False, title=None):
    """SVG document with the boundary of ``P`` and one polygon per level polytope.

    ``levels`` is a sequence of ``(label, polygon)`` pairs; ``dots`` are
    lattice points drawn as filled circles.
    """
    xs = [v[0] for v in P.vertices]
    ys = [v[1] for v in P.vertices]
    lo_x, hi_x = floor(min(xs)) - 1, ceil(max(xs)) + 1
    lo_y, hi_y = floor(min(ys)) - 1, ceil(max(ys)) + 1
    w, h = hi_x - lo_x, hi_y - lo_y
    stroke = fmt(Fraction(max(w, h), 200))
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{100 * w}" height="{100 * h}" '
        f'viewBox="{lo_x} {-hi_y} {w} {h}">',
    ]
    if title:
        out.append(f"  <title>{_escape(title)}</title>")
    out.append(f'  <g transform="scale(1,-1)" fill="none" stroke-width="{stroke}">')
    if grid:
        out.append('    <g class="grid" stroke="#cccccc">')
        for x in range(lo_x, hi_x + 1):
            out.append(f'      <line x1="{x}" y1="{lo_y}" x2="{x}" y2="{hi_y}"/>')
        for y in range(lo_y, hi_y + 1):
            out.append(f'      <line x1="{lo_x}" y1="{y}" x2="{hi_x}" y2="{y}"/>')
        out.append("    </g>")
    out.append(f'    <polygon class="boundary" stroke="#000000" points="{_points_attr(cyclic_vertices(P))}"/>')
    for label, Q in levels:
        out.append(f'    <polygon class="level" data-level="{label}" stroke="#1f77b4" '
                   f'points="{_points_attr(cyclic_vertices(Q))}"/>')
    if dots:
        r = fmt(Fraction(max(w, h), 80))
        out.append('    <g class="symmetric-points" fill="#d62728" stroke="none">')
        for x, y in dots:
            out.append(f'      <circle cx="{fmt(x)}" cy="{fmt(y)}" r="{r}"/>')
        out.append("    </g>")
    out.append("  </g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _escape(s):
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
