"""Plain SVG figures of planar point sets.

Coordinates are written as exact decimals (every dyadic rational has a
finite decimal expansion), with the y axis flipped by a transform rather
than by arithmetic so no value is ever rounded.
"""
from __future__ import annotations

from fractions import Fraction

from .dyadic import Dyadic, DyadicPoint, as_point
from .hull import convex_hull

__all__ = ["render_svg"]


def _dec(x) -> str:
    return Dyadic.coerce(x).to_decimal()


def render_svg(generators, found=(), title: str = "") -> str:
    gens = [as_point(p) for p in generators]
    if any(p.dim != 2 for p in gens):
        raise ValueError("SVG output is only available for planar point sets")
    P = convex_hull(gens)
    lo, hi = P.bounding_box()
    width = max(hi[0] - lo[0], hi[1] - lo[1], Dyadic(1))
    # margin of a tenth of the extent, rounded up to a dyadic so it stays exact
    margin = Dyadic.from_fraction(Fraction(_ceil_dyadic(width.to_fraction() / 10)))
    x0, y0 = lo[0] - margin, lo[1] - margin
    w = hi[0] - lo[0] + margin + margin
    h = hi[1] - lo[1] + margin + margin
    r = Dyadic.from_fraction(_ceil_dyadic(width.to_fraction() / 80))
    stroke = Dyadic.from_fraction(_ceil_dyadic(width.to_fraction() / 200))

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="{_dec(x0)} {_dec(-(y0 + h))} {_dec(w)} {_dec(h)}">',
    ]
    if title:
        out.append(f"  <title>{title}</title>")
    out.append('  <g transform="scale(1,-1)">')
    if P.dim == 2:
        ring = _ordered_ring(P)
        coords = " ".join(f"{_dec(v[0])},{_dec(v[1])}" for v in ring)
        out.append(f'    <polygon points="{coords}" fill="none" stroke="black" stroke-width="{_dec(stroke)}"/>')
    elif P.dim == 1:
        a, b = P.vertices
        out.append(
            f'    <line x1="{_dec(a[0])}" y1="{_dec(a[1])}" x2="{_dec(b[0])}" y2="{_dec(b[1])}" '
            f'stroke="black" stroke-width="{_dec(stroke)}"/>'
        )
    for p in sorted({as_point(q) for q in found}, key=DyadicPoint.sort_key):
        out.append(f'    <circle cx="{_dec(p[0])}" cy="{_dec(p[1])}" r="{_dec(r.half())}" fill="steelblue"/>')
    for p in gens:
        out.append(f'    <circle cx="{_dec(p[0])}" cy="{_dec(p[1])}" r="{_dec(r)}" fill="crimson"/>')
    out.append("  </g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _ceil_dyadic(q: Fraction) -> Fraction:
    """Smallest power of two that is at least ``q``."""
    p = Fraction(1)
    while p < q:
        p *= 2
    while p / 2 >= q:
        p /= 2
    return p


def _ordered_ring(P) -> list[DyadicPoint]:
    """Polygon vertices in boundary order, walking edge to edge."""
    edges = [f.vertex_ids for f in P.facets]
    start = 0
    ring = [start]
    prev = None
    while True:
        here = ring[-1]
        nxt = next(
            (other for e in edges if here in e for other in e if other != here and other != prev),
            None,
        )
        if nxt is None or nxt == start:
            break
        prev = here
        ring.append(nxt)
    return [P.vertices[i] for i in ring]
