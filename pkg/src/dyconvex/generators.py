"""Constructing finite generating sets.

A dyadic polytope ``P ∩ D^n`` is generated by the generators of its
facets together with the vertices of any geometric simplex inside it; a
semipolytope likewise by generators of its walls and of an inner polytope
spanned by one anchor per maximal wall.  Constructions here are
deterministic: every free choice picks the point of least denominator
exponent, breaking ties lexicographically.

Every construction returns a :class:`GenerationCertificate` that can be
re-checked with :meth:`GenerationCertificate.validate`, independently of
the construction log.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, floor, gcd

import numpy as np

from . import _linalg as la
from .dyadic import Dyadic, DyadicPoint, as_point
from .groupoid import GeneratorSet, SemipolytopeDescriptor, member
from .hull import RationalPolytope, convex_hull
from .lattice import affine_hull, rescale_iso

__all__ = [
    "GenerationCertificate",
    "anchors",
    "dyadic_between",
    "generating_set_polytope",
    "generating_set_semipolytope",
    "inner_polytope",
    "inner_simplex",
    "irredundant_reduce",
    "lowest_dyadic",
    "lowest_relint_point",
    "three_point_generates_interval",
    "wall_line_triple",
]

log = logging.getLogger(__name__)

_GRID_LIMIT = 2_000_000
_MAX_EXPONENT = 64


@dataclass
class GenerationCertificate:
    """Generators produced for a target, with the steps that produced them."""

    target: SemipolytopeDescriptor
    produced: tuple
    construction_log: list = field(default_factory=list)

    def validate(self) -> bool:
        return SemipolytopeDescriptor.from_generators(self.produced) == self.target

    def reduced(self) -> "GenerationCertificate":
        kept = irredundant_reduce(self.produced)
        steps = self.construction_log + [("reduce", len(self.produced), len(kept))]
        return GenerationCertificate(self.target, tuple(kept), steps)

    def __len__(self):
        return len(self.produced)


def _div_odd(v: DyadicPoint, k: int) -> DyadicPoint:
    """``v / k`` for an odd ``k`` dividing every odd part of ``v``."""
    return DyadicPoint(Dyadic(x.mantissa // k, x.exponent) for x in v)


def _log_steps(steps) -> None:
    for step in steps:
        log.info("%s: %s", step[0], " ".join(map(str, step[1:])))


def _dedupe(points) -> tuple:
    return tuple(dict.fromkeys(as_point(p) for p in points))


def _fraction(t) -> Fraction:
    if isinstance(t, float):
        return Fraction(repr(t))
    if isinstance(t, Dyadic):
        return t.to_fraction()
    return Fraction(t)


# -- one dimension ------------------------------------------------------------

def three_point_generates_interval(a, b, c) -> bool:
    """Whether ``{a, b, c}`` with ``a < b < c`` generates all of ``[a, c] ∩ D``."""
    a, b, c = (Dyadic.coerce(x) for x in (a, b, c))
    if not a < b < c:
        raise ValueError("expected a < b < c")
    return abs((b - a).mantissa) == 1 or abs((c - b).mantissa) == 1


def lowest_dyadic(t1, t2) -> Dyadic:
    """The dyadic in the open interval ``(t1, t2)`` of least exponent, then least value."""
    t1, t2 = _fraction(t1), _fraction(t2)
    if not t1 < t2:
        raise ValueError("empty parameter interval")
    e = 0
    while True:
        k = floor(t1 * 2**e) + 1
        if Fraction(k, 2**e) < t2:
            return Dyadic(k, -e)
        e += 1


def dyadic_between(p, q, t1, t2) -> DyadicPoint:
    """A dyadic point ``p + d (q - p)`` with ``t1 < d < t2``; ``d`` as in :func:`lowest_dyadic`."""
    p, q = as_point(p), as_point(q)
    if p == q:
        raise ValueError("p and q must differ")
    d = lowest_dyadic(t1, t2)
    return p + (q - p).scale(d)


# -- grid search in full-dimensional polytopes --------------------------------

def _grid(Q: RationalPolytope, e: int, strict: bool):
    """Integer numerators ``g`` with ``g / 2**e`` in ``Q`` (``relint`` if strict), or None if too many."""
    k = Q.ambient_dim
    lo, hi = Q.bounding_box()
    ranges = [(ceil(l.to_fraction() * 2**e), floor(h.to_fraction() * 2**e)) for l, h in zip(lo, hi)]
    size = 1
    for a, b in ranges:
        size *= max(0, b - a + 1)
    if size == 0:
        return np.zeros((0, k), dtype=np.int64)
    if size > _GRID_LIMIT or max(max(abs(a), abs(b)) for a, b in ranges) > 2**40:
        return None
    axes = [np.arange(a, b + 1, dtype=np.int64) for a, b in ranges]
    pts = np.stack([g.ravel() for g in np.meshgrid(*axes, indexing="ij")], axis=1)
    keep = np.ones(len(pts), dtype=bool)
    for f in Q.facets:
        rhs = f.offset.to_fraction() * 2**e
        thr = floor(rhs) + 1 if strict else ceil(rhs)
        keep &= pts @ np.array(f.normal, dtype=np.int64) >= thr
    return pts[keep]


def lowest_relint_point(Q: RationalPolytope) -> DyadicPoint:
    """Relative-interior dyadic point of least exponent, lexicographically first.

    ``Q`` must be full-dimensional in its ambient space.  For very large
    grids the search falls back to rounding the barycentre, which is still
    deterministic but may not minimize the exponent.
    """
    if Q.dim != Q.ambient_dim:
        raise ValueError("polytope must be full-dimensional")
    for e in range(_MAX_EXPONENT):
        pts = _grid(Q, e, strict=True)
        if pts is None:
            return _rounded_barycentre(Q, e)
        if len(pts):
            first = pts[np.lexsort(pts.T[::-1])[0]]
            return DyadicPoint(Dyadic(int(c), -e) for c in first)
    raise ArithmeticError("no interior dyadic point found")


def _rounded_barycentre(Q: RationalPolytope, e0: int) -> DyadicPoint:
    n = len(Q.vertices)
    bary = [sum((v.to_fractions()[i] for v in Q.vertices), Fraction(0)) / n for i in range(Q.ambient_dim)]
    for e in range(e0, 4 * _MAX_EXPONENT):
        p = DyadicPoint(Dyadic(round(x * 2**e), -e) for x in bary)
        if Q.relint_contains(p):
            return p
    raise ArithmeticError("no interior dyadic point found")


def _relint_in_subspace(points, subspace) -> DyadicPoint:
    """Lowest relative-interior point of ``conv(points)`` lying in ``subspace``."""
    if subspace.dim == 0:
        return as_point(points[0])
    chart = rescale_iso(subspace)
    local = convex_hull([chart.to_local(p) for p in points])
    return chart.from_local(lowest_relint_point(local))


# -- simplices and lines ------------------------------------------------------

def inner_simplex(P: RationalPolytope, a) -> list[DyadicPoint]:
    """``a`` and ``a + 2**-k e_i`` for the least ``k >= 0`` keeping all of them in ``P``."""
    a = as_point(a)
    if P.dim != P.ambient_dim:
        raise ValueError("polytope must be full-dimensional")
    if not P.relint_contains(a):
        raise ValueError(f"{a} is not an interior point")
    n = P.ambient_dim
    k = 0
    while True:
        step = Dyadic(1, -k)
        pts = [a] + [a + DyadicPoint(step if c == i else 0 for c in range(n)) for i in range(n)]
        if all(P.contains(p) for p in pts):
            return pts
        k += 1


def _line_window(P: RationalPolytope, origin, direction, strict: bool):
    """Parameters ``s`` with ``origin + s * direction`` in ``P`` (open window if strict)."""
    lo, hi = None, None
    o = [Fraction(x) for x in origin]
    d = [Fraction(x) for x in direction]
    for nrm, off in P.equations:
        if la.dot(nrm, d) != 0 or la.dot(nrm, o) != off.to_fraction():
            return None
    for f in P.facets:
        a = la.dot(f.normal, d)
        b = f.offset.to_fraction() - la.dot(f.normal, o)  # need a*s >= b
        if a == 0:
            if (strict and b >= 0) or (not strict and b > 0):
                return None
            continue
        t = b / a
        if a > 0:
            lo = t if lo is None else max(lo, t)
        else:
            hi = t if hi is None else min(hi, t)
    if lo is None or hi is None or lo > hi or (strict and lo == hi):
        return None
    return lo, hi


def _odd_gcd(v) -> int:
    g = 0
    for x in v:
        x = Dyadic.coerce(x)
        if x:
            g = gcd(g, abs(x.mantissa))
    return g


def wall_line_triple(P, simplex, A):
    """Points ``B, C, D`` putting ``A`` inside the groupoid of ``{B} ∪ simplex``.

    ``B`` lies in the relative interior of a maximal wall (and in the wall's
    groupoid when ``P`` is a :class:`SemipolytopeDescriptor`), ``C`` and
    ``D`` lie in the interior of the simplex on the line through ``B`` and
    ``A``, with ``A`` strictly between ``B`` and ``C`` and ``[D, C]`` of
    type 1.
    """
    desc = P if isinstance(P, SemipolytopeDescriptor) else None
    poly = desc.hull if desc else P
    A = as_point(A)
    simplex = [as_point(s) for s in simplex]
    if poly.dim != poly.ambient_dim:
        raise ValueError("polytope must be full-dimensional")
    sx = convex_hull(simplex)
    if sx.dim != poly.dim:
        raise ValueError("simplex must be full-dimensional")
    if sx.contains(A):
        raise ValueError("A lies in the simplex; nothing to construct")
    if not poly.relint_contains(A):
        raise ValueError("A is not interior; recurse to its wall instead")

    n = poly.ambient_dim
    centre = [sum((s.to_fractions()[i] for s in simplex), Fraction(0)) / len(simplex) for i in range(n)]
    ray = [a - c for a, c in zip(A.to_fractions(), centre)]
    _, t_exit = _line_window(poly, centre, ray, strict=False)
    exit_pt = [c + t_exit * r for c, r in zip(centre, ray)]
    walls = [F for F in poly.lattice.by_dim(poly.dim - 1)
             if poly.face_polytope(F).contains_fractions(exit_pt)]

    for F in sorted(walls, key=lambda F: F.sort_key()):
        pts = poly.face_points(F)
        sub = desc.per_face_subspace[F] if desc else affine_hull(pts).saturate()
        for B in _wall_candidates(pts, sub):
            direction = [a - b for a, b in zip(A.to_fractions(), B.to_fractions())]
            window = _line_window(sx, B.to_fractions(), direction, strict=True)
            if window is None or window[1] <= 1:
                continue
            lo, hi = max(window[0], Fraction(1)), window[1]
            s_c = lowest_dyadic(lo, hi)
            step = A - B
            g = _odd_gcd(step)
            C = B + step.scale(s_c)
            j = 0
            while True:
                s_d = s_c.to_fraction() - Fraction(1, 2**j * g)
                if lo < s_d < hi:
                    break
                j += 1
            # step / (g 2^j) is dyadic with coprime odd parts, so [D, C] has type 1
            D = C - _div_odd(step, g).shift(-j)
            return B, C, D
    raise ArithmeticError("no admissible wall point found")


def _wall_candidates(points, subspace, max_exp: int = 24):
    """Relative-interior points of a wall in its subspace, by exponent then lexicographically."""
    if subspace.dim == 0:
        yield as_point(points[0])
        return
    chart = rescale_iso(subspace)
    local = convex_hull([chart.to_local(p) for p in points])
    seen = set()
    for e in range(max_exp):
        grid = _grid(local, e, strict=True)
        if grid is None:
            return
        for row in grid[np.lexsort(grid.T[::-1])] if len(grid) else []:
            key = tuple(Fraction(int(c), 2**e) for c in row)
            if key in seen:
                continue
            seen.add(key)
            yield chart.from_local(DyadicPoint(Dyadic(int(c), -e) for c in row))


# -- polytopes ----------------------------------------------------------------

def _polytope_of(P) -> RationalPolytope:
    return P if isinstance(P, RationalPolytope) else convex_hull(P)


def generating_set_polytope(P) -> GenerationCertificate:
    """Generators of the dyadic polytope ``P ∩ D^n`` (``P`` or its vertices/points)."""
    P = _polytope_of(P)
    steps = []
    produced = _dedupe(_generate_polytope(list(P.vertices), steps))
    target = SemipolytopeDescriptor.from_hull(P.vertices)
    _log_steps(steps)
    return GenerationCertificate(target, produced, steps)


def _generate_polytope(vertices, steps) -> list[DyadicPoint]:
    sat = affine_hull(vertices).saturate()
    if sat.dim == 0:
        return [vertices[0]]
    chart = rescale_iso(sat)
    local = [chart.to_local(v) for v in vertices]
    return [chart.from_local(y) for y in _generate_full(local, steps, chart)]


def _generate_full(local, steps, chart) -> list[DyadicPoint]:
    P = convex_hull(local)
    d = P.dim
    if d == 1:
        a, c = sorted(P.vertices, key=lambda v: v[0])
        k = abs((c[0] - a[0]).mantissa)
        out = [a, c]
        if k > 1:
            extra = a + _div_odd(c - a, k)
            out.append(extra)
            steps.append(("segment", [str(chart.from_local(a)), str(chart.from_local(c))], k,
                          str(chart.from_local(extra))))
        return out
    out = []
    for F in P.lattice.by_dim(d - 1):
        out.extend(_generate_polytope(P.face_points(F), steps))
    a = lowest_relint_point(P)
    simplex = inner_simplex(P, a)
    steps.append(("simplex", [str(chart.from_local(p)) for p in simplex]))
    return out + simplex


# -- semipolytopes ------------------------------------------------------------

def _descriptor_of(S) -> SemipolytopeDescriptor:
    if isinstance(S, SemipolytopeDescriptor):
        return S
    return GeneratorSet.coerce(S).descriptor


def anchors(S) -> list[DyadicPoint]:
    """One point of the groupoid in the relative interior of each maximal wall."""
    S = _descriptor_of(S)
    if S.dim < 1:
        raise ValueError("anchors need a semipolytope of dimension >= 1")
    out = []
    for F in S.hull.lattice.by_dim(S.dim - 1):
        out.append(_relint_in_subspace(S.hull.face_points(F), S.per_face_subspace[F]))
    return out


def inner_polytope(S, anchor_points=None) -> RationalPolytope:
    S = _descriptor_of(S)
    pts = anchors(S) if anchor_points is None else [as_point(p) for p in anchor_points]
    Q = convex_hull(pts)
    if Q.dim != S.dim:
        raise ValueError("anchors are degenerate: inner polytope lost dimension")
    return Q


def generating_set_semipolytope(S) -> GenerationCertificate:
    """Generators of a semipolytope given by its descriptor (or by any generators of it)."""
    S = _descriptor_of(S)
    steps = []
    produced = _dedupe(_generate_semi(S, steps))
    _log_steps(steps)
    return GenerationCertificate(S, produced, steps)


def _generate_semi(S: SemipolytopeDescriptor, steps) -> list[DyadicPoint]:
    d = S.dim
    if d == 0:
        return [S.hull.vertices[0]]
    out = []
    for F in S.hull.lattice.by_dim(d - 1):
        out.extend(_generate_semi(S.restrict(F), steps))
    chart = rescale_iso(S.top_subspace)
    if d == 1:
        a, c = sorted((chart.to_local(v) for v in S.hull.vertices), key=lambda v: v[0])
        k = abs((c[0] - a[0]).mantissa)
        if k > 1:
            extra = chart.from_local(a + _div_odd(c - a, k))
            out.append(extra)
            steps.append(("segment", [str(chart.from_local(a)), str(chart.from_local(c))], k, str(extra)))
        return out
    ys = anchors(S)
    steps.append(("anchors", [str(y) for y in ys]))
    inner = inner_polytope(S, ys)
    local = [chart.to_local(v) for v in inner.vertices]
    sub_steps = []
    out.extend(chart.from_local(p) for p in _generate_polytope(local, sub_steps))
    steps.append(("inner", len(sub_steps)))
    return out


# -- reduction ----------------------------------------------------------------

def irredundant_reduce(X) -> list[DyadicPoint]:
    """Greedily drop generators that the others already generate.

    Candidates are visited by descending denominator exponent, then
    lexicographically.  One pass suffices: shrinking the set never makes a
    kept generator redundant.
    """
    pts = list(GeneratorSet.coerce(X).points)
    order = sorted(pts, key=lambda p: (-p.denominator_exponent, p.to_fractions()))
    for x in order:
        rest = [p for p in pts if p != x]
        if rest and member(x, rest):
            pts = rest
    return pts
