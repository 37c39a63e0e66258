"""Exact convex hulls of dyadic point sets and their face lattices.

Facets are found by enumerating hyperplanes through affinely independent
subsets of the input and keeping the supporting ones.  That is quadratic
or worse in the number of points, which is fine here: hulls are only ever
built over generator sets of a handful of points in dimension <= 4.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations

from . import _linalg as la
from .dyadic import Dyadic, DyadicPoint, as_point

__all__ = [
    "Face",
    "FaceLattice",
    "Facet",
    "RationalPolytope",
    "contains",
    "convex_hull",
    "face_lattice",
    "minimal_face",
    "relint_contains",
]


@dataclass(frozen=True)
class Facet:
    """Inequality ``normal . x >= offset`` with a primitive integer inward normal."""

    normal: tuple
    offset: Dyadic
    vertex_ids: frozenset

    def slack(self, p) -> Fraction:
        return la.dot(self.normal, as_point(p).to_fractions()) - self.offset.to_fraction()


@dataclass(frozen=True, order=True)
class Face:
    """A face, identified by the indices of the polytope vertices it contains."""

    dim: int
    vertex_ids: frozenset

    def __repr__(self):
        return f"Face(dim={self.dim}, vertices={sorted(self.vertex_ids)})"

    def sort_key(self):
        return (self.dim, tuple(sorted(self.vertex_ids)))


def _canonical_integer(v) -> tuple:
    ints = la.primitive_integer(v)
    first = next((x for x in ints if x), 0)
    if first < 0:
        ints = [-x for x in ints]
    return tuple(ints)


class RationalPolytope:
    """Exact vertex/facet description of the convex hull of dyadic points.

    ``equations`` cut out the real affine span (empty when the polytope is
    full-dimensional); ``facets`` are the supporting inequalities within it.
    """

    def __init__(self, vertices, facets, equations, dim):
        self.vertices = tuple(vertices)
        self.facets = tuple(facets)
        self.equations = tuple(equations)
        self.dim = dim

    @property
    def ambient_dim(self) -> int:
        return self.vertices[0].dim

    def __repr__(self):
        return f"RationalPolytope(dim={self.dim}, vertices={list(self.vertices)!r})"

    def __eq__(self, other):
        if not isinstance(other, RationalPolytope):
            return NotImplemented
        return set(self.vertices) == set(other.vertices)

    def __hash__(self):
        return hash(frozenset(self.vertices))

    # -- predicates ---------------------------------------------------------
    def _in_span(self, q) -> bool:
        return all(la.dot(n, q) == off.to_fraction() for n, off in self.equations)

    def contains(self, p) -> bool:
        p = as_point(p)
        if p.dim != self.ambient_dim:
            raise ValueError("dimension mismatch")
        q = p.to_fractions()
        if not self._in_span(q):
            return False
        if self.dim == 0:
            return p == self.vertices[0]
        return all(la.dot(f.normal, q) >= f.offset.to_fraction() for f in self.facets)

    def contains_fractions(self, q) -> bool:
        """Containment test for an arbitrary rational point."""
        q = [Fraction(x) for x in q]
        if not self._in_span(q):
            return False
        if self.dim == 0:
            return tuple(q) == self.vertices[0].to_fractions()
        return all(la.dot(f.normal, q) >= f.offset.to_fraction() for f in self.facets)

    def relint_contains(self, p) -> bool:
        p = as_point(p)
        if not self.contains(p):
            return False
        q = p.to_fractions()
        return all(la.dot(f.normal, q) > f.offset.to_fraction() for f in self.facets)

    def relint_contains_fractions(self, q) -> bool:
        q = [Fraction(x) for x in q]
        if not self.contains_fractions(q):
            return False
        return all(la.dot(f.normal, q) > f.offset.to_fraction() for f in self.facets)

    def tight_facets(self, p) -> list[Facet]:
        q = as_point(p).to_fractions()
        return [f for f in self.facets if la.dot(f.normal, q) == f.offset.to_fraction()]

    # -- faces --------------------------------------------------------------
    @cached_property
    def lattice(self) -> "FaceLattice":
        return FaceLattice.of(self)

    @property
    def top(self) -> Face:
        return Face(self.dim, frozenset(range(len(self.vertices))))

    def face_points(self, face: Face) -> list[DyadicPoint]:
        return [self.vertices[i] for i in sorted(face.vertex_ids)]

    def face_polytope(self, face: Face) -> "RationalPolytope":
        return convex_hull(self.face_points(face))

    def maximal_faces(self) -> list[Face]:
        """Facets as faces (for a segment: its two endpoints)."""
        return [Face(self.dim - 1, f.vertex_ids) for f in self.facets]

    def minimal_face(self, p) -> Face:
        p = as_point(p)
        if not self.contains(p):
            raise ValueError(f"{p!r} is not in the polytope")
        ids = frozenset(range(len(self.vertices)))
        tight = self.tight_facets(p)
        if not tight:
            return self.top
        for f in tight:
            ids &= f.vertex_ids
        return Face(_affine_rank([self.vertices[i] for i in ids]), ids)

    def bounding_box(self):
        lo = [min(v[i] for v in self.vertices) for i in range(self.ambient_dim)]
        hi = [max(v[i] for v in self.vertices) for i in range(self.ambient_dim)]
        return lo, hi


def _affine_rank(points) -> int:
    pts = [as_point(p).to_fractions() for p in points]
    if len(pts) <= 1:
        return 0
    p0 = pts[0]
    return la.rank([[a - b for a, b in zip(p, p0)] for p in pts[1:]])


def _dedupe(points) -> list[DyadicPoint]:
    seen = {}
    for p in points:
        p = as_point(p)
        seen.setdefault(p, None)
    return list(seen)


def convex_hull(points) -> RationalPolytope:
    """Exact convex hull; lower-dimensional inputs give lower-dimensional polytopes."""
    pts = _dedupe(points)
    if not pts:
        raise ValueError("convex hull of an empty set")
    n = pts[0].dim
    if any(p.dim != n for p in pts):
        raise ValueError("dimension mismatch among points")
    fr = [p.to_fractions() for p in pts]
    p0 = fr[0]
    diffs = [[a - b for a, b in zip(q, p0)] for q in fr[1:]]
    if diffs:
        red, pivots = la.rref(diffs)
    else:
        red, pivots = [], []
    d = len(pivots)
    direction = [row for row in red[:d]]
    # equations of the affine span
    equations = []
    comp = la.nullspace(direction, n) if d else la.nullspace([], n)
    if d < n:
        comp_rows, _ = la.rref(comp)
        for row in comp_rows:
            if any(row):
                nrm = _canonical_integer(row)
                equations.append((nrm, Dyadic.from_fraction(la.dot(nrm, p0))))
    if d == 0:
        return RationalPolytope([pts[0]], [], equations, 0)

    local = [[q[c] for c in pivots] for q in fr]  # injective on the affine span
    facets_local = _local_facets(local, d)

    # lift local normals to the ambient space: orthogonal projection onto the
    # direction space keeps values on the span and makes the normal canonical
    gram_inv = la.inverse(la.matmul(direction, [list(c) for c in zip(*direction)]))
    facets = []
    vertex_mask = [False] * len(pts)
    tight_normals = [[] for _ in pts]
    for normal_local, ids in facets_local:
        amb = [Fraction(0)] * n
        for c, a in zip(pivots, normal_local):
            amb[c] = a
        coeff = la.matvec(gram_inv, la.matvec(direction, amb))
        proj = [sum((coeff[k] * direction[k][i] for k in range(d)), Fraction(0)) for i in range(n)]
        nrm = la.primitive_integer(proj)
        anchor = fr[next(iter(ids))]
        facets.append((tuple(nrm), Dyadic.from_fraction(la.dot(nrm, anchor)), ids))
        for i in ids:
            tight_normals[i].append(normal_local)
    for i in range(len(pts)):
        vertex_mask[i] = la.rank(tight_normals[i]) == d if tight_normals[i] else False

    vertices = [p for p, keep in zip(pts, vertex_mask) if keep]
    remap = {}
    for new, old in enumerate(i for i, keep in enumerate(vertex_mask) if keep):
        remap[old] = new
    out = []
    for nrm, off, ids in facets:
        vids = frozenset(remap[i] for i in ids if i in remap)
        out.append(Facet(nrm, off, vids))
    out.sort(key=lambda f: (tuple(sorted(f.vertex_ids)), f.normal))
    return RationalPolytope(vertices, out, equations, d)


def _local_facets(local, d):
    """Supporting hyperplanes of a full-dimensional point set in ``Q^d``.

    Returns ``[(inward_normal, frozenset(tight point indices))]``.
    """
    m = len(local)
    if d == 1:
        xs = [q[0] for q in local]
        lo, hi = min(xs), max(xs)
        return [
            ([Fraction(1)], frozenset(i for i, x in enumerate(xs) if x == lo)),
            ([Fraction(-1)], frozenset(i for i, x in enumerate(xs) if x == hi)),
        ]
    found = {}
    for combo in combinations(range(m), d):
        q0 = local[combo[0]]
        rows = [[a - b for a, b in zip(local[i], q0)] for i in combo[1:]]
        ns = la.nullspace(rows, d)
        if len(ns) != 1:
            continue
        a = ns[0]
        b = la.dot(a, q0)
        vals = [la.dot(a, q) - b for q in local]
        if all(v >= 0 for v in vals):
            normal = a
        elif all(v <= 0 for v in vals):
            normal = [-x for x in a]
        else:
            continue
        tight = frozenset(i for i, v in enumerate(vals) if v == 0)
        if tight not in found:
            found[tight] = normal
    return [(nrm, ids) for ids, nrm in found.items()]


class FaceLattice:
    """All non-empty faces of a polytope, graded by dimension."""

    def __init__(self, faces, covers):
        self.faces = tuple(sorted(faces, key=Face.sort_key))
        self.covers = tuple(covers)

    @classmethod
    def of(cls, P: RationalPolytope) -> "FaceLattice":
        top = P.top.vertex_ids
        sets = {top}
        frontier = {f.vertex_ids for f in P.facets}
        sets |= frontier
        while frontier:
            new = set()
            for a in frontier:
                for b in list(sets):
                    c = a & b
                    if c and c not in sets and c not in new:
                        new.add(c)
            sets |= new
            frontier = new
        faces = [Face(_affine_rank([P.vertices[i] for i in s]), s) for s in sets]
        covers = [
            (a, b)
            for a in faces
            for b in faces
            if a.vertex_ids < b.vertex_ids and b.dim == a.dim + 1
        ]
        return cls(faces, covers)

    def by_dim(self, k: int) -> list[Face]:
        return [f for f in self.faces if f.dim == k]

    def counts(self) -> list[int]:
        top = max(f.dim for f in self.faces)
        return [len(self.by_dim(k)) for k in range(top + 1)]

    def meet(self, a: Face, b: Face) -> Face | None:
        ids = a.vertex_ids & b.vertex_ids
        return next((f for f in self.faces if f.vertex_ids == ids), None)

    def join(self, a: Face, b: Face) -> Face:
        ids = a.vertex_ids | b.vertex_ids
        return min((f for f in self.faces if ids <= f.vertex_ids), key=lambda f: (len(f.vertex_ids), f.sort_key()))

    def __len__(self):
        return len(self.faces)

    def __iter__(self):
        return iter(self.faces)


def face_lattice(P: RationalPolytope) -> FaceLattice:
    return P.lattice


def minimal_face(P: RationalPolytope, p) -> Face:
    return P.minimal_face(p)


def relint_contains(P: RationalPolytope, p) -> bool:
    return P.relint_contains(p)


def contains(P: RationalPolytope, p) -> bool:
    return P.contains(p)
