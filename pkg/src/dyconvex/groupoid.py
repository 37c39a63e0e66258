"""Finitely generated subgroupoids of ``(D^n, mean)``.

Deciding membership
-------------------
Let ``X`` be finite, ``P`` its real convex hull and ``<X>`` the closure of
``X`` under ``x o y = (x + y) / 2``.  Three facts combine into an exact
test for ``p in <X>``:

1. ``<X> ⊆ P``, and every vertex of ``P`` is an element of ``X``.
2. A face ``F`` of ``P`` is a wall: a midpoint lies in ``F`` exactly when
   both operands do.  Induction on the generation depth then gives
   ``<X> ∩ F = <X ∩ F>``.
3. For a finite set ``Y`` with real hull ``F`` and affine D-hull ``A``, the
   groupoid ``<Y>`` is a semipolytope in ``A``: its relative interior is
   ``relint(F) ∩ A``.  (The affine D-hull of ``<Y>`` equals that of ``Y``
   because midpoints are affine D-combinations.)

So ``p in <X>`` iff ``p in P`` and, with ``F`` the minimal face of ``P``
containing ``p`` (so that ``p in relint(F)``), ``p`` lies in the affine
D-hull of the generators on ``F``.  For a vertex this degenerates to
``p in X``.  The per-face affine D-hulls therefore describe ``<X>``
completely; :class:`SemipolytopeDescriptor` stores them.

The breadth-first :func:`closure_bfs` is an independent, sound but
incomplete oracle used to cross-check the decision procedure.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping

import numpy as np

from .dyadic import Dyadic, DyadicPoint, as_point
from .hull import Face, RationalPolytope, convex_hull
from .lattice import AffineDyadicSubspace, affine_hull

__all__ = [
    "ClosureReport",
    "GeneratorSet",
    "SemipolytopeDescriptor",
    "closure_bfs",
    "equals_groupoid",
    "is_geometric",
    "member",
    "semipolytope_descriptor",
    "vertices_in",
]

DEFAULT_POINT_LIMIT = 10**6


def default_point_limit() -> int:
    raw = os.environ.get("DYCONVEX_POINT_LIMIT")
    return int(raw) if raw else DEFAULT_POINT_LIMIT


class GeneratorSet:
    """A finite, deduplicated set of generators in ``D^n``.

    Hull, faces and the descriptor of the generated groupoid are computed
    lazily and cached; the object is otherwise immutable.
    """

    def __init__(self, points: Iterable):
        pts = {}
        for p in points:
            pts.setdefault(as_point(p), None)
        if not pts:
            raise ValueError("a generator set must be non-empty")
        self.points = tuple(pts)
        self.dim = self.points[0].dim
        if any(p.dim != self.dim for p in self.points):
            raise ValueError("dimension mismatch among generators")

    @classmethod
    def coerce(cls, X) -> "GeneratorSet":
        return X if isinstance(X, GeneratorSet) else cls(X)

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, p):
        return as_point(p) in self.points

    def __repr__(self):
        return f"GeneratorSet({list(self.points)!r})"

    def without(self, p) -> "GeneratorSet":
        p = as_point(p)
        return GeneratorSet([q for q in self.points if q != p])

    def union(self, other) -> "GeneratorSet":
        return GeneratorSet(list(self.points) + list(GeneratorSet.coerce(other).points))

    @cached_property
    def affine_hull(self) -> AffineDyadicSubspace:
        return affine_hull(self.points)

    @cached_property
    def hull(self) -> RationalPolytope:
        return convex_hull(self.points)

    @property
    def face_lattice(self):
        return self.hull.lattice

    @cached_property
    def descriptor(self) -> "SemipolytopeDescriptor":
        return SemipolytopeDescriptor.from_generators(self)


@dataclass(frozen=True, eq=False)
class SemipolytopeDescriptor:
    """Real hull of ``<X>`` plus the affine D-hull of ``<X>`` on every face.

    ``per_face_subspace[F]`` is ``aff_D(X ∩ F)``; the points of ``<X>`` in
    the relative interior of ``F`` are exactly the dyadic points of
    ``relint(F)`` lying in that subspace.
    """

    hull: RationalPolytope
    per_face_subspace: Mapping
    vertex_set: tuple

    @classmethod
    def from_generators(cls, X) -> "SemipolytopeDescriptor":
        X = GeneratorSet.coerce(X)
        P = X.hull
        where = {x: P.minimal_face(x).vertex_ids for x in X.points}
        per_face = {}
        for F in P.lattice:
            on_face = [x for x in X.points if where[x] <= F.vertex_ids]
            per_face[F] = affine_hull(on_face)
        return cls(P, per_face, P.vertices)

    @classmethod
    def from_hull(cls, vertices, overrides: Mapping | None = None) -> "SemipolytopeDescriptor":
        """Descriptor of a polytope whose listed faces carry given subspaces.

        ``overrides`` maps a collection of the face's vertices to the
        :class:`AffineDyadicSubspace` of that face; every other face gets
        the saturated affine hull of its vertices (all of its dyadic points).
        """
        P = convex_hull(vertices)
        lookup = {frozenset(as_point(v) for v in key): sub for key, sub in (overrides or {}).items()}
        per_face = {}
        for F in P.lattice:
            key = frozenset(P.face_points(F))
            if key in lookup:
                per_face[F] = lookup[key]
            else:
                per_face[F] = affine_hull(P.face_points(F)).saturate()
        return cls(P, per_face, P.vertices)

    @property
    def dim(self) -> int:
        return self.hull.dim

    @property
    def ambient_dim(self) -> int:
        return self.hull.ambient_dim

    def face_subspace(self, face: Face) -> AffineDyadicSubspace:
        return self.per_face_subspace[face]

    @property
    def top_subspace(self) -> AffineDyadicSubspace:
        return self.per_face_subspace[self.hull.top]

    def restrict(self, face: Face) -> "SemipolytopeDescriptor":
        """The wall ``face`` as a semipolytope in its own right."""
        known = self.by_vertex_points()
        pts = self.hull.face_points(face)
        sub = frozenset(pts)
        return SemipolytopeDescriptor.from_hull(pts, {k: v for k, v in known.items() if k <= sub})

    def by_vertex_points(self) -> dict:
        return {frozenset(self.hull.face_points(F)): S for F, S in self.per_face_subspace.items()}

    def member(self, p) -> bool:
        p = as_point(p)
        if p.dim != self.ambient_dim:
            raise ValueError(f"dimension mismatch: point has {p.dim}, groupoid lives in {self.ambient_dim}")
        if not self.hull.contains(p):
            return False
        F = self.hull.minimal_face(p)
        return self.per_face_subspace[F].contains(p)

    def evidence(self, p) -> dict:
        """The data :meth:`member` decides on, for reporting."""
        p = as_point(p)
        inside = self.hull.contains(p)
        out = {"in_hull": inside}
        if inside:
            F = self.hull.minimal_face(p)
            S = self.per_face_subspace[F]
            out.update(
                minimal_face=[str(v) for v in self.hull.face_points(F)],
                face_dim=F.dim,
                face_base=str(S.base),
                face_lattice_basis=[[str(Dyadic(c)) for c in b] for b in S.lattice.basis],
                face_lattice_invariants=list(S.lattice.invariants),
                in_face_lattice=S.contains(p),
            )
        return out

    def is_geometric(self) -> bool:
        return all(S.is_saturated() for S in self.per_face_subspace.values())

    def faces(self) -> list[Face]:
        return list(self.hull.lattice)

    def maximal_faces(self) -> list[Face]:
        return self.hull.lattice.by_dim(self.dim - 1) if self.dim > 0 else []

    def __eq__(self, other):
        if not isinstance(other, SemipolytopeDescriptor):
            return NotImplemented
        if set(self.vertex_set) != set(other.vertex_set):
            return False
        mine, theirs = self.by_vertex_points(), other.by_vertex_points()
        return mine.keys() == theirs.keys() and all(mine[k] == theirs[k] for k in mine)

    __hash__ = None


def member(p, X) -> bool:
    """Exact decision of ``p in <X>``."""
    return GeneratorSet.coerce(X).descriptor.member(p)


def equals_groupoid(X, Y) -> bool:
    """``<X> == <Y>``; either side may also be a :class:`SemipolytopeDescriptor`."""
    dx = X if isinstance(X, SemipolytopeDescriptor) else GeneratorSet.coerce(X).descriptor
    dy = Y if isinstance(Y, SemipolytopeDescriptor) else GeneratorSet.coerce(Y).descriptor
    if dx.ambient_dim != dy.ambient_dim:
        raise ValueError("dimension mismatch")
    if isinstance(X, SemipolytopeDescriptor) or isinstance(Y, SemipolytopeDescriptor):
        return dx == dy
    X, Y = GeneratorSet.coerce(X), GeneratorSet.coerce(Y)
    return all(dy.member(x) for x in X) and all(dx.member(y) for y in Y)


def is_geometric(X) -> bool:
    """``<X>`` equals all dyadic points of its real hull."""
    return GeneratorSet.coerce(X).descriptor.is_geometric()


def semipolytope_descriptor(X) -> SemipolytopeDescriptor:
    return GeneratorSet.coerce(X).descriptor


def vertices_in(X) -> list[DyadicPoint]:
    return list(GeneratorSet.coerce(X).hull.vertices)


# -- breadth-first closure oracle ---------------------------------------------

@dataclass(frozen=True)
class ClosureReport:
    """Result of a capped breadth-first midpoint closure.

    ``found`` holds the generated points with denominator exponent at most
    ``exp_cap``.  Every reported point is in ``<X>``; a missing point proves
    nothing.  ``saturated`` means the last round produced nothing new;
    ``limit_reached`` means the point limit stopped the search first.
    """

    exp_cap: int
    slack: int
    found: frozenset
    frontier_size: int
    saturated: bool
    limit_reached: bool = False
    rounds: int = 0
    total_points: int = 0

    def sorted_found(self) -> list[DyadicPoint]:
        return sorted(self.found, key=DyadicPoint.sort_key)

    def __contains__(self, p):
        return as_point(p) in self.found


def _exponents(arr: np.ndarray, scale: int) -> np.ndarray:
    """Denominator exponent of each scaled row (max over coordinates)."""
    exp = np.full(arr.shape[0], scale, dtype=np.int64)
    for k in range(1, scale + 1):
        exp[np.all(arr % (1 << k) == 0, axis=1)] = scale - k
    return exp


def _order(arr: np.ndarray, scale: int) -> np.ndarray:
    exp = _exponents(arr, scale)
    keys = [arr[:, i] for i in range(arr.shape[1] - 1, -1, -1)] + [exp]
    return np.lexsort(keys)


def closure_bfs(X, exp_cap: int, slack: int = 4, max_points: int | None = None) -> ClosureReport:
    """Breadth-first midpoint closure of ``X`` restricted to small denominators.

    Intermediate points are kept while their denominator exponent is at
    most ``exp_cap + slack``; the report lists those with exponent at most
    ``exp_cap``.  New points of each round are admitted in order of
    exponent, then lexicographically, until ``max_points`` (default
    ``$DYCONVEX_POINT_LIMIT`` or one million) is reached.
    """
    if exp_cap < 0 or slack < 0:
        raise ValueError("exp_cap and slack must be non-negative")
    X = GeneratorSet.coerce(X)
    limit = default_point_limit() if max_points is None else int(max_points)
    keep = exp_cap + slack
    scale = max(keep, max(p.denominator_exponent for p in X))
    gens = [[c.shift(scale).numerator for c in p] for p in X]
    lo = [min(col) for col in zip(*gens)]
    hi = [max(col) for col in zip(*gens)]
    base = max(h - l for h, l in zip(hi, lo)) + 1
    fits = base ** X.dim < 2**62 and max(max(map(abs, lo)), max(map(abs, hi))) < 2**61
    runner = _closure_numpy if fits else _closure_python
    pts, frontier, saturated, hit, rounds = runner(gens, scale, keep, limit, lo, base)
    found = frozenset(
        DyadicPoint(Dyadic(c, -scale) for c in row)
        for row in pts
        if _row_exponent(row, scale) <= exp_cap
    )
    return ClosureReport(exp_cap, slack, found, frontier, saturated, hit, rounds, len(pts))


def _row_exponent(row, scale: int) -> int:
    e = 0
    for c in row:
        c = int(c)
        if c:
            e = max(e, scale - min(scale, ((c & -c).bit_length() - 1)))
    return e


def _closure_numpy(gens, scale, keep, limit, lo, base):
    dim = len(gens[0])
    drop = scale - keep  # midpoints must stay divisible by 2**drop
    lo_arr = np.array(lo, dtype=np.int64)
    weights = np.array([base**i for i in range(dim)], dtype=np.int64)
    bits = 1 << np.arange(dim, dtype=np.int64)

    def encode(a):
        return (a - lo_arr) @ weights

    def decode(k):
        return np.stack([(k // w) % base for w in weights], axis=1) + lo_arr

    start = np.array(gens, dtype=np.int64)
    allpts = start[_order(start, scale)][:limit]
    keys = np.sort(encode(allpts))
    frontier = allpts
    rounds = 0
    hit = len(gens) > limit
    chunk = 1 << 21
    while len(frontier) and not hit:
        rounds += 1
        cand = []
        fcls = (frontier & 1) @ bits
        acls = (allpts & 1) @ bits
        for c in np.unique(fcls):
            F = frontier[fcls == c]
            A = allpts[acls == c]
            step = max(1, chunk // max(1, len(A)))
            for s in range(0, len(F), step):
                mids = ((F[s:s + step, None, :] + A[None, :, :]) >> 1).reshape(-1, dim)
                if drop:
                    mids = mids[np.all(mids % (1 << drop) == 0, axis=1)]
                if len(mids):
                    cand.append(np.unique(encode(mids)))
        fresh = np.unique(np.concatenate(cand)) if cand else np.zeros(0, dtype=np.int64)
        fresh = fresh[~np.isin(fresh, keys, assume_unique=True)]
        if not len(fresh):
            frontier = frontier[:0]
            break
        new = decode(fresh)
        new = new[_order(new, scale)]
        room = limit - len(allpts)
        if len(new) > room:
            new = new[:room]
            hit = True
        allpts = np.concatenate([allpts, new])
        keys = np.sort(np.concatenate([keys, encode(new)]))
        frontier = new
    saturated = not hit and len(frontier) == 0
    return [tuple(int(c) for c in row) for row in allpts], len(frontier), saturated, hit, rounds


def _closure_python(gens, scale, keep, limit, lo, base):
    drop = scale - keep
    key = lambda row: (_row_exponent(row, scale), row)  # noqa: E731
    allpts = sorted({tuple(g) for g in gens}, key=key)[:limit]
    seen = set(allpts)
    frontier = list(allpts)
    hit = len(gens) > limit
    rounds = 0
    while frontier and not hit:
        rounds += 1
        new = set()
        for a in frontier:
            for b in allpts:
                if any((x - y) & 1 for x, y in zip(a, b)):
                    continue
                m = tuple((x + y) >> 1 for x, y in zip(a, b))
                if drop and any(c % (1 << drop) for c in m):
                    continue
                if m not in seen:
                    new.add(m)
        new = sorted(new, key=key)
        room = limit - len(allpts)
        if len(new) > room:
            new = new[:room]
            hit = True
        allpts.extend(new)
        seen.update(new)
        frontier = new
    saturated = not hit and not frontier
    return allpts, len(frontier), saturated, hit, rounds
