"""Isomorphism invariants of dyadic intervals and triangles.

Intervals: every subgroupoid of a dyadic line generated by finitely many
points is isomorphic to ``D_k = [0, k] ∩ D`` for a unique odd ``k``.

Triangles: a triangle with a chosen vertex at the origin is isomorphic to a
representative ``T_{i,j,m,n}`` with vertices ``(0,0), B = (i,j), C = (m,n)``
of exactly one of three classes (right, hat, other).  Two invariants of the
affine group over D make cheap negative certificates: the boundary type and
the odd part of the doubled area ``|det(B - A, C - A)|``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from math import gcd

from . import _linalg as la
from .dyadic import Dyadic, DyadicPoint, as_point
from .groupoid import GeneratorSet, is_geometric
from .lattice import AffineMap, affine_hull, rescale_iso

__all__ = [
    "IntervalDescriptor",
    "NoRepresentativeFound",
    "TriangleClass",
    "TriangleDescriptor",
    "area_odd_part",
    "boundary_type",
    "classify_representative",
    "interval_type",
    "intervals_isomorphic",
    "is_algebraic_simplex",
    "is_geometric_simplex",
    "is_valid_representative",
    "normalize_triangle",
    "representative_vertices",
    "search_representatives",
    "segment_type",
]

DEFAULT_BOUND = 32


class TriangleClass(str, enum.Enum):
    RIGHT = "Right"
    HAT = "Hat"
    OTHER = "Other"

    def __str__(self):
        return self.value


class NoRepresentativeFound(LookupError):
    """The bounded normalization search came up empty (not a proof of anything)."""


@dataclass(frozen=True)
class IntervalDescriptor:
    type_k: int
    endpoints: tuple
    lattice_step: Dyadic


@dataclass(frozen=True)
class TriangleDescriptor:
    i: int
    j: int
    m: int
    n: int
    cls: TriangleClass
    boundary: tuple
    pointed: int | None = None

    @property
    def params(self) -> tuple:
        return (self.i, self.j, self.m, self.n)

    def vertices(self) -> list[DyadicPoint]:
        return representative_vertices(*self.params)

    def __str__(self):
        return f"T_{{{self.i},{self.j},{self.m},{self.n}}} ({self.cls})"


# -- intervals ----------------------------------------------------------------

def _odd(d) -> int:
    d = Dyadic.coerce(d)
    if not d:
        raise ValueError("zero has no odd part")
    return abs(d.mantissa)


def interval_type(X) -> IntervalDescriptor:
    """Type ``k`` with ``<X> ≅ D_k`` for a collinear generator set."""
    X = GeneratorSet.coerce(X)
    if len(X) < 2:
        raise ValueError("an interval needs at least two distinct points")
    A = affine_hull(X.points)
    if A.dim != 1:
        raise ValueError("points are not collinear")
    chart = rescale_iso(A)
    a, c = X.hull.vertices
    length = abs(chart.to_local(c)[0] - chart.to_local(a)[0])
    return IntervalDescriptor(_odd(length), (a, c), Dyadic(A.lattice.invariants[0]))


def intervals_isomorphic(X, Y) -> bool:
    return interval_type(X).type_k == interval_type(Y).type_k


def segment_type(v1, v2) -> int:
    """Type of the full dyadic segment ``[v1, v2] ∩ D^n``."""
    v1, v2 = as_point(v1), as_point(v2)
    if v1 == v2:
        raise ValueError("a segment needs two distinct endpoints")
    g = 0
    for d in v2 - v1:
        if d:
            g = gcd(g, _odd(d))
    return g


def boundary_type(v1, v2, v3) -> tuple[int, int, int]:
    """Types of the sides opposite ``v1``, ``v2`` and ``v3``, in that order."""
    v1, v2, v3 = as_point(v1), as_point(v2), as_point(v3)
    if affine_hull([v1, v2, v3]).dim != 2:
        raise ValueError("triangle vertices are collinear")
    return (segment_type(v2, v3), segment_type(v1, v3), segment_type(v1, v2))


def area_odd_part(v1, v2, v3) -> int:
    """Odd part of ``|det(v2 - v1, v3 - v1)|``, an invariant under GA(2, D)."""
    a, b, c = (as_point(v).to_fractions() for v in (v1, v2, v3))
    det = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    if det == 0:
        raise ValueError("triangle vertices are collinear")
    return _odd(Dyadic.from_fraction(det))


# -- representatives ----------------------------------------------------------

def _first_quadrant(i, j, m, n) -> bool:
    return 0 <= i < m and 0 <= n < j and gcd(i, m) % 2 == 1 and gcd(j, n) % 2 == 1


def _class_of(i, j, m, n) -> TriangleClass | None:
    if i == 0 and n == 0:
        if j % 2 and m % 2 and j <= m:
            return TriangleClass.RIGHT
        return None
    if n == 0:
        if 0 < 2 * i <= m and j % 2 and j > 1 and gcd(i, j) != j:
            return TriangleClass.HAT
        return None
    if i and j <= m and gcd(i, j) not in (i, j, 1) and gcd(m, n) not in (m, n, 1):
        return TriangleClass.OTHER
    return None


def is_valid_representative(i, j, m, n) -> bool:
    return _first_quadrant(i, j, m, n) and _class_of(i, j, m, n) is not None


def classify_representative(i: int, j: int, m: int, n: int) -> TriangleClass:
    if not _first_quadrant(i, j, m, n):
        raise ValueError(f"({i},{j},{m},{n}) is not in first-quadrant normal position")
    cls = _class_of(i, j, m, n)
    if cls is None:
        raise ValueError(f"({i},{j},{m},{n}) matches no representative class")
    return cls


def representative_vertices(i, j, m, n) -> list[DyadicPoint]:
    return [DyadicPoint((0, 0)), DyadicPoint((i, j)), DyadicPoint((m, n))]


def _linear_witness(u, v, B, C) -> AffineMap | None:
    """The linear map sending ``u -> B`` and ``v -> C`` if it lies in GL(2, D)."""
    cols = la.inverse([[u[0], v[0]], [u[1], v[1]]])
    M = la.matmul([[B[0], C[0]], [B[1], C[1]]], cols)
    f = AffineMap.linear(M) if all(q.denominator & (q.denominator - 1) == 0 for row in M for q in row) else None
    return f if f is not None and f.is_automorphism() else None


def _simplicity(f: AffineMap):
    # prefer small denominators, then maps close to the identity
    entries = [q for row in f.matrix for q in row]
    return (max(q.denominator for q in entries),
            sum(abs(q - (r == c)) for r, row in enumerate(f.matrix) for c, q in enumerate(row)))


def _pointed_candidates(pts, idx, bound):
    P = pts[idx]
    Q, R = (pts[k] for k in range(3) if k != idx)
    u = [a - b for a, b in zip(Q, P)]
    v = [a - b for a, b in zip(R, P)]
    det0 = u[0] * v[1] - u[1] * v[0]
    delta = _odd(Dyadic.from_fraction(det0))
    for m in range(1, bound + 1):
        for i in range(m):
            if gcd(i, m) % 2 == 0:
                continue
            for n in range(bound):
                target = delta
                while target + i * n <= bound * m:
                    j, rem = divmod(target + i * n, m)
                    target *= 2
                    if rem or j <= n or gcd(j, n) % 2 == 0:
                        continue
                    cls = _class_of(i, j, m, n)
                    if cls is None:
                        continue
                    B, C = (i, j), (m, n)
                    maps = [f for f in (_linear_witness(u, v, B, C), _linear_witness(v, u, B, C)) if f]
                    if maps:
                        lin = min(maps, key=_simplicity)
                        yield cls, (i, j, m, n), lin @ AffineMap.translate([-x for x in P])


_PRIORITY = {TriangleClass.RIGHT: 0, TriangleClass.HAT: 1, TriangleClass.OTHER: 2}


def search_representatives(v1, v2, v3, bound: int = DEFAULT_BOUND) -> list[tuple[TriangleDescriptor, AffineMap]]:
    """Every representative with parameters ``<= bound`` reachable from any pointing.

    Sorted by class (right, hat, other), then largest parameter, then
    parameters lexicographically, then pointed vertex.
    """
    verts = [as_point(v) for v in (v1, v2, v3)]
    if any(v.dim != 2 for v in verts):
        raise ValueError("triangle normalization is planar")
    boundary = boundary_type(*verts)
    pts = [v.to_fractions() for v in verts]
    found = []
    for idx in range(3):
        for cls, params, f in _pointed_candidates(pts, idx, bound):
            found.append((TriangleDescriptor(*params, cls, boundary, idx), f))
    found.sort(key=lambda t: (_PRIORITY[t[0].cls], max(t[0].params), t[0].params, t[0].pointed))
    return found


def normalize_triangle(v1, v2, v3, bound: int = DEFAULT_BOUND) -> tuple[TriangleDescriptor, AffineMap]:
    """A representative triangle isomorphic to ``v1 v2 v3`` with its witness map.

    The map sends the pointed vertex to the origin and the other two onto
    ``(i, j)`` and ``(m, n)``.  Raises :class:`NoRepresentativeFound` when
    no parameters up to ``bound`` work.
    """
    found = search_representatives(v1, v2, v3, bound)
    if not found:
        raise NoRepresentativeFound(f"no representative found within bound {bound}")
    return found[0]


# -- simplices ----------------------------------------------------------------

def is_algebraic_simplex(X) -> bool:
    X = GeneratorSet.coerce(X)
    return len(X) == X.affine_hull.dim + 1


def is_geometric_simplex(X) -> bool:
    return is_algebraic_simplex(X) and is_geometric(X)
