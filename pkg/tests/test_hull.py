from fractions import Fraction

import numpy as np
import pytest
from hypothesis import assume, given, strategies as st
from scipy.spatial import ConvexHull

from conftest import points, small_dyadics
from dyconvex import convex_hull, face_lattice, minimal_face
from dyconvex.dyadic import Dyadic, as_point

int_points = lambda dim: st.lists(st.tuples(*[st.integers(-6, 6)] * dim), min_size=dim + 1, max_size=9, unique=True)


def _full_dim(pts):
    A = np.array(pts, dtype=float)
    return np.linalg.matrix_rank(A[1:] - A[0]) == A.shape[1]


@pytest.mark.parametrize("dim", [2, 3])
@given(data=st.data())
def test_vertices_match_qhull(dim, data):
    pts = data.draw(int_points(dim))
    assume(_full_dim(pts))
    oracle = {tuple(pts[i]) for i in ConvexHull(np.array(pts, dtype=float)).vertices}
    P = convex_hull(pts)
    assert {tuple(int(c.to_fraction()) for c in v) for v in P.vertices} == oracle
    assert P.dim == dim


@given(int_points(2))
def test_facets_are_supporting_and_inward(pts):
    assume(_full_dim(pts))
    P = convex_hull(pts)
    for f in P.facets:
        slacks = [f.slack(p) for p in pts]
        assert min(slacks) == 0
        assert all(s >= 0 for s in slacks)
        assert all(f.slack(P.vertices[i]) == 0 for i in f.vertex_ids)
        assert len(f.vertex_ids) == 2


@given(int_points(2), st.tuples(small_dyadics(7, 3), small_dyadics(7, 3)))
def test_contains_agrees_with_qhull_equations(pts, q):
    assume(_full_dim(pts))
    hull = ConvexHull(np.array(pts, dtype=float))
    # qhull equations are a.x + b <= 0 inside; exact enough at this scale
    x = np.array([float(c.to_fraction()) for c in q])
    vals = hull.equations[:, :2] @ x + hull.equations[:, 2]
    P = convex_hull(pts)
    if np.all(vals < -1e-9):
        assert P.contains(q) and P.relint_contains(q)
    elif np.any(vals > 1e-9):
        assert not P.contains(q)
    else:
        assert P.contains(q) and not P.relint_contains(q)


def test_notdpol_hull():
    P = convex_hull([(0, 0), (1, 3), (3, 0), (1, 1)])
    assert set(P.vertices) == {as_point(p) for p in [(0, 0), (1, 3), (3, 0)]}
    assert face_lattice(P).counts() == [3, 3, 1]


def test_lower_dimensional_hulls():
    seg = convex_hull([(0, 0), (3, 3), (1, 1)])
    assert seg.dim == 1 and set(seg.vertices) == {as_point((0, 0)), as_point((3, 3))}
    assert seg.contains((Fraction(3, 2), Fraction(3, 2))) and not seg.contains((1, 2))
    point = convex_hull([(2, 5)])
    assert point.dim == 0 and point.contains((2, 5))
    assert set(convex_hull([0, 9, 3]).vertices) == {as_point(0), as_point(9)}


@pytest.mark.parametrize(
    "verts, counts",
    [
        ([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)], [4, 6, 4, 1]),
        ([(x, y, z) for x in (0, 1) for y in (0, 1) for z in (0, 1)], [8, 12, 6, 1]),
        ([(0, 0), (2, 0), (2, 2), (0, 2)], [4, 4, 1]),
    ],
)
def test_face_counts(verts, counts):
    assert face_lattice(convex_hull(verts)).counts() == counts


def test_face_lattice_meet_join():
    P = convex_hull([(0, 0), (4, 0), (0, 4)])
    L = face_lattice(P)
    edges = L.by_dim(1)
    a, b = edges[0], edges[1]
    m = L.meet(a, b)
    assert m is not None and m.dim == 0
    assert L.join(L.by_dim(0)[0], L.by_dim(0)[1]).dim == 1


@pytest.mark.parametrize(
    "p, dim",
    [((1, 1), 2), ((2, 0), 1), ((0, 0), 0), ((Fraction(1, 2), 0), 1), ((2, 2), 1)],
)
def test_minimal_face(p, dim):
    P = convex_hull([(0, 0), (4, 0), (0, 4)])
    F = minimal_face(P, p)
    assert F.dim == dim
    face_hull = P.face_polytope(F)
    assert face_hull.relint_contains(p)


def test_minimal_face_outside_raises():
    with pytest.raises(ValueError):
        minimal_face(convex_hull([(0, 0), (1, 0), (0, 1)]), (1, 1))


@given(st.lists(points(2), min_size=3, max_size=7), points(2, small_dyadics(8, 2)))
def test_minimal_face_relint_property(pts, q):
    P = convex_hull(pts)
    assume(P.contains(q))
    F = P.minimal_face(q)
    assert P.face_polytope(F).relint_contains(q)
    # no proper sub-face contains q
    for G in P.lattice.faces:
        if G.vertex_ids < F.vertex_ids:
            assert not P.face_polytope(G).contains(q)


def test_dyadic_vertices_stay_exact():
    P = convex_hull([(Dyadic(1, -30), 0), (0, Dyadic(1, -30)), (0, 0)])
    assert P.contains((Dyadic(1, -31), Dyadic(1, -31)))
    assert not P.contains((Dyadic(1, -30), Dyadic(1, -40)))
