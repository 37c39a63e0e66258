from fractions import Fraction as Fr

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from dyconvex import (
    AffineMap,
    NoRepresentativeFound,
    TriangleClass,
    area_odd_part,
    boundary_type,
    classify_representative,
    interval_type,
    intervals_isomorphic,
    normalize_triangle,
    segment_type,
)
from dyconvex.classify import is_algebraic_simplex, is_geometric_simplex, is_valid_representative, search_representatives
from dyconvex.dyadic import as_point, odd_part


@pytest.mark.parametrize(
    "gens, k",
    [([0, 9], 1), ([0, 1, 9], 9), ([0, 3, 9], 3), ([0, 1, 3], 3), ([0, 2, 3], 3), ([0, Fr(9, 4)], 1),
     ([(0, 0), (3, 3)], 1), ([(0, 0), (1, 1), (3, 3)], 3), ([0, 1, 12], 3), ([Fr(1, 2), 1, 5], 9)],
)
def test_interval_type(gens, k):
    assert interval_type(gens).type_k == k


def test_interval_type_errors():
    with pytest.raises(ValueError):
        interval_type([1])
    with pytest.raises(ValueError):
        interval_type([(0, 0), (1, 0), (0, 1)])


def test_intervals_isomorphic():
    assert intervals_isomorphic([0, 9], [(0, 0), (Fr(9, 2), Fr(9, 2))])
    assert intervals_isomorphic([0, 1, 3], [0, 2, 3])
    assert not intervals_isomorphic([0, 9], [0, 1, 9])


@pytest.mark.parametrize("a, b, k", [((0, 0), (3, 0), 3), ((0, 0), (3, 15), 3), ((0, 0), (6, 2), 1), ((1,), (Fr(11, 2),), 9)])
def test_segment_type(a, b, k):
    assert segment_type(a, b) == k


@pytest.mark.parametrize(
    "params, cls",
    [((0, 3, 3, 0), "Right"), ((0, 1, 1, 0), "Right"), ((3, 15, 6, 0), "Hat"), ((1, 9, 2, 0), "Hat"),
     ((12, 15, 15, 12), "Other"), ((9, 15, 25, 10), "Other")],
)
def test_classify_representative(params, cls):
    assert str(classify_representative(*params)) == cls


@pytest.mark.parametrize("params", [(0, 5, 3, 0), (1, 0, 2, 0), (2, 3, 4, 0), (10, 25, 15, 9), (0, 2, 3, 0), (3, 3, 6, 0)])
def test_invalid_representatives(params):
    with pytest.raises(ValueError):
        classify_representative(*params)
    assert not is_valid_representative(*params)


def _sympy_area_odd(v1, v2, v3):
    M = sympy.Matrix([[sympy.Rational(x) for x in (*v, 1)] for v in (v1, v2, v3)])
    d = abs(M.det())
    num, den = sympy.fraction(d)
    while num % 2 == 0:
        num //= 2
    return int(num)


tri = st.tuples(*[st.tuples(st.integers(-8, 8), st.integers(-8, 8))] * 3).filter(
    lambda t: (t[1][0] - t[0][0]) * (t[2][1] - t[0][1]) != (t[1][1] - t[0][1]) * (t[2][0] - t[0][0])
)

maps = st.sampled_from([
    [[1, 0], [0, 1]], [[0, 1], [1, 0]], [[1, 1], [0, 1]], [[Fr(1, 2), 0], [0, 2]],
    [[1, 2], [1, 3]], [[-1, 0], [3, -1]], [[2, 1], [1, 1]], [[Fr(3, 2), Fr(1, 2)], [1, 1]],
])


@given(tri)
def test_area_odd_part_matches_sympy(t):
    assert area_odd_part(*t) == _sympy_area_odd(*t)


@given(tri, maps, st.tuples(st.integers(-4, 4), st.integers(-4, 4)))
def test_invariants_under_dyadic_affine_maps(t, M, shift):
    f = AffineMap.linear(M) @ AffineMap.translate(shift)
    assert f.is_automorphism()
    image = [f(v) for v in t]
    assert area_odd_part(*t) == area_odd_part(*image)
    assert boundary_type(*t) == boundary_type(*image)


def _check_witness(verts, desc, f):
    assert f.is_automorphism()
    assert {f(v) for v in verts} == set(desc.vertices())
    assert f(verts[desc.pointed]) == as_point((0, 0))
    assert is_valid_representative(*desc.params)
    assert sorted(boundary_type(*desc.vertices())) == sorted(boundary_type(*verts))
    assert area_odd_part(*desc.vertices()) == area_odd_part(*verts)


@pytest.mark.parametrize(
    "verts, params",
    [
        (((0, 0), (3, 0), (0, 3)), (0, 3, 3, 0)),
        (((0, 0), (3, 15), (6, 0)), (3, 15, 6, 0)),
        (((0, 0), (1, 0), (0, 1)), (0, 1, 1, 0)),
        (((0, 0), (12, 15), (15, 12)), (3, 27, 6, 0)),
        (((0, 0), (10, 25), (15, 9)), (9, 15, 25, 10)),
    ],
)
def test_normalize_examples(verts, params):
    desc, f = normalize_triangle(*verts)
    assert desc.params == params
    _check_witness([as_point(v) for v in verts], desc, f)


def test_normalize_prefers_identity_witness():
    desc, f = normalize_triangle((0, 0), (3, 0), (0, 3))
    assert f == AffineMap.identity(2)
    assert desc.cls is TriangleClass.RIGHT


def test_normal_form_is_not_unique_per_pointing():
    # the class conditions alone admit two representatives of this triangle
    found = {d.params for d, _ in search_representatives((0, 0), (3, 0), (0, 3))}
    assert {(0, 3, 3, 0), (9, 15, 15, 9)} <= found


def test_normalize_reports_failure():
    with pytest.raises(NoRepresentativeFound):
        normalize_triangle((1, 2), (7, 3), (2, 9))
    with pytest.raises(ValueError):
        normalize_triangle((0, 0), (1, 1), (2, 2))


@settings(max_examples=25)
@given(st.tuples(*[st.tuples(st.integers(-3, 3), st.integers(-3, 3))] * 3).filter(
    lambda t: (t[1][0] - t[0][0]) * (t[2][1] - t[0][1]) != (t[1][1] - t[0][1]) * (t[2][0] - t[0][0])
), maps, st.tuples(st.integers(-3, 3), st.integers(-3, 3)))
def test_normal_form_is_an_isomorphism_invariant(t, M, shift):
    verts = [as_point(v) for v in t]
    try:
        desc, f = normalize_triangle(*verts, bound=16)
    except NoRepresentativeFound:
        return
    _check_witness(verts, desc, f)
    g = AffineMap.linear(M) @ AffineMap.translate(shift)
    other, _ = normalize_triangle(*[g(v) for v in verts], bound=16)
    assert other.params == desc.params


def test_simplex_predicates():
    assert is_algebraic_simplex([(0, 0), (3, 0), (0, 3)])
    assert not is_geometric_simplex([(0, 0), (3, 0), (0, 3)])
    assert is_geometric_simplex([(0, 0), (1, 0), (0, 1)])
    assert not is_algebraic_simplex([(0, 0), (1, 0), (0, 1), (1, 1)])


def test_odd_part_helper():
    assert odd_part(48) == (3, 4) and odd_part(-7) == (-7, 0)
