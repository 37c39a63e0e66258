"""Regression bundles for the worked examples.

Each bundle returns a list of :class:`Check` records.  A bundle passes when
every check does; failing checks carry both the expected and the observed
value so the CLI can print a diff.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as Fr
from typing import Callable

from .classify import (
    area_odd_part,
    boundary_type,
    classify_representative,
    normalize_triangle,
    representative_vertices,
)
from .dyadic import DyadicPoint, as_point, unit_circle_points
from .generators import generating_set_polytope, generating_set_semipolytope, irredundant_reduce
from .groupoid import (
    GeneratorSet,
    SemipolytopeDescriptor,
    closure_bfs,
    equals_groupoid,
    is_geometric,
    member,
    vertices_in,
)
from .hull import convex_hull
from .lattice import AffineDyadicSubspace, AffineMap, DyadicLattice

__all__ = ["BUNDLES", "Check", "run_bundle"]


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    expected: object = None
    actual: object = None


def _eq(name, expected, actual) -> Check:
    return Check(name, expected == actual, expected, actual)


def _pts(*coords) -> list[DyadicPoint]:
    return [as_point(c) for c in coords]


def _pset(points) -> frozenset:
    return frozenset(as_point(p) for p in points)


def is_irredundant(X) -> bool:
    X = GeneratorSet.coerce(X)
    return all(not member(x, X.without(x)) for x in X) if len(X) > 1 else True


def generates_polytope(X, vertices) -> bool:
    return equals_groupoid(SemipolytopeDescriptor.from_hull(vertices), GeneratorSet(X).descriptor)


NOTDPOL = _pts((0, 0), (1, 3), (3, 0), (1, 1))
QPOL = _pts((0, 0), (0, 1), (9, 0), (3, 0), (1, Fr(1, 2)))
RIGHT333 = _pts((0, 0), (3, 0), (0, 3), (0, 1), (1, 0), (2, 1))
HAT_VERTICES = _pts((0, 0), (3, 15), (6, 0))
HAT31560 = HAT_VERTICES + _pts((1, 5), (5, 5), (1, 0), (1, 1))


def qpol_reference() -> SemipolytopeDescriptor:
    """The semipolytope with hull (0,0),(0,1),(9,0) and step-3 bottom edge."""
    bottom = AffineDyadicSubspace(as_point((0, 0)), DyadicLattice.from_vectors([(3, 0)], 2))
    return SemipolytopeDescriptor.from_hull(_pts((0, 0), (0, 1), (9, 0)), {_pset([(0, 0), (9, 0)]): bottom})


def bundle_notdpol() -> list[Check]:
    X = GeneratorSet(NOTDPOL)
    d = X.descriptor
    checks = [
        _eq("member (1,0)", False, member((1, 0), X)),
        _eq("member (2,0)", False, member((2, 0), X)),
        _eq("member (3/2,0)", True, member((Fr(3, 2), 0), X)),
        _eq("member (1/2,1/2)", True, member((Fr(1, 2), Fr(1, 2)), X)),
        _eq("vertices", _pset([(0, 0), (1, 3), (3, 0)]), _pset(vertices_in(X))),
        _eq("is_geometric", False, is_geometric(X)),
    ]
    bottom = d.by_vertex_points()[_pset([(0, 0), (3, 0)])]
    checks.append(_eq("bottom edge lattice invariants", (3,), tuple(bottom.lattice.invariants)))
    report = closure_bfs(X, 3, 4, max_points=5000)
    checks.append(_eq("closure omits (1,0)", False, (1, 0) in report))
    checks.append(_eq("closure points are members", True, all(d.member(p) for p in report.found)))
    cert = generating_set_semipolytope(d).reduced()
    checks.append(_eq("synthesized set validates", True, cert.validate()))
    checks.append(_eq("synthesized set size", 4, len(cert.produced)))
    return checks + bundle_matrices()


def bundle_matrices() -> list[Check]:
    A0, A1, A2, A3 = NOTDPOL
    M1 = AffineMap.from_row_matrix([[Fr(-1, 2), Fr(3, 2)], [Fr(1, 2), Fr(-1, 2)]])
    M2 = AffineMap.from_row_matrix([[Fr(1, 4), Fr(1, 2)], [Fr(1, 2), 0]]) @ AffineMap.translate((-1, -1))
    return [
        _eq("M1 A0", as_point((0, 0)), M1(A0)),
        _eq("M1 A1", as_point((1, 0)), M1(A1)),
        _eq("M1 A3", as_point((0, 1)), M1(A3)),
        _eq("det M1", Fr(-1, 2), M1.det()),
        _eq("M1 in GA(2,D)", True, M1.is_automorphism()),
        _eq("M2 {A1,A2,A3}", _pset([(0, 0), (1, 0), (0, 1)]), _pset([M2(A1), M2(A2), M2(A3)])),
        _eq("det M2", Fr(-1, 4), M2.det()),
        _eq("M2 in GA(2,D)", True, M2.is_automorphism()),
    ]


def bundle_qpol() -> list[Check]:
    ref = qpol_reference()
    cert = generating_set_semipolytope(ref).reduced()
    return [
        _eq("5 points generate S", True, equals_groupoid(QPOL, ref)),
        _eq("5 points irredundant", True, is_irredundant(QPOL)),
        _eq("synthesized set validates", True, cert.validate()),
        _eq("synthesized set size", 5, len(cert.produced)),
    ]


def bundle_right333() -> list[Check]:
    verts = _pts((0, 0), (0, 3), (3, 0))
    cert = generating_set_polytope(verts).reduced()
    return [
        _eq("class", "Right", str(classify_representative(0, 3, 3, 0))),
        _eq("boundary", (3, 3, 3), boundary_type(*verts)),
        _eq("hull", _pset(verts), _pset(convex_hull(RIGHT333).vertices)),
        _eq("is_geometric", True, is_geometric(RIGHT333)),
        _eq("generates T_{0,3,3,0}", True, generates_polytope(RIGHT333, verts)),
        _eq("irredundant", True, is_irredundant(RIGHT333)),
        _eq("synthesized set validates", True, cert.validate()),
        _eq("synthesized set size", 6, len(cert.produced)),
    ]


def bundle_hat31560() -> list[Check]:
    cert = generating_set_polytope(HAT_VERTICES).reduced()
    semi_gens = HAT_VERTICES + _pts((1, 0), (1, 1))
    semi_ref = SemipolytopeDescriptor.from_hull(
        HAT_VERTICES,
        {
            _pset([(0, 0), (3, 15)]): GeneratorSet(_pts((0, 0), (3, 15))).affine_hull,
            _pset([(6, 0), (3, 15)]): GeneratorSet(_pts((6, 0), (3, 15))).affine_hull,
        },
    )
    return [
        _eq("class", "Hat", str(classify_representative(3, 15, 6, 0))),
        _eq("boundary", (3, 3, 3), boundary_type(*HAT_VERTICES)),
        _eq("generates T_{3,15,6,0}", True, generates_polytope(HAT31560, HAT_VERTICES)),
        _eq("irredundant", True, is_irredundant(HAT31560)),
        _eq("synthesized set validates", True, cert.validate()),
        _eq("synthesized set size", 7, len(cert.produced)),
        _eq("semitriangle generated by vertices, (1,0), (1,1)", True, equals_groupoid(semi_gens, semi_ref)),
    ]


def bundle_polygon() -> list[Check]:
    quad = HAT_VERTICES + _pts((3, -1))
    gens = HAT31560 + _pts((3, -1))
    lower = _pts((0, 0), (1, 0), (6, 0), (3, -1))
    reduced = irredundant_reduce(gens)
    return [
        _eq("lower triangle generated", True, generates_polytope(lower, _pts((0, 0), (6, 0), (3, -1)))),
        _eq("polygon generated by hat generators and (3,-1)", True, generates_polytope(gens, quad)),
        _eq("reduced set still generates", True, generates_polytope(reduced, quad)),
        _eq("reduced set irredundant", True, is_irredundant(reduced)),
    ]


def bundle_disc() -> list[Check]:
    four = _pset([(1, 0), (-1, 0), (0, 1), (0, -1)])
    return [_eq(f"circle points cap {cap}", four, frozenset(unit_circle_points(cap))) for cap in (0, 3, 12)]


def bundle_normalization_remark() -> list[Check]:
    # the chain of moves applied to T_{12,15,15,12}
    a_, b_, c_ = _pts((3, 15), (0, 0), (6, 3))
    M = AffineMap.from_row_matrix([[1, 1], [0, -2]])
    flip = AffineMap.linear([[1, 0], [0, -1]])
    image = [flip(M(p)) for p in (a_, b_, c_)]
    desc, f = normalize_triangle((0, 0), (12, 15), (15, 12))
    target = representative_vertices(1, 9, 2, 0)
    checks = [
        _eq("class of (12,15,15,12)", "Other", str(classify_representative(12, 15, 15, 12))),
        _eq("moves reach (3,27),(0,0),(6,0)", _pts((3, 27), (0, 0), (6, 0)), image),
        _eq("witness map carries vertices", _pset(desc.vertices()),
            _pset([f(v) for v in _pts((0, 0), (12, 15), (15, 12))])),
        _eq("area odd part matches T_{1,9,2,0}", area_odd_part(*target), area_odd_part((0, 0), (12, 15), (15, 12))),
        _eq("boundary type matches T_{1,9,2,0}", sorted(boundary_type(*target)),
            sorted(boundary_type((0, 0), (12, 15), (15, 12)))),
        _eq("normalizes to T_{1,9,2,0}", (1, 9, 2, 0), desc.params),
    ]
    other, _ = normalize_triangle((0, 0), (10, 25), (15, 9))
    checks.append(_eq("(10,25),(15,9) representative class", "Other", str(other.cls)))
    checks.append(_eq("(10,25),(15,9) representative valid", "Other", str(classify_representative(*other.params))))
    return checks


def bundle_hat_typo_probe() -> list[Check]:
    """Look for 4-element generating sets of the triangle (-1,0),(0,1),(0,3)."""
    verts = _pts((-1, 0), (0, 1), (0, 3))
    P = convex_hull(verts)
    alone = generates_polytope(verts, verts)
    extras = []
    for e in range(3):
        step = Fr(1, 2**e)
        for x in range(-2**e, 1):
            for y in range(0, 3 * 2**e + 1):
                p = as_point((x * step, y * step))
                if p not in verts and P.contains(p) and generates_polytope(verts + [p], verts):
                    extras.append(p)
    return [
        Check("vertices alone generate the triangle", alone, None, alone),
        Check("4-element generating sets with exponent <= 2", True, None,
              f"{len(extras)} extra points work; every one is redundant" if alone else [str(p) for p in extras]),
    ]


BUNDLES: dict[str, Callable[[], list[Check]]] = {
    "notdpol": bundle_notdpol,
    "qpol": bundle_qpol,
    "right333": bundle_right333,
    "hat31560": bundle_hat31560,
    "polygon-example": bundle_polygon,
    "disc": bundle_disc,
    "matrices": bundle_matrices,
    "normalization-remark": bundle_normalization_remark,
    "hat-typo-probe": bundle_hat_typo_probe,
}


def run_bundle(name: str) -> list[Check]:
    try:
        fn = BUNDLES[name]
    except KeyError:
        raise KeyError(f"unknown example {name!r}; choose from {', '.join(BUNDLES)}") from None
    return fn()
