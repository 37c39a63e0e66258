"""Exact convex geometry over the dyadic rationals ``D = Z[1/2]``.

Membership in finitely generated midpoint groupoids, interval and triangle
classification, and synthesis of finite generating sets.
"""
from .classify import (
    NoRepresentativeFound,
    TriangleClass,
    TriangleDescriptor,
    area_odd_part,
    boundary_type,
    classify_representative,
    interval_type,
    intervals_isomorphic,
    is_algebraic_simplex,
    is_geometric_simplex,
    normalize_triangle,
    segment_type,
)
from .dyadic import (
    Dyadic,
    DyadicPoint,
    affine_combination,
    dy_normalize,
    midpoint,
    odd_part,
    parse_dyadic,
    unit_circle_points,
)
from .estimator import GeneratorSynthesizer, GroupoidMembership
from .generators import (
    GenerationCertificate,
    anchors,
    dyadic_between,
    generating_set_polytope,
    generating_set_semipolytope,
    inner_polytope,
    inner_simplex,
    irredundant_reduce,
    three_point_generates_interval,
    wall_line_triple,
)
from .groupoid import (
    ClosureReport,
    GeneratorSet,
    SemipolytopeDescriptor,
    closure_bfs,
    equals_groupoid,
    is_geometric,
    member,
    semipolytope_descriptor,
    vertices_in,
)
from .hull import RationalPolytope, convex_hull, face_lattice, minimal_face, relint_contains
from .lattice import (
    AffineDyadicSubspace,
    AffineMap,
    DyadicLattice,
    affine_hull,
    apply_map,
    lattice_member,
    rescale_iso,
    saturate,
    smith_normal_form,
    subspace_equal,
)

__version__ = "0.1.0"

__all__ = [
    "GeneratorSynthesizer",
    "GroupoidMembership",
    "AffineDyadicSubspace",
    "AffineMap",
    "ClosureReport",
    "Dyadic",
    "DyadicLattice",
    "DyadicPoint",
    "GenerationCertificate",
    "GeneratorSet",
    "NoRepresentativeFound",
    "RationalPolytope",
    "SemipolytopeDescriptor",
    "TriangleClass",
    "TriangleDescriptor",
    "affine_combination",
    "affine_hull",
    "anchors",
    "apply_map",
    "area_odd_part",
    "boundary_type",
    "classify_representative",
    "closure_bfs",
    "convex_hull",
    "dy_normalize",
    "dyadic_between",
    "equals_groupoid",
    "face_lattice",
    "generating_set_polytope",
    "generating_set_semipolytope",
    "inner_polytope",
    "inner_simplex",
    "interval_type",
    "intervals_isomorphic",
    "irredundant_reduce",
    "is_algebraic_simplex",
    "is_geometric",
    "is_geometric_simplex",
    "lattice_member",
    "member",
    "midpoint",
    "minimal_face",
    "normalize_triangle",
    "odd_part",
    "parse_dyadic",
    "relint_contains",
    "rescale_iso",
    "saturate",
    "segment_type",
    "semipolytope_descriptor",
    "smith_normal_form",
    "subspace_equal",
    "three_point_generates_interval",
    "unit_circle_points",
    "vertices_in",
    "wall_line_triple",
]
