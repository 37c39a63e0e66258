"""D-modules, affine D-subspaces and affine maps of ``D^n``.

Since 2 is a unit of D, any finitely generated D-submodule of ``D^n`` is
determined by integer generators up to powers of two.  Working through the
integer Smith normal form and discarding the powers of two in the
invariant factors leaves only odd "obstructions": ``v`` lies in the module
iff, in Smith coordinates, each coordinate is divisible by the odd part of
the matching invariant factor.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import _linalg as la
from .dyadic import Dyadic, DyadicPoint, as_point, odd_part

__all__ = [
    "AffineDyadicSubspace",
    "AffineMap",
    "Chart",
    "DyadicLattice",
    "affine_hull",
    "apply_map",
    "lattice_member",
    "rescale_iso",
    "saturate",
    "smith_normal_form",
    "subspace_equal",
]


def _identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(M):
    """Integer Smith normal form.

    Returns ``(U, S, V)`` with ``U @ M @ V == S``, ``U`` and ``V``
    unimodular, ``S`` diagonal with non-negative entries and each diagonal
    entry dividing the next.
    """
    A = [[int(x) for x in row] for row in M]
    m = len(A)
    n = len(A[0]) if m else 0
    U = _identity(m)
    V = _identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        A[dst] = [a + q * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):  # col_dst += q * col_src
        for row in A:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    for t in range(min(m, n)):
        nz = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
        if not nz:
            break
        _, i0, j0 = min(nz)
        swap_rows(t, i0)
        swap_cols(t, j0)
        while True:
            clean = True
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // A[t][t]))
                    clean = clean and A[i][t] == 0
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // A[t][t]))
                    clean = clean and A[t][j] == 0
            if not clean:
                cand = [(abs(A[i][t]), i, t) for i in range(t + 1, m) if A[i][t]]
                cand += [(abs(A[t][j]), t, j) for j in range(t + 1, n) if A[t][j]]
                _, i1, j1 = min(cand)
                if i1 != t:
                    swap_rows(t, i1)
                else:
                    swap_cols(t, j1)
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % A[t][t]),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]
    return U, A, V


def _int_inverse(U):
    inv = la.inverse(U)
    return [[int(x) for x in row] for row in inv]


def _to_integer_vectors(vectors) -> tuple[list[list[int]], int]:
    """Scale dyadic vectors by one shared ``2**s`` so all entries are integers."""
    s = 0
    for v in vectors:
        for c in v:
            s = max(s, c.denominator_exponent)
    ints = [[(c.shift(s)).numerator for c in v] for v in vectors]
    return ints, s


@dataclass(frozen=True, eq=False)
class DyadicLattice:
    """The D-span of finitely many vectors of ``D^n``.

    ``basis`` holds linearly independent integer vectors whose D-span is the
    lattice (the recorded power-of-two ``scale`` does not change that span);
    ``invariants`` are the odd parts of the nonzero Smith invariant factors.
    """

    ambient_dim: int
    basis: tuple
    invariants: tuple
    scale: int = 0
    _u: tuple = field(default=(), repr=False)
    _uinv: tuple = field(default=(), repr=False)

    @classmethod
    def from_vectors(cls, vectors, ambient_dim: int | None = None) -> "DyadicLattice":
        vecs = [as_point(v) for v in vectors]
        if ambient_dim is None:
            if not vecs:
                raise ValueError("ambient dimension needed for an empty generating set")
            ambient_dim = vecs[0].dim
        if any(v.dim != ambient_dim for v in vecs):
            raise ValueError("dimension mismatch among lattice generators")
        ints, s = _to_integer_vectors(vecs)
        ints = [v for v in ints if any(v)]
        if not ints:
            u = _identity(ambient_dim)
            return cls(ambient_dim, (), (), s, tuple(map(tuple, u)), tuple(map(tuple, u)))
        # columns are the generators
        B = [[v[i] for v in ints] for i in range(ambient_dim)]
        U, S, _ = smith_normal_form(B)
        diag = [S[i][i] for i in range(min(len(S), len(S[0])))]
        r = sum(1 for d in diag if d)
        odd = [abs(odd_part(d)[0]) for d in diag[:r]]
        uinv = _int_inverse(U)
        basis = tuple(tuple(uinv[row][k] * odd[k] for row in range(ambient_dim)) for k in range(r))
        return cls(ambient_dim, basis, tuple(odd), s, tuple(map(tuple, U)), tuple(map(tuple, uinv)))

    @property
    def rank(self) -> int:
        return len(self.invariants)

    def smith_coordinates(self, v) -> list[Fraction] | None:
        """Coordinates of ``v`` w.r.t. ``basis`` (``None`` if outside the rational span)."""
        v = as_point(v)
        if v.dim != self.ambient_dim:
            raise ValueError("dimension mismatch")
        y = la.matvec(self._u, v.to_fractions())
        if any(y[i] != 0 for i in range(self.rank, self.ambient_dim)):
            return None
        return [y[i] / self.invariants[i] for i in range(self.rank)]

    def contains(self, v) -> bool:
        coords = self.smith_coordinates(v)
        if coords is None:
            return False
        return all(c.denominator & (c.denominator - 1) == 0 for c in coords)

    __contains__ = contains

    def saturate(self) -> "DyadicLattice":
        r = self.rank
        basis = tuple(tuple(self._uinv[row][k] for row in range(self.ambient_dim)) for k in range(r))
        return DyadicLattice(self.ambient_dim, basis, (1,) * r, 0, self._u, self._uinv)

    def is_saturated(self) -> bool:
        return all(o == 1 for o in self.invariants)

    def issubset(self, other: "DyadicLattice") -> bool:
        return all(other.contains(DyadicPoint(b)) for b in self.basis)

    def __eq__(self, other):
        if not isinstance(other, DyadicLattice):
            return NotImplemented
        return (
            self.ambient_dim == other.ambient_dim
            and self.rank == other.rank
            and self.issubset(other)
            and other.issubset(self)
        )

    def __hash__(self):
        return hash((self.ambient_dim, self.rank, tuple(sorted(self.invariants))))

    def basis_points(self) -> list[DyadicPoint]:
        return [DyadicPoint(b) for b in self.basis]


def lattice_member(v, L: DyadicLattice) -> bool:
    return L.contains(v)


def saturate(L: DyadicLattice) -> DyadicLattice:
    return L.saturate()


@dataclass(frozen=True, eq=False)
class AffineDyadicSubspace:
    """The point set ``base + lattice``."""

    base: DyadicPoint
    lattice: DyadicLattice

    @property
    def dim(self) -> int:
        return self.lattice.rank

    @property
    def ambient_dim(self) -> int:
        return self.lattice.ambient_dim

    def contains(self, p) -> bool:
        p = as_point(p)
        if p.dim != self.ambient_dim:
            raise ValueError("dimension mismatch")
        return self.lattice.contains(p - self.base)

    __contains__ = contains

    def saturate(self) -> "AffineDyadicSubspace":
        return AffineDyadicSubspace(self.base, self.lattice.saturate())

    def is_saturated(self) -> bool:
        return self.lattice.is_saturated()

    def __eq__(self, other):
        if not isinstance(other, AffineDyadicSubspace):
            return NotImplemented
        return subspace_equal(self, other)

    def __hash__(self):
        return hash(self.lattice)


def affine_hull(points) -> AffineDyadicSubspace:
    """Smallest affine D-subspace containing ``points``, based at the first one."""
    pts = [as_point(p) for p in points]
    if not pts:
        raise ValueError("affine hull of an empty set")
    base = pts[0]
    lat = DyadicLattice.from_vectors([p - base for p in pts[1:]], base.dim)
    return AffineDyadicSubspace(base, lat)


def subspace_equal(A: AffineDyadicSubspace, B: AffineDyadicSubspace) -> bool:
    if A.ambient_dim != B.ambient_dim:
        raise ValueError("ambient dimension mismatch")
    return A.lattice == B.lattice and A.lattice.contains(B.base - A.base)


# -- affine maps -------------------------------------------------------------

def _is_dyadic(q: Fraction) -> bool:
    d = q.denominator
    return d & (d - 1) == 0


@dataclass(frozen=True)
class AffineMap:
    """``x -> matrix @ x + translation`` with exact rational entries.

    Points are column vectors.  A matrix acting by right multiplication on
    row vectors, ``x -> x M``, is ``AffineMap.from_row_matrix(M)``.
    Elements of ``GA(n, D)`` are the square maps with dyadic entries and
    determinant ``+-2**k``; see :meth:`is_automorphism`.
    """

    matrix: tuple
    translation: tuple

    def __post_init__(self):
        object.__setattr__(self, "matrix", tuple(tuple(Fraction(x) for x in r) for r in self.matrix))
        object.__setattr__(self, "translation", tuple(Fraction(x) for x in self.translation))
        if len(self.matrix) != len(self.translation):
            raise ValueError("translation length must match matrix rows")

    @classmethod
    def linear(cls, matrix) -> "AffineMap":
        return cls(matrix, [0] * len(matrix))

    @classmethod
    def from_row_matrix(cls, matrix, translation=None) -> "AffineMap":
        cols = list(zip(*matrix))
        t = translation if translation is not None else [0] * len(cols)
        return cls(cols, t)

    @classmethod
    def translate(cls, vector) -> "AffineMap":
        v = as_point(vector).to_fractions()
        n = len(v)
        return cls(_identity(n), v)

    @classmethod
    def identity(cls, n: int) -> "AffineMap":
        return cls(_identity(n), [0] * n)

    @property
    def out_dim(self) -> int:
        return len(self.matrix)

    @property
    def in_dim(self) -> int:
        return len(self.matrix[0]) if self.matrix else 0

    def det(self) -> Fraction:
        if self.out_dim != self.in_dim:
            raise ValueError("determinant of a non-square map")
        return la.det(self.matrix)

    def det_odd_part(self) -> tuple[int, int]:
        """``(sign * odd part of |det|, power of 2)`` for dyadic determinants."""
        d = self.det()
        if d == 0:
            raise ZeroDivisionError("singular map")
        if not _is_dyadic(d):
            raise ValueError(f"determinant {d} is not dyadic")
        num, pn = odd_part(d.numerator)
        return num, pn - (d.denominator.bit_length() - 1)

    def is_automorphism(self) -> bool:
        """True iff this is an element of ``GA(n, D)``."""
        if self.out_dim != self.in_dim or self.out_dim == 0:
            return False
        if not all(_is_dyadic(x) for row in self.matrix for x in row):
            return False
        if not all(_is_dyadic(x) for x in self.translation):
            return False
        d = self.det()
        if d == 0:
            return False
        return abs(d.numerator) & (abs(d.numerator) - 1) == 0 and _is_dyadic(d)

    def apply_fractions(self, v) -> list[Fraction]:
        v = [Fraction(x) for x in v]
        if len(v) != self.in_dim:
            raise ValueError(f"dimension mismatch: map expects {self.in_dim}, got {len(v)}")
        return [a + b for a, b in zip(la.matvec(self.matrix, v), self.translation)]

    def __call__(self, p) -> DyadicPoint:
        p = as_point(p)
        out = self.apply_fractions(p.to_fractions())
        return DyadicPoint(Dyadic.from_fraction(q) for q in out)

    def compose(self, inner: "AffineMap") -> "AffineMap":
        """``self ∘ inner``."""
        if self.in_dim != inner.out_dim:
            raise ValueError("dimension mismatch in composition")
        m = la.matmul(self.matrix, inner.matrix)
        t = [a + b for a, b in zip(la.matvec(self.matrix, inner.translation), self.translation)]
        return AffineMap(m, t)

    def __matmul__(self, inner):
        return self.compose(inner)

    def invert(self) -> "AffineMap":
        if self.out_dim != self.in_dim:
            raise ValueError("only square maps can be inverted")
        inv = la.inverse(self.matrix)
        t = [-x for x in la.matvec(inv, self.translation)]
        return AffineMap(inv, t)

    def __eq__(self, other):
        if not isinstance(other, AffineMap):
            return NotImplemented
        return self.matrix == other.matrix and self.translation == other.translation

    def __hash__(self):
        return hash((self.matrix, self.translation))


def apply_map(f: AffineMap, p) -> DyadicPoint:
    return f(p)


@dataclass(frozen=True)
class Chart:
    """Mutually inverse affine bijections between a subspace and ``D^k``.

    ``forward`` is defined on all of ``Q^n`` but is only a bijection onto
    ``D^k`` when restricted to ``subspace``; ``inverse`` maps ``D^k`` onto
    the subspace.
    """

    subspace: AffineDyadicSubspace
    forward: AffineMap
    inverse: AffineMap

    @property
    def dim(self) -> int:
        return self.subspace.dim

    def to_local(self, p) -> DyadicPoint:
        if self.dim == 0:
            raise ValueError("a 0-dimensional chart has no coordinates")
        p = as_point(p)
        if not self.subspace.contains(p):
            raise ValueError(f"{p!r} is not in the charted subspace")
        return self.forward(p)

    def to_local_fractions(self, p) -> list[Fraction]:
        """Chart coordinates of any rational point of the real affine span."""
        return self.forward.apply_fractions([Fraction(x) for x in p])

    def from_local(self, y) -> DyadicPoint:
        return self.inverse(y)


def rescale_iso(A: AffineDyadicSubspace) -> Chart:
    """Affine isomorphism from ``A`` onto the standard ``D^k``.

    Coordinates are Smith coordinates of ``x - base`` divided by the odd
    invariants, so the lattice basis is sent to the unit vectors.
    """
    L = A.lattice
    n, r = L.ambient_dim, L.rank
    base = A.base.to_fractions()
    rows = [[Fraction(L._u[k][c], L.invariants[k]) for c in range(n)] for k in range(r)]
    shift = [-x for x in la.matvec(rows, base)] if r else []
    fwd = AffineMap(rows, shift)
    back_rows = [[Fraction(L._uinv[row][k] * L.invariants[k]) for k in range(r)] for row in range(n)]
    back = AffineMap(back_rows if r else [[] for _ in range(n)], base)
    return Chart(A, fwd, back)
