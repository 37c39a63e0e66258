"""Exact arithmetic in the ring of dyadic rationals Z[1/2].

A :class:`Dyadic` stores ``mantissa * 2**exponent`` with an odd mantissa
(zero is stored as ``(0, 0)``), so every value has exactly one
representation.  Points of ``D^n`` are tuples of dyadics
(:class:`DyadicPoint`).
"""
from __future__ import annotations

import math
import numbers
import re
from fractions import Fraction
from typing import Iterable, Sequence

__all__ = [
    "Dyadic",
    "DyadicPoint",
    "affine_combination",
    "denominator_exponent",
    "dy_normalize",
    "midpoint",
    "odd_part",
    "parse_dyadic",
    "unit_circle_points",
]

_EXP_LIMIT = 2**63


def odd_part(n: int) -> tuple[int, int]:
    """Split a nonzero integer as ``odd * 2**pow2``.

    >>> odd_part(-40)
    (-5, 3)
    """
    n = int(n)
    if n == 0:
        raise ValueError("odd_part of 0 is undefined")
    pow2 = (n & -n).bit_length() - 1
    return n >> pow2, pow2


def _check_exponent(e: int) -> int:
    if not -_EXP_LIMIT <= e < _EXP_LIMIT:
        raise OverflowError(f"dyadic exponent {e} outside signed 64-bit range")
    return e


class Dyadic:
    """An element of Z[1/2] in canonical mantissa/exponent form.

    Instances are immutable and hashable; they compare and hash equal to
    the ``int``/``Fraction`` with the same value.
    """

    __slots__ = ("mantissa", "exponent")

    mantissa: int
    exponent: int

    def __init__(self, mantissa: int = 0, exponent: int = 0):
        m, e = int(mantissa), int(exponent)
        if m == 0:
            e = 0
        elif not m & 1:
            m, k = odd_part(m)
            e += k
        object.__setattr__(self, "mantissa", m)
        object.__setattr__(self, "exponent", _check_exponent(e))

    def __setattr__(self, name, value):
        raise AttributeError("Dyadic is immutable")

    def __reduce__(self):
        return (Dyadic, (self.mantissa, self.exponent))

    # -- construction -----------------------------------------------------
    @classmethod
    def coerce(cls, value) -> "Dyadic":
        """Convert ints, dyadic Fractions, finite floats and literals."""
        if isinstance(value, Dyadic):
            return value
        if isinstance(value, bool):
            return cls(int(value))
        if isinstance(value, numbers.Integral):
            return cls(int(value))
        if isinstance(value, str):
            return parse_dyadic(value)
        if isinstance(value, float):
            if not math.isfinite(value):
                raise ValueError(f"{value!r} is not a dyadic rational")
            value = Fraction(value)
        if isinstance(value, numbers.Rational):
            return cls.from_fraction(Fraction(value.numerator, value.denominator))
        raise TypeError(f"cannot interpret {value!r} as a dyadic rational")

    @classmethod
    def from_fraction(cls, q: Fraction) -> "Dyadic":
        den = q.denominator
        if den & (den - 1):
            raise ValueError(f"{q} is not dyadic: denominator {den} is not a power of 2")
        return cls(q.numerator, -(den.bit_length() - 1))

    # -- views -----------------------------------------------------------
    def to_fraction(self) -> Fraction:
        if self.exponent >= 0:
            return Fraction(self.mantissa << self.exponent)
        return Fraction(self.mantissa, 1 << -self.exponent)

    @property
    def numerator(self) -> int:
        return self.mantissa << self.exponent if self.exponent > 0 else self.mantissa

    @property
    def denominator(self) -> int:
        return 1 << -self.exponent if self.exponent < 0 else 1

    @property
    def denominator_exponent(self) -> int:
        """``k`` such that the reduced denominator is ``2**k``."""
        return -self.exponent if self.exponent < 0 else 0

    def is_integer(self) -> bool:
        return self.exponent >= 0

    def shift(self, k: int) -> "Dyadic":
        """Multiply by ``2**k`` (the only division D admits)."""
        if self.mantissa == 0:
            return self
        return Dyadic(self.mantissa, self.exponent + k)

    def half(self) -> "Dyadic":
        return self.shift(-1)

    def sign(self) -> int:
        return (self.mantissa > 0) - (self.mantissa < 0)

    # -- ring operations ---------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, Dyadic):
            try:
                other = Dyadic.coerce(other)
            except (TypeError, ValueError):
                return NotImplemented
        if self.mantissa == 0:
            return other
        if other.mantissa == 0:
            return self
        e = min(self.exponent, other.exponent)
        m = (self.mantissa << (self.exponent - e)) + (other.mantissa << (other.exponent - e))
        return Dyadic(m, e)

    __radd__ = __add__

    def __neg__(self):
        return Dyadic(-self.mantissa, self.exponent)

    def __pos__(self):
        return self

    def __abs__(self):
        return self if self.mantissa >= 0 else -self

    def __sub__(self, other):
        if not isinstance(other, Dyadic):
            try:
                other = Dyadic.coerce(other)
            except (TypeError, ValueError):
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Dyadic):
            try:
                other = Dyadic.coerce(other)
            except (TypeError, ValueError):
                return NotImplemented
        return Dyadic(self.mantissa * other.mantissa, self.exponent + other.exponent)

    __rmul__ = __mul__

    # -- ordering ----------------------------------------------------------
    def _cmp(self, other) -> int:
        if not isinstance(other, Dyadic):
            if isinstance(other, numbers.Rational) and other.denominator & (other.denominator - 1):
                q = self.to_fraction()
                return (q > other) - (q < other)
            other = Dyadic.coerce(other)
        return (self - other).sign()

    def compare(self, other) -> int:
        """Three-way comparison: -1, 0 or 1."""
        return self._cmp(other)

    def __eq__(self, other):
        if isinstance(other, Dyadic):
            return self.mantissa == other.mantissa and self.exponent == other.exponent
        if isinstance(other, (numbers.Rational, float)):
            try:
                return self == Dyadic.coerce(other)
            except ValueError:
                return False
        return NotImplemented

    def __hash__(self):
        if self.exponent >= 0:
            return hash(self.mantissa << self.exponent)
        return hash(self.to_fraction())

    def __lt__(self, other):
        try:
            return self._cmp(other) < 0
        except (TypeError, ValueError):
            return NotImplemented

    def __le__(self, other):
        try:
            return self._cmp(other) <= 0
        except (TypeError, ValueError):
            return NotImplemented

    def __gt__(self, other):
        try:
            return self._cmp(other) > 0
        except (TypeError, ValueError):
            return NotImplemented

    def __ge__(self, other):
        try:
            return self._cmp(other) >= 0
        except (TypeError, ValueError):
            return NotImplemented

    def __bool__(self):
        return self.mantissa != 0

    def __float__(self):
        return float(self.to_fraction())

    # -- text --------------------------------------------------------------
    def __str__(self):
        if self.mantissa == 0:
            return "0"
        return f"{self.mantissa}*2^{self.exponent}"

    def __repr__(self):
        return f"Dyadic({self.mantissa}, {self.exponent})"

    def to_decimal(self) -> str:
        """Exact finite decimal expansion (every dyadic has one)."""
        if self.exponent >= 0:
            return str(self.mantissa << self.exponent)
        k = -self.exponent
        scaled = abs(self.mantissa) * 5**k
        digits = str(scaled).rjust(k + 1, "0")
        whole, frac = digits[:-k], digits[-k:].rstrip("0")
        s = whole if not frac else f"{whole}.{frac}"
        return "-" + s if self.mantissa < 0 else s


numbers.Rational.register(Dyadic)


def dy_normalize(mantissa: int, exponent: int) -> Dyadic:
    return Dyadic(mantissa, exponent)


def denominator_exponent(x) -> int:
    return Dyadic.coerce(x).denominator_exponent


_LITERAL = re.compile(r"^\s*([+-]?\d+)\s*\*\s*2\s*\^\s*([+-]?\d+)\s*$")
_RATIO = re.compile(r"^\s*([+-]?\d+)\s*/\s*(\d+)\s*$")
_INT = re.compile(r"^\s*[+-]?\d+\s*$")


def parse_dyadic(text: str) -> Dyadic:
    """Parse ``M*2^E``, a plain integer, or ``A/B`` with ``B`` a power of two."""
    m = _LITERAL.match(text)
    if m:
        return Dyadic(int(m.group(1)), int(m.group(2)))
    if _INT.match(text):
        return Dyadic(int(text))
    m = _RATIO.match(text)
    if m:
        den = int(m.group(2))
        if den <= 0 or den & (den - 1):
            raise ValueError(f"denominator of {text!r} is not a positive power of 2")
        return Dyadic(int(m.group(1)), -(den.bit_length() - 1))
    raise ValueError(f"not a dyadic literal: {text!r}")


class DyadicPoint(tuple):
    """A point of ``D^n``; an immutable tuple of :class:`Dyadic`."""

    __slots__ = ()

    def __new__(cls, coords: Iterable = ()):
        coords = tuple(Dyadic.coerce(c) for c in coords)
        if not coords:
            raise ValueError("a dyadic point needs at least one coordinate")
        return super().__new__(cls, coords)

    @property
    def dim(self) -> int:
        return len(self)

    @property
    def coords(self) -> tuple:
        return tuple(self)

    @property
    def denominator_exponent(self) -> int:
        return max(c.denominator_exponent for c in self)

    def _check(self, other) -> "DyadicPoint":
        if not isinstance(other, DyadicPoint):
            other = DyadicPoint(other)
        if len(other) != len(self):
            raise ValueError(f"dimension mismatch: {len(self)} vs {len(other)}")
        return other

    def __add__(self, other):
        other = self._check(other)
        return DyadicPoint(a + b for a, b in zip(self, other))

    def __sub__(self, other):
        other = self._check(other)
        return DyadicPoint(a - b for a, b in zip(self, other))

    def __neg__(self):
        return DyadicPoint(-a for a in self)

    def scale(self, d) -> "DyadicPoint":
        d = Dyadic.coerce(d)
        return DyadicPoint(a * d for a in self)

    def shift(self, k: int) -> "DyadicPoint":
        return DyadicPoint(a.shift(k) for a in self)

    def to_fractions(self) -> tuple:
        return tuple(c.to_fraction() for c in self)

    def sort_key(self) -> tuple:
        """Order by denominator exponent, then lexicographically by value."""
        return (self.denominator_exponent, tuple(c.to_fraction() for c in self))

    def __str__(self):
        return ",".join(str(c) for c in self)

    def __repr__(self):
        inner = ", ".join(_short(c) for c in self)
        return f"DyadicPoint(({inner},))" if len(self) == 1 else f"DyadicPoint(({inner}))"


def _short(d: Dyadic) -> str:
    q = d.to_fraction()
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def as_point(p) -> DyadicPoint:
    if isinstance(p, DyadicPoint):
        return p
    if isinstance(p, (Dyadic, numbers.Rational, float, str)) and not isinstance(p, tuple):
        return DyadicPoint((p,))
    return DyadicPoint(p)


def midpoint(p, q) -> DyadicPoint:
    """The mean ``(p + q) / 2``."""
    p, q = as_point(p), as_point(q)
    return (p + q).shift(-1)


def affine_combination(points: Sequence, weights: Sequence) -> DyadicPoint:
    """Exact ``sum w_i p_i`` for dyadic weights summing to one."""
    pts = [as_point(p) for p in points]
    ws = [Dyadic.coerce(w) for w in weights]
    if not pts or len(pts) != len(ws):
        raise ValueError("need one weight per point")
    if sum(ws, Dyadic(0)) != 1:
        raise ValueError("weights must sum to 1")
    dim = pts[0].dim
    if any(p.dim != dim for p in pts):
        raise ValueError("dimension mismatch among points")
    acc = [Dyadic(0)] * dim
    for p, w in zip(pts, ws):
        acc = [a + c * w for a, c in zip(acc, p)]
    return DyadicPoint(acc)


def unit_circle_points(exp_cap: int) -> set[DyadicPoint]:
    """All dyadic ``(x, y)`` with ``x^2 + y^2 = 1`` and denominators ``<= 2**exp_cap``.

    Scanning ``x = a / 2**cap`` over ``[-1, 1]`` and testing whether
    ``4**cap - a**2`` is a perfect square is an exact enumeration of the
    square ``[-1, 1]^2`` at that resolution.
    """
    if exp_cap < 0:
        raise ValueError("exp_cap must be non-negative")
    scale = 1 << exp_cap
    found = set()
    for a in range(-scale, scale + 1):
        rest = scale * scale - a * a
        b = math.isqrt(rest)
        if b * b == rest:
            for s in {b, -b}:
                found.add(DyadicPoint((Dyadic(a, -exp_cap), Dyadic(s, -exp_cap))))
    return found
