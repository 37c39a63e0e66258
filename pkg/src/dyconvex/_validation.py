"""Input checking for the estimator wrappers."""
from __future__ import annotations

from fractions import Fraction

import numpy as np
from sklearn.exceptions import NotFittedError

from .dyadic import Dyadic, DyadicPoint, parse_dyadic


def _coord(x) -> Dyadic:
    if isinstance(x, str):
        return parse_dyadic(x)
    if isinstance(x, np.integer):
        return Dyadic(int(x))
    if isinstance(x, np.floating):
        return Dyadic.coerce(float(x))
    return Dyadic.coerce(x)


def check_points(X, dim: int | None = None) -> list[DyadicPoint]:
    """Turn an array-like of points into dyadic points.

    Accepts ``DyadicPoint`` sequences, nested lists, 2-D numpy arrays (ints,
    exact floats, or objects such as ``Fraction``) and a 1-D sequence of
    scalars, read as points on the line.  Floats are taken at their exact
    binary value (every finite float is dyadic), so ``0.1`` means
    ``3602879701896397 * 2^-55``, not one tenth.
    """
    if isinstance(X, np.ndarray) and X.ndim == 1 and X.dtype != object:
        X = X.reshape(-1, 1)
    pts = []
    for row in X:
        if isinstance(row, DyadicPoint):
            pts.append(row)
        elif isinstance(row, (int, float, str, Fraction, Dyadic, np.integer, np.floating)):
            pts.append(DyadicPoint([_coord(row)]))
        else:
            pts.append(DyadicPoint(_coord(c) for c in row))
    if not pts:
        raise ValueError("expected at least one point")
    want = pts[0].dim if dim is None else dim
    for p in pts:
        if p.dim != want:
            raise ValueError(f"expected points of dimension {want}, got {p.dim}")
    return pts


def check_fitted(estimator, attr: str):
    if not hasattr(estimator, attr):
        raise NotFittedError(f"{type(estimator).__name__} is not fitted yet; call fit first")


__all__ = ["check_points", "check_fitted"]
