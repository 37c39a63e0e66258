"""scikit-learn style wrappers over the functional API.

``GroupoidMembership`` learns the groupoid generated by the training
points and predicts membership; ``GeneratorSynthesizer`` learns a target
(dyadic polytope or semipolytope) and transforms it into a generating set.
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin

from ._validation import check_fitted, check_points
from .generators import generating_set_polytope, generating_set_semipolytope
from .groupoid import GeneratorSet

__all__ = ["GeneratorSynthesizer", "GroupoidMembership"]


class GroupoidMembership(BaseEstimator):
    """Classifier for ``p in <X>``, where ``X`` is the training set."""

    def fit(self, X, y=None):
        gens = GeneratorSet(check_points(X))
        self.generators_ = gens
        self.descriptor_ = gens.descriptor
        self.n_features_in_ = gens.dim
        return self

    def predict(self, X) -> np.ndarray:
        check_fitted(self, "descriptor_")
        pts = check_points(X, self.n_features_in_)
        return np.array([self.descriptor_.member(p) for p in pts], dtype=bool)

    def score(self, X, y) -> float:
        return float(np.mean(self.predict(X) == np.asarray(y, dtype=bool)))


class GeneratorSynthesizer(TransformerMixin, BaseEstimator):
    """Synthesize a finite generating set for the set spanned by ``X``.

    With ``semipolytope=False`` the target is every dyadic point of the
    real hull of ``X``; otherwise it is the groupoid ``<X>`` itself.
    """

    def __init__(self, reduce: bool = True, semipolytope: bool = False):
        self.reduce = reduce
        self.semipolytope = semipolytope

    def fit(self, X, y=None):
        pts = check_points(X)
        build = generating_set_semipolytope if self.semipolytope else generating_set_polytope
        cert = build(pts)
        self.certificate_ = cert.reduced() if self.reduce else cert
        self.n_features_in_ = pts[0].dim
        return self

    def transform(self, X) -> np.ndarray:
        """The fitted generators as an object array of ``Dyadic``; ``X`` is ignored."""
        check_fitted(self, "certificate_")
        out = np.empty((len(self.certificate_.produced), self.n_features_in_), dtype=object)
        for r, p in enumerate(self.certificate_.produced):
            out[r] = list(p)
        return out
