"""scikit-learn style wrapper around the canonicalisers.

``fit`` canonicalises one square matrix; ``transform`` applies the fitted
similarity ``X -> W^* X W`` so that ``transform`` of the fitted matrix is its
canonical form, and ``inverse_transform`` undoes it.

>>> import numpy as np
>>> est = SquaredNormalCanonicalizer(form="b").fit(np.array([[0.0, 3.0], [0.0, 0.0]]))
>>> est.form_.blocks
(BlockS2(nu=0j, tau=3.0),)
"""

from __future__ import annotations

from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.exceptions import NotFittedError

from .blocks import ToleranceConfig, assemble
from .canon import canon_a, canon_b
from .real import canon_real
from .similarity import orthogonally_similar, unitarily_similar
from .validation import as_complex_matrix, as_real_matrix, fro

_CANONICALISERS = {"a": canon_a, "b": canon_b, "real": canon_real}


class SquaredNormalCanonicalizer(TransformerMixin, BaseEstimator):
    """Canonical form of a squared-normal matrix.

    Parameters
    ----------
    form : {"a", "b", "real"}
        Which canonical form to compute. ``"real"`` requires real input and
        yields a real orthogonal witness.
    normality_tol, cluster_tol, rank_tol, witness_tol : float
        See :class:`~sqnormal.blocks.ToleranceConfig`.

    Attributes
    ----------
    form_ : CanonicalForm
    witness_ : ndarray of shape (n, n)
        Unitary (orthogonal for ``form="real"``) with
        ``witness_^* X witness_ = canonical_``.
    canonical_ : ndarray of shape (n, n)
        The assembled canonical matrix.
    residual_ : float
        ``||witness_^* X witness_ - canonical_||_F``.
    n_features_in_ : int
        Matrix dimension seen during ``fit``.
    """

    def __init__(self, form="a", normality_tol=1e-10, cluster_tol=1e-8, rank_tol=1e-10, witness_tol=1e-10):
        self.form = form
        self.normality_tol = normality_tol
        self.cluster_tol = cluster_tol
        self.rank_tol = rank_tol
        self.witness_tol = witness_tol

    def _config(self):
        return ToleranceConfig(self.normality_tol, self.cluster_tol, self.rank_tol, self.witness_tol)

    def _validate(self, X):
        if self.form == "real":
            return as_real_matrix(X, "X")
        return as_complex_matrix(X, "X")

    def fit(self, X, y=None):
        if self.form not in _CANONICALISERS:
            raise ValueError(f"form must be one of {sorted(_CANONICALISERS)}, got {self.form!r}")
        X = self._validate(X)
        result = _CANONICALISERS[self.form](X, self._config())
        self.form_ = result.form
        self.witness_ = result.witness
        self.canonical_ = assemble(result.form)
        W = self.witness_
        self.residual_ = fro(W.conj().T @ X @ W - self.canonical_)
        self.n_features_in_ = X.shape[0]
        return self

    def _check_fitted(self, X):
        if not hasattr(self, "witness_"):
            raise NotFittedError("call fit before transform")
        X = self._validate(X)
        if X.shape[0] != self.n_features_in_:
            raise ValueError(f"expected a {self.n_features_in_}x{self.n_features_in_} matrix, got {X.shape}")
        return X

    def transform(self, X):
        X = self._check_fitted(X)
        W = self.witness_
        return W.conj().T @ X @ W

    def inverse_transform(self, X):
        X = self._check_fitted(X)
        W = self.witness_
        return W @ X @ W.conj().T

    def is_similar(self, X):
        """Whether ``X`` is unitarily (orthogonally for ``form="real"``) similar to the fitted matrix."""
        if not hasattr(self, "witness_"):
            raise NotFittedError("call fit before is_similar")
        X = self._validate(X)
        # the canonical matrix stands in for the fitted one; it is similar to it by construction
        decide = orthogonally_similar if self.form == "real" else unitarily_similar
        return bool(decide(self.canonical_, X, self._config()))
