"""Normality and squared-normality tests."""

from __future__ import annotations

from .blocks import DEFAULT_TOLERANCES, ToleranceConfig
from .validation import as_complex_matrix, fro


def normality_defect(M) -> float:
    """Frobenius norm of the commutator ``M^* M - M M^*``."""
    M = as_complex_matrix(M)
    Mh = M.conj().T
    return fro(Mh @ M - M @ Mh)


def is_normal(M, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> bool:
    M = as_complex_matrix(M)
    return normality_defect(M) <= cfg.normality_tol * max(1.0, fro(M) ** 2)


def squared_normality_defect(A) -> float:
    """Commutator defect of ``A @ A``."""
    A = as_complex_matrix(A)
    return normality_defect(A @ A)


def is_squared_normal(A, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> bool:
    """Whether ``A @ A`` is normal.

    The defect of ``A^2`` is homogeneous of degree four in ``A``, so it is
    compared against ``normality_tol * ||A||_F^4``; the test is invariant
    under rescaling of ``A``.
    """
    A = as_complex_matrix(A)
    return squared_normality_defect(A) <= cfg.normality_tol * fro(A) ** 4
