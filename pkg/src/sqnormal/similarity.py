"""Similarity decisions by comparison of canonical forms."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .blocks import DEFAULT_TOLERANCES, ToleranceConfig, match_forms
from .canon import canon_a
from .exceptions import DimensionMismatch, NotSquaredNormal
from .normality import squared_normality_defect
from .real import canon_real
from .validation import as_complex_matrix, as_real_matrix, fro


@dataclass(frozen=True, eq=False)
class SimilarityResult:
    """Verdict plus witness ``U`` with ``U^* A U ~= B`` when similar.

    Truthiness follows the verdict.
    """

    similar: bool
    witness: np.ndarray | None = None
    residual: float | None = None

    def __bool__(self):
        return self.similar


def _reordered_witness(W, form, perm):
    """Columns of ``W`` rearranged so that block ``perm[i]`` lands at slot ``i``."""
    starts = np.cumsum([0] + [b.size for b in form.blocks])
    idx = np.concatenate(
        [np.arange(starts[j], starts[j + 1]) for j in perm] or [np.zeros(0, dtype=int)]
    )
    return W[:, idx]


def _canonicalise(canon, M, cfg, which):
    try:
        return canon(M, cfg)
    except NotSquaredNormal as exc:
        defect = squared_normality_defect(M)
        raise NotSquaredNormal(
            f"matrix {which} is not squared-normal (defect {defect:.3e})", defect=defect, which=which
        ) from exc


def _decide(canon, A, B, cfg):
    if A.shape != B.shape:
        raise DimensionMismatch(f"shapes differ: {A.shape} vs {B.shape}")
    fa, Wa = _canonicalise(canon, A, cfg, "A")
    fb, Wb = _canonicalise(canon, B, cfg, "B")
    atol = cfg.cluster_tol * max(1.0, fro(A), fro(B))
    perm = match_forms(fa, fb, atol)
    if perm is None:
        return SimilarityResult(False)
    # Wa^* A Wa = F ~= Wb'^* B Wb', so U = Wa Wb'^* maps A onto B
    U = Wa @ _reordered_witness(Wb, fb, perm).conj().T
    residual = fro(U.conj().T @ A @ U - B)
    return SimilarityResult(True, U, residual)


def unitarily_similar(A, B, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> SimilarityResult:
    """Decide whether ``B = U^* A U`` for a unitary ``U`` (both squared-normal)."""
    A = as_complex_matrix(A, "A")
    B = as_complex_matrix(B, "B")
    return _decide(canon_a, A, B, cfg)


def orthogonally_similar(A, B, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> SimilarityResult:
    """Real analogue of :func:`unitarily_similar`; the witness is real orthogonal."""
    A = as_real_matrix(A, "A")
    B = as_real_matrix(B, "B")
    return _decide(canon_real, A, B, cfg)


def trace_invariants_2x2(A) -> tuple[complex, complex, float]:
    """``(tr A, tr A^2, tr A^* A)``, a complete unitary invariant for 2x2 matrices."""
    A = as_complex_matrix(A)
    return complex(np.trace(A)), complex(np.trace(A @ A)), float(np.trace(A.conj().T @ A).real)


def trace_oracle_2x2(A, B, rtol: float = 1e-8) -> bool:
    """Independent 2x2 similarity test via trace invariants.

    Each invariant is compared relative to its natural scale: ``||.||_F`` for
    the trace and ``||.||_F^2`` for the two quadratic traces.
    """
    A = as_complex_matrix(A, "A")
    B = as_complex_matrix(B, "B")
    if A.shape != (2, 2) or B.shape != (2, 2):
        raise DimensionMismatch("trace_oracle_2x2 needs two 2x2 matrices")
    s = max(1.0, fro(A), fro(B))
    ta, tb = trace_invariants_2x2(A), trace_invariants_2x2(B)
    return (
        abs(ta[0] - tb[0]) <= rtol * s
        and abs(ta[1] - tb[1]) <= rtol * s * s
        and abs(ta[2] - tb[2]) <= rtol * s * s
    )
