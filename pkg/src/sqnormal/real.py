"""Canonical form of a real squared-normal matrix under orthogonal similarity.

The real form is read off form (b) of the matrix viewed as complex: real
blocks stay as they are, and each pair of conjugate blocks ``X (+) conj(X)``
becomes the realification of the member with positive imaginary part.

The orthogonal witness is built in two steps. First a complex unitary ``V``
with ``V^* A V = R`` (``R`` the real form) is formed from the form-(b)
witness, using ``(X (+) conj X)`` -> ``X_R`` via
``S = [[I, iI], [I, -iI]] / sqrt(2)``. Because ``A`` and ``R`` are real,
``T = Re V + t Im V`` intertwines ``A`` with ``R`` and ``A^T`` with ``R^T``
for every real ``t``; for an invertible ``T`` the orthogonal polar factor of
``T`` is then an orthogonal witness.
"""

from __future__ import annotations

import math

import numpy as np

from .blocks import (
    DEFAULT_TOLERANCES,
    FLAVOR_REAL,
    BlockLambda,
    BlockRealRotation,
    BlockRealS2Pair,
    BlockS1,
    BlockS2,
    CanonicalForm,
    ToleranceConfig,
    block_order,
)
from .bijection import f_inverse, witness_S
from .canon import CanonResult, _canon_a_pieces
from .exceptions import NotSquaredNormal, PairingFailure
from .normality import is_squared_normal, squared_normality_defect
from .validation import as_complex_matrix, as_real_matrix, fro


def realify(M) -> np.ndarray:
    """Replace every entry ``a + bi`` of ``M`` by ``[[a, -b], [b, a]]``.

    Works for rectangular ``M``; an ``m x n`` input gives a ``2m x 2n`` output.
    """
    M = np.atleast_2d(np.asarray(M, dtype=np.complex128))
    m, n = M.shape
    out = np.empty((2 * m, 2 * n))
    out[0::2, 0::2] = M.real
    out[0::2, 1::2] = -M.imag
    out[1::2, 0::2] = M.imag
    out[1::2, 1::2] = M.real
    return out


def squared_normal_realification_check(M, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> bool:
    """True iff ``M`` and its realification get the same squared-normality verdict."""
    M = as_complex_matrix(M)
    return is_squared_normal(M, cfg) == is_squared_normal(realify(M), cfg)


def _pair_columns(cols_x, cols_xbar):
    """Columns turning ``X (+) conj X`` into ``realify(X)``.

    With ``Z = [cols_x, cols_xbar]`` and ``S`` as in the module docstring,
    ``(Z S)^* A (Z S) = [[Re X, -Im X], [Im X, Re X]]``; interleaving the
    two halves gives the entrywise realification.
    """
    k = cols_x.shape[1]
    c = 1 / math.sqrt(2)
    first = c * (cols_x + cols_xbar)
    second = 1j * c * (cols_x - cols_xbar)
    out = np.empty((cols_x.shape[0], 2 * k), dtype=np.complex128)
    out[:, 0::2] = first
    out[:, 1::2] = second
    return out


def _dephase(cols: np.ndarray) -> np.ndarray:
    """Multiply by the unit scalar that makes the real part best conditioned."""
    best, best_val = cols, -1.0
    for phi in np.linspace(0, math.pi, 33)[:-1]:
        cand = cols * np.exp(1j * phi)
        val = np.linalg.svd(cand.real, compute_uv=False)[-1]
        if val > best_val:
            best, best_val = cand, val
    return best


def _realify_witness(V: np.ndarray) -> np.ndarray:
    """Orthogonal polar factor of the best conditioned ``Re V + t Im V``."""
    X, Y = V.real, V.imag
    if not np.any(Y):
        T = X
    else:
        best, best_cond = X, np.inf
        for t in (0.0, 1.0, -1.0, 0.5, -0.5, 2.0, -2.0, 0.25, -0.25, 4.0, -4.0, 1 / 3, -3.0):
            T = X + t * Y
            cond = np.linalg.cond(T)
            if cond < best_cond:
                best, best_cond = T, cond
            if cond < 4:
                break
        T = best
    U, _, Vh = np.linalg.svd(T)
    return U @ Vh


def _imag_positive(block) -> bool:
    z = block.lam if isinstance(block, BlockLambda) else block.nu
    return z.imag > 0


def _conj_distance(bp, bm) -> float:
    if isinstance(bp, BlockLambda):
        return abs(bp.lam.conjugate() - bm.lam)
    return max(abs(bp.nu.conjugate() - bm.nu), abs(bp.tau - bm.tau))


def canon_real(A, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> CanonResult:
    """Real canonical form and real orthogonal witness ``Q`` with ``Q^T A Q = R``.

    Raises :class:`~sqnormal.exceptions.PairingFailure` if a non-real block has
    no conjugate partner, which can only happen through numerical breakdown.
    """
    A = as_real_matrix(A, "A")
    Ac = A.astype(np.complex128)
    if not is_squared_normal(Ac, cfg):
        defect = squared_normality_defect(Ac)
        raise NotSquaredNormal(f"A^2 is not normal (defect {defect:.3e})", defect=defect)
    n = A.shape[0]
    scale = fro(A)
    lam_tol = cfg.cluster_tol * max(scale, np.finfo(float).tiny)
    nu_tol = cfg.cluster_tol

    pieces = []
    for block, cols in _canon_a_pieces(Ac, cfg):
        if isinstance(block, BlockS1):
            s2 = f_inverse(block)
            cols = cols @ witness_S(block, s2, cfg)
            block = s2
        pieces.append((block, cols))

    real_pieces, plus, minus = [], [], []
    for block, cols in pieces:
        if isinstance(block, BlockLambda):
            if abs(block.lam.imag) <= lam_tol:
                real_pieces.append((BlockLambda(block.lam.real), cols))
                continue
        elif abs(block.nu.imag) <= nu_tol:
            real_pieces.append((BlockS2(block.nu.real, block.tau), cols))
            continue
        (plus if _imag_positive(block) else minus).append((block, cols))

    if len(plus) != len(minus):
        raise PairingFailure(f"{len(plus)} blocks above the real axis but {len(minus)} below")
    used = [False] * len(minus)
    for bp, cp in plus:
        best, best_dist = None, math.inf
        for j, (bm, _) in enumerate(minus):
            if used[j] or type(bm) is not type(bp):
                continue
            dist = _conj_distance(bp, bm)
            if dist < best_dist:
                best, best_dist = j, dist
        tol = lam_tol if isinstance(bp, BlockLambda) else max(nu_tol, lam_tol)
        if best is None or best_dist > tol:
            raise PairingFailure(f"no conjugate partner for {bp}")
        used[best] = True
        cm = minus[best][1]
        if isinstance(bp, BlockLambda):
            rb = BlockRealRotation(bp.lam.real, bp.lam.imag)
        else:
            rb = BlockRealS2Pair(bp.nu.real, bp.nu.imag, bp.tau)
        real_pieces.append((rb, _pair_columns(cp, cm)))

    blocks = [b for b, _ in real_pieces]
    order = block_order(blocks)
    form = CanonicalForm(tuple(blocks[i] for i in order), FLAVOR_REAL)
    if not real_pieces:
        return CanonResult(form, np.eye(n))
    V = np.hstack([_dephase(real_pieces[i][1]) for i in order])
    return CanonResult(form, _realify_witness(V))
