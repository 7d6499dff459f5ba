"""Canonical forms of squared-normal complex matrices under unitary similarity.

Form (a) is a direct sum of ``[lam]`` and ``[[mu, r], [0, -mu]]`` blocks,
form (b) of ``[lam]`` and ``tau [[0, 1], [nu, 0]]`` blocks. Both come with a
unitary ``W`` such that ``W^* A W`` is the assembled form.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .bijection import f_inverse, witness_S
from .blocks import (
    DEFAULT_TOLERANCES,
    FLAVOR_A,
    FLAVOR_B,
    BlockLambda,
    BlockS1,
    CanonicalForm,
    ToleranceConfig,
    block_order,
)
from .spectral import cluster_spectrum, nilpotent_reduction, split_involution
from .validation import as_complex_matrix, fro, nearest_unitary


class CanonResult(NamedTuple):
    form: CanonicalForm
    witness: np.ndarray


def _cluster_pieces(A, cluster, cfg, scale):
    """(block, columns) pairs for one eigenvalue cluster of ``A^2``."""
    Bc = cluster.basis
    B = Bc.conj().T @ A @ Bc
    pieces = []
    if cluster.sigma == 0:
        r, basis = nilpotent_reduction(B, cfg, scale)
        k = len(r)
        cols = Bc @ basis
        for i in range(k):
            pieces.append((BlockS1(0.0, r[i]), cols[:, 2 * i : 2 * i + 2]))
        for j in range(2 * k, cluster.dim):
            pieces.append((BlockLambda(0.0), cols[:, j : j + 1]))
        return pieces

    split = split_involution(B, cluster.sigma, cfg, scale)
    mu, p = split.mu, split.p
    Q = split.basis_change
    if split.p and split.q:
        U, s, Vh = np.linalg.svd(split.F)
        k = int(np.count_nonzero(s > cfg.rank_tol * scale))
        Qp = Bc @ (Q[:, :p] @ U)
        Qq = Bc @ (Q[:, p:] @ Vh.conj().T)
    else:
        s, k = np.zeros(0), 0
        Qp = Bc @ Q[:, :p]
        Qq = Bc @ Q[:, p:]
    for i in range(k):
        pieces.append((BlockS1(mu, s[i]), np.column_stack([Qp[:, i], Qq[:, i]])))
    for j in range(k, split.p):
        pieces.append((BlockLambda(mu), Qp[:, j : j + 1]))
    for j in range(k, split.q):
        pieces.append((BlockLambda(-mu), Qq[:, j : j + 1]))
    return pieces


def _finish(pieces, flavor, n):
    blocks = [b for b, _ in pieces]
    order = block_order(blocks)
    form = CanonicalForm(tuple(blocks[i] for i in order), flavor)
    if not pieces:
        return CanonResult(form, np.eye(n, dtype=np.complex128))
    W = np.hstack([pieces[i][1] for i in order])
    return CanonResult(form, nearest_unitary(W))


def _canon_a_pieces(A, cfg):
    scale = fro(A)
    pieces = []
    for cluster in cluster_spectrum(A, cfg):
        pieces.extend(_cluster_pieces(A, cluster, cfg, scale))
    return pieces


def canon_a(A, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> CanonResult:
    """Form (a) of a squared-normal matrix and its unitary witness.

    Raises :class:`~sqnormal.exceptions.NotSquaredNormal` when ``A^2`` is not
    normal and :class:`~sqnormal.exceptions.ClusterAmbiguity` when the
    eigenvalues of ``A^2`` cannot be grouped reliably.

    >>> import numpy as np
    >>> canon_a(np.array([[1.0, 1.0], [0.0, -1.0]])).form.blocks
    (BlockS1(mu=(1+0j), r=1.0),)
    """
    A = as_complex_matrix(A, "A")
    return _finish(_canon_a_pieces(A, cfg), FLAVOR_A, A.shape[0])


def canon_b(A, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> CanonResult:
    """Form (b): every ``[[mu, r], [0, -mu]]`` block of form (a) replaced by its preimage
    ``tau [[0, 1], [nu, 0]]``, the witness updated by the matching 2x2 unitary."""
    A = as_complex_matrix(A, "A")
    pieces = []
    for block, cols in _canon_a_pieces(A, cfg):
        if isinstance(block, BlockS1):
            s2 = f_inverse(block)
            cols = cols @ witness_S(block, s2, cfg)
            block = s2
        pieces.append((block, cols))
    return _finish(pieces, FLAVOR_B, A.shape[0])
