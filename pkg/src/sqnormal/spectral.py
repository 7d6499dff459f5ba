"""Invariant-subspace splitting of a squared-normal matrix.

``A`` commutes with the normal matrix ``A^2``, so each eigenspace of ``A^2``
is invariant under ``A``. On the eigenspace for ``sigma != 0`` the
restriction ``B`` satisfies ``B^2 = sigma I`` and is reduced to
``[[mu I, F], [0, -mu I]]``; on the eigenspace for ``sigma = 0`` it satisfies
``B^2 = 0`` and is read off from its singular value decomposition.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .bijection import principal_sqrt
from .blocks import DEFAULT_TOLERANCES, ToleranceConfig
from .exceptions import ClusterAmbiguity, NotInvolution, NotNilpotent, NotSquaredNormal
from .normality import is_squared_normal, squared_normality_defect
from .validation import as_complex_matrix, fro


@dataclass(frozen=True, eq=False)
class SpectralCluster:
    sigma: complex
    basis: np.ndarray
    dim: int
    spread: float = 0.0


@dataclass(frozen=True, eq=False)
class InvolutionSplit:
    """``basis_change^* B basis_change == [[mu I_p, F], [0, -mu I_q]]``."""

    mu: complex
    p: int
    q: int
    F: np.ndarray
    basis_change: np.ndarray


def _single_linkage(values: np.ndarray, threshold: float) -> list[list[int]]:
    n = len(values)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if abs(values[i] - values[j]) <= threshold:
                parent[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return list(groups.values())


def cluster_spectrum(A, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> list[SpectralCluster]:
    """Orthonormal bases of the eigenspaces of ``A^2``, one per eigenvalue cluster.

    Eigenvalues closer than ``cluster_tol * ||A||_F^2`` are linked and the
    connected components form the clusters. Cluster centres within that
    distance of the real axis (or of zero) are snapped onto it, which keeps
    square roots of real clusters exactly real or imaginary.

    Clusters come out ordered by descending real, then imaginary, part of
    ``sigma``.
    """
    A = as_complex_matrix(A, "A")
    if not is_squared_normal(A, cfg):
        defect = squared_normality_defect(A)
        raise NotSquaredNormal(f"A^2 is not normal (defect {defect:.3e})", defect=defect)

    scale2 = fro(A) ** 2
    threshold = cfg.cluster_tol * scale2
    T, Z = scipy.linalg.schur(A @ A, output="complex")
    eig = np.diag(T)
    groups = _single_linkage(eig, threshold)

    clusters = []
    for idx in groups:
        vals = eig[idx]
        center = complex(np.mean(vals))
        spread = float(np.max(np.abs(vals - center)))
        if abs(center) <= threshold:
            center = 0j
        elif abs(center.imag) <= threshold:
            center = complex(center.real, 0.0)
        clusters.append(SpectralCluster(center, Z[:, idx], len(idx), spread))

    _check_ambiguity(eig, groups, clusters, threshold)
    clusters.sort(key=lambda c: (-c.sigma.real, -c.sigma.imag))
    return clusters


def _check_ambiguity(eig, groups, clusters, threshold):
    # centres too close for their spreads
    for i in range(len(clusters)):
        for j in range(i + 1, len(clusters)):
            gap = abs(clusters[i].sigma - clusters[j].sigma)
            if gap < 3 * max(clusters[i].spread, clusters[j].spread):
                raise ClusterAmbiguity(
                    f"clusters at {clusters[i].sigma:.6g} and {clusters[j].sigma:.6g} overlap"
                )
    # members of different clusters in the grey zone between 1x and 3x the threshold
    for a in range(len(groups)):
        for b in range(a + 1, len(groups)):
            d = np.min(np.abs(eig[groups[a]][:, None] - eig[groups[b]][None, :]))
            if d < 3 * threshold:
                raise ClusterAmbiguity(
                    f"eigenvalues of A^2 at distance {d:.3e} are near the cluster threshold {threshold:.3e}"
                )


def split_involution(
    B, sigma: complex, cfg: ToleranceConfig = DEFAULT_TOLERANCES, scale: float = 0.0
) -> InvolutionSplit:
    """Reduce ``B`` with ``B^2 = sigma I`` (``sigma != 0``) to ``[[mu I, F], [0, -mu I]]``.

    ``ker(B - mu I)`` equals ``range(B + mu I)``; the latter is read off the
    SVD of ``B + mu I``. Its non-zero singular values are at least ``2|mu|``
    (``B + mu I`` acts as ``2 mu`` on its own range), so singular values above
    ``|mu|`` are counted as the rank.

    ``scale`` is the Frobenius norm of the ambient matrix; tolerances are
    taken relative to ``max(||B||_F, scale)``.
    """
    B = as_complex_matrix(B, "B")
    sigma = complex(sigma)
    if sigma == 0:
        raise ValueError("split_involution needs sigma != 0")
    d = B.shape[0]
    mu = principal_sqrt(sigma)
    ref = max(fro(B), scale) ** 2
    residual = fro(B @ B - sigma * np.eye(d))
    if residual > cfg.cluster_tol * math.sqrt(d) * max(ref, abs(sigma) * d):
        raise NotInvolution(f"||B^2 - sigma I|| = {residual:.3e} for sigma = {sigma:.6g}")

    U, s, _ = np.linalg.svd(B + mu * np.eye(d))
    p = int(np.count_nonzero(s > abs(mu)))
    F = U[:, :p].conj().T @ B @ U[:, p:]
    return InvolutionSplit(mu=mu, p=p, q=d - p, F=F, basis_change=U)


def nilpotent_reduction(
    B, cfg: ToleranceConfig = DEFAULT_TOLERANCES, scale: float = 0.0
) -> tuple[np.ndarray, np.ndarray]:
    """Singular values and adapted basis of ``B`` with ``B^2 = 0``.

    Returns ``(r, basis)`` with ``r`` descending. The columns of ``basis``
    are ``u_1, v_1, ..., u_k, v_k`` followed by an orthonormal basis of the
    rest, so that ``basis^* B basis = [[0, r_1], [0, 0]] + ... + 0``.
    """
    B = as_complex_matrix(B, "B")
    d = B.shape[0]
    nb = fro(B)
    ref = max(nb, scale)
    b2 = fro(B @ B)
    if b2 > cfg.cluster_tol * math.sqrt(d) * ref**2:
        raise NotNilpotent(f"||B^2|| = {b2:.3e} is not negligible against ||B||^2 = {nb**2:.3e}")

    U, s, Vh = np.linalg.svd(B)
    smax = s[0] if len(s) else 0.0
    k = int(np.count_nonzero(s > cfg.rank_tol * max(smax, scale)))
    if 2 * k > d:
        raise NotNilpotent(f"rank {k} exceeds half the dimension {d}")
    V = Vh.conj().T
    pairs = np.empty((d, 2 * k), dtype=np.complex128)
    pairs[:, 0::2] = U[:, :k]
    pairs[:, 1::2] = V[:, :k]
    # complement of span{u_i, v_i}; B vanishes there
    Q, _, _ = np.linalg.svd(pairs, full_matrices=True)
    basis = np.hstack([pairs, Q[:, 2 * k :]])
    return s[:k].copy(), basis


def nilpotent_singulars(B, cfg: ToleranceConfig = DEFAULT_TOLERANCES, scale: float = 0.0) -> list[float]:
    """Singular values of a square-zero ``B`` above ``rank_tol * max(sigma_max, scale)``, descending."""
    r, _ = nilpotent_reduction(B, cfg, scale)
    return [float(x) for x in r]
