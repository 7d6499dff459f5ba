"""Input validation helpers shared by the library, the estimator and the CLI."""

from __future__ import annotations

import numpy as np
from numpy.typing import ArrayLike, NDArray

ComplexMatrix = NDArray[np.complex128]
RealMatrix = NDArray[np.float64]


def _check_square(M: np.ndarray, name: str) -> None:
    if M.ndim != 2:
        raise ValueError(f"{name} must be a 2-D array, got ndim={M.ndim}")
    if M.shape[0] != M.shape[1]:
        raise ValueError(f"{name} must be square, got shape {M.shape}")
    if M.shape[0] == 0:
        raise ValueError(f"{name} must have positive dimension")
    if not np.all(np.isfinite(M)):
        raise ValueError(f"{name} contains NaN or Inf")


def as_complex_matrix(M: ArrayLike, name: str = "matrix") -> ComplexMatrix:
    """Return ``M`` as a square, finite ``complex128`` array (a copy if needed)."""
    arr = np.asarray(M)
    if arr.dtype == object:
        raise ValueError(f"{name} has non-numeric entries")
    arr = arr.astype(np.complex128, copy=False)
    _check_square(arr, name)
    return arr


def as_real_matrix(M: ArrayLike, name: str = "matrix", imag_tol: float = 0.0) -> RealMatrix:
    """Return ``M`` as a square, finite ``float64`` array.

    Complex input is accepted only if every imaginary part is at most
    ``imag_tol`` in absolute value.
    """
    arr = np.asarray(M)
    if np.iscomplexobj(arr):
        if np.max(np.abs(arr.imag), initial=0.0) > imag_tol:
            raise ValueError(f"{name} must be real")
        arr = arr.real
    if arr.dtype == object:
        raise ValueError(f"{name} has non-numeric entries")
    arr = arr.astype(np.float64, copy=False)
    _check_square(arr, name)
    return arr


def fro(M: np.ndarray) -> float:
    return float(np.linalg.norm(M, "fro"))


def unitarity_defect(U: np.ndarray) -> float:
    """Frobenius distance of ``U^* U`` from the identity."""
    return fro(U.conj().T @ U - np.eye(U.shape[1]))


def nearest_unitary(W: np.ndarray) -> np.ndarray:
    """Unitary polar factor of a square matrix (closest unitary in Frobenius norm)."""
    X, _, Yh = np.linalg.svd(W)
    return X @ Yh
