"""Bijection between ``tau [[0, 1], [nu, 0]]`` blocks and ``[[mu, r], [0, -mu]]`` blocks.

The forward map is ``mu = tau * sqrt(nu)``, ``r = tau * (1 - |nu|)``. Going
back requires the unique ``s = sqrt(|nu|)`` in ``[0, 1)`` with
``s / (1 - s^2) = |mu| / r``, which is the positive root of
``rho s^2 + s - rho = 0``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .blocks import DEFAULT_TOLERANCES, BlockS1, BlockS2, ToleranceConfig
from .exceptions import MismatchedPair


@dataclass(frozen=True)
class PolarDecomp:
    """Polar coordinates of a matched pair: ``mu / r = rho e^{i phi}``, ``nu = chi e^{i psi}``."""

    rho: float
    phi: float
    chi: float
    psi: float


def principal_sqrt(z: complex) -> complex:
    """Square root with argument in ``[0, pi)``; ``principal_sqrt(0) == 0``.

    Differs from :func:`cmath.sqrt` on the lower half plane, where the
    result is negated.
    """
    z = complex(z)
    w = cmath.sqrt(complex(z.real, z.imag + 0.0))
    if w.imag < 0 or (w.imag == 0 and w.real < 0):
        w = -w
    return complex(w.real + 0.0, w.imag + 0.0)


def _unit_phase(z: complex) -> complex:
    return z / abs(z) if z != 0 else 1.0 + 0.0j


def solve_modulus(rho: float) -> float:
    """Unique ``s`` in ``[0, 1)`` with ``s / (1 - s^2) == rho``.

    Written as ``2 rho / (1 + sqrt(1 + 4 rho^2))`` to avoid the cancellation
    in the textbook form of the root.
    """
    if rho < 0 or not math.isfinite(rho):
        raise ValueError(f"rho must be finite and non-negative, got {rho!r}")
    return 2.0 * rho / (1.0 + math.sqrt(1.0 + 4.0 * rho * rho))


def f_forward(block: BlockS2) -> BlockS1:
    mu = block.tau * principal_sqrt(block.nu)
    r = block.tau * (1.0 - abs(block.nu))
    return BlockS1(mu, r)


def f_inverse(block: BlockS1) -> BlockS2:
    mu, r = block.mu, block.r
    amu = abs(mu)
    if amu == 0:
        return BlockS2(0.0, r)
    s = solve_modulus(amu / r)
    # 1 - s^2 = s / rho, hence tau = r / (1 - s^2) = |mu| / s
    tau = amu / s
    nu = s * s * _unit_phase(mu) ** 2
    if abs(nu) >= 1.0:
        # only reachable when rho overflows the double range
        nu = nu / abs(nu) * math.nextafter(1.0, 0.0)
    return BlockS2(nu, tau)


def polar_decomp(s1: BlockS1, s2: BlockS2) -> PolarDecomp:
    """Polar parameters of a pair; ``rho == sqrt(chi) / (1 - chi)`` and ``phi == psi / 2`` when matched."""
    q = s1.mu / s1.r
    psi = cmath.phase(s2.nu) % (2 * math.pi) if s2.nu != 0 else 0.0
    phi = cmath.phase(s1.mu) % math.pi if s1.mu != 0 else 0.0
    return PolarDecomp(rho=abs(q), phi=phi, chi=abs(s2.nu), psi=psi)


def witness_S(s1: BlockS1, s2: BlockS2, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> np.ndarray:
    """Unitary ``S`` with ``N_{mu,r} S = S M_{nu,tau}``.

    ``S = [[tau, conj(mu)], [-mu, tau]] / sqrt(tau^2 + |mu|^2)``.
    Raises :class:`MismatchedPair` unless ``s1 == f_forward(s2)`` within
    ``witness_tol`` relative to ``max(1, tau)``.
    """
    image = f_forward(s2)
    scale = max(1.0, s2.tau)
    if abs(image.mu - s1.mu) > cfg.witness_tol * scale or abs(image.r - s1.r) > cfg.witness_tol * scale:
        raise MismatchedPair(f"{s1} is not the image of {s2} (image is {image})")
    mu, tau = s1.mu, s2.tau
    S = np.array([[tau, mu.conjugate()], [-mu, tau]], dtype=np.complex128)
    return S / math.sqrt(tau * tau + abs(mu) ** 2)
