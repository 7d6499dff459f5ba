"""Seeded random instances: Haar unitaries, canonical forms, conjugated matrices.

Every function takes ``seed`` (an int or a :class:`numpy.random.SeedSequence`)
and is deterministic in it. Compound generators split the seed with
``SeedSequence.spawn`` so that the form and the conjugating matrix come from
independent streams; bit generators are Philox (counter based).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import asdict, dataclass, fields

import numpy as np

from .bijection import principal_sqrt
from .blocks import (
    FLAVOR_A,
    FLAVOR_REAL,
    BlockLambda,
    BlockRealRotation,
    BlockRealS2Pair,
    BlockS1,
    BlockS2,
    CanonicalForm,
    assemble,
    sort_blocks,
)


@dataclass(frozen=True)
class GeneratorParams:
    """Knobs for random canonical forms.

    mag_min, mag_max
        Range of ``|mu|`` for non-zero eigenvalues (and of ``a + bi`` in the
        real case).
    r_min, r_max
        Range of the coupling ``r`` (and of ``tau``).
    coupling
        Probability that a new block is a 2x2 (or 4x4) coupled block.
    zero_prob
        Probability that a block sits at eigenvalue zero.
    reuse_prob
        Probability that a block reuses an eigenvalue already drawn, which
        creates clusters holding several blocks.
    separation
        Minimum distance between distinct values of ``mu^2``, relative to
        ``mag_max^2``. Also kept between non-zero values and zero.
    nu_max
        Upper bound on ``|nu|`` for real ``tau [[0, 1], [nu, 0]]`` blocks.
    adversarial
        Skip the separation rule; eigenvalues may then cluster arbitrarily.
    """

    mag_min: float = 0.3
    mag_max: float = 2.0
    r_min: float = 0.2
    r_max: float = 3.0
    coupling: float = 0.5
    zero_prob: float = 0.15
    reuse_prob: float = 0.25
    separation: float = 0.05
    nu_max: float = 0.9
    adversarial: bool = False

    @classmethod
    def from_dict(cls, d: dict | None) -> "GeneratorParams":
        if not d:
            return cls()
        names = {f.name for f in fields(cls)}
        unknown = set(d) - names
        if unknown:
            raise ValueError(f"unknown generator parameters: {sorted(unknown)}")
        return cls(**d)

    def to_dict(self) -> dict:
        return asdict(self)


def _rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    if not isinstance(seed, np.random.SeedSequence):
        seed = np.random.SeedSequence(seed)
    return np.random.Generator(np.random.Philox(seed))


def _split(seed, k: int):
    if not isinstance(seed, np.random.SeedSequence):
        seed = np.random.SeedSequence(seed)
    return seed.spawn(k)


def random_unitary(n: int, seed=None) -> np.ndarray:
    """Haar-distributed ``n x n`` unitary (QR of a complex Ginibre matrix, phases fixed)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = _rng(seed)
    Z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / math.sqrt(2)
    Q, R = np.linalg.qr(Z)
    d = np.diag(R)
    return Q * (d / np.abs(d))


def random_orthogonal(n: int, seed=None) -> np.ndarray:
    """Haar-distributed ``n x n`` real orthogonal matrix."""
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = _rng(seed)
    Q, R = np.linalg.qr(rng.standard_normal((n, n)))
    return Q * np.sign(np.diag(R))


class _SigmaPool:
    """Distinct values of ``mu^2`` drawn so far, with the separation rule."""

    def __init__(self, params: GeneratorParams):
        self.params = params
        self.min_gap = params.separation * params.mag_max**2
        self.values: list[complex] = []

    def admissible(self, sigmas) -> bool:
        if self.params.adversarial:
            return True
        for s in sigmas:
            if abs(s) < self.min_gap:
                return False
            if any(abs(s - t) < self.min_gap for t in self.values):
                return False
        # a conjugate pair must itself be separated
        for i in range(len(sigmas)):
            for j in range(i + 1, len(sigmas)):
                if 0 < abs(sigmas[i] - sigmas[j]) < self.min_gap:
                    return False
        return True

    def add(self, sigmas):
        for s in sigmas:
            if not any(s == t for t in self.values):
                self.values.append(s)


def _draw_mu(rng, params: GeneratorParams) -> complex:
    mag = rng.uniform(params.mag_min, params.mag_max)
    return principal_sqrt(cmath.rect(mag, rng.uniform(0, math.pi)) ** 2)


def random_canonical_a(n: int, seed=None, params: GeneratorParams | None = None) -> CanonicalForm:
    """Random sorted form (a) of dimension ``n``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    params = params or GeneratorParams()
    rng = _rng(seed)
    pool = _SigmaPool(params)
    mus: list[complex] = []
    blocks = []
    remaining = n
    while remaining > 0:
        coupled = remaining >= 2 and rng.random() < params.coupling
        if rng.random() < params.zero_prob:
            mu = 0j
        elif mus and rng.random() < params.reuse_prob:
            mu = mus[rng.integers(len(mus))]
        else:
            for _ in range(1000):
                mu = _draw_mu(rng, params)
                if pool.admissible([mu * mu]):
                    break
            else:
                mu = 0j
            if mu != 0:
                pool.add([mu * mu])
                mus.append(mu)
        if coupled:
            blocks.append(BlockS1(mu, rng.uniform(params.r_min, params.r_max)))
            remaining -= 2
        else:
            blocks.append(BlockLambda(-mu if rng.random() < 0.5 else mu))
            remaining -= 1
    return sort_blocks(CanonicalForm(tuple(blocks), FLAVOR_A))


def random_squared_normal(n: int, seed=None, params: GeneratorParams | None = None) -> np.ndarray:
    """``Q^* F Q`` for a random form (a) ``F`` and Haar unitary ``Q``."""
    A, _, _ = random_instance(n, seed, params)
    return A


def random_instance(n: int, seed=None, params: GeneratorParams | None = None):
    """Return ``(A, form, Q)`` with ``A = Q^* assemble(form) Q``."""
    s_form, s_q = _split(seed, 2)
    form = random_canonical_a(n, s_form, params)
    Q = random_unitary(n, s_q)
    return Q.conj().T @ assemble(form) @ Q, form, Q


def random_canonical_real(n: int, seed=None, params: GeneratorParams | None = None) -> CanonicalForm:
    """Random sorted real form of dimension ``n``.

    Draws real ``[lam]``, real-``nu`` blocks ``tau [[0, 1], [nu, 0]]``,
    rotation blocks ``[[a, -b], [b, a]]`` and the 4x4 realified pairs.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    params = params or GeneratorParams()
    rng = _rng(seed)
    pool = _SigmaPool(params)
    reals: list[float] = []  # non-zero real eigenvalues available for reuse
    blocks = []
    remaining = n
    while remaining > 0:
        options = ["lambda"]
        if remaining >= 2:
            options += ["s2", "rotation"]
        if remaining >= 4:
            options.append("pair")
        if len(options) > 1 and rng.random() < params.coupling:
            kind = options[1 + rng.integers(len(options) - 1)]
        else:
            kind = "lambda"
        block = None
        for _ in range(1000):
            if kind == "lambda":
                if rng.random() < params.zero_prob:
                    block, sig = BlockLambda(0.0), []
                elif reals and rng.random() < params.reuse_prob:
                    lam = reals[rng.integers(len(reals))]
                    block, sig = BlockLambda(-lam if rng.random() < 0.5 else lam), []
                else:
                    lam = rng.uniform(params.mag_min, params.mag_max) * rng.choice([-1.0, 1.0])
                    block, sig = BlockLambda(lam), [complex(lam * lam)]
            elif kind == "s2":
                tau = rng.uniform(params.r_min, params.r_max)
                if rng.random() < params.zero_prob:
                    block, sig = BlockS2(0.0, tau), []
                else:
                    nu = rng.uniform(0.05, params.nu_max) * rng.choice([-1.0, 1.0])
                    block, sig = BlockS2(nu, tau), [complex(tau * tau * nu)]
            elif kind == "rotation":
                a = 0.0 if rng.random() < 0.25 else rng.uniform(-params.mag_max, params.mag_max)
                b = rng.uniform(params.mag_min, params.mag_max)
                lam = complex(a, b)
                block, sig = BlockRealRotation(a, b), [lam * lam, lam.conjugate() ** 2]
            else:
                tau = rng.uniform(params.r_min, params.r_max)
                rad = rng.uniform(0.05, params.nu_max)
                ang = rng.uniform(0.1, math.pi - 0.1)
                c, d = rad * math.cos(ang), rad * math.sin(ang)
                nu = complex(c, d)
                block, sig = BlockRealS2Pair(c, d, tau), [tau * tau * nu, tau * tau * nu.conjugate()]
            if not sig or pool.admissible(sig):
                break
        else:
            block, sig = BlockLambda(0.0), []
        pool.add(sig)
        if isinstance(block, BlockLambda) and block.lam != 0:
            reals.append(block.lam.real)
        blocks.append(block)
        remaining -= block.size
    return sort_blocks(CanonicalForm(tuple(blocks), FLAVOR_REAL))


def random_real_instance(n: int, seed=None, params: GeneratorParams | None = None):
    """Return ``(A, form, Q)`` with ``A = Q^T assemble(form) Q`` real."""
    s_form, s_q = _split(seed, 2)
    form = random_canonical_real(n, s_form, params)
    Q = random_orthogonal(n, s_q)
    return Q.T @ assemble(form) @ Q, form, Q


def random_real_squared_normal(n: int, seed=None, params: GeneratorParams | None = None) -> np.ndarray:
    A, _, _ = random_real_instance(n, seed, params)
    return A
