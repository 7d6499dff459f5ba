"""Block taxonomy, canonical-form container, ordering and assembly.

Five block families make up every canonical form produced by the library:

============  ====  ===============================================
class         size  matrix
============  ====  ===============================================
BlockLambda   1     ``[lam]``
BlockS1       2     ``[[mu, r], [0, -mu]]``
BlockS2       2     ``tau * [[0, 1], [nu, 0]]``
BlockRealRot  2     ``[[a, -b], [b, a]]``
BlockRealS2   4     realification of ``tau * [[0, 1], [c + d i, 0]]``
============  ====  ===============================================
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import ClassVar, Iterable, Sequence, Union

import numpy as np
import scipy.linalg

FLAVOR_A = "complex-A"
FLAVOR_B = "complex-B"
FLAVOR_REAL = "real"
FLAVORS = (FLAVOR_A, FLAVOR_B, FLAVOR_REAL)


@dataclass(frozen=True)
class ToleranceConfig:
    """Numerical thresholds.

    normality_tol
        Relative bound on the commutator defect (see :mod:`sqnormal.normality`).
    cluster_tol
        Relative distance (in units of ``||A||_F^2``) below which eigenvalues of
        ``A^2`` are grouped together; also the per-parameter matching tolerance.
    rank_tol
        Relative threshold (in units of ``||A||_F``) below which a singular
        value is treated as zero.
    witness_tol
        Absolute tolerance for unitarity and intertwining checks of witnesses.
    """

    normality_tol: float = 1e-10
    cluster_tol: float = 1e-8
    rank_tol: float = 1e-10
    witness_tol: float = 1e-10

    def __post_init__(self):
        for name in ("normality_tol", "cluster_tol", "rank_tol", "witness_tol"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise ValueError(f"{name} must be a positive finite number, got {value!r}")


DEFAULT_TOLERANCES = ToleranceConfig()


def _complex(z) -> complex:
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"non-finite parameter {z!r}")
    # normalise signed zeros so that formatting and comparisons are stable
    return complex(z.real + 0.0, z.imag + 0.0)


def _positive(x, name) -> float:
    x = float(x)
    if not (math.isfinite(x) and x > 0):
        raise ValueError(f"{name} must be a positive real, got {x!r}")
    return x


def _real(x, name) -> float:
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"{name} must be finite, got {x!r}")
    return x + 0.0


def in_upper_half_plane(z: complex) -> bool:
    """True iff ``0 <= arg(z) < pi`` with the convention ``arg(0) = 0``."""
    return z.imag > 0 or (z.imag == 0 and z.real >= 0)


@dataclass(frozen=True)
class BlockLambda:
    lam: complex
    size: ClassVar[int] = 1
    rank: ClassVar[int] = 0
    kind: ClassVar[str] = "Lambda"

    def __post_init__(self):
        object.__setattr__(self, "lam", _complex(self.lam))

    def key(self):
        return (self.lam.real, self.lam.imag)

    def matrix(self):
        return np.array([[self.lam]], dtype=np.complex128)

    def to_dict(self):
        return {"type": self.kind, "lambda": [self.lam.real, self.lam.imag]}


@dataclass(frozen=True)
class BlockS1:
    mu: complex
    r: float
    size: ClassVar[int] = 2
    rank: ClassVar[int] = 1
    kind: ClassVar[str] = "S1"

    def __post_init__(self):
        mu = _complex(self.mu)
        if not in_upper_half_plane(mu):
            raise ValueError(f"BlockS1 needs 0 <= arg(mu) < pi, got mu={mu!r}")
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "r", _positive(self.r, "r"))

    def key(self):
        return (self.mu.real, self.mu.imag, self.r)

    def matrix(self):
        return np.array([[self.mu, self.r], [0.0, -self.mu]], dtype=np.complex128)

    def to_dict(self):
        return {"type": self.kind, "mu": [self.mu.real, self.mu.imag], "r": self.r}


@dataclass(frozen=True)
class BlockS2:
    nu: complex
    tau: float
    size: ClassVar[int] = 2
    rank: ClassVar[int] = 2
    kind: ClassVar[str] = "S2"

    def __post_init__(self):
        nu = _complex(self.nu)
        if not abs(nu) < 1:
            raise ValueError(f"BlockS2 needs |nu| < 1, got nu={nu!r}")
        object.__setattr__(self, "nu", nu)
        object.__setattr__(self, "tau", _positive(self.tau, "tau"))

    def key(self):
        return (self.nu.real, self.nu.imag, self.tau)

    def matrix(self):
        return self.tau * np.array([[0.0, 1.0], [self.nu, 0.0]], dtype=np.complex128)

    def to_dict(self):
        return {"type": self.kind, "nu": [self.nu.real, self.nu.imag], "tau": self.tau}


@dataclass(frozen=True)
class BlockRealRotation:
    a: float
    b: float
    size: ClassVar[int] = 2
    rank: ClassVar[int] = 3
    kind: ClassVar[str] = "RealRotation"

    def __post_init__(self):
        object.__setattr__(self, "a", _real(self.a, "a"))
        object.__setattr__(self, "b", _positive(self.b, "b"))

    def key(self):
        return (self.a, self.b)

    def matrix(self):
        return np.array([[self.a, -self.b], [self.b, self.a]])

    def to_dict(self):
        return {"type": self.kind, "a": self.a, "b": self.b}


@dataclass(frozen=True)
class BlockRealS2Pair:
    c: float
    d: float
    tau: float
    size: ClassVar[int] = 4
    rank: ClassVar[int] = 4
    kind: ClassVar[str] = "RealS2Pair"

    def __post_init__(self):
        c = _real(self.c, "c")
        d = _positive(self.d, "d")
        if not c * c + d * d < 1:
            raise ValueError(f"BlockRealS2Pair needs c^2 + d^2 < 1, got c={c!r}, d={d!r}")
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "tau", _positive(self.tau, "tau"))

    def key(self):
        return (self.c, self.d, self.tau)

    def matrix(self):
        c, d = self.c, self.d
        return self.tau * np.array(
            [
                [0.0, 0.0, 1.0, 0.0],
                [0.0, 0.0, 0.0, 1.0],
                [c, -d, 0.0, 0.0],
                [d, c, 0.0, 0.0],
            ]
        )

    def to_dict(self):
        return {"type": self.kind, "c": self.c, "d": self.d, "tau": self.tau}


CanonicalBlock = Union[BlockLambda, BlockS1, BlockS2, BlockRealRotation, BlockRealS2Pair]

_ALLOWED = {
    FLAVOR_A: (BlockLambda, BlockS1),
    FLAVOR_B: (BlockLambda, BlockS2),
    FLAVOR_REAL: (BlockLambda, BlockS2, BlockRealRotation, BlockRealS2Pair),
}

_BY_KIND = {cls.kind: cls for cls in (BlockLambda, BlockS1, BlockS2, BlockRealRotation, BlockRealS2Pair)}


def block_from_dict(d: dict) -> CanonicalBlock:
    """Inverse of ``block.to_dict()``."""
    try:
        cls = _BY_KIND[d["type"]]
    except KeyError:
        raise ValueError(f"unknown block type in {d!r}") from None

    def cplx(v):
        if isinstance(v, (list, tuple)):
            re, im = v
            return complex(re, im)
        return complex(v)

    if cls is BlockLambda:
        return BlockLambda(cplx(d["lambda"]))
    if cls is BlockS1:
        return BlockS1(cplx(d["mu"]), d["r"])
    if cls is BlockS2:
        return BlockS2(cplx(d["nu"]), d["tau"])
    if cls is BlockRealRotation:
        return BlockRealRotation(d["a"], d["b"])
    return BlockRealS2Pair(d["c"], d["d"], d["tau"])


@dataclass(frozen=True)
class CanonicalForm:
    """A direct sum of canonical blocks together with its flavor.

    Forms returned by the canonicalisers are always sorted (see
    :func:`sort_blocks`); hand-built forms may be in any order.
    """

    blocks: tuple = field(default_factory=tuple)
    flavor: str = FLAVOR_A

    def __post_init__(self):
        blocks = tuple(self.blocks)
        object.__setattr__(self, "blocks", blocks)
        if self.flavor not in FLAVORS:
            raise ValueError(f"unknown flavor {self.flavor!r}")
        allowed = _ALLOWED[self.flavor]
        for b in blocks:
            if not isinstance(b, allowed):
                raise ValueError(f"{type(b).__name__} not allowed in a {self.flavor} form")
            if self.flavor == FLAVOR_REAL:
                if isinstance(b, BlockLambda) and b.lam.imag != 0:
                    raise ValueError(f"real form needs real lambda, got {b.lam!r}")
                if isinstance(b, BlockS2) and b.nu.imag != 0:
                    raise ValueError(f"real form needs real nu, got {b.nu!r}")

    @property
    def n(self) -> int:
        return sum(b.size for b in self.blocks)

    def __len__(self):
        return len(self.blocks)

    def __iter__(self):
        return iter(self.blocks)

    def to_dict(self):
        return {"flavor": self.flavor, "blocks": [b.to_dict() for b in self.blocks]}

    @classmethod
    def from_dict(cls, d: dict) -> "CanonicalForm":
        return cls(tuple(block_from_dict(b) for b in d["blocks"]), d.get("flavor", FLAVOR_A))


def _parameter_scale(blocks: Iterable[CanonicalBlock]) -> float:
    return max((abs(x) for b in blocks for x in b.key()), default=0.0)


def block_order(blocks: Sequence[CanonicalBlock], tol: float | None = None) -> list[int]:
    """Permutation that puts ``blocks`` in canonical order.

    Blocks are ordered by type rank, then by every key component in
    descending order. Components are first compared on a grid of spacing
    ``tol`` so that rounding noise in one component does not override the
    next one; exact values break the remaining ties. The result is a total
    order, so equal multisets sort identically whatever their input order.
    The default ``tol`` is ``1e-9`` times the largest parameter.
    """
    if tol is None:
        tol = 1e-9 * max(1.0, _parameter_scale(blocks))

    def key(i):
        b = blocks[i]
        k = b.key()
        return (b.rank, tuple(-round(x / tol) for x in k), tuple(-x for x in k))

    return sorted(range(len(blocks)), key=key)


def sort_blocks(form: CanonicalForm, tol: float | None = None) -> CanonicalForm:
    """Return ``form`` with its blocks in canonical order (idempotent)."""
    order = block_order(form.blocks, tol)
    return CanonicalForm(tuple(form.blocks[i] for i in order), form.flavor)


def assemble(form: CanonicalForm) -> np.ndarray:
    """Block-diagonal matrix of the form, blocks laid out in their stored order.

    Real forms give a ``float64`` array, complex flavors ``complex128``.
    """
    dtype = np.float64 if form.flavor == FLAVOR_REAL else np.complex128
    if not form.blocks:
        return np.zeros((0, 0), dtype=dtype)
    mats = [b.matrix() for b in form.blocks]
    if form.flavor == FLAVOR_REAL:
        mats = [m.real if np.iscomplexobj(m) else m for m in mats]
    return scipy.linalg.block_diag(*mats).astype(dtype, copy=False)


def blocks_close(b1: CanonicalBlock, b2: CanonicalBlock, atol: float, rtol: float = 0.0) -> bool:
    if type(b1) is not type(b2):
        return False
    return all(abs(x - y) <= atol + rtol * abs(y) for x, y in zip(b1.key(), b2.key()))


def match_forms(
    f1: CanonicalForm, f2: CanonicalForm, atol: float, rtol: float = 0.0
) -> list[int] | None:
    """Match the blocks of two forms up to tolerance.

    Returns ``perm`` with ``f1.blocks[i]`` close to ``f2.blocks[perm[i]]`` for
    every ``i``, or ``None`` if the block multisets differ. Sorted forms match
    position by position; the greedy search is a fallback for orders that a
    near-tie put differently.
    """
    if f1.flavor != f2.flavor or len(f1.blocks) != len(f2.blocks):
        return None
    if all(blocks_close(x, y, atol, rtol) for x, y in zip(f1.blocks, f2.blocks)):
        return list(range(len(f1.blocks)))
    used = [False] * len(f2.blocks)
    perm = []
    for b in f1.blocks:
        best, best_dist = None, math.inf
        for j, c in enumerate(f2.blocks):
            if used[j] or not blocks_close(b, c, atol, rtol):
                continue
            dist = max(abs(x - y) for x, y in zip(b.key(), c.key()))
            if dist < best_dist:
                best, best_dist = j, dist
        if best is None:
            return None
        used[best] = True
        perm.append(best)
    return perm


def forms_close(f1: CanonicalForm, f2: CanonicalForm, atol: float, rtol: float = 0.0) -> bool:
    return match_forms(f1, f2, atol, rtol) is not None
