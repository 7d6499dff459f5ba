"""Canonical forms of squared-normal matrices.

A square matrix ``A`` is squared-normal when ``A @ A`` is normal. Such
matrices have canonical forms under unitary similarity (complex case) and
orthogonal similarity (real case); this package computes them together with
explicit witnesses and uses them to decide similarity.
"""

from .bijection import f_forward, f_inverse, principal_sqrt, witness_S
from .blocks import (
    DEFAULT_TOLERANCES,
    BlockLambda,
    BlockRealRotation,
    BlockRealS2Pair,
    BlockS1,
    BlockS2,
    CanonicalForm,
    ToleranceConfig,
    assemble,
    forms_close,
    sort_blocks,
)
from .canon import CanonResult, canon_a, canon_b
from .estimator import SquaredNormalCanonicalizer
from .exceptions import (
    CanonicalFormError,
    ClusterAmbiguity,
    DimensionMismatch,
    MismatchedPair,
    NotInvolution,
    NotNilpotent,
    NotSquaredNormal,
    PairingFailure,
)
from .normality import is_normal, is_squared_normal, normality_defect
from .real import canon_real, realify, squared_normal_realification_check
from .similarity import orthogonally_similar, trace_oracle_2x2, unitarily_similar

__all__ = [
    "DEFAULT_TOLERANCES",
    "BlockLambda",
    "BlockRealRotation",
    "BlockRealS2Pair",
    "BlockS1",
    "BlockS2",
    "CanonResult",
    "CanonicalForm",
    "CanonicalFormError",
    "ClusterAmbiguity",
    "DimensionMismatch",
    "MismatchedPair",
    "NotInvolution",
    "NotNilpotent",
    "NotSquaredNormal",
    "PairingFailure",
    "SquaredNormalCanonicalizer",
    "ToleranceConfig",
    "assemble",
    "canon_a",
    "canon_b",
    "canon_real",
    "f_forward",
    "f_inverse",
    "forms_close",
    "is_normal",
    "is_squared_normal",
    "normality_defect",
    "orthogonally_similar",
    "principal_sqrt",
    "realify",
    "sort_blocks",
    "squared_normal_realification_check",
    "trace_oracle_2x2",
    "unitarily_similar",
    "witness_S",
]
