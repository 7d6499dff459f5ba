"""Command-line front end.

Exit codes: 0 success (or similar), 1 not similar, 2 precondition failed
(not squared-normal, wrong field, size mismatch), 3 I/O or usage error,
4 numerical ambiguity.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from .blocks import (
    BlockLambda,
    BlockRealRotation,
    BlockRealS2Pair,
    BlockS1,
    BlockS2,
    CanonicalForm,
    ToleranceConfig,
)
from .canon import canon_a, canon_b
from .exceptions import CanonicalFormError, DimensionMismatch, NotSquaredNormal
from .fileio import MatrixFormatError, read_matrix, write_form, write_matrix
from .generators import GeneratorParams, random_instance, random_real_instance
from .normality import is_squared_normal, squared_normality_defect
from .real import canon_real
from .similarity import orthogonally_similar, unitarily_similar
from .validation import fro

EXIT_OK = 0
EXIT_NOT_SIMILAR = 1
EXIT_PRECONDITION = 2
EXIT_IO = 3
EXIT_AMBIGUOUS = 4

DEFAULT_NORMALITY_TOL = 1e-10


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors, which is taken by "precondition"
    def error(self, message):
        raise _UsageError(message)


def format_real(x: float, zero_tol: float = 0.0) -> str:
    """Six decimals with trailing zeros dropped; tiny values in ``%g`` form."""
    if abs(x) <= zero_tol:
        x = 0.0
    x += 0.0  # no "-0"
    if x != 0 and abs(x) < 1e-3:
        return f"{x:.6g}"
    text = f"{x:.6f}".rstrip("0").rstrip(".")
    return "0" if text == "-0" else text


def format_complex(z: complex, zero_tol: float = 0.0) -> str:
    re = format_real(z.real, zero_tol)
    im = z.imag if abs(z.imag) > zero_tol else 0.0
    sign = "-" if im < 0 else "+"
    return f"{re}{sign}{format_real(abs(im))}i"


def format_defect(x: float) -> str:
    """Short scientific notation: ``0``, ``1.414e0``, ``2.500e-13``."""
    if x == 0:
        return "0"
    exp = math.floor(math.log10(abs(x)))
    mant = x / 10**exp
    if round(abs(mant), 3) >= 10:
        mant /= 10
        exp += 1
    return f"{mant:.3f}e{exp}"


def format_block(block, zero_tol: float = 0.0) -> str:
    if isinstance(block, BlockLambda):
        return f"Lambda lambda={format_complex(block.lam, zero_tol)}"
    if isinstance(block, BlockS1):
        return f"S1 mu={format_complex(block.mu, zero_tol)} r={format_real(block.r)}"
    if isinstance(block, BlockS2):
        return f"S2 nu={format_complex(block.nu, zero_tol)} tau={format_real(block.tau)}"
    if isinstance(block, BlockRealRotation):
        return f"RealRotation a={format_real(block.a, zero_tol)} b={format_real(block.b)}"
    if isinstance(block, BlockRealS2Pair):
        return f"RealS2Pair c={format_real(block.c, zero_tol)} d={format_real(block.d)} tau={format_real(block.tau)}"
    raise TypeError(type(block).__name__)


def format_form(form: CanonicalForm) -> str:
    # parameters below 1e-12 of the largest one are rounding noise
    top = max((abs(x) for b in form.blocks for x in b.key()), default=0.0)
    zero_tol = 1e-12 * top
    return "\n".join(format_block(b, zero_tol) for b in form.blocks)


def _tolerances(args) -> ToleranceConfig:
    return ToleranceConfig(
        normality_tol=args.tol,
        cluster_tol=args.cluster_tol,
        rank_tol=args.rank_tol,
        witness_tol=args.witness_tol,
    )


def _is_real(M) -> bool:
    return not np.iscomplexobj(M) or not np.any(M.imag)


def _read_square(path):
    M = read_matrix(path)
    if M.shape[0] != M.shape[1]:
        raise MatrixFormatError(f"{path}: matrix is {M.shape[0]}x{M.shape[1]}, not square")
    return M


def cmd_check(args) -> int:
    A = _read_square(args.input)
    defect = squared_normality_defect(A)
    ok = is_squared_normal(A, _tolerances(args))
    print(f"squared-normal: {'yes' if ok else 'no'}, defect {format_defect(defect)}")
    return EXIT_OK if ok else EXIT_PRECONDITION


def cmd_canon(args) -> int:
    A = _read_square(args.input)
    cfg = _tolerances(args)
    if args.form == "real":
        if not _is_real(A):
            print("error: --form real needs a real matrix", file=sys.stderr)
            return EXIT_PRECONDITION
        result = canon_real(np.real(A), cfg)
    else:
        result = (canon_a if args.form == "a" else canon_b)(A, cfg)
    if args.json:
        print(json.dumps(result.form.to_dict(), indent=1))
    else:
        print(format_form(result.form))
    if args.witness:
        write_matrix(args.witness, result.witness)
    return EXIT_OK


def cmd_similar(args) -> int:
    A = _read_square(args.a)
    B = _read_square(args.b)
    cfg = _tolerances(args)
    if args.orthogonal:
        if not (_is_real(A) and _is_real(B)):
            print("error: --orthogonal needs real matrices", file=sys.stderr)
            return EXIT_PRECONDITION
        result = orthogonally_similar(np.real(A), np.real(B), cfg)
    else:
        result = unitarily_similar(A, B, cfg)
    if result.similar:
        rel = result.residual / max(fro(A), np.finfo(float).tiny)
        print(f"similar: yes, witness residual {format_defect(result.residual)} (relative {format_defect(rel)})")
        if args.witness:
            write_matrix(args.witness, result.witness)
        return EXIT_OK
    print("similar: no")
    return EXIT_NOT_SIMILAR


def sidecar_path(out: str) -> str:
    return out + ".form.json"


def cmd_gen(args) -> int:
    if args.n < 1:
        raise _UsageError("--n must be >= 1")
    try:
        params = GeneratorParams.from_dict(json.loads(args.params) if args.params else None)
    except (json.JSONDecodeError, TypeError, ValueError) as exc:
        raise _UsageError(f"bad --params: {exc}") from None
    make = random_real_instance if args.real else random_instance
    A, form, _ = make(args.n, args.seed, params)
    write_matrix(args.output, A)
    write_form(args.form_out or sidecar_path(args.output), form)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    env_tol = os.environ.get("CANON_TOL")
    try:
        default_tol = float(env_tol) if env_tol else DEFAULT_NORMALITY_TOL
    except ValueError:
        default_tol = DEFAULT_NORMALITY_TOL

    common = _Parser(add_help=False)
    common.add_argument(
        "--tol", type=float, default=default_tol,
        help="relative normality tolerance (default %(default)g; env CANON_TOL overrides)",
    )
    common.add_argument("--cluster-tol", type=float, default=1e-8, help="eigenvalue clustering tolerance (default %(default)g)")
    common.add_argument("--rank-tol", type=float, default=1e-10, help="singular value rank tolerance (default %(default)g)")
    common.add_argument("--witness-tol", type=float, default=1e-10, help="witness check tolerance (default %(default)g)")

    parser = _Parser(prog="sqnormal", description="Canonical forms of matrices whose square is normal.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("check", parents=[common], help="test whether A^2 is normal")
    p.add_argument("input")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("canon", parents=[common], help="print the canonical form")
    p.add_argument("input")
    p.add_argument("--form", choices=["a", "b", "real"], default="a")
    p.add_argument("--witness", metavar="PATH", help="write the unitary/orthogonal witness here")
    p.add_argument("--json", action="store_true", help="print the form as JSON instead of a listing")
    p.set_defaults(func=cmd_canon)

    p = sub.add_parser("similar", parents=[common], help="decide unitary (orthogonal) similarity")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--orthogonal", action="store_true", help="real matrices, orthogonal similarity")
    p.add_argument("--witness", metavar="PATH", help="write U with U^* A U = B here")
    p.set_defaults(func=cmd_similar)

    p = sub.add_parser("gen", help="write a random squared-normal matrix and its canonical form")
    p.add_argument("output")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--real", action="store_true", help="real matrix, real canonical form")
    p.add_argument("--params", help="JSON object of generator parameters")
    p.add_argument("--form-out", metavar="PATH", help="sidecar path (default OUTPUT.form.json)")
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (OSError, MatrixFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (NotSquaredNormal, DimensionMismatch) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except CanonicalFormError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_AMBIGUOUS
    except ValueError as exc:
        # tolerance validation and the like
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
