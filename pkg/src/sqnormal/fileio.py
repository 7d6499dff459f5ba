"""Matrix and canonical-form files.

Matrix files are JSON objects::

    {"rows": 2, "cols": 2, "complex": true, "data": [[1, 0], [0, 1], [0, 0], [2, -1]]}

with ``data`` in row-major order (flat, or nested by rows); complex entries
are ``[re, im]`` pairs and real entries plain numbers. Real matrices may also
be given as whitespace-separated rows of numbers.

Canonical-form sidecars hold ``CanonicalForm.to_dict()``.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .blocks import CanonicalForm


class MatrixFormatError(ValueError):
    pass


def _entry(v, is_complex):
    if is_complex:
        if not _is_entry(v, True):
            raise MatrixFormatError(f"bad complex entry {v!r}")
        return complex(*v) if isinstance(v, list) else complex(v)
    if _is_number(v):
        return float(v)
    raise MatrixFormatError(f"bad real entry {v!r}")


def parse_matrix_json(obj) -> np.ndarray:
    if not isinstance(obj, dict):
        raise MatrixFormatError("matrix file must hold a JSON object")
    try:
        rows, cols, data = obj["rows"], obj["cols"], obj["data"]
    except KeyError as exc:
        raise MatrixFormatError(f"missing key {exc}") from None
    is_complex = bool(obj.get("complex", False))
    if not (isinstance(rows, int) and isinstance(cols, int)) or rows < 1 or cols < 1:
        raise MatrixFormatError("rows and cols must be positive integers")
    if not isinstance(data, list):
        raise MatrixFormatError("data must be a list")
    if data and all(_is_entry(v, is_complex) for v in data):
        flat = data
    elif all(isinstance(r, list) and len(r) == cols for r in data) and len(data) == rows:
        flat = [v for r in data for v in r]
    else:
        raise MatrixFormatError("data is neither a flat entry list nor a list of rows")
    if len(flat) != rows * cols:
        raise MatrixFormatError(f"expected {rows * cols} entries, got {len(flat)}")
    vals = [_entry(v, is_complex) for v in flat]
    M = np.array(vals, dtype=np.complex128 if is_complex else np.float64).reshape(rows, cols)
    if not np.all(np.isfinite(M)):
        raise MatrixFormatError("non-finite entry")
    return M


def _is_number(x) -> bool:
    return isinstance(x, (int, float)) and not isinstance(x, bool)


def _is_entry(v, is_complex) -> bool:
    if _is_number(v):
        return True
    return is_complex and isinstance(v, list) and len(v) == 2 and all(_is_number(x) for x in v)


def parse_matrix_text(text: str) -> np.ndarray:
    rows = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            rows.append([float(tok) for tok in line.replace(",", " ").split()])
        except ValueError as exc:
            raise MatrixFormatError(str(exc)) from None
    if not rows or len({len(r) for r in rows}) != 1:
        raise MatrixFormatError("ragged or empty whitespace matrix")
    M = np.array(rows)
    if not np.all(np.isfinite(M)):
        raise MatrixFormatError("non-finite entry")
    return M


def read_matrix(path) -> np.ndarray:
    """Read a matrix file; returns ``float64`` for real files, ``complex128`` otherwise.

    Raises :class:`MatrixFormatError` for malformed content and ``OSError``
    for unreadable paths.
    """
    text = Path(path).read_text()
    stripped = text.lstrip()
    if stripped.startswith("{") or stripped.startswith("["):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise MatrixFormatError(f"invalid JSON: {exc}") from None
        return parse_matrix_json(obj)
    return parse_matrix_text(text)


def matrix_to_json(M) -> dict:
    M = np.asarray(M)
    rows, cols = M.shape
    if np.iscomplexobj(M):
        data = [[float(z.real), float(z.imag)] for z in M.ravel()]
        return {"rows": rows, "cols": cols, "complex": True, "data": data}
    return {"rows": rows, "cols": cols, "complex": False, "data": [float(x) for x in M.ravel()]}


def write_matrix(path, M) -> None:
    Path(path).write_text(json.dumps(matrix_to_json(M)) + "\n")


def write_form(path, form: CanonicalForm) -> None:
    Path(path).write_text(json.dumps(form.to_dict(), indent=1) + "\n")


def read_form(path) -> CanonicalForm:
    try:
        return CanonicalForm.from_dict(json.loads(Path(path).read_text()))
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise MatrixFormatError(f"bad canonical-form file: {exc}") from None
