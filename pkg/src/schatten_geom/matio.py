"""Matrix file formats.

JSON: ``{"rows": n, "cols": m, "data": [[re, im], ...]}`` in row-major
order; every entry is a 2-array even when the imaginary part is 0.

Text: one row per line, comma-separated tokens such as ``1``, ``-2.5i``
or ``3-4e-2i``.
"""

from __future__ import annotations

import json
import re
from pathlib import Path

import numpy as np

from .errors import ShapeError


class MatrixFormatError(ValueError):
    pass


def matrix_to_dict(A) -> dict:
    A = np.asarray(A, dtype=np.complex128)
    return {
        "rows": int(A.shape[0]),
        "cols": int(A.shape[1]),
        "data": [[float(z.real), float(z.imag)] for z in A.ravel()],
    }


def matrix_from_dict(obj) -> np.ndarray:
    try:
        rows, cols, data = int(obj["rows"]), int(obj["cols"]), obj["data"]
    except (KeyError, TypeError, ValueError) as exc:
        raise MatrixFormatError(f"matrix object needs rows, cols and data: {exc}") from exc
    if rows < 1 or cols < 1:
        raise MatrixFormatError("rows and cols must be positive")
    if not isinstance(data, list) or len(data) != rows * cols:
        raise MatrixFormatError(f"expected {rows * cols} entries")
    out = np.empty(rows * cols, dtype=np.complex128)
    for k, z in enumerate(data):
        if not (isinstance(z, list) and len(z) == 2):
            raise MatrixFormatError(f"entry {k} is not a [re, im] pair")
        try:
            out[k] = complex(float(z[0]), float(z[1]))
        except (TypeError, ValueError) as exc:
            raise MatrixFormatError(f"entry {k}: {exc}") from exc
    if not np.all(np.isfinite(out)):
        raise MatrixFormatError("matrix has non-finite entries")
    return out.reshape(rows, cols)


_NUM = r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_TOKEN = re.compile(
    rf"^(?:(?P<re>{_NUM})(?P<im>[+-](?:\d+\.?\d*|\.\d+)?(?:[eE][+-]?\d+)?)i"
    rf"|(?P<only_im>[+-]?(?:\d+\.?\d*|\.\d+)?(?:[eE][+-]?\d+)?)i"
    rf"|(?P<only_re>{_NUM}))$"
)


def parse_complex(token: str) -> complex:
    """Parse ``a``, ``bi`` or ``a+bi`` (``i`` alone means ``1i``)."""
    t = token.strip().replace(" ", "")
    m = _TOKEN.match(t)
    if not m:
        raise MatrixFormatError(f"cannot parse complex number {token!r}")

    def coef(s):
        return float(s + "1") if s in ("", "+", "-") else float(s)

    if m.group("only_re") is not None:
        return complex(float(m.group("only_re")), 0.0)
    if m.group("only_im") is not None:
        return complex(0.0, coef(m.group("only_im")))
    return complex(float(m.group("re")), coef(m.group("im")))


def parse_text(text: str) -> np.ndarray:
    rows = [ln for ln in (line.strip() for line in text.splitlines()) if ln and not ln.startswith("#")]
    if not rows:
        raise MatrixFormatError("empty matrix")
    parsed = [[parse_complex(tok) for tok in row.split(",")] for row in rows]
    if len({len(r) for r in parsed}) != 1:
        raise MatrixFormatError("ragged rows")
    return np.array(parsed, dtype=np.complex128)


def read_matrix(path) -> np.ndarray:
    """Read a JSON matrix, falling back to the text format."""
    text = Path(path).read_text()
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise MatrixFormatError(f"{path}: invalid JSON: {exc}") from exc
        return matrix_from_dict(obj)
    return parse_text(text)


def write_matrix(path, A) -> None:
    Path(path).write_text(json.dumps(matrix_to_dict(A)) + "\n")


def same_shape(*mats) -> None:
    shapes = {m.shape for m in mats}
    if len(shapes) != 1:
        raise ShapeError(f"matrices have different shapes: {sorted(shapes)}")
