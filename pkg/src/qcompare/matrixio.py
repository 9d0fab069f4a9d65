"""JSON matrix, encoding and Choi files.

A matrix file looks like ``{"dim": 2, "re": [[...], [...]], "im": [[...], [...]]}``;
``im`` may be omitted for real matrices. Floats are written with ``repr``
precision, so a write/read cycle is exact.
"""
from __future__ import annotations

import hashlib
import json
from pathlib import Path
from typing import Tuple

import numpy as np

from .comparison import ChoiMatrix
from .linalg import HermitianMatrix, NotHermitianError
from .objects import DensityMatrix, Encoding, InvalidStateError


class FileFormatError(ValueError):
    """A file that could not be parsed, with the location of the problem."""

    def __init__(self, path, message: str):
        super().__init__(f"{path}: {message}")
        self.path = str(path)
        self.detail = message


def sha256_file(path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def _load_json(path):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise FileFormatError(path, f"cannot read file ({exc.strerror})") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FileFormatError(path, f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc


def _real_grid(path, doc, key, rows, cols) -> np.ndarray:
    value = doc.get(key)
    if not isinstance(value, list) or len(value) != rows:
        raise FileFormatError(path, f"field {key!r}: expected a list of {rows} rows")
    out = np.zeros((rows, cols))
    for i, row in enumerate(value):
        if not isinstance(row, list) or len(row) != cols:
            raise FileFormatError(path, f"field {key!r}, row {i}: expected {cols} entries")
        for j, x in enumerate(row):
            if isinstance(x, bool) or not isinstance(x, (int, float)):
                raise FileFormatError(path, f"field {key!r}, row {i}, column {j}: {x!r} is not a number")
            out[i, j] = x
    return out


def _complex_matrix(path, doc, n: int) -> np.ndarray:
    re = _real_grid(path, doc, "re", n, n)
    im = _real_grid(path, doc, "im", n, n) if "im" in doc else np.zeros((n, n))
    return re + 1j * im


def load_matrix(path) -> HermitianMatrix:
    doc = _load_json(path)
    if not isinstance(doc, dict):
        raise FileFormatError(path, "top level must be an object with 'dim', 're' and 'im'")
    dim = doc.get("dim")
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 1:
        raise FileFormatError(path, f"field 'dim': expected a positive integer, got {dim!r}")
    try:
        return HermitianMatrix(_complex_matrix(path, doc, dim))
    except (NotHermitianError, ValueError) as exc:
        if isinstance(exc, FileFormatError):
            raise
        raise FileFormatError(path, str(exc)) from exc


def load_state(path) -> DensityMatrix:
    m = load_matrix(path)
    try:
        return DensityMatrix(m.data)
    except InvalidStateError as exc:
        raise FileFormatError(path, str(exc)) from exc


def matrix_document(m) -> dict:
    arr = np.asarray(m, dtype=complex)
    return {"dim": arr.shape[0], "re": arr.real.tolist(), "im": arr.imag.tolist()}


def save_matrix(path, m) -> None:
    Path(path).write_text(json.dumps(matrix_document(m), indent=1) + "\n")


def save_choi(path, choi: ChoiMatrix) -> None:
    doc = {"d_in": choi.d_in, "d_out": choi.d_out, "re": choi.mat.real.tolist(), "im": choi.mat.imag.tolist()}
    Path(path).write_text(json.dumps(doc, indent=1) + "\n")


def load_choi(path) -> ChoiMatrix:
    doc = _load_json(path)
    if not isinstance(doc, dict):
        raise FileFormatError(path, "top level must be an object")
    dims = []
    for key in ("d_in", "d_out"):
        v = doc.get(key)
        if isinstance(v, bool) or not isinstance(v, int) or v < 1:
            raise FileFormatError(path, f"field {key!r}: expected a positive integer, got {v!r}")
        dims.append(v)
    n = dims[0] * dims[1]
    try:
        return ChoiMatrix(_complex_matrix(path, doc, n), dims[0], dims[1])
    except ValueError as exc:
        if isinstance(exc, FileFormatError):
            raise
        raise FileFormatError(path, str(exc)) from exc


def load_encoding(path) -> Encoding:
    """``{"probs": [[p(u,0), p(u,1)], ...]}`` or a ``(|U|, |Y|, 2)`` nested list, plus optional labels."""
    doc = _load_json(path)
    if not isinstance(doc, dict) or "probs" not in doc:
        raise FileFormatError(path, "expected an object with field 'probs'")
    try:
        probs = np.array(doc["probs"], dtype=float)
    except (TypeError, ValueError) as exc:
        raise FileFormatError(path, "field 'probs': not a rectangular array of numbers") from exc
    try:
        return Encoding(probs, tuple(doc.get("labels_u") or ()), doc.get("labels_y"))
    except ValueError as exc:
        raise FileFormatError(path, f"field 'probs': {exc}") from exc


def encoding_document(enc: Encoding) -> dict:
    doc = {"probs": enc.probs.tolist(), "labels_u": list(enc.labels_u)}
    if enc.labels_y is not None:
        doc["labels_y"] = list(enc.labels_y)
    return doc


def load_inputs(named_paths) -> Tuple[dict, dict]:
    """Load states from ``{name: path}``; return the states and a digest table."""
    states, digests = {}, {}
    for name, path in named_paths.items():
        states[name] = load_state(path)
        digests[name] = {"path": str(path), "sha256": sha256_file(path)}
    return states, digests
