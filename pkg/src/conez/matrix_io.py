"""Matrix and vector files.

CSV: one row per line, comma-separated, written with 17 significant digits.
JSON: ``{"n": n, "rows": [[...], ...]}`` for matrices and
``{"n": n, "values": [...]}`` for vectors. The format follows the file
extension (``.json`` or anything else for CSV).
"""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path

import numpy as np

from .errors import DimensionMismatch
from .linalg_core import as_matrix, as_vector


class MatrixFileError(ValueError):
    """Malformed or unreadable matrix/vector file."""


def _fmt(v: float) -> str:
    return format(float(v), ".17g")


def _is_json(path) -> bool:
    return Path(path).suffix.lower() == ".json"


def _read_csv_rows(path) -> list[list[float]]:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise MatrixFileError(f"cannot read {path}: {exc}") from exc
    rows = []
    for line in csv.reader(io.StringIO(text)):
        cells = [c.strip() for c in line]
        if not cells or all(c == "" for c in cells):
            continue
        try:
            rows.append([float(c) for c in cells])
        except ValueError as exc:
            raise MatrixFileError(f"{path}: {exc}") from exc
    return rows


def _read_json(path) -> dict:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise MatrixFileError(f"cannot read {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise MatrixFileError(f"{path}: expected a JSON object")
    return data


def read_matrix(path) -> np.ndarray:
    if _is_json(path):
        data = _read_json(path)
        rows, n = data.get("rows"), data.get("n")
        if not isinstance(rows, list) or not isinstance(n, int):
            raise MatrixFileError(f"{path}: need integer 'n' and list 'rows'")
        if len(rows) != n or any(not isinstance(r, list) or len(r) != n for r in rows):
            raise MatrixFileError(f"{path}: rows do not form an {n}x{n} matrix")
    else:
        rows = _read_csv_rows(path)
        if any(len(r) != len(rows) for r in rows):
            raise MatrixFileError(f"{path}: matrix is not square")
    try:
        return as_matrix(rows)
    except (DimensionMismatch, ValueError, TypeError) as exc:
        raise MatrixFileError(f"{path}: {exc}") from exc


def read_vector(path) -> np.ndarray:
    if _is_json(path):
        data = _read_json(path)
        values = data.get("values")
        if not isinstance(values, list) or data.get("n", len(values)) != len(values):
            raise MatrixFileError(f"{path}: need list 'values' of length 'n'")
    else:
        values = [v for row in _read_csv_rows(path) for v in row]
    try:
        return as_vector(values)
    except (DimensionMismatch, ValueError, TypeError) as exc:
        raise MatrixFileError(f"{path}: {exc}") from exc


def write_matrix(path, M) -> None:
    M = np.asarray(M, dtype=np.float64)
    if _is_json(path):
        Path(path).write_text(json.dumps({"n": M.shape[0], "rows": M.tolist()}) + "\n")
    else:
        Path(path).write_text("".join(",".join(_fmt(v) for v in row) + "\n" for row in M))


def write_vector(path, x) -> None:
    x = np.asarray(x, dtype=np.float64).reshape(-1)
    if _is_json(path):
        Path(path).write_text(json.dumps({"n": x.size, "values": x.tolist()}) + "\n")
    else:
        Path(path).write_text(",".join(_fmt(v) for v in x) + "\n")
