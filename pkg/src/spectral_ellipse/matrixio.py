"""Matrix ingestion: Matrix Market (array/coordinate, real/complex, general)
and dense JSON ({"n": ..., "entries": [[re, im], ...]} row-major)."""

from __future__ import annotations

import json
import math
import os

import numpy as np

from .matrix import as_matrix


class ParseError(ValueError):
    """Input file is malformed for its format."""


class NonSquare(ValueError):
    """Input parsed cleanly but does not describe a square matrix."""


def _finite(x: float) -> float:
    if not math.isfinite(x):
        raise ParseError(f"non-finite value {x!r} in matrix data")
    return x


def parse_mtx(text: str) -> np.ndarray:
    lines = text.splitlines()
    if not lines or not lines[0].lower().startswith("%%matrixmarket"):
        raise ParseError("missing %%MatrixMarket header")
    header = lines[0].split()
    if len(header) != 5:
        raise ParseError(f"malformed header: {lines[0]!r}")
    _, obj, fmt, field, symmetry = (tok.lower() for tok in header)
    if obj != "matrix":
        raise ParseError(f"unsupported object {obj!r}")
    if fmt not in ("array", "coordinate"):
        raise ParseError(f"unsupported format {fmt!r}")
    if field not in ("real", "complex"):
        raise ParseError(f"unsupported field {field!r}")
    if symmetry != "general":
        raise ParseError(f"unsupported symmetry {symmetry!r}")

    tokens: list[str] = []
    for line in lines[1:]:
        line = line.strip()
        if not line or line.startswith("%"):
            continue
        tokens.extend(line.split())

    def take_int(pos: int) -> int:
        try:
            return int(tokens[pos])
        except (IndexError, ValueError) as exc:
            raise ParseError("bad size line") from exc

    def take_float(pos: int) -> float:
        try:
            return _finite(float(tokens[pos]))
        except (IndexError, ValueError) as exc:
            raise ParseError(f"bad numeric token at position {pos}") from exc

    width = 2 if field == "complex" else 1

    if fmt == "array":
        rows, cols = take_int(0), take_int(1)
        if rows < 1 or cols < 1:
            raise ParseError(f"bad dimensions {rows} x {cols}")
        expected = 2 + rows * cols * width
        if len(tokens) != expected:
            raise ParseError(f"expected {expected - 2} data tokens, got {len(tokens) - 2}")
        if rows != cols:
            raise NonSquare(f"matrix is {rows} x {cols}")
        a = np.zeros((rows, cols), dtype=complex)
        pos = 2
        for j in range(cols):  # array data runs down columns
            for i in range(rows):
                re = take_float(pos)
                im = take_float(pos + 1) if width == 2 else 0.0
                a[i, j] = complex(re, im)
                pos += width
        return as_matrix(a)

    rows, cols, nnz = take_int(0), take_int(1), take_int(2)
    if rows < 1 or cols < 1 or nnz < 0:
        raise ParseError(f"bad size line {rows} {cols} {nnz}")
    expected = 3 + nnz * (2 + width)
    if len(tokens) != expected:
        raise ParseError(f"expected {expected - 3} entry tokens, got {len(tokens) - 3}")
    if rows != cols:
        raise NonSquare(f"matrix is {rows} x {cols}")
    a = np.zeros((rows, cols), dtype=complex)
    pos = 3
    for _ in range(nnz):
        i, j = take_int(pos), take_int(pos + 1)
        if not (1 <= i <= rows and 1 <= j <= cols):
            raise ParseError(f"coordinate ({i}, {j}) out of range")
        re = take_float(pos + 2)
        im = take_float(pos + 3) if width == 2 else 0.0
        a[i - 1, j - 1] += complex(re, im)  # duplicates accumulate
        pos += 2 + width
    return as_matrix(a)


def parse_json_matrix(text: str) -> np.ndarray:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(obj, dict) or "n" not in obj or "entries" not in obj:
        raise ParseError('JSON matrix needs keys "n" and "entries"')
    n = obj["n"]
    entries = obj["entries"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ParseError(f'"n" must be a positive integer, got {n!r}')
    if not isinstance(entries, list) or len(entries) != n * n:
        raise ParseError(f'"entries" must hold {n * n} [re, im] pairs')
    a = np.zeros((n, n), dtype=complex)
    for idx, pair in enumerate(entries):
        if (
            not isinstance(pair, list)
            or len(pair) != 2
            or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in pair)
        ):
            raise ParseError(f"entry {idx} is not an [re, im] pair: {pair!r}")
        a[idx // n, idx % n] = complex(_finite(float(pair[0])), _finite(float(pair[1])))
    return as_matrix(a)


def load_matrix(path: str, fmt: str | None = None) -> np.ndarray:
    """Read a matrix file; format inferred from the extension unless given."""
    if fmt is None:
        ext = os.path.splitext(path)[1].lower()
        if ext == ".mtx":
            fmt = "mtx"
        elif ext == ".json":
            fmt = "json"
        else:
            raise ParseError(
                f"cannot infer format from {path!r}; pass --format mtx|json"
            )
    if fmt not in ("mtx", "json"):
        raise ParseError(f"unknown format {fmt!r}")
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path!r}: {exc}") from exc
    return parse_mtx(text) if fmt == "mtx" else parse_json_matrix(text)
