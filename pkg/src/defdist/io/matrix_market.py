from pathlib import Path
from typing import List, Tuple

import numpy as np
from numpy.typing import ArrayLike

from defdist.exceptions import ParseError, UnsupportedFormat
from defdist.linalg.matrix import ComplexMatrix, as_complex_matrix

BANNER = "%%MatrixMarket"
FIELDS = ("complex", "real", "integer")
VALUE_FORMAT = "%.17g"


def _parse_header(line: str) -> Tuple[str, str]:
    """Returns (format, field) from the banner line."""
    tokens = line.split()
    if len(tokens) != 5 or tokens[0].lower() != BANNER.lower():
        raise ParseError(f"expected '{BANNER} matrix <format> <field> <symmetry>'", 1)

    obj, fmt, field, symmetry = (t.lower() for t in tokens[1:])
    if obj != "matrix":
        raise UnsupportedFormat(f"Only 'matrix' objects are supported, got '{obj}'")
    if fmt not in ("coordinate", "array"):
        raise ParseError(f"unknown format '{fmt}'", 1)
    if field == "pattern":
        raise UnsupportedFormat("Pattern matrices carry no values")
    if field not in FIELDS:
        raise ParseError(f"unknown field '{field}'", 1)
    if symmetry != "general":
        raise UnsupportedFormat(f"Only general matrices are supported, got '{symmetry}'")

    return fmt, field


def _parse_value(tokens: List[str], field: str, lineno: int) -> complex:
    expected = 2 if field == "complex" else 1
    if len(tokens) != expected:
        raise ParseError(f"expected {expected} value(s) for a {field} entry, got {len(tokens)}", lineno)
    try:
        if field == "complex":
            return complex(float(tokens[0]), float(tokens[1]))
        if field == "integer":
            return complex(int(tokens[0]), 0.0)
        return complex(float(tokens[0]), 0.0)
    except ValueError:
        raise ParseError(f"cannot read '{' '.join(tokens)}' as a {field} value", lineno) from None


def _parse_ints(tokens: List[str], count: int, what: str, lineno: int) -> List[int]:
    if len(tokens) < count:
        raise ParseError(f"expected {count} integers for the {what}", lineno)
    try:
        return [int(t) for t in tokens[:count]]
    except ValueError:
        raise ParseError(f"non-integer {what} '{' '.join(tokens[:count])}'", lineno) from None


def read_matrix_market(path: str | Path) -> ComplexMatrix:
    """
    Read a dense complex matrix from a Matrix Market file.

    Handles `coordinate` (1-based indices, unlisted entries are zero) and
    `array` (column-major) formats with `complex`, `real` or `integer`
    fields and `general` symmetry. Real and integer values are promoted to
    complex with zero imaginary part.

    Raises:
        FileNotFoundError: If path does not exist
        ParseError: On malformed content, with the 1-based line number
        UnsupportedFormat: For pattern fields or non-general symmetry
    """
    with open(path, encoding="utf-8") as f:
        lines = f.read().splitlines()

    if not lines:
        raise ParseError("empty file", 1)

    fmt, field = _parse_header(lines[0])

    # (line number, tokens) of every data line, comments and blanks dropped
    data = [
        (i + 1, line.split())
        for i, line in enumerate(lines[1:], start=1)
        if line.strip() and not line.lstrip().startswith("%")
    ]
    if not data:
        raise ParseError("missing size line", len(lines))

    size_line, size_tokens = data[0]
    entries = data[1:]

    if fmt == "coordinate":
        rows, cols, nnz = _parse_ints(size_tokens, 3, "size line", size_line)
    else:
        rows, cols = _parse_ints(size_tokens, 2, "size line", size_line)
        nnz = rows * cols

    if rows < 1 or cols < 1 or nnz < 0:
        raise ParseError(f"invalid dimensions {rows} x {cols}", size_line)
    if len(entries) > nnz:
        raise ParseError(f"more than the {nnz} declared entries", entries[nnz][0])
    if len(entries) < nnz:
        last = entries[-1][0] if entries else size_line
        raise ParseError(f"expected {nnz} entries, found {len(entries)}", last)

    A = np.zeros((rows, cols), dtype=np.complex128)

    if fmt == "array":
        values = [_parse_value(tokens, field, lineno) for lineno, tokens in entries]
        A[:, :] = np.array(values, dtype=np.complex128).reshape((cols, rows)).T
    else:
        seen = set()
        for lineno, tokens in entries:
            i, j = _parse_ints(tokens, 2, "entry index", lineno)
            if not (1 <= i <= rows and 1 <= j <= cols):
                raise ParseError(f"index ({i}, {j}) outside {rows} x {cols}", lineno)
            if (i, j) in seen:
                raise ParseError(f"duplicate entry ({i}, {j})", lineno)
            seen.add((i, j))
            A[i - 1, j - 1] = _parse_value(tokens[2:], field, lineno)

    return as_complex_matrix(A, square=False)


def format_matrix_market(matrix: ArrayLike) -> str:
    """
    Render matrix as `coordinate complex general` text, listing nonzeros only.

    Entries go out column by column, each as `i j re im` with 17
    significant digits, so reading the text back reproduces every bit.
    """
    A = as_complex_matrix(matrix, square=False)
    rows, cols = A.shape

    # argwhere on the transpose yields (col, row) pairs in column-major order
    positions = np.argwhere(A.T != 0)

    lines = [
        f"{BANNER} matrix coordinate complex general",
        "% written by defdist",
        f"{rows} {cols} {len(positions)}",
    ]
    for j, i in positions:
        value = A[i, j]
        lines.append(f"{i + 1} {j + 1} {VALUE_FORMAT % value.real} {VALUE_FORMAT % value.imag}")

    return "\n".join(lines) + "\n"


def write_matrix_market(path: str | Path, matrix: ArrayLike) -> None:
    """Write matrix to path in the format produced by format_matrix_market."""
    text = format_matrix_market(matrix)
    with open(path, "w", encoding="utf-8") as f:
        f.write(text)
