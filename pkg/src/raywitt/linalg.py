"""Exact linear algebra over Q and over prime fields.

Matrices are lists of rows.  Over Q, rows are scaled to integers (this
changes neither rank nor kernel) and reduced by fraction-free
elimination, so every result is exact regardless of entry size.  The
elimination inner loop lives in a kernel module with a compiled and a
pure-Python implementation; the compiled one is preferred, and
RAYWITT_PURE_PYTHON=1 forces the fallback.

Fields are denoted by "Q" or by ("Fp", p).
"""

from __future__ import annotations

import math
import os
from fractions import Fraction

from .errors import InternalInvariantError

if os.environ.get("RAYWITT_PURE_PYTHON") == "1":
    from . import _echelon_py as _kernel

    BACKEND = "pure"
else:
    try:
        from . import _echelon as _kernel  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        from . import _echelon_py as _kernel

        BACKEND = "pure"

QQ = "Q"


def mod_field(p: int) -> tuple[str, int]:
    return ("Fp", p)


def _scaled_int_rows(matrix):
    """Clear denominators row by row; kernel and rank are unchanged."""
    out = []
    for row in matrix:
        lcm = 1
        for v in row:
            if isinstance(v, Fraction):
                d = v.denominator
                lcm = lcm * d // math.gcd(lcm, d)
        if lcm == 1:
            out.append([int(v) for v in row])
        else:
            out.append([int(v * lcm) for v in row])
    return out


def echelon(matrix, field=QQ):
    """Return (rank, pivot_columns, echelon_rows) for the given field."""
    if not matrix or not matrix[0]:
        return 0, [], []
    if field == QQ:
        return _kernel.echelon_int(_scaled_int_rows(matrix))
    kind, p = field
    if kind != "Fp":
        raise ValueError(f"unknown field {field!r}")
    return _kernel.echelon_mod([list(r) for r in matrix], p)


def rank(matrix, field=QQ) -> int:
    return echelon(matrix, field)[0]


def pivot_columns(matrix, field=QQ) -> list[int]:
    return echelon(matrix, field)[1]


def nullspace(matrix, field=QQ):
    """Basis of the right kernel, one vector per free column.

    The basis vector for free column f has entry 1 at f and 0 at the
    other free columns.  An empty matrix is treated as the zero map
    from the span of its columns, so a 0-row matrix with n columns has
    an n-dimensional kernel.
    """
    nrows = len(matrix)
    ncols = len(matrix[0]) if nrows else 0
    if ncols == 0:
        return []
    if nrows == 0:
        return _standard_basis(ncols, field)
    r, pivots, ech = echelon(matrix, field)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for f in free:
        vec = _back_substitute(ech, pivots, f, ncols, field)
        basis.append(vec)
    return basis


def _standard_basis(ncols, field):
    one = Fraction(1) if field == QQ else 1
    zero = Fraction(0) if field == QQ else 0
    return [[one if i == j else zero for i in range(ncols)] for j in range(ncols)]


def _back_substitute(ech, pivots, free_col, ncols, field):
    if field == QQ:
        x = [Fraction(0)] * ncols
        x[free_col] = Fraction(1)
        for i in range(len(pivots) - 1, -1, -1):
            pc = pivots[i]
            if pc >= free_col:
                continue
            row = ech[i]
            s = sum((row[j] * x[j] for j in range(pc + 1, ncols) if x[j]), Fraction(0))
            x[pc] = Fraction(-s, row[pc])
        return x
    _, p = field
    x = [0] * ncols
    x[free_col] = 1
    for i in range(len(pivots) - 1, -1, -1):
        pc = pivots[i]
        if pc >= free_col:
            continue
        row = ech[i]
        s = sum(row[j] * x[j] for j in range(pc + 1, ncols) if x[j]) % p
        # pivot entries are normalized to 1 by the mod-p kernel
        x[pc] = (-s) % p
    return x


def columns_to_rows(columns):
    """Transpose a list of column vectors into a row-major matrix."""
    if not columns:
        return []
    n = len(columns[0])
    return [[col[i] for col in columns] for i in range(n)]


def independent_mod_span(span_columns, candidate_columns, field=QQ):
    """Indices of candidates that are independent modulo the span.

    Runs one elimination on [span | candidates]; the pivot columns that
    land in the candidate block are returned (greedy from the left).
    """
    if not candidate_columns:
        return []
    mat = columns_to_rows(list(span_columns) + list(candidate_columns))
    _, pivots, _ = echelon(mat, field)
    k = len(span_columns)
    return [c - k for c in pivots if c >= k]


def solve_columns(columns, target, field=QQ):
    """Coefficients expressing target in the span of columns, or None."""
    ncols = len(columns)
    if all(_is_zero(v, field) for v in target):
        return _zeros(ncols, field)
    if ncols == 0:
        return None
    mat = columns_to_rows(list(columns) + [list(target)])
    r, pivots, ech = echelon(mat, field)
    if ncols in pivots:
        return None
    x = _zeros(ncols, field)
    if field == QQ:
        for i in range(len(pivots) - 1, -1, -1):
            pc = pivots[i]
            row = ech[i]
            s = sum((row[j] * x[j] for j in range(pc + 1, ncols) if x[j]), Fraction(0))
            x[pc] = Fraction(row[ncols] - s, row[pc])
    else:
        _, p = field
        for i in range(len(pivots) - 1, -1, -1):
            pc = pivots[i]
            row = ech[i]
            s = sum(row[j] * x[j] for j in range(pc + 1, ncols) if x[j]) % p
            x[pc] = (row[ncols] - s) % p
    residual = _matvec(columns_to_rows(columns), x, field)
    for got, want in zip(residual, target):
        if not _eq(got, want, field):
            raise InternalInvariantError("solve_columns produced a non-solution")
    return x


def _zeros(n, field):
    return [Fraction(0)] * n if field == QQ else [0] * n


def _is_zero(v, field):
    return v == 0 if field == QQ else v % field[1] == 0


def _eq(a, b, field):
    if field == QQ:
        return a == b
    p = field[1]
    return (a - b) % p == 0


def _matvec(matrix, vec, field):
    if field == QQ:
        return [sum((row[j] * vec[j] for j in range(len(vec)) if vec[j]), Fraction(0)) for row in matrix]
    p = field[1]
    return [sum(row[j] * vec[j] for j in range(len(vec))) % p for row in matrix]


def matvec(matrix, vec, field=QQ):
    return _matvec(matrix, vec, field)


def matmul(a, b, field=QQ):
    """Exact matrix product; a is m x k, b is k x n."""
    if not a:
        return []
    k = len(a[0])
    n = len(b[0]) if b else 0
    if field == QQ:
        zero = Fraction(0)
        return [
            [sum((row[t] * b[t][j] for t in range(k) if row[t]), zero) for j in range(n)]
            for row in a
        ]
    p = field[1]
    return [
        [sum(row[t] * b[t][j] for t in range(k)) % p for j in range(n)]
        for row in a
    ]
