"""
Exact linear algebra over the rationals.

Matrices are tuples of row tuples of Fractions. Elimination is plain
Gauss-Jordan with exact pivots, so no tolerance is ever involved.
"""

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import structlog

logger = structlog.get_logger(__name__)

Vector = Tuple[Fraction, ...]
Matrix = Tuple[Vector, ...]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def to_matrix(rows: Sequence[Sequence[object]]) -> Matrix:
    return tuple(tuple(Fraction(x) for x in row) for row in rows)  # type: ignore[arg-type]


def identity(n: int) -> Matrix:
    return tuple(tuple(_ONE if i == j else _ZERO for j in range(n)) for i in range(n))


def from_columns(columns: Sequence[Sequence[Fraction]], n_rows: int) -> Matrix:
    """Assemble a matrix from column vectors (``n_rows`` fixes empty cases)."""
    return tuple(tuple(column[r] for column in columns) for r in range(n_rows))


def column(m: Matrix, j: int) -> Vector:
    return tuple(row[j] for row in m)


def transpose(m: Matrix, n_cols: Optional[int] = None) -> Matrix:
    width = len(m[0]) if m else (n_cols or 0)
    return tuple(tuple(row[j] for row in m) for j in range(width))


def matmul(a: Matrix, b: Matrix) -> Matrix:
    """a @ b for non-empty ``b``."""
    if not b:
        raise ValueError("Right factor has no rows")
    b_cols = len(b[0])
    if a and len(a[0]) != len(b):
        raise ValueError(f"Shape mismatch: {len(a)}x{len(a[0])} @ {len(b)}x{b_cols}")
    result: List[Vector] = []
    for row in a:
        nonzero = [(k, x) for k, x in enumerate(row) if x]
        result.append(
            tuple(sum((x * b[k][j] for k, x in nonzero), _ZERO) for j in range(b_cols))
        )
    return tuple(result)


def matvec(a: Matrix, v: Sequence[Fraction]) -> Vector:
    return tuple(sum((x * y for x, y in zip(row, v) if x), _ZERO) for row in a)


def rref(rows: Sequence[Sequence[Fraction]], n_cols: int) -> Tuple[List[List[Fraction]], List[int]]:
    """
    Reduced row-echelon form.

    Returns the nonzero reduced rows and their pivot columns.
    """
    work = [list(row) for row in rows]
    pivots: List[int] = []
    pivot_row = 0
    n_rows = len(work)
    for col in range(n_cols):
        if pivot_row >= n_rows:
            break
        chosen = next((r for r in range(pivot_row, n_rows) if work[r][col] != 0), None)
        if chosen is None:
            continue
        if chosen != pivot_row:
            work[pivot_row], work[chosen] = work[chosen], work[pivot_row]
        lead = work[pivot_row][col]
        if lead != 1:
            work[pivot_row] = [x / lead for x in work[pivot_row]]
        pivot = work[pivot_row]
        for r in range(n_rows):
            if r == pivot_row:
                continue
            factor = work[r][col]
            if factor == 0:
                continue
            target = work[r]
            for c in range(col, n_cols):
                if pivot[c]:
                    target[c] -= factor * pivot[c]
        pivots.append(col)
        pivot_row += 1
    return work[:pivot_row], pivots


def rank(rows: Sequence[Sequence[Fraction]], n_cols: int) -> int:
    return len(rref(rows, n_cols)[1])


def nullspace(rows: Sequence[Sequence[Fraction]], n_cols: int) -> List[Vector]:
    """Basis of {x : rows @ x = 0}, one vector per free column."""
    reduced, pivots = rref(rows, n_cols)
    pivot_set = set(pivots)
    free = [c for c in range(n_cols) if c not in pivot_set]
    basis: List[Vector] = []
    for f in free:
        vec = [_ZERO] * n_cols
        vec[f] = _ONE
        for row, p in zip(reduced, pivots):
            vec[p] = -row[f]
        basis.append(tuple(vec))
    logger.debug("Nullspace computed", columns=n_cols, rank=len(pivots), nullity=len(free))
    return basis


def row_space(vectors: Sequence[Sequence[Fraction]], n_cols: int) -> Tuple[List[Vector], List[int]]:
    """Canonical (reduced echelon) basis of the span of ``vectors``."""
    reduced, pivots = rref(vectors, n_cols)
    return [tuple(row) for row in reduced], pivots


def coordinates_in(
    basis: Sequence[Sequence[Fraction]], pivots: Sequence[int], v: Sequence[Fraction]
) -> Optional[Vector]:
    """
    Coordinates of ``v`` in a reduced echelon basis, or None if ``v`` is
    not in the span.
    """
    coords = tuple(v[p] for p in pivots)
    residual = list(v)
    for c, row in zip(coords, basis):
        if c:
            for j, x in enumerate(row):
                if x:
                    residual[j] -= c * x
    if any(residual):
        return None
    return coords


def solve(a: Matrix, b: Sequence[Fraction], n_cols: int) -> Tuple[Optional[Vector], int]:
    """
    Solve ``a @ x = b``.

    Returns a particular solution (free variables set to zero) or None when
    the system is inconsistent, together with the nullity of ``a``.
    """
    augmented = [list(row) + [b[i]] for i, row in enumerate(a)]
    reduced, pivots = rref(augmented, n_cols + 1)
    if n_cols in pivots:
        return None, n_cols - (len(pivots) - 1)
    solution = [_ZERO] * n_cols
    for row, p in zip(reduced, pivots):
        solution[p] = row[n_cols]
    return tuple(solution), n_cols - len(pivots)
