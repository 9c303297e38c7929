"""Fraction-free Gaussian elimination shared by determinant and solve.

Bareiss-style elimination with partial pivoting: each update step is

    a[i][j] <- (pivot * a[i][j] - a[i][k] * a[k][j]) / previous_pivot,

which keeps intermediate growth polynomial and makes the final pivot equal
to the determinant (up to the row-swap sign).  One kernel serves plain
determinants, Cramer numerators, and the linear solve, so they cannot
drift apart numerically.  All arithmetic happens at the precision active
when the caller invokes these functions.
"""

from . import _backend as mp
from .errors import SingularMatrixError


def _eliminate(rows):
    """In-place forward elimination; returns the sign of the row swaps.

    Rows may be longer than the square dimension (augmented columns ride
    along).  Raises SingularMatrixError on a zero pivot.
    """
    n = len(rows)
    sign = 1
    prev = mp.mpf(1)
    for k in range(n):
        pivot_row = max(range(k, n), key=lambda i: abs(rows[i][k]))
        if rows[pivot_row][k] == 0:
            raise SingularMatrixError(
                f"matrix numerically singular at elimination step {k}"
            )
        if pivot_row != k:
            rows[k], rows[pivot_row] = rows[pivot_row], rows[k]
            sign = -sign
        pivot = rows[k][k]
        for i in range(k + 1, n):
            ri, rk = rows[i], rows[k]
            lead = ri[k]
            for j in range(k, len(ri)):
                ri[j] = (pivot * ri[j] - lead * rk[j]) / prev
        prev = pivot
    return sign


def determinant(matrix):
    """Determinant of a square matrix of backend floats."""
    rows = [list(row) for row in matrix]
    if not rows:
        return mp.mpf(1)
    try:
        sign = _eliminate(rows)
    except SingularMatrixError:
        return mp.mpf(0)
    return sign * rows[-1][-1] if sign < 0 else rows[-1][-1]


def solve(matrix, rhs):
    """Solve matrix @ x = rhs; raises SingularMatrixError if singular."""
    n = len(matrix)
    rows = [list(row) + [rhs[i]] for i, row in enumerate(matrix)]
    _eliminate(rows)
    x = [mp.mpf(0)] * n
    for i in range(n - 1, -1, -1):
        acc = rows[i][n]
        for j in range(i + 1, n):
            acc = acc - rows[i][j] * x[j]
        x[i] = acc / rows[i][i]
    return x


def determinant_and_solve(matrix, rhs):
    """Both at once, sharing one elimination pass."""
    n = len(matrix)
    rows = [list(row) + [rhs[i]] for i, row in enumerate(matrix)]
    sign = _eliminate(rows)
    det = sign * rows[-1][n - 1]
    x = [mp.mpf(0)] * n
    for i in range(n - 1, -1, -1):
        acc = rows[i][n]
        for j in range(i + 1, n):
            acc = acc - rows[i][j] * x[j]
        x[i] = acc / rows[i][i]
    return det, x
