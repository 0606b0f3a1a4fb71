"""
Dense square-matrix helpers over any commutative ring object exposing
``add``, ``sub``, ``mul``, ``neg``, ``zero`` and ``one``.

Both ``RingCtx`` (matrices over R) and ``Modulus`` (matrices over R_m)
satisfy that protocol. Matrices are tuples of row tuples.
"""

import logging
from itertools import permutations
from typing import Any, List, Sequence, Tuple

from utils import DimensionMismatch

logger = logging.getLogger(__name__)

Matrix = Tuple[Tuple[Any, ...], ...]


def as_matrix(rows: Sequence[Sequence[Any]]) -> Matrix:
    matrix = tuple(tuple(row) for row in rows)
    if not matrix or any(len(row) != len(matrix) for row in matrix):
        raise DimensionMismatch(f"expected a square matrix, got row lengths {[len(r) for r in matrix]}")
    return matrix


def identity(ring, n: int) -> Matrix:
    return tuple(tuple(ring.one if i == j else ring.zero for j in range(n)) for i in range(n))


def diag(ring, values: Sequence[Any]) -> Matrix:
    n = len(values)
    return tuple(tuple(values[i] if i == j else ring.zero for j in range(n)) for i in range(n))


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a))


def mat_mul(ring, a: Matrix, b: Matrix) -> Matrix:
    if len(a[0]) != len(b):
        raise DimensionMismatch(f"cannot multiply {len(a)}x{len(a[0])} by {len(b)}x{len(b[0])}")
    result = []
    for row in a:
        out_row = []
        for col in zip(*b):
            acc = ring.zero
            for x, y in zip(row, col):
                acc = ring.add(acc, ring.mul(x, y))
            out_row.append(acc)
        result.append(tuple(out_row))
    return tuple(result)


def minor(a: Matrix, i: int, j: int) -> Matrix:
    """Delete row i and column j."""
    return tuple(row[:j] + row[j + 1:] for k, row in enumerate(a) if k != i)


def _toeplitz_apply(ring, column: List[Any], vec: List[Any]) -> List[Any]:
    # lower-triangular Toeplitz matrix with first column ``column`` times ``vec``
    out = []
    for i in range(len(column)):
        acc = ring.zero
        for j in range(min(i + 1, len(vec))):
            acc = ring.add(acc, ring.mul(column[i - j], vec[j]))
        out.append(acc)
    return out


def berkowitz_charpoly(ring, a: Matrix) -> List[Any]:
    """Coefficients of det(t*I - a), leading coefficient first. Division free."""
    n = len(a)
    if n == 0:
        return [ring.one]
    # start from the trailing 1x1 block and grow towards the top-left corner
    vec = [ring.one, ring.neg(a[n - 1][n - 1])]
    for k in range(n - 2, -1, -1):
        top = a[k][k]
        r_row = a[k][k + 1:]
        c_col = [a[i][k] for i in range(k + 1, n)]
        s_blk = [row[k + 1:] for row in a[k + 1:]]
        column = [ring.one, ring.neg(top)]
        power = c_col
        for _ in range(n - k - 1):
            dot = ring.zero
            for x, y in zip(r_row, power):
                dot = ring.add(dot, ring.mul(x, y))
            column.append(ring.neg(dot))
            power = [_dot(ring, row, power) for row in s_blk]
        vec = _toeplitz_apply(ring, column, vec)
    return vec


def _dot(ring, row: Sequence[Any], vec: Sequence[Any]) -> Any:
    acc = ring.zero
    for x, y in zip(row, vec):
        acc = ring.add(acc, ring.mul(x, y))
    return acc


def berkowitz_det(ring, a: Matrix) -> Any:
    n = len(a)
    constant = berkowitz_charpoly(ring, a)[-1]
    return constant if n % 2 == 0 else ring.neg(constant)


def cofactor_det(ring, a: Matrix) -> Any:
    """Leibniz expansion; only meant as an oracle for small n."""
    n = len(a)
    total = ring.zero
    for perm in permutations(range(n)):
        term = ring.one
        for i, j in enumerate(perm):
            term = ring.mul(term, a[i][j])
        inversions = sum(1 for x in range(n) for y in range(x + 1, n) if perm[x] > perm[y])
        total = ring.sub(total, term) if inversions % 2 else ring.add(total, term)
    return total


def adjugate(ring, a: Matrix) -> Matrix:
    """Transpose of the cofactor matrix, via division-free minors."""
    n = len(a)
    if n == 1:
        return ((ring.one,),)
    cof = []
    for i in range(n):
        row = []
        for j in range(n):
            d = berkowitz_det(ring, minor(a, i, j))
            row.append(d if (i + j) % 2 == 0 else ring.neg(d))
        cof.append(tuple(row))
    return transpose(tuple(cof))


def scale(ring, c: Any, a: Matrix) -> Matrix:
    return tuple(tuple(ring.mul(c, x) for x in row) for row in a)
