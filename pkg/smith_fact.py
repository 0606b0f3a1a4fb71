"""
Smith normal form over the base domain R, right-associate testing through
Zelisko cosets, and completion of a unimodular row to an invertible matrix.
"""

import logging
from dataclasses import dataclass
from itertools import combinations
from typing import List, Sequence, Tuple

from sympy import Matrix

import matrix_ops
from matrix_ops import Matrix as Mat
from ring_core import DomainElement, RingCtx
from utils import DimensionMismatch, InvariantBroken, NotAUnit, PreconditionViolated, SingularInput
from zelisko import domain_membership

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SmithResult:
    """P*A*Q = diag(phi) with P, Q invertible over R."""

    P: Mat
    Q: Mat
    phi: Tuple[DomainElement, ...]


# --- elementary operations, applied in place to lists of lists ---
def _swap_rows(m: List[list], i: int, j: int) -> None:
    m[i], m[j] = m[j], m[i]


def _swap_cols(m: List[list], i: int, j: int) -> None:
    for row in m:
        row[i], row[j] = row[j], row[i]


def _combine_rows(ctx: RingCtx, m: List[list], t: int, i: int, coeffs) -> None:
    # (row_t, row_i) <- (u*row_t + v*row_i, s*row_t + w*row_i)
    u, v, s, w = coeffs
    rt, ri = m[t], m[i]
    m[t] = [ctx.add(ctx.mul(u, x), ctx.mul(v, y)) for x, y in zip(rt, ri)]
    m[i] = [ctx.add(ctx.mul(s, x), ctx.mul(w, y)) for x, y in zip(rt, ri)]


def _combine_cols(ctx: RingCtx, m: List[list], t: int, j: int, coeffs) -> None:
    u, v, s, w = coeffs
    for row in m:
        x, y = row[t], row[j]
        row[t] = ctx.add(ctx.mul(u, x), ctx.mul(v, y))
        row[j] = ctx.add(ctx.mul(s, x), ctx.mul(w, y))


def _bezout_block(ctx: RingCtx, a: DomainElement, b: DomainElement):
    """[[u, v], [-b/g, a/g]] with determinant 1, sending (a, b) to (g, 0)."""
    if ctx.divides(a, b):
        return ctx.one, ctx.zero, ctx.neg(ctx.exact_div(b, a)), ctx.one
    g, u, v = ctx.egcd(a, b)
    return u, v, ctx.neg(ctx.exact_div(b, g)), ctx.exact_div(a, g)


def _find_pivot(ctx: RingCtx, m: List[list], t: int):
    best = None
    n = len(m)
    for i in range(t, n):
        for j in range(t, n):
            if not ctx.is_zero(m[i][j]) and (best is None or ctx.norm(m[i][j]) < ctx.norm(m[best[0]][best[1]])):
                best = (i, j)
    return best


def smith(ctx: RingCtx, A: Sequence[Sequence[DomainElement]]) -> SmithResult:
    A = matrix_ops.as_matrix(A)
    n = len(A)
    if n < 2:
        raise DimensionMismatch(f"smith needs a square matrix of size >= 2, got {n}")
    m = [list(row) for row in A]
    P = [list(row) for row in matrix_ops.identity(ctx, n)]
    Q = [list(row) for row in matrix_ops.identity(ctx, n)]

    for t in range(n):
        pivot = _find_pivot(ctx, m, t)
        if pivot is None:
            break
        i, j = pivot
        _swap_rows(m, t, i)
        _swap_rows(P, t, i)
        _swap_cols(m, t, j)
        _swap_cols(Q, t, j)
        while True:
            for i in range(t + 1, n):
                if not ctx.is_zero(m[i][t]):
                    block = _bezout_block(ctx, m[t][t], m[i][t])
                    _combine_rows(ctx, m, t, i, block)
                    _combine_rows(ctx, P, t, i, block)
            for j in range(t + 1, n):
                if not ctx.is_zero(m[t][j]):
                    block = _bezout_block(ctx, m[t][t], m[t][j])
                    _combine_cols(ctx, m, t, j, block)
                    _combine_cols(ctx, Q, t, j, block)
            if any(not ctx.is_zero(m[i][t]) for i in range(t + 1, n)):
                continue
            # pivot must divide the rest of the block
            offender = next(((i, j) for i in range(t + 1, n) for j in range(t + 1, n)
                             if not ctx.divides(m[t][t], m[i][j])), None)
            if offender is None:
                break
            one, zero = ctx.one, ctx.zero
            add_row = (one, one, zero, one)
            _combine_rows(ctx, m, t, offender[0], add_row)
            _combine_rows(ctx, P, t, offender[0], add_row)

    for t in range(n):
        _, unit = ctx.canonical(m[t][t])
        inv = ctx.unit_inverse(unit)
        m[t] = [ctx.mul(inv, x) for x in m[t]]
        P[t] = [ctx.mul(inv, x) for x in P[t]]

    phi = tuple(m[t][t] for t in range(n))
    result = SmithResult(P=matrix_ops.as_matrix(P), Q=matrix_ops.as_matrix(Q), phi=phi)
    check = matrix_ops.mat_mul(ctx, matrix_ops.mat_mul(ctx, result.P, A), result.Q)
    if check != matrix_ops.diag(ctx, phi):
        raise InvariantBroken(f"P*A*Q is not diagonal for {A}")
    logger.debug(f"smith form of {A}: {phi}")
    return result


def invariant_factors_by_minors(ctx: RingCtx, A: Sequence[Sequence[DomainElement]]) -> Tuple[DomainElement, ...]:
    """phi_i = d_i / d_(i-1), d_i the gcd of all i x i minors."""
    A = matrix_ops.as_matrix(A)
    n = len(A)
    factors = []
    prev = ctx.one
    for k in range(1, n + 1):
        minors = []
        for rows in combinations(range(n), k):
            for cols in combinations(range(n), k):
                sub = tuple(tuple(A[r][c] for c in cols) for r in rows)
                minors.append(matrix_ops.berkowitz_det(ctx, sub))
        d = ctx.gcd(*minors)
        if ctx.is_zero(d):
            factors.extend([ctx.zero] * (n - k + 1))
            break
        factors.append(ctx.canonical(ctx.exact_div(d, prev))[0])
        prev = d
    return tuple(factors)


def domain_inverse(ctx: RingCtx, M: Sequence[Sequence[DomainElement]]) -> Mat:
    M = matrix_ops.as_matrix(M)
    d = matrix_ops.berkowitz_det(ctx, M)
    if not ctx.is_unit(d):
        raise NotAUnit(f"determinant {d} is not a unit, matrix is not invertible over R")
    return matrix_ops.scale(ctx, ctx.unit_inverse(d), matrix_ops.adjugate(ctx, M))


def _nonsingular_pair(ctx: RingCtx, A, B) -> Tuple[Mat, Mat]:
    A, B = matrix_ops.as_matrix(A), matrix_ops.as_matrix(B)
    if len(A) != len(B):
        raise DimensionMismatch(f"matrices of size {len(A)} and {len(B)}")
    for name, M in (("A", A), ("B", B)):
        if ctx.is_zero(matrix_ops.berkowitz_det(ctx, M)):
            raise SingularInput(f"{name} is singular")
    return A, B


def right_associate(ctx: RingCtx, A, B) -> bool:
    """Is A = B*U for some invertible U over R?

    Equal Smith forms are required; then A and B are right associates exactly
    when P_B * P_A^-1 lies in the Zelisko group of their common diagonal.
    """
    A, B = _nonsingular_pair(ctx, A, B)
    sa, sb = smith(ctx, A), smith(ctx, B)
    if sa.phi != sb.phi:
        logger.debug(f"smith forms differ: {sa.phi} vs {sb.phi}")
        return False
    H = matrix_ops.mat_mul(ctx, sb.P, domain_inverse(ctx, sa.P))
    return domain_membership(ctx, H, sa.phi)


def right_associate_oracle(ctx: RingCtx, A, B) -> bool:
    """Direct test: U = B^-1 * A must have entries in R and a unit determinant."""
    A, B = _nonsingular_pair(ctx, A, B)
    if ctx.p is None:
        U = Matrix(B).inv() * Matrix(A)
        return all(x.is_integer for x in U) and U.det() in (1, -1)
    d = matrix_ops.berkowitz_det(ctx, B)
    scaled = matrix_ops.mat_mul(ctx, matrix_ops.adjugate(ctx, B), A)
    if not all(ctx.divides(d, x) for row in scaled for x in row):
        return False
    U = tuple(tuple(ctx.exact_div(x, d) for x in row) for row in scaled)
    return ctx.is_unit(matrix_ops.berkowitz_det(ctx, U))


def _bezout_weights(ctx: RingCtx, values: Sequence[DomainElement]) -> Tuple[DomainElement, List[DomainElement]]:
    """(g, w) with g = gcd(values) = sum w_i * values_i."""
    g, weights = ctx.zero, []
    for x in values:
        g, u, v = ctx.egcd(g, x)
        weights = [ctx.mul(w, u) for w in weights] + [v]
    return g, weights


def complete_row(ctx: RingCtx, a: Sequence[DomainElement]) -> Mat:
    """An invertible matrix with last row a, first row (u_n, 0, ..., 0, u_1),
    identity rows in between bordered by u_i, and determinant exactly 1.
    """
    a = [ctx.element(x) for x in a]
    n = len(a)
    if n < 3:
        raise PreconditionViolated(f"row completion needs at least three entries, got {n}")
    if ctx.is_zero(a[0]):
        raise PreconditionViolated("the first entry must be nonzero")
    if ctx.gcd(*a) != ctx.one:
        raise PreconditionViolated(f"entries are not coprime: gcd = {ctx.gcd(*a)}")

    a1, an, middle = a[0], a[-1], a[1:-1]
    b, weights = _bezout_weights(ctx, middle)
    r = ctx.stable_lift(an, b, a1)
    rs = [ctx.mul(r, w) for w in weights]
    d = an
    for r_i, a_i in zip(rs, middle):
        d = ctx.add(d, ctx.mul(r_i, a_i))
    _, u, v = ctx.egcd(d, a1)

    zero, one = ctx.zero, ctx.one
    rows = [[u] + [zero] * (n - 2) + [ctx.neg(v)]]
    for k, r_i in enumerate(rs):
        rows.append([one if c == k + 1 else zero for c in range(n - 1)] + [ctx.neg(r_i)])
    rows.append(list(a))
    M = matrix_ops.as_matrix(rows)

    if matrix_ops.berkowitz_det(ctx, M) != one:
        raise InvariantBroken(f"completed matrix for {a} does not have determinant 1")
    return M
