"""
Matrices over R_m and the Zelisko group of Phi = diag(phi_1, ..., phi_n):

    G_Phi = { H in GL_n(R_m) : H*Phi = Phi*S for some S in GL_n(R_m) }.

``membership`` decides G_Phi by divisibility of the entries below the
diagonal by psi_ij; ``brute_membership`` searches for S directly and is the
oracle the fast test is validated against.
"""

import logging
import random
from dataclasses import dataclass
from itertools import product
from typing import Sequence, Tuple

import matrix_ops
from linsolve import ChainSystem, chain_system, enumerate_solutions, solve
from residue import Modulus, Residue, divides, invert, is_unit, mul
from ring_core import DomainElement, RingCtx
from utils import (
    BRUTE_CAP, SAMPLE_RETRIES,
    DimensionMismatch, InvalidChain, InvariantBroken, ModulusMismatch,
    NotAMember, NotAUnit, SamplingExhausted, TooLarge, Unsolvable,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ResidueMatrix:
    rows: Tuple[Tuple[Residue, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.rows)
        n = len(rows)
        if n < 2 or any(len(r) != n for r in rows):
            raise DimensionMismatch(f"expected a square matrix of size >= 2, got row lengths {[len(r) for r in rows]}")
        mod = rows[0][0].mod
        for r in rows:
            for x in r:
                if x.mod != mod:
                    raise ModulusMismatch(f"matrix mixes moduli {mod.m} and {x.mod.m}")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_reps(cls, mod: Modulus, reps: Sequence[Sequence]) -> "ResidueMatrix":
        return cls(tuple(tuple(mod(v) for v in row) for row in reps))

    @property
    def n(self) -> int:
        return len(self.rows)

    @property
    def mod(self) -> Modulus:
        return self.rows[0][0].mod

    def __getitem__(self, ij: Tuple[int, int]) -> Residue:
        i, j = ij
        return self.rows[i][j]

    def reps(self) -> Tuple[Tuple[DomainElement, ...], ...]:
        return tuple(tuple(x.rep for x in row) for row in self.rows)

    def __matmul__(self, other: "ResidueMatrix") -> "ResidueMatrix":
        return self.mul(other)

    def mul(self, other: "ResidueMatrix") -> "ResidueMatrix":
        if self.mod != other.mod:
            raise ModulusMismatch(f"matrices modulo {self.mod.m} and {other.mod.m}")
        return ResidueMatrix(matrix_ops.mat_mul(self.mod, self.rows, other.rows))

    def inverse(self) -> "ResidueMatrix":
        """adj(M) * det(M)^-1; NotAUnit when det(M) is not a unit."""
        d_inv = invert(det(self))
        adj = matrix_ops.adjugate(self.mod, self.rows)
        return ResidueMatrix(matrix_ops.scale(self.mod, d_inv, adj))

    @classmethod
    def identity(cls, mod: Modulus, n: int) -> "ResidueMatrix":
        return cls(matrix_ops.identity(mod, n))


@dataclass(frozen=True)
class DiagPhi:
    """Phi = diag(phi_1, ..., phi_n) together with its psi table."""

    cs: ChainSystem

    @property
    def n(self) -> int:
        return self.cs.n

    @property
    def mod(self) -> Modulus:
        return self.cs.mod

    @property
    def phi(self) -> Tuple[Residue, ...]:
        return self.cs.phi

    def matrix(self) -> ResidueMatrix:
        return ResidueMatrix(matrix_ops.diag(self.mod, self.phi))


def diag_phi(mod: Modulus, values: Sequence) -> DiagPhi:
    return DiagPhi(chain_system([mod(v) for v in values]))


def rescale(Phi: DiagPhi, units: Sequence[Residue]) -> DiagPhi:
    """Phi * diag(units); every unit must be invertible in R_m."""
    if len(units) != Phi.n:
        raise DimensionMismatch(f"{len(units)} units for a diagonal of size {Phi.n}")
    for e in units:
        if not is_unit(e):
            raise NotAUnit(f"{e.rep} is not a unit modulo {e.mod.m}")
    return DiagPhi(chain_system([mul(f, e) for f, e in zip(Phi.phi, units)]))


def _check_shapes(H: ResidueMatrix, Phi: DiagPhi) -> None:
    if H.n != Phi.n:
        raise DimensionMismatch(f"matrix of size {H.n} against a diagonal of size {Phi.n}")
    if H.mod != Phi.mod:
        raise ModulusMismatch(f"matrix modulo {H.mod.m} against a diagonal modulo {Phi.mod.m}")


# ==============================================================
# ===== Determinants ===========================================
# ==============================================================
def det(M: ResidueMatrix) -> Residue:
    return matrix_ops.berkowitz_det(M.mod, M.rows)


def is_invertible(M: ResidueMatrix) -> bool:
    return is_unit(det(M))


# ==============================================================
# ===== Membership =============================================
# ==============================================================
def membership(H: ResidueMatrix, Phi: DiagPhi) -> bool:
    _check_shapes(H, Phi)
    if not is_invertible(H):
        return False
    for i in range(H.n):
        for j in range(i):
            if not divides(Phi.cs.psi(i, j), H[i, j]):
                logger.debug(f"psi[{i}][{j}] = {Phi.cs.psi(i, j).rep} does not divide {H[i, j].rep}")
                return False
    return True


def witness(H: ResidueMatrix, Phi: DiagPhi) -> ResidueMatrix:
    """An invertible S with H*Phi = Phi*S.

    Below the diagonal s_ij solves psi_ij * s_ij = p_ij (zero when p_ij is), above it
    s_ij = psi_ji * p_ij, and s_ii = p_ii. det(S) = det(H).
    """
    if not membership(H, Phi):
        raise NotAMember(f"matrix {list(H.reps())} is not in the Zelisko group of {[f.rep for f in Phi.phi]}")
    cs, n = Phi.cs, H.n
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            if i > j:
                row.append(H[i, j] if H[i, j].is_zero() else solve(cs.psi(i, j), H[i, j]).gen)
            elif i < j:
                row.append(mul(cs.psi(j, i), H[i, j]))
            else:
                row.append(H[i, j])
        rows.append(tuple(row))
    S = ResidueMatrix(tuple(rows))

    phi_m = Phi.matrix()
    if H @ phi_m != phi_m @ S:
        raise InvariantBroken(f"witness for {list(H.reps())} fails H*Phi = Phi*S")
    if not is_invertible(S):
        raise InvariantBroken(f"witness for {list(H.reps())} is not invertible")
    return S


def sample(Phi: DiagPhi, seed: int, retries: int = None) -> ResidueMatrix:
    """A random member of G_Phi: free h_ij with psi_ij*h_ij below the diagonal."""
    retries = retries or SAMPLE_RETRIES
    rng = random.Random(seed)
    mod, cs, n = Phi.mod, Phi.cs, Phi.n
    size = mod.size
    for attempt in range(retries):
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                h = mod.element_at(rng.randrange(size))
                row.append(mul(cs.psi(i, j), h) if i > j else h)
            rows.append(tuple(row))
        H = ResidueMatrix(tuple(rows))
        if is_invertible(H):
            if attempt > 100:
                logger.info(f"sampling for {[f.rep for f in Phi.phi]} needed {attempt + 1} draws")
            return H
    logger.warning(f"sampling for {[f.rep for f in Phi.phi]} exhausted {retries} draws")
    raise SamplingExhausted(f"no invertible sample in {retries} draws (seed {seed})")


def _row_is_unimodular(row: Sequence[Residue]) -> bool:
    ctx = row[0].ctx
    return ctx.gcd(row[0].mod.m, *(x.rep for x in row)) == ctx.one


def brute_membership(H: ResidueMatrix, Phi: DiagPhi, cap: int = None) -> bool:
    """Search the solution cosets of phi_i*s_ij = phi_j*p_ij for an invertible S."""
    _check_shapes(H, Phi)
    cap = cap or BRUTE_CAP
    if not is_invertible(H):
        return False
    n, phi = H.n, Phi.phi
    cells = []
    for i in range(n):
        row = []
        for j in range(n):
            try:
                s = solve(phi[i], mul(phi[j], H[i, j]))
            except Unsolvable:
                logger.debug(f"entry ({i}, {j}): {phi[i].rep}*s = {phi[j].rep}*{H[i, j].rep} has no solution")
                return False
            row.append(enumerate_solutions(s))
        cells.append(row)

    total = 1
    for row in cells:
        for c in row:
            total *= len(c)
    if total > cap:
        raise TooLarge(f"brute-force search for {list(H.reps())}", total, cap)

    # an invertible matrix has unimodular rows
    row_choices = []
    for row in cells:
        choices = [r for r in product(*row) if _row_is_unimodular(r)]
        if not choices:
            return False
        row_choices.append(choices)
    for rows in product(*row_choices):
        if is_unit(matrix_ops.berkowitz_det(Phi.mod, rows)):
            return True
    return False


def psi_det_identity(cs: ChainSystem, h: ResidueMatrix) -> bool:
    """det of [psi_ij*h_ij below, h_ij above] equals det of [h_ij below, psi_ji*h_ij above]."""
    if h.n != cs.n:
        raise DimensionMismatch(f"matrix of size {h.n} against a chain of length {cs.n}")
    if h.mod != cs.mod:
        raise ModulusMismatch(f"matrix modulo {h.mod.m} against a chain modulo {cs.mod.m}")
    n = h.n
    left = tuple(tuple(mul(cs.psi(i, j), h[i, j]) if i > j else h[i, j] for j in range(n)) for i in range(n))
    right = tuple(tuple(mul(cs.psi(j, i), h[i, j]) if i < j else h[i, j] for j in range(n)) for i in range(n))
    return det(ResidueMatrix(left)) == det(ResidueMatrix(right))


# ==============================================================
# ===== Membership over the domain =============================
# ==============================================================
def domain_membership(ctx: RingCtx, H: Sequence[Sequence[DomainElement]], phi: Sequence[DomainElement]) -> bool:
    """det(H) a unit of R and phi_i/phi_j dividing h_ij for i > j."""
    H = matrix_ops.as_matrix(H)
    if len(phi) != len(H):
        raise DimensionMismatch(f"matrix of size {len(H)} against a chain of length {len(phi)}")
    for k, f in enumerate(phi):
        if ctx.is_zero(f):
            raise InvalidChain(f"chain entry {k + 1} is zero")
        if k and not ctx.divides(phi[k - 1], f):
            raise InvalidChain(f"{phi[k - 1]} does not divide {f}")
    if not ctx.is_unit(matrix_ops.berkowitz_det(ctx, H)):
        return False
    for i in range(len(H)):
        for j in range(i):
            if not ctx.divides(ctx.exact_div(phi[i], phi[j]), H[i][j]):
                return False
    return True
