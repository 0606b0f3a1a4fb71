"""
Linear equations a*x = b in R_m.

Solution sets are stored in closed form (a generating particular solution
plus the annihilator generator of a), so solving never scans R_m. The
enumeration helpers below materialize cosets only when asked, bounded by
``ENUM_BOUND``.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Sequence, Tuple

import residue
from residue import Modulus, Residue, annihilator, associates, divides, invert, mu, mul, reduce, unit_part
from ring_core import DomainElement, RingCtx
from utils import (
    DEBUG_CHECKS, ENUM_BOUND, PAIR_CAP,
    DimensionMismatch, InvalidChain, InvariantBroken, PreconditionViolated, TooLarge, Unsolvable,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SolutionSet:
    """All x with a*x = b: gen + ann*R_m."""

    a: Residue
    b: Residue
    gen: Residue
    ann: Residue

    @property
    def mod(self) -> Modulus:
        return self.a.mod

    def contains(self, x: Residue) -> bool:
        return mul(self.a, x) == self.b

    @property
    def size(self) -> int:
        # |ann*R_m| = |R/(mu(a))|
        ctx = self.mod.ctx
        g = mu(self.a)
        if ctx.p is None:
            return g
        return ctx.p ** ctx.degree(g)


def solve(a: Residue, b: Residue) -> SolutionSet:
    """Solve a*x = b.

    With mu_a = (a, m), mu_b = (b, m) and sigma = mu_b / mu_a the generating
    solution is sigma * e_a^-1 * e_b, where e_* are the unit parts.
    """
    residue.same_modulus(a, b)
    ctx = a.ctx
    mu_a, mu_b = mu(a), mu(b)
    if not ctx.divides(mu_a, b.rep):
        raise Unsolvable(f"{a.rep}*x = {b.rep} has no solution modulo {a.mod.m}: "
                         f"gcd({a.rep}, {a.mod.m}) = {mu_a} does not divide {b.rep}",
                         gcd=mu_a, rhs=b.rep)
    sigma = ctx.exact_div(mu_b, mu_a)
    gen = mul(mul(reduce(sigma, a.mod), invert(unit_part(a))), unit_part(b))
    if mul(a, gen) != b:
        raise InvariantBroken(f"generating solution {gen.rep} does not solve {a.rep}*x = {b.rep}")
    return SolutionSet(a=a, b=b, gen=gen, ann=annihilator(a))


def enumerate_solutions(s: SolutionSet, bound: int = None) -> List[Residue]:
    """Every solution, sorted by enumeration order."""
    bound = bound or ENUM_BOUND
    size = s.size
    if size > bound:
        raise TooLarge(f"solution set of {s.a.rep}*x = {s.b.rep}", size, bound)
    # ann*t is injective on t modulo mu(a)
    t_mod_ctx = s.mod.ctx
    g = mu(s.a)
    if t_mod_ctx.is_unit(g):
        return [s.gen]
    ts = Modulus(g, t_mod_ctx).elements(bound)
    found = {residue.add(s.gen, mul(s.ann, reduce(t.rep, s.mod))) for t in ts}
    return sorted(found, key=residue.sort_key)


def is_generating(s: SolutionSet, x: Residue) -> bool:
    """x solves the equation and divides every other solution."""
    if x.mod != s.mod or not s.contains(x):
        return False
    result = associates(x, s.gen)
    if DEBUG_CHECKS:
        by_scan = all(divides(x, y) for y in enumerate_solutions(s))
        if by_scan != result:
            raise InvariantBroken(f"generating test disagrees with enumeration for {x.rep}")
    return result


def generating_solutions(s: SolutionSet, bound: int = None) -> List[Residue]:
    return [x for x in enumerate_solutions(s, bound) if associates(x, s.gen)]


def min_generating(a: Residue, b: Residue, bound: int = None) -> Residue:
    """The generating solution of a*x = b that comes first in enumeration order."""
    s = solve(a, b)
    return generating_solutions(s, bound)[0]


# ==============================================================
# ===== Chain systems ==========================================
# ==============================================================
@dataclass(frozen=True)
class ChainSystem:
    """phi_1 | ... | phi_n with the generating solutions psi_ij (i > j).

    Indices are zero-based: ``psi_table[(i, j)]`` solves phi[i] = phi[j]*x.
    """

    phi: Tuple[Residue, ...]
    psi_table: Dict[Tuple[int, int], Residue] = field(compare=False)

    @property
    def n(self) -> int:
        return len(self.phi)

    @property
    def mod(self) -> Modulus:
        return self.phi[0].mod

    def psi(self, i: int, j: int) -> Residue:
        if i == j:
            return self.mod.one
        return self.psi_table[(i, j)]


def validate_chain(phi: Sequence[Residue]) -> None:
    if len(phi) < 2:
        raise InvalidChain(f"a chain needs at least two entries, got {len(phi)}")
    mod = phi[0].mod
    for k, f in enumerate(phi):
        if f.mod != mod:
            raise InvalidChain(f"chain entry {k + 1} is modulo {f.mod.m}, expected {mod.m}")
        if f.is_zero():
            raise InvalidChain(f"chain entry {k + 1} is zero")
    for k in range(len(phi) - 1):
        if not divides(phi[k], phi[k + 1]):
            raise InvalidChain(f"{phi[k].rep} does not divide {phi[k + 1].rep} modulo {mod.m}")


def chain_system(phi: Sequence[Residue]) -> ChainSystem:
    """psi_{i,i-1} are minimal generating solutions; longer psi are their products."""
    phi = tuple(phi)
    validate_chain(phi)
    table = {}
    for i in range(1, len(phi)):
        table[(i, i - 1)] = min_generating(phi[i - 1], phi[i])
    for gap in range(2, len(phi)):
        for j in range(len(phi) - gap):
            i = j + gap
            table[(i, j)] = mul(table[(i, i - 1)], table[(i - 1, j)])
    logger.debug(f"chain system for {[f.rep for f in phi]}: {{{', '.join(f'{k}: {v.rep}' for k, v in table.items())}}}")
    return ChainSystem(phi=phi, psi_table=table)


def permutation_sets(sigma: Sequence[int]) -> Tuple[List[Tuple[int, int]], List[Tuple[int, int]]]:
    """Split the columns (k, sigma(k)) of a zero-based permutation.

    The first list holds columns with k > sigma(k), the second those with
    k <= sigma(k).
    """
    if sorted(sigma) != list(range(len(sigma))):
        raise PreconditionViolated(f"not a permutation of 0..{len(sigma) - 1}: {list(sigma)}")
    down = [(k, s) for k, s in enumerate(sigma) if k > s]
    up = [(k, s) for k, s in enumerate(sigma) if k <= s]
    return down, up


def verify_perm_identity(cs: ChainSystem, sigma: Sequence[int]) -> bool:
    """Compare the psi products over descending and non-descending columns.

    Also checks the matching identity on the one-based indices with exact
    fractions: prod p/q over descents equals prod beta/alpha over the rest.
    """
    if len(sigma) != cs.n:
        raise DimensionMismatch(f"permutation of length {len(sigma)} for a chain of length {cs.n}")
    down, up = permutation_sets(sigma)

    left_q = Fraction(1)
    for p, q in down:
        left_q *= Fraction(p + 1, q + 1)
    right_q = Fraction(1)
    for alpha, beta in up:
        right_q *= Fraction(beta + 1, alpha + 1)

    left = cs.mod.one
    for p, q in down:
        left = mul(left, cs.psi(p, q))
    right = cs.mod.one
    for alpha, beta in up:
        right = mul(right, cs.psi(beta, alpha))

    if left_q != right_q:
        logger.warning(f"index identity fails for {list(sigma)}: {left_q} != {right_q}")
    return left_q == right_q and left == right


# ==============================================================
# ===== gcd-of-solutions probe =================================
# ==============================================================
@dataclass(frozen=True)
class ProbeReport:
    a: Residue
    b: Residue
    solutions: Tuple[Residue, ...]
    gcd_all: DomainElement
    gcd_all_is_solution: bool
    failing_pairs: Tuple[Tuple[Residue, Residue, DomainElement], ...]
    truncated: bool


def gcd_solution_probe(a: Residue, b: Residue, bound: int = None, pair_cap: int = None,
                       pairs: bool = True) -> ProbeReport:
    """Is the gcd of solutions again a solution? Checked for all and for pairs."""
    pair_cap = pair_cap or PAIR_CAP
    s = solve(a, b)
    ctx, mod = a.ctx, a.mod
    sols = enumerate_solutions(s, bound)
    g_all = ctx.gcd(*(x.rep for x in sols))
    g_all_ok = s.contains(reduce(g_all, mod))

    failing = []
    truncated = False
    for x, y in (combinations(sols, 2) if pairs else ()):
        g = ctx.gcd(x.rep, y.rep)
        if not s.contains(reduce(g, mod)):
            if len(failing) >= pair_cap:
                truncated = True
                break
            failing.append((x, y, g))
    if truncated:
        logger.info(f"probe for {a.rep}*x = {b.rep} mod {mod.m}: pair listing truncated at {pair_cap}")
    return ProbeReport(a=a, b=b, solutions=tuple(sols), gcd_all=g_all, gcd_all_is_solution=g_all_ok,
                       failing_pairs=tuple(failing), truncated=truncated)


def probe_sweep(ctx: RingCtx, moduli: Sequence[DomainElement], bound: int = None) -> List[ProbeReport]:
    """Every solvable (a, b) over the given moduli whose solution gcd is not a solution."""
    hits = []
    for m in moduli:
        mod = Modulus(m, ctx)
        elems = list(mod.elements(bound))
        count = 0
        for a in elems:
            for b in elems:
                if not divides(a, b):
                    continue
                report = gcd_solution_probe(a, b, bound, pairs=False)
                if not report.gcd_all_is_solution:
                    hits.append(report)
                    count += 1
        logger.info(f"probe sweep: modulus {mod.m} has {count} equations whose solution gcd is not a solution")
    return hits
