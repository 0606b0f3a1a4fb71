"""
Arithmetic in the quotient ring R_m = R/mR.

A ``Residue`` always carries its canonical representative (0 <= rep < m over
the integers, deg(rep) < deg(m) over F_p[x]). The structural predicates here
all reduce to gcds in R: mu(x) = (rep, m) decides divisibility, associates,
units and annihilators without scanning R_m.
"""

import logging
from dataclasses import dataclass
from typing import Iterator, Tuple

from ring_core import DomainElement, RingCtx
from utils import ENUM_BOUND, InvalidModulus, ModulusMismatch, NotAUnit, NotDivisible, TooLarge

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Modulus:
    """A non-zero, non-unit m in R together with its ring context."""

    m: DomainElement
    ctx: RingCtx

    def __post_init__(self):
        m = self.ctx.element(self.m)
        if self.ctx.is_zero(m) or self.ctx.is_unit(m):
            raise InvalidModulus(f"modulus must be neither zero nor a unit, got {m}")
        object.__setattr__(self, "m", self.ctx.canonical(m)[0])

    # ring protocol used by matrix_ops: operations on Residues
    @property
    def zero(self) -> "Residue":
        return Residue(self.ctx.zero, self)

    @property
    def one(self) -> "Residue":
        return Residue(self.ctx.one, self)

    def add(self, x: "Residue", y: "Residue") -> "Residue":
        return add(x, y)

    def sub(self, x: "Residue", y: "Residue") -> "Residue":
        return sub(x, y)

    def mul(self, x: "Residue", y: "Residue") -> "Residue":
        return mul(x, y)

    def neg(self, x: "Residue") -> "Residue":
        return neg(x)

    def __call__(self, a) -> "Residue":
        return reduce(self.ctx.element(a), self)

    @property
    def size(self) -> int:
        """Number of elements of R_m."""
        if self.ctx.p is None:
            return self.m
        return self.ctx.p ** self.ctx.degree(self.m)

    def element_at(self, k: int) -> "Residue":
        """The k-th residue in enumeration order, 0 <= k < size."""
        if not 0 <= k < self.size:
            raise IndexError(f"residue index {k} outside R_m of size {self.size}")
        if self.ctx.p is None:
            return Residue(k, self)
        return Residue(self.ctx.enumerate(k), self)

    def elements(self, bound: int = None) -> Iterator["Residue"]:
        bound = bound or ENUM_BOUND
        if self.size > bound:
            raise TooLarge(f"R_m for m={self.m}", self.size, bound)
        return (self.element_at(k) for k in range(self.size))

    def __repr__(self):
        return f"Modulus({self.m}, {self.ctx.spec()})"


@dataclass(frozen=True)
class Residue:
    rep: DomainElement
    mod: Modulus

    @property
    def ctx(self) -> RingCtx:
        return self.mod.ctx

    def is_zero(self) -> bool:
        return self.ctx.is_zero(self.rep)

    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return sub(self, other)

    def __mul__(self, other):
        return mul(self, other)

    def __neg__(self):
        return neg(self)

    def __repr__(self):
        return f"Residue({self.rep} mod {self.mod.m})"


def reduce(a: DomainElement, mod: Modulus) -> Residue:
    """The image of a in R_m."""
    return Residue(mod.ctx.rem(a, mod.m), mod)


def lift(x: Residue) -> DomainElement:
    """Canonical preimage of x in R."""
    return x.rep


def same_modulus(x: Residue, y: Residue) -> Modulus:
    if x.mod != y.mod:
        raise ModulusMismatch(f"residues modulo {x.mod.m} and {y.mod.m} cannot be combined")
    return x.mod


# --- Ring operations ---
def add(x: Residue, y: Residue) -> Residue:
    mod = same_modulus(x, y)
    return reduce(mod.ctx.add(x.rep, y.rep), mod)


def sub(x: Residue, y: Residue) -> Residue:
    mod = same_modulus(x, y)
    return reduce(mod.ctx.sub(x.rep, y.rep), mod)


def mul(x: Residue, y: Residue) -> Residue:
    mod = same_modulus(x, y)
    return reduce(mod.ctx.mul(x.rep, y.rep), mod)


def neg(x: Residue) -> Residue:
    return reduce(x.ctx.neg(x.rep), x.mod)


# --- Structure ---
def mu(x: Residue) -> DomainElement:
    """(rep, m): the canonical gcd of the residue with the modulus."""
    return x.ctx.egcd(x.rep, x.mod.m)[0]


def is_unit(x: Residue) -> bool:
    return mu(x) == x.ctx.one


def invert(x: Residue) -> Residue:
    g, u, _ = x.ctx.egcd(x.rep, x.mod.m)
    if g != x.ctx.one:
        raise NotAUnit(f"{x.rep} is not a unit modulo {x.mod.m} (gcd {g})")
    return reduce(u, x.mod)


def unit_part(x: Residue) -> Residue:
    """The unit e with x = mu(x)*e, built as in the associate criterion.

    a = mu*a1, m = mu*m1, a1*u + m1*v = 1; the first r0 with (u + r0*m1, m) = 1
    gives e = (u + r0*m1)^-1. For x = 0 the decomposition degenerates and e = 1.
    """
    ctx, mod = x.ctx, x.mod
    if x.is_zero():
        return mod.one
    g = mu(x)
    a1 = ctx.exact_div(x.rep, g)
    m1 = ctx.exact_div(mod.m, g)
    _, u, _ = ctx.egcd(a1, m1)
    r0 = ctx.stable_lift(u, m1, mod.m)
    return invert(reduce(ctx.add(u, ctx.mul(r0, m1)), mod))


def decompose(x: Residue) -> Tuple[Residue, Residue]:
    """(mu-bar, e) with x = mu-bar * e."""
    return reduce(mu(x), x.mod), unit_part(x)


def divides(x: Residue, y: Residue) -> bool:
    """True iff y = x*t for some t in R_m."""
    same_modulus(x, y)
    return x.ctx.divides(mu(x), y.rep)


def associates(x: Residue, y: Residue) -> bool:
    same_modulus(x, y)
    return mu(x) == mu(y)


def associate_unit(x: Residue, y: Residue) -> Residue:
    """A unit e with x = y*e; raises NotDivisible when x, y are not associates."""
    if not associates(x, y):
        raise NotDivisible(f"{x.rep} and {y.rep} are not associates modulo {x.mod.m}")
    return mul(invert(unit_part(y)), unit_part(x))


def annihilator(x: Residue) -> Residue:
    """Generator of Ann(x) = alpha*R_m, alpha = m / mu(x)."""
    return reduce(x.ctx.exact_div(x.mod.m, mu(x)), x.mod)


def sort_key(x: Residue) -> int:
    return x.ctx.index(x.rep)
