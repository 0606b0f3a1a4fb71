"""
Commutative Bezout domains of stable range 1.5 used as the base ring R.

Two instantiations are provided:
1. ``IntegerRing`` - arbitrary-precision integers.
2. ``PolynomialRing`` - univariate polynomials over F_p, p prime.

Elements are plain immutable Python values: ``int`` for the integers, and a
tuple of coefficients in ascending degree (no trailing zero, zero = ``()``)
for polynomials. All ring operations live on the context object, so every
algorithm above this module is written once against the ``RingCtx`` interface.
"""

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass
from enum import Enum
from functools import reduce
from typing import Iterable, Sequence, Tuple, Union

from sympy import isprime
from sympy.core.intfunc import igcdex
from sympy.polys.domains import ZZ
from sympy.polys import galoistools as gf

from utils import (
    LIFT_BOUND, DEBUG_CHECKS,
    DivisionByZero, InvalidElement, InvalidRing, InvariantBroken,
    NotAUnit, NotDivisible, PreconditionViolated, SearchExhausted,
)

logger = logging.getLogger(__name__)

Poly = Tuple[int, ...]
DomainElement = Union[int, Poly]


class RingKind(str, Enum):
    INTEGERS = "int"
    POLYNOMIALS = "fpx"


class RingCtx(ABC):
    """Interface of the active Bezout domain."""

    kind: RingKind
    p = None

    # --- constants & coercion ---
    @property
    @abstractmethod
    def zero(self) -> DomainElement: ...

    @property
    @abstractmethod
    def one(self) -> DomainElement: ...

    @abstractmethod
    def element(self, value) -> DomainElement:
        """Coerce user input into the unique representation of an element."""

    def from_int(self, n: int) -> DomainElement:
        return self.element(n)

    def is_zero(self, a: DomainElement) -> bool:
        return a == self.zero

    # --- arithmetic ---
    @abstractmethod
    def add(self, a: DomainElement, b: DomainElement) -> DomainElement: ...

    @abstractmethod
    def sub(self, a: DomainElement, b: DomainElement) -> DomainElement: ...

    @abstractmethod
    def mul(self, a: DomainElement, b: DomainElement) -> DomainElement: ...

    @abstractmethod
    def neg(self, a: DomainElement) -> DomainElement: ...

    @abstractmethod
    def divmod(self, a: DomainElement, b: DomainElement) -> Tuple[DomainElement, DomainElement]:
        """Euclidean division; raises DivisionByZero for b = 0."""

    @abstractmethod
    def norm(self, a: DomainElement) -> int:
        """Euclidean size (absolute value / degree, -1 for the zero polynomial)."""

    def rem(self, a: DomainElement, b: DomainElement) -> DomainElement:
        return self.divmod(a, b)[1]

    def exact_div(self, a: DomainElement, b: DomainElement) -> DomainElement:
        """Return q with a = b*q, or raise NotDivisible / DivisionByZero."""
        if self.is_zero(b):
            raise DivisionByZero(f"exact division of {a} by zero")
        q, r = self.divmod(a, b)
        if not self.is_zero(r):
            raise NotDivisible(f"{b} does not divide {a}")
        return q

    def divides(self, a: DomainElement, b: DomainElement) -> bool:
        """a | b in R."""
        if self.is_zero(a):
            return self.is_zero(b)
        return self.is_zero(self.rem(b, a))

    # --- gcd machinery ---
    @abstractmethod
    def egcd(self, a: DomainElement, b: DomainElement) -> Tuple[DomainElement, DomainElement, DomainElement]:
        """Return (g, u, v) with g = a*u + b*v and g the canonical gcd."""

    def gcd(self, *elements: DomainElement) -> DomainElement:
        return reduce(lambda g, x: self.egcd(g, x)[0], elements, self.zero)

    @abstractmethod
    def canonical(self, a: DomainElement) -> Tuple[DomainElement, DomainElement]:
        """Return (assoc, unit) with assoc*unit = a and assoc canonical."""

    @abstractmethod
    def is_unit(self, a: DomainElement) -> bool: ...

    @abstractmethod
    def unit_inverse(self, u: DomainElement) -> DomainElement: ...

    # --- total order ---
    @abstractmethod
    def enumerate(self, k: int) -> DomainElement:
        """The k-th element of the fixed enumeration of R."""

    @abstractmethod
    def index(self, a: DomainElement) -> int:
        """Position of a in the enumeration; inverse of ``enumerate``."""

    # --- stable range 1.5 ---
    def stable_lift(self, a: DomainElement, b: DomainElement, c: DomainElement,
                    bound: int = None) -> DomainElement:
        """First r in enumeration order with (a + b*r, c) = 1."""
        if self.is_zero(c):
            raise PreconditionViolated("stable_lift needs c != 0")
        if self.gcd(a, b, c) != self.one:
            raise PreconditionViolated(f"stable_lift needs (a, b, c) = 1, got a={a}, b={b}, c={c}")
        bound = bound or LIFT_BOUND
        for k in range(bound):
            r = self.enumerate(k)
            candidate = self.add(a, self.mul(b, r))
            if self.egcd(candidate, c)[0] == self.one:
                if k > 64:
                    logger.info(f"stable_lift({a}, {b}, {c}) needed {k + 1} candidates")
                if DEBUG_CHECKS and self.gcd(self.add(a, self.mul(b, r)), c) != self.one:
                    raise InvariantBroken(f"stable_lift returned {r} for ({a}, {b}, {c})")
                return r
        logger.error(f"stable_lift({a}, {b}, {c}) exhausted {bound} candidates")
        raise SearchExhausted(f"no stable lift for ({a}, {b}, {c}) within {bound} candidates")

    # --- presentation ---
    @abstractmethod
    def spec(self) -> str:
        """The ``--ring`` string that reproduces this context."""


@dataclass(frozen=True)
class IntegerRing(RingCtx):
    kind = RingKind.INTEGERS

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 1

    def element(self, value) -> int:
        if isinstance(value, bool):
            raise InvalidElement(f"not an integer: {value!r}")
        if isinstance(value, int):
            return value
        if isinstance(value, str):
            try:
                return int(value.strip())
            except ValueError:
                raise InvalidElement(f"not a decimal integer: {value!r}") from None
        raise InvalidElement(f"not an integer: {value!r}")

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def divmod(self, a, b):
        if b == 0:
            raise DivisionByZero(f"division of {a} by zero")
        return divmod(a, b)

    def norm(self, a):
        return abs(a)

    def egcd(self, a, b):
        if a == 0 and b == 0:
            return 0, 0, 0
        u, v, g = igcdex(a, b)
        return int(g), int(u), int(v)

    def canonical(self, a):
        return (-a, -1) if a < 0 else (a, 1)

    def is_unit(self, a):
        return a in (1, -1)

    def unit_inverse(self, u):
        if not self.is_unit(u):
            raise NotAUnit(f"{u} is not a unit of Z")
        return u

    def enumerate(self, k):
        if k < 0:
            raise ValueError(f"enumeration index must be nonnegative, got {k}")
        return (k + 1) // 2 if k % 2 else -(k // 2)

    def index(self, a):
        if a > 0:
            return 2 * a - 1
        return -2 * a

    def spec(self):
        return "int"


@dataclass(frozen=True)
class PolynomialRing(RingCtx):
    """F_p[x]; coefficient tuples in ascending degree."""

    p: int
    kind = RingKind.POLYNOMIALS

    def __post_init__(self):
        if not isinstance(self.p, int) or self.p < 2 or not isprime(self.p):
            raise InvalidRing(f"polynomial ring needs a prime p, got {self.p}")

    # sympy's galoistools works on descending coefficient lists
    def _to_gf(self, a: Poly) -> list:
        return [ZZ(c) for c in reversed(a)]

    def _from_gf(self, f) -> Poly:
        return tuple(int(c) for c in reversed(gf.gf_strip(list(f))))

    @property
    def zero(self) -> Poly:
        return ()

    @property
    def one(self) -> Poly:
        return (1,)

    def element(self, value) -> Poly:
        if isinstance(value, bool):
            raise InvalidElement(f"not a polynomial: {value!r}")
        if isinstance(value, int):
            coeffs = [value]
        elif isinstance(value, (list, tuple)):
            coeffs = list(value)
        else:
            raise InvalidElement(f"not a coefficient array: {value!r}")
        if any(isinstance(c, bool) or not isinstance(c, int) for c in coeffs):
            raise InvalidElement(f"coefficients must be integers: {value!r}")
        coeffs = [c % self.p for c in coeffs]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        return tuple(coeffs)

    def add(self, a, b):
        return self._from_gf(gf.gf_add(self._to_gf(a), self._to_gf(b), self.p, ZZ))

    def sub(self, a, b):
        return self._from_gf(gf.gf_sub(self._to_gf(a), self._to_gf(b), self.p, ZZ))

    def mul(self, a, b):
        return self._from_gf(gf.gf_mul(self._to_gf(a), self._to_gf(b), self.p, ZZ))

    def neg(self, a):
        return self._from_gf(gf.gf_neg(self._to_gf(a), self.p, ZZ))

    def divmod(self, a, b):
        if not b:
            raise DivisionByZero(f"division of {a} by the zero polynomial")
        q, r = gf.gf_div(self._to_gf(a), self._to_gf(b), self.p, ZZ)
        return self._from_gf(q), self._from_gf(r)

    def norm(self, a):
        return len(a) - 1

    def degree(self, a: Poly) -> int:
        return len(a) - 1

    def egcd(self, a, b):
        if not a and not b:
            return (), (), ()
        s, t, h = gf.gf_gcdex(self._to_gf(a), self._to_gf(b), self.p, ZZ)
        return self._from_gf(h), self._from_gf(s), self._from_gf(t)

    def canonical(self, a):
        if not a:
            return (), (1,)
        lc = a[-1]
        inv = pow(lc, -1, self.p)
        return self.mul(a, (inv,)), (lc,)

    def is_unit(self, a):
        return len(a) == 1

    def unit_inverse(self, u):
        if not self.is_unit(u):
            raise NotAUnit(f"{u} is not a unit of F_{self.p}[x]")
        return (pow(u[0], -1, self.p),)

    def enumerate(self, k):
        # base-p digits of k, least significant digit = constant term
        if k < 0:
            raise ValueError(f"enumeration index must be nonnegative, got {k}")
        digits = []
        while k:
            k, d = divmod(k, self.p)
            digits.append(d)
        return tuple(digits)

    def index(self, a):
        return sum(c * self.p ** i for i, c in enumerate(a))

    def spec(self):
        return f"fpx:{self.p}"


def ring_from_spec(text: str) -> RingCtx:
    """Parse ``int`` or ``fpx:<p>``."""
    raw = (text or "").strip().lower()
    if raw in ("int", "z", "integers"):
        return IntegerRing()
    if raw.startswith("fpx:"):
        try:
            p = int(raw[4:])
        except ValueError:
            raise InvalidRing(f"malformed ring spec '{text}'") from None
        return PolynomialRing(p)
    raise InvalidRing(f"unknown ring spec '{text}' (expected 'int' or 'fpx:<prime>')")


def elements(ctx: RingCtx, values: Iterable) -> Sequence[DomainElement]:
    return [ctx.element(v) for v in values]
