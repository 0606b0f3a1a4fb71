import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from residue import Modulus, divides  # noqa: E402
from ring_core import IntegerRing, PolynomialRing  # noqa: E402


@pytest.fixture
def Z():
    return IntegerRing()


@pytest.fixture
def F2():
    return PolynomialRing(2)


@pytest.fixture
def F3():
    return PolynomialRing(3)


@pytest.fixture
def z36():
    return Modulus(36, IntegerRing())


@pytest.fixture
def z72():
    return Modulus(72, IntegerRing())


# --- oracles on raw integers, independent of the library ---
def raw_gcd(a, b):
    while b:
        a, b = b, a % b
    return abs(a)


def raw_units(m):
    return [e for e in range(m) if raw_gcd(e, m) == 1]


def raw_solutions(a, b, m):
    return [x for x in range(m) if (a * x - b) % m == 0]


def residue_chains(mod, n):
    """Every chain phi_1 | ... | phi_n of nonzero residues, as representatives."""
    nonzero = [x for x in mod.elements() if not x.is_zero()]
    chains = [(x,) for x in nonzero]
    for _ in range(n - 1):
        chains = [c + (y,) for c in chains for y in nonzero if divides(c[-1], y)]
    return [tuple(x.rep for x in c) for c in chains]
