import random

import pytest

from conftest import raw_units
from residue import (
    Modulus, annihilator, associate_unit, associates, decompose, divides,
    invert, is_unit, lift, mu, reduce, unit_part,
)
from ring_core import IntegerRing, PolynomialRing
from utils import InvalidModulus, ModulusMismatch, NotAUnit, NotDivisible

Z = IntegerRing()


def test_reduce_examples(z36, F2):
    assert reduce(40, z36).rep == 4
    assert reduce(-1, z36).rep == 35
    mod = Modulus((1, 0, 1), F2)
    assert reduce((0, 0, 0, 1), mod).rep == (0, 1)


def test_modulus_rejects_zero_and_units(Z, F3):
    for bad in (0, 1, -1):
        with pytest.raises(InvalidModulus):
            Modulus(bad, Z)
    with pytest.raises(InvalidModulus):
        Modulus((2,), F3)
    assert Modulus(-36, Z).m == 36


def test_ring_operations(z36, z72):
    assert (z36(15) * z36(7)).rep == 33
    assert (z36(4) * z36(11)).rep == 8
    assert (z36(5) + z36(0)).rep == 5
    assert (-z36(5)).rep == 31
    with pytest.raises(ModulusMismatch):
        z36(1) + z72(1)


def test_mu_examples(z36):
    assert mu(z36(8)) == 4
    assert mu(z36(0)) == 36
    assert mu(z36(7)) == 1


def test_unit_part_examples(z36):
    z6 = Modulus(6, Z)
    assert unit_part(z6(4)).rep == 5
    assert unit_part(z36(8)).rep in (11, 29)
    assert unit_part(z36(7)).rep == 7
    assert unit_part(z36(0)).rep == 1


@pytest.mark.parametrize("m", [6, 12, 36, 72])
def test_decomposition_is_total(m):
    mod = Modulus(m, Z)
    for x in mod.elements():
        g, e = decompose(x)
        assert is_unit(e), f"unit part of {x.rep} mod {m} is not a unit"
        assert g * e == x, f"{x.rep} != {g.rep}*{e.rep} mod {m}"


def test_decomposition_over_polynomials(F2, F3):
    for mod in (Modulus((0, 1, 0, 1), F2), Modulus((0, 0, 1), F3), Modulus((1, 0, 1), F3)):
        for x in mod.elements():
            g, e = decompose(x)
            assert is_unit(e)
            assert g * e == x


def test_divides_examples(z36, z72):
    assert divides(z36(15), z36(6))
    assert divides(z36(9), z36(0))
    assert not divides(z72(2), z72(1))


def test_associates_examples(z36):
    assert associates(z36(15), z36(33))
    assert associates(z36(10), z36(10))
    assert not associates(z36(6), z36(15))


@pytest.mark.parametrize("m", [8, 12, 18, 30, 36, 40])
def test_associates_matches_unit_scan(m):
    mod = Modulus(m, Z)
    units = raw_units(m)
    for x in range(m):
        for y in range(m):
            scan = any((y * e - x) % m == 0 for e in units)
            assert associates(mod(x), mod(y)) == scan, f"associates({x}, {y}) mod {m}"


@pytest.mark.parametrize("m", [8, 12, 18, 30, 36, 40])
def test_mutual_divisibility_gives_associates(m):
    mod = Modulus(m, Z)
    for x in range(m):
        for y in range(m):
            by_scan = any((x * t - y) % m == 0 for t in range(m))
            assert divides(mod(x), mod(y)) == by_scan
            if divides(mod(x), mod(y)) and divides(mod(y), mod(x)):
                assert associates(mod(x), mod(y))


@pytest.mark.parametrize("m", [9, 20, 36, 40])
def test_annihilator_generates_the_zero_set(m):
    mod = Modulus(m, Z)
    for x in range(m):
        zero_set = {s for s in range(m) if (x * s) % m == 0}
        alpha = annihilator(mod(x)).rep
        assert zero_set == {(alpha * t) % m for t in range(m)}


def test_annihilator_examples(z36, z72):
    assert annihilator(z36(4)).rep == 9
    assert annihilator(z36(5)).rep == 0
    assert annihilator(z72(4)).rep == 18


def test_invert(z36):
    assert invert(z36(1)).rep == 1
    assert invert(z36(31)).rep == 7
    assert is_unit(z36(7))
    with pytest.raises(NotAUnit):
        invert(z36(6))


def test_associate_unit(z36):
    e = associate_unit(z36(33), z36(15))
    assert e.rep in (7, 31)
    assert z36(15) * e == z36(33)
    with pytest.raises(NotDivisible):
        associate_unit(z36(6), z36(15))


def test_lifting_respects_products():
    rng = random.Random(5)
    for _ in range(200):
        m = rng.randint(2, 200)
        mod = Modulus(m, Z)
        y, z = mod(rng.randrange(m)), mod(rng.randrange(m))
        x = y * z
        assert reduce(lift(y) * lift(z), mod) == x


def test_elements_in_enumeration_order(F2):
    mod = Modulus((1, 1, 1), F2)
    assert [x.rep for x in mod.elements()] == [(), (1,), (0, 1), (1, 1)]
    assert mod.size == 4


POLY_MODULI = [
    (2, (0, 0, 0, 0, 1)),
    (2, (0, 1, 1, 0, 1)),
    (2, (1, 0, 1, 1)),
    (3, (0, 0, 1, 1)),
    (3, (1, 0, 1)),
]


def _poly_modulus(p, m):
    mod = Modulus(m, PolynomialRing(p))
    elems = list(mod.elements())
    units = [e for e in elems if any(e * t == mod.one for t in elems)]
    return mod, elems, units


@pytest.mark.parametrize("p, m", POLY_MODULI)
def test_associates_matches_unit_scan_over_polynomials(p, m):
    mod, elems, units = _poly_modulus(p, m)
    for x in elems:
        for y in elems:
            scan = any(y * e == x for e in units)
            assert associates(x, y) == scan, f"associates({x.rep}, {y.rep}) mod {m} over F_{p}"


@pytest.mark.parametrize("p, m", POLY_MODULI)
def test_mutual_divisibility_gives_associates_over_polynomials(p, m):
    mod, elems, _ = _poly_modulus(p, m)
    for x in elems:
        for y in elems:
            by_scan = any(x * t == y for t in elems)
            assert divides(x, y) == by_scan, f"divides({x.rep}, {y.rep}) mod {m} over F_{p}"
            if divides(x, y) and divides(y, x):
                assert associates(x, y)


@pytest.mark.parametrize("p, m", POLY_MODULI)
def test_annihilator_generates_the_zero_set_over_polynomials(p, m):
    mod, elems, _ = _poly_modulus(p, m)
    for x in elems:
        zero_set = {s for s in elems if (x * s).is_zero()}
        alpha = annihilator(x)
        assert zero_set == {alpha * t for t in elems}, f"Ann({x.rep}) mod {m} over F_{p}"
