import random

import pytest

import matrix_ops
from residue import Modulus
from ring_core import IntegerRing, PolynomialRing
from utils import DimensionMismatch

Z = IntegerRing()


def random_int_matrix(rng, n, lo=-9, hi=9):
    return tuple(tuple(rng.randint(lo, hi) for _ in range(n)) for _ in range(n))


def test_berkowitz_matches_cofactor_over_integers():
    rng = random.Random(1)
    for n in range(1, 5):
        for _ in range(100):
            a = random_int_matrix(rng, n)
            assert matrix_ops.berkowitz_det(Z, a) == matrix_ops.cofactor_det(Z, a), f"det mismatch for {a}"


def test_berkowitz_two_by_two():
    assert matrix_ops.berkowitz_det(Z, ((4, 6), (2, 8))) == 20
    assert matrix_ops.berkowitz_det(Z, ((1, 5), (3, 2))) == -13


def test_berkowitz_over_residues():
    rng = random.Random(2)
    for m in (12, 36, 72):
        mod = Modulus(m, Z)
        for n in range(2, 5):
            for _ in range(30):
                raw = random_int_matrix(rng, n, 0, m - 1)
                a = tuple(tuple(mod(x) for x in row) for row in raw)
                assert matrix_ops.berkowitz_det(mod, a) == matrix_ops.cofactor_det(mod, a)
                assert matrix_ops.berkowitz_det(mod, a).rep == matrix_ops.cofactor_det(Z, raw) % m


def test_berkowitz_over_polynomials():
    F3 = PolynomialRing(3)
    rng = random.Random(4)
    for n in range(2, 5):
        for _ in range(20):
            a = tuple(tuple(F3.element([rng.randrange(3) for _ in range(3)]) for _ in range(n)) for _ in range(n))
            assert matrix_ops.berkowitz_det(F3, a) == matrix_ops.cofactor_det(F3, a)


def test_adjugate_identity():
    rng = random.Random(3)
    for n in range(2, 5):
        for _ in range(50):
            a = random_int_matrix(rng, n)
            d = matrix_ops.berkowitz_det(Z, a)
            product = matrix_ops.mat_mul(Z, a, matrix_ops.adjugate(Z, a))
            assert product == matrix_ops.scale(Z, d, matrix_ops.identity(Z, n))


def test_shape_checks():
    with pytest.raises(DimensionMismatch):
        matrix_ops.as_matrix([[1, 2], [3]])
    with pytest.raises(DimensionMismatch):
        matrix_ops.mat_mul(Z, ((1, 2),), ((1, 2),))
    assert matrix_ops.minor(((1, 2, 3), (4, 5, 6), (7, 8, 9)), 1, 0) == ((2, 3), (8, 9))
