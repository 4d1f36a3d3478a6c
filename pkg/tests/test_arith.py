import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from masseyvar.arith import (
    UnfactoredError,
    factor,
    is_perfect_square,
    is_squarefree,
    legendre,
    square_class,
    squarefree_decomposition,
    valuation,
)


@pytest.mark.parametrize(
    "v, rep, cof",
    [(18, 2, 9), (Fraction(-4, 9), -1, Fraction(4, 9)), (313, 313, 1), (1, 1, 1), (-12, -3, 4), (Fraction(3, 8), 6, Fraction(1, 16))],
)
def test_square_class_examples(v, rep, cof):
    sc = square_class(v)
    assert (sc.rep, sc.cofactor) == (rep, cof)


def test_square_class_rejects_zero():
    with pytest.raises(ValueError):
        square_class(0)


nonzero_rationals = st.fractions(min_value=-(10**9), max_value=10**9, max_denominator=10**6).filter(lambda f: f != 0)


@given(nonzero_rationals)
def test_square_class_recovers_value(v):
    sc = square_class(v)
    assert sc.rep * sc.cofactor == v
    assert is_squarefree(sc.rep)
    assert is_perfect_square(sc.cofactor) is not None


@given(nonzero_rationals, st.integers(1, 10**6))
def test_square_class_ignores_squares(v, t):
    assert square_class(v * t * t).rep == square_class(v).rep


@pytest.mark.parametrize("a, p, expected", [(2, 7, 1), (2, 3, -1), (313, 457, 1), (14, 7, 0)])
def test_legendre_examples(a, p, expected):
    assert legendre(a, p) == expected


@pytest.mark.parametrize("p", [2, 9, 15, 1, -3])
def test_legendre_rejects_bad_modulus(p):
    with pytest.raises(ValueError):
        legendre(3, p)


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13, 17, 19, 23, 29, 31])
def test_legendre_multiplicative(p):
    for a in range(1, p):
        for b in range(1, p):
            assert legendre(a * b, p) == legendre(a, p) * legendre(b, p)


def test_is_perfect_square_examples():
    assert is_perfect_square(Fraction(9, 4)) == Fraction(3, 2)
    assert is_perfect_square(2) is None
    assert is_perfect_square(0) == 0
    assert is_perfect_square(-4) is None


def test_is_perfect_square_random():
    rng = random.Random(7)
    for _ in range(1000):
        r = Fraction(rng.randint(-(10**12), 10**12), rng.randint(1, 10**12))
        assert is_perfect_square(r * r) == abs(r)


def test_factor_large_semiprime():
    p, q = 1_000_000_007, 998_244_353
    assert factor(p * q) == {p: 1, q: 1}
    assert factor(-(2**5) * 3 * p * p) == {2: 5, 3: 1, p: 2}


def test_squarefree_decomposition():
    assert squarefree_decomposition(-72) == (-2, 6)
    assert valuation(48, 2) == 4


def test_unfactored_error_is_arithmetic_error():
    assert issubclass(UnfactoredError, ArithmeticError)
