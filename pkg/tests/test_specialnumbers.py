import math
from fractions import Fraction as F

import pytest
import sympy
from hypothesis import given, strategies as st
from sympy.functions.combinatorial.numbers import stirling as sympy_stirling

from conftest import small_rationals
from invfac.numerics import RatPoly, pochhammer, poly_eval
from invfac.specialnumbers import (
    StirlingTable,
    bernoulli_numbers,
    bernoulli_poly,
    noncentral_stirling,
    noncentral_stirling_table,
    norlund_bernoulli,
    norlund_bernoulli_row,
    stirling_first,
)

S = RatPoly.var("s")
X = RatPoly.var("x")
G = RatPoly.var("g")


def _sympy_rational(v):
    return F(int(v.p), int(v.q))


def test_bernoulli_numbers_against_sympy():
    B = bernoulli_numbers(30)
    assert B[1] == F(-1, 2)
    for n in range(2, 31):
        assert B[n] == _sympy_rational(sympy.bernoulli(n))


def test_bernoulli_poly_constant_terms():
    B = bernoulli_numbers(30)
    for n in range(31):
        assert poly_eval(bernoulli_poly(n), {"x": F(0)}) == B[n]


@pytest.mark.parametrize("n", [1, 2, 3, 7])
def test_bernoulli_poly_against_sympy(n):
    x = sympy.Symbol("x")
    ref = sympy.Poly(sympy.bernoulli(n, x), x)
    ours = bernoulli_poly(n)
    for (k,), c in zip(ref.monoms(), ref.coeffs()):
        assert ours.coeff(x=k) == _sympy_rational(c)


@pytest.mark.parametrize("n, j, expected", [(3, 1, 2), (3, 2, -3), (4, 2, 11), (5, 5, 1), (5, 0, 0), (2, 4, 0)])
def test_stirling_first(n, j, expected):
    assert stirling_first(n, j) == expected


def test_stirling_against_sympy_and_table():
    table = StirlingTable.build(15)
    for n in range(16):
        for j in range(n + 1):
            ref = int(sympy_stirling(n, j, kind=1, signed=True))
            assert stirling_first(n, j) == ref == table(n, j)
    with pytest.raises(IndexError):
        table(16, 0)


def test_stirling_rows_are_falling_factorial_coefficients():
    x = RatPoly.var("x")
    for n in range(8):
        poly = sum((stirling_first(n, j) * x ** j for j in range(n + 1)), RatPoly.const(0))
        falling = RatPoly.const(1)
        for i in range(n):
            falling = falling * (x - i)
        assert poly == falling


def test_noncentral_examples():
    assert noncentral_stirling(1, 0, S) == S
    assert noncentral_stirling(1, 1, S) == 1
    assert noncentral_stirling(2, 1, S) == 2 * S + 1
    assert noncentral_stirling(2, 1, "s") == 2 * S + 1


def test_noncentral_at_zero_is_unsigned_stirling():
    for n in range(8):
        for r in range(n + 1):
            assert noncentral_stirling(n, r, 0) == abs(stirling_first(n, r))


@given(small_rationals(), st.integers(0, 9))
def test_table_recurrence_matches_defining_sum(sigma, N):
    table = noncentral_stirling_table(N, sigma)
    for n in range(N + 1):
        for r in range(n + 1):
            assert table[n][r] == noncentral_stirling(n, r, sigma)


@pytest.mark.parametrize("n", range(0, 13, 3))
def test_horizontal_generating_function(n):
    lhs = sum((X ** l * noncentral_stirling(n, l, S) for l in range(n + 1)), RatPoly.const(0))
    assert lhs == pochhammer(S + X, n)


def test_norlund_low_orders():
    assert norlund_bernoulli(0, G, X) == 1
    assert norlund_bernoulli(1, G, X) == X - G / 2


def test_norlund_order_one_is_bernoulli_poly():
    row = norlund_bernoulli_row(8, 1, "x")
    for k in range(9):
        assert row[k] == bernoulli_poly(k)


def test_norlund_integer_order_is_convolution():
    # order 2 generating function is the square of the order 1 one
    x = F(1, 3)
    B1 = norlund_bernoulli_row(6, 1, 0)
    B2 = norlund_bernoulli_row(6, 2, 2 * x)
    Bx = norlund_bernoulli_row(6, 1, x)
    for k in range(7):
        conv = sum(math.comb(k, i) * Bx[i] * Bx[k - i] for i in range(k + 1))
        assert B2[k] == conv
    assert B1[2] == F(1, 6)


@given(small_rationals(), small_rationals())
def test_norlund_symbolic_matches_numeric(gamma, x):
    sym = norlund_bernoulli_row(5, "g", "x")
    num = norlund_bernoulli_row(5, gamma, x)
    for k in range(6):
        assert poly_eval(sym[k], {"g": gamma, "x": x}) == num[k]
