import math
from fractions import Fraction as F

import mpmath
import pytest
from hypothesis import given, strategies as st

from conftest import small_rationals
from invfac.errors import SpecError, UnbalancedSpecError
from invfac.gammaexp import (
    GammaRatioSpec,
    c_coefficients,
    exact_power,
    hermite_coeffs,
    invariants,
    poincare_expansion,
    q_coefficients,
)
from invfac.numerics import to_mp, working_precision

FIXTURE = GammaRatioSpec((1, 1), (0, 0), (1, 1), (F(1, 2), F(1, 2)))


def test_fixture_q_and_c():
    assert q_coefficients(FIXTURE, 3) == [F(1, 4), 0, F(-1, 32)]
    assert c_coefficients(FIXTURE, 4) == [1, F(1, 4), F(1, 32), F(-1, 128), F(-5, 2048)]


@pytest.mark.parametrize("route", ["recurrence", "partition", "nair"])
def test_routes_on_fixture(route):
    assert c_coefficients(FIXTURE, 8, route) == c_coefficients(FIXTURE, 8)


def test_single_ratio_is_exact_inverse():
    spec = GammaRatioSpec((1,), (0,), (1,), (1,))
    assert c_coefficients(spec, 6) == [1, 0, 0, 0, 0, 0, 0]
    inv = invariants(spec)
    assert inv.nu == 1 and inv.mu == 1 and inv.rho_exact == 1


def test_invariants_duplication():
    # Gamma(2z)/Gamma(z)^2 ~ 4^z z^(1/2) / sqrt(4 pi): rho = 4, mu = -1/2
    spec = GammaRatioSpec((2,), (0,), (1, 1), (0, 0))
    inv = invariants(spec)
    assert inv.mu == F(-1, 2)
    assert inv.rho_exact == 4
    with working_precision(128):
        assert abs(inv.nu - 1 / mpmath.sqrt(4 * mpmath.pi)) < mpmath.mpf(2) ** -200
        assert abs(inv.log_rho - mpmath.log(4)) < mpmath.mpf(2) ** -200


def test_swap_negates_mu():
    spec = GammaRatioSpec((1, 2), (F(1, 3), F(1, 5)), (3,), (F(2, 7),))
    assert invariants(spec).mu == -invariants(spec.swapped()).mu
    assert invariants(spec).nu * invariants(spec.swapped()).nu == pytest.approx(1)


def test_unbalanced_rejected():
    spec = GammaRatioSpec((1, 2), (0, 0), (1, 1), (0, 0))
    with pytest.raises(UnbalancedSpecError):
        invariants(spec)
    with pytest.raises(UnbalancedSpecError):
        c_coefficients(spec, 3)


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(A=(1,), a=(0, 1), B=(1,), b=(0,)),
        dict(A=(), a=(), B=(1,), b=(0,)),
        dict(A=(-1,), a=(0,), B=(-1,), b=(0,)),
        dict(A=(1,), a=(0,), B=(1,), b=(0,), precision_bits=32),
    ],
)
def test_spec_validation(kwargs):
    with pytest.raises(SpecError):
        GammaRatioSpec(**kwargs)


@pytest.mark.parametrize(
    "base, exponent, expected",
    [(F(4), F(1, 2), F(2)), (F(8, 27), F(-1, 3), F(3, 2)), (F(2), F(1, 2), None), (F(5), 0, F(1))],
)
def test_exact_power(base, exponent, expected):
    assert exact_power(base, exponent) == expected


def test_hermite_coefficients():
    assert hermite_coeffs(0, 6) == [F(1, 12), 0, F(-1, 360), 0, F(1, 1260)]


@given(small_rationals(3, 4))
def test_hermite_matches_loggamma(a):
    # asymptotic: the residual is about the size of the first omitted terms
    z = mpmath.mpf(100)
    with working_precision(128):
        am = to_mp(a)
        lhs = mpmath.loggamma(z + am) - (z + am - mpmath.mpf(1) / 2) * mpmath.log(z) + z - mpmath.log(2 * mpmath.pi) / 2
        terms = [to_mp(c) / z ** (j + 1) for j, c in enumerate(hermite_coeffs(a, 16))]
        rhs = sum(terms[:-2])
        assert abs(lhs - rhs) <= 2 * max(abs(terms[-2]), abs(terms[-1]))


def test_partial_sum_tracks_normalized_ratio():
    exp = poincare_expansion(FIXTURE, 8)
    z = mpmath.mpf(200)
    with working_precision(128):
        w = mpmath.gamma(z) ** 2 / mpmath.gamma(z + mpmath.mpf(1) / 2) ** 2
        assert abs(z * w - exp.partial_sum(z)) < mpmath.mpf(10) ** -19


def test_float_mode_matches_exact():
    exact = c_coefficients(FIXTURE, 6)
    floaty = c_coefficients(FIXTURE.as_float(), 6)
    with working_precision(256):
        assert all(abs(to_mp(a) - b) < mpmath.mpf(2) ** -240 for a, b in zip(exact, floaty))


@given(st.integers(0, 2**31))
def test_random_balanced_specs_routes(seed):
    import random

    from invfac.fixtures import random_balanced_spec

    spec = random_balanced_spec(random.Random(seed), max_factors=2)
    ref = c_coefficients(spec, 5)
    assert c_coefficients(spec, 5, "nair") == ref == c_coefficients(spec, 5, "partition")
