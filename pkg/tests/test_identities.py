from fractions import Fraction as F

import pytest

from invfac.identities import (
    T,
    X,
    genfun_suite,
    random_rationals,
    spot_check,
    verify_carlitz_gf,
    verify_connection,
    verify_horizontal_gf,
    verify_identity_one,
    verify_identity_two,
    verify_vertical_gf,
    _identity_one_sides,
    _identity_two_sides,
)


def test_identity_one_low_orders():
    lhs, rhs = _identity_one_sides(0, T, X)
    assert lhs == 1 and rhs == 1
    lhs, rhs = _identity_one_sides(1, T, X)
    assert lhs == -(T - X + 1) * (T + X) / 2 == rhs


def test_identity_two_low_orders():
    lhs, rhs = _identity_two_sides(1, T, X)
    expected = (T - X) / 2 - (T - X) * (T + X) / 2
    assert lhs == expected == rhs


@pytest.mark.parametrize("m", range(11))
def test_identities_hold(m):
    holds, residual = verify_identity_one(m)
    assert holds and residual.is_zero()
    holds, residual = verify_identity_two(m)
    assert holds and residual.is_zero()


@pytest.mark.parametrize("n", range(11))
def test_connection_formula(n):
    for l in range(n + 1):
        holds, residual = verify_connection(n, l)
        assert holds, str(residual)


def test_connection_example():
    holds, _ = verify_connection(1, 0)
    assert holds


def test_verifier_reports_nonzero_residual():
    # perturb one side to make sure a broken identity is caught
    lhs, rhs = _identity_one_sides(3, T, X)
    assert not (lhs - rhs + T).is_zero()


def test_generating_functions():
    assert all(verify_horizontal_gf(n)[0] for n in range(13))
    assert all(verify_vertical_gf(l, 10)[0] for l in range(5))
    holds, residuals = verify_carlitz_gf(8)
    assert holds and len(residuals) == 9


def test_suite_report_shape():
    cases = genfun_suite(horizontal_n=2, vertical_l=1, vertical_N=3, carlitz_N=2)
    doc = cases[0].to_json()
    assert set(doc) >= {"identity", "holds", "residual_terms"}


@pytest.mark.parametrize("m", [0, 3, 7, 10])
def test_numeric_spot_check(m):
    assert spot_check(m) == {"identity_one": 0, "identity_two": 0, "connection": 0}


def test_random_points_deterministic():
    assert random_rationals(20) == random_rationals(20)
    assert len(set(random_rationals(20))) > 15
