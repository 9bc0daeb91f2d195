"""Exact verification of the Norlund-Bernoulli identities, the connection
formula for non-central Stirling numbers, and their generating functions.

Every check expands both sides as polynomials over Q (in ``t, x`` or in
``sigma`` and one auxiliary symbol) and reports ``(holds, residual)``.
A numeric layer re-evaluates the same identities at random rational points
through the non-symbolic code paths.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .numerics import RatPoly, gen_binomial, one_like, pochhammer, zero_like
from .series import TruncatedSeries, series_exp_recurrence, series_mul
from .specialnumbers import noncentral_stirling, norlund_bernoulli, stirling_first

T = RatPoly.var("t")
X = RatPoly.var("x")
SIGMA = RatPoly.var("s")
Y = RatPoly.var("y")


def _residual(lhs, rhs) -> tuple[bool, RatPoly]:
    res = lhs - rhs
    if not isinstance(res, RatPoly):
        res = RatPoly.const(res)
    return res.is_zero(), res


# ---------------------------------------------------------------------------
# Identity sides, generic in the ring of t and x


def _identity_one_sides(m: int, t, x):
    lhs = pochhammer(t - x + 1, m) / math.factorial(m) * norlund_bernoulli(m, t - x + m + 1, 1 - x)
    rhs = zero_like(lhs)
    for j in range(m + 1):
        inner = zero_like(lhs)
        for k in range(m - j + 1):
            s = stirling_first(m - k, j)
            if s:
                inner = inner + (-1) ** k * math.comb(m, k) * s * pochhammer(t, k)
        rhs = rhs + norlund_bernoulli(j, t - x + 1, t) * pochhammer(x - t, j) / math.factorial(j) * inner
    return lhs, rhs


def _identity_two_sides(m: int, t, x):
    lhs = zero_like(t + x)
    for j in range(m + 1):
        s = stirling_first(m, j)
        if s:
            lhs = lhs + s * norlund_bernoulli(j, t + x, t) * pochhammer(1 - t - x, j) / math.factorial(j)
    lhs = lhs / math.factorial(m)
    rhs = zero_like(lhs)
    for j in range(m + 1):
        rhs = rhs + (gen_binomial(t, m - j) * norlund_bernoulli(j, t + x + j, x)
                     * pochhammer(t + x, j) / math.factorial(j) ** 2)
    return lhs, rhs


def _connection_sides(n: int, l: int, sigma):
    lhs = noncentral_stirling(n, l, sigma)
    k = n - l
    rhs = (-1) ** k * pochhammer(Fraction(l + 1), k) / math.factorial(k) * norlund_bernoulli(k, n + 1, 1 - sigma)
    return lhs, rhs


def verify_identity_one(m: int) -> tuple[bool, RatPoly]:
    """``(t-x+1)_m/m! B_m^(t-x+m+1)(1-x)`` against its Stirling-sum expansion."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    return _residual(*_identity_one_sides(m, T, X))


def verify_identity_two(m: int) -> tuple[bool, RatPoly]:
    """``(1/m!) sum_j s(m,j) B_j^(t+x)(t) (1-t-x)_j / j!`` against the binomial sum."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    return _residual(*_identity_two_sides(m, T, X))


def verify_connection(n: int, l: int) -> tuple[bool, RatPoly]:
    """``s_sigma(n, l)`` against the Norlund-Bernoulli connection formula, in ``s``."""
    if not 0 <= l <= n:
        raise ValueError("need 0 <= l <= n")
    return _residual(*_connection_sides(n, l, SIGMA))


# ---------------------------------------------------------------------------
# Generating functions of the non-central Stirling numbers


def verify_horizontal_gf(n: int) -> tuple[bool, RatPoly]:
    """``sum_l x^l s_sigma(n, l) == (sigma + x)_n`` in Q[s, x]."""
    lhs = sum((X ** l * noncentral_stirling(n, l, SIGMA) for l in range(n + 1)), RatPoly.const(0))
    return _residual(lhs, pochhammer(SIGMA + X, n))


def _log_inv_one_minus(N: int, like) -> TruncatedSeries:
    zero = zero_like(like)
    return TruncatedSeries([zero] + [one_like(like) / k for k in range(1, N + 1)])


def verify_vertical_gf(l: int, N: int) -> tuple[bool, RatPoly]:
    """``sum_n s_sigma(n, l) x^n / n!`` against ``(1-x)^(-sigma) L^l / l!`` with
    ``L = log 1/(1-x)``, coefficientwise through ``x^N``.

    The residual is ``sum_n (lhs_n - rhs_n) x^n`` so that a mismatch shows
    which order failed.
    """
    L = _log_inv_one_minus(N, SIGMA)
    power = TruncatedSeries([one_like(SIGMA)] + [zero_like(SIGMA)] * N)
    for _ in range(l):
        power = series_mul(power, L)
    rhs = series_mul(series_exp_recurrence(L.scale(SIGMA)), power)
    residual = RatPoly.const(0)
    for n in range(N + 1):
        lhs_n = noncentral_stirling(n, l, SIGMA) / math.factorial(n) if n >= l else RatPoly.const(0)
        residual = residual + (lhs_n - rhs[n] / math.factorial(l)) * X ** n
    return residual.is_zero(), residual


def verify_carlitz_gf(N: int) -> tuple[bool, list]:
    """``sum_(n,l) s_sigma(n, l) y^l x^n / n!`` against ``(1-x)^(-sigma-y)``.

    Both sides are series in ``x`` with coefficients in Q[s, y]; the
    residual is the list of per-order differences.
    """
    L = _log_inv_one_minus(N, SIGMA)
    rhs = series_exp_recurrence(L.scale(SIGMA + Y))
    residuals = []
    for n in range(N + 1):
        lhs_n = sum((Y ** l * noncentral_stirling(n, l, SIGMA) for l in range(n + 1)),
                    RatPoly.const(0)) / math.factorial(n)
        residuals.append(lhs_n - rhs[n])
    return all(r.is_zero() for r in residuals), residuals


# ---------------------------------------------------------------------------
# Numeric spot checks


def random_rationals(count: int, seed: int = 0, bound: int = 7) -> list[tuple[Fraction, Fraction]]:
    rng = random.Random(seed)

    def pick():
        return Fraction(rng.randint(-bound * 12, bound * 12), rng.randint(1, 12))

    return [(pick(), pick()) for _ in range(count)]


def spot_check(m: int, points=None) -> dict:
    """Evaluate both identities and the connection formula at rational points
    through the numeric pipeline; returns the number of failures per check."""
    points = random_rationals(20) if points is None else points
    fails = {"identity_one": 0, "identity_two": 0, "connection": 0}
    for t, x in points:
        lhs, rhs = _identity_one_sides(m, t, x)
        fails["identity_one"] += lhs != rhs
        lhs, rhs = _identity_two_sides(m, t, x)
        fails["identity_two"] += lhs != rhs
        for l in range(m + 1):
            lhs, rhs = _connection_sides(m, l, t)
            fails["connection"] += lhs != rhs
    return fails


# ---------------------------------------------------------------------------
# Suites


@dataclass(frozen=True)
class CaseResult:
    identity: str
    index: dict
    holds: bool
    residual: object

    def to_json(self) -> dict:
        if isinstance(self.residual, list):
            terms = [r.to_json() for r in self.residual if not r.is_zero()]
        else:
            terms = self.residual.to_json()
        out = {"identity": self.identity, "holds": self.holds, "residual_terms": terms}
        out.update(self.index)
        return out


def identity_suite(max_m: int = 10) -> list[CaseResult]:
    out = []
    for m in range(max_m + 1):
        out.append(CaseResult("identity_one", {"m": m}, *verify_identity_one(m)))
        out.append(CaseResult("identity_two", {"m": m}, *verify_identity_two(m)))
    for n in range(max_m + 1):
        for l in range(n + 1):
            out.append(CaseResult("connection", {"n": n, "l": l}, *verify_connection(n, l)))
    return out


def genfun_suite(horizontal_n: int = 12, vertical_l: int = 4, vertical_N: int = 10,
                 carlitz_N: int = 8) -> list[CaseResult]:
    out = [CaseResult("horizontal_gf", {"n": n}, *verify_horizontal_gf(n))
           for n in range(horizontal_n + 1)]
    out += [CaseResult("vertical_gf", {"l": l, "N": vertical_N}, *verify_vertical_gf(l, vertical_N))
            for l in range(vertical_l + 1)]
    out.append(CaseResult("carlitz_gf", {"N": carlitz_N}, *verify_carlitz_gf(carlitz_N)))
    return out
