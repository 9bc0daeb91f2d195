"""Bernoulli numbers and polynomials, Stirling numbers of the first kind,
non-central Stirling numbers and Norlund-Bernoulli polynomials."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .numerics import (
    RatPoly,
    is_mp,
    one_like,
    pochhammer,
    poly_eval,
    to_exact,
    to_mp,
    zero_like,
)
from .series import TruncatedSeries, series_exp_recurrence, series_log


@lru_cache(maxsize=32)
def _bernoulli_tuple(N: int) -> tuple:
    # t/(e^t - 1) = 1 / E(t) with E(t) = sum t^n / (n+1)!
    e = [Fraction(1, math.factorial(n + 1)) for n in range(N + 1)]
    b = [Fraction(1)]
    for n in range(1, N + 1):
        b.append(-sum(e[k] * b[n - k] for k in range(1, n + 1)))
    return tuple(b[n] * math.factorial(n) for n in range(N + 1))


def bernoulli_numbers(N: int) -> tuple:
    """``B_0 .. B_N`` (with ``B_1 = -1/2``) from the series of ``t/(e^t-1)``."""
    if N < 0:
        raise ValueError("N must be nonnegative")
    # callers with nearby N share one cached computation
    key = max(64, -(-N // 64) * 64)
    return _bernoulli_tuple(key)[: N + 1]


def bernoulli_poly(n: int, symbol: str = "x") -> RatPoly:
    """``B_n(x) = sum_k binom(n, k) B_k x^(n-k)``."""
    B = bernoulli_numbers(n)
    return RatPoly({(n - k,): math.comb(n, k) * B[k] for k in range(n + 1)}, (symbol,))


def bernoulli_poly_value(n: int, x):
    return poly_eval(bernoulli_poly(n), {"x": x})


# ---------------------------------------------------------------------------
# Stirling numbers of the first kind (signed)


@lru_cache(maxsize=None)
def _stirling_row(n: int) -> tuple:
    if n == 0:
        return (1,)
    prev = _stirling_row(n - 1)
    m = n - 1
    row = [0] * (n + 1)
    for j in range(1, n + 1):
        row[j] = (prev[j - 1] if j - 1 <= m else 0) - (m * prev[j] if j <= m else 0)
    return tuple(row)


def stirling_first(n: int, j: int) -> int:
    """Signed ``s(n, j)``: coefficients of ``x(x-1)...(x-n+1)``."""
    if n < 0 or j < 0:
        raise ValueError("Stirling indices must be nonnegative")
    if j > n:
        return 0
    for k in range(n + 1):  # fill iteratively; avoids deep recursion for large n
        _stirling_row(k)
    return _stirling_row(n)[j]


@dataclass(frozen=True)
class StirlingTable:
    """Rows ``s(n, .)`` for ``0 <= n <= max_n``."""

    max_n: int
    rows: tuple

    @classmethod
    def build(cls, max_n: int) -> "StirlingTable":
        rows = [(1,)]
        for m in range(max_n):
            prev = rows[-1]
            row = [0] * (m + 2)
            for j in range(1, m + 2):
                row[j] = (prev[j - 1] if j - 1 <= m else 0) - (m * prev[j] if j <= m else 0)
            rows.append(tuple(row))
        return cls(max_n, tuple(rows))

    def __call__(self, n: int, j: int) -> int:
        if n < 0 or j < 0:
            raise ValueError("Stirling indices must be nonnegative")
        if n > self.max_n:
            raise IndexError(f"n={n} beyond table size {self.max_n}")
        return self.rows[n][j] if j <= n else 0


# ---------------------------------------------------------------------------
# Non-central Stirling numbers


def _as_ring_value(v):
    if isinstance(v, str):
        return RatPoly.var(v)
    if is_mp(v) or isinstance(v, (float, complex)):
        return to_mp(v)
    return to_exact(v)


def noncentral_stirling(n: int, r: int, sigma):
    """``s_sigma(n, r) = sum_{k=r}^{n} (-1)^(k+r) binom(n,k) (sigma)_(n-k) s(k,r)``.

    ``sigma`` may be a number, a :class:`RatPoly`, or a symbol name.
    """
    if not 0 <= r <= n:
        if r > n >= 0:
            return zero_like(_as_ring_value(sigma))
        raise ValueError("need 0 <= r <= n")
    sigma = _as_ring_value(sigma)
    acc = zero_like(sigma)
    for k in range(r, n + 1):
        s = stirling_first(k, r)
        if s:
            acc = acc + (-1) ** (k + r) * math.comb(n, k) * s * pochhammer(sigma, n - k)
    return acc


def noncentral_stirling_table(N: int, sigma) -> list[list]:
    """All ``s_sigma(n, r)``, ``0 <= r <= n <= N``, from ``(sigma+x)_n``.

    Uses ``s(n+1, r) = s(n, r-1) + (sigma+n) s(n, r)``; independent of the
    defining sum in :func:`noncentral_stirling`.
    """
    sigma = _as_ring_value(sigma)
    zero = zero_like(sigma)
    rows = [[one_like(sigma)]]
    for n in range(N):
        prev = rows[-1]
        row = []
        for r in range(n + 2):
            left = prev[r - 1] if r >= 1 else zero
            right = (sigma + n) * prev[r] if r <= n else zero
            row.append(left + right)
        rows.append(row)
    return rows


# ---------------------------------------------------------------------------
# Norlund-Bernoulli polynomials


@lru_cache(maxsize=16)
def _log_gf_coeffs(K: int) -> tuple:
    """Coefficients of ``log(t / (e^t - 1))`` through ``t^K``."""
    expm1_over_t = TruncatedSeries([Fraction(1, math.factorial(n + 1)) for n in range(K + 1)])
    return tuple(-c for c in series_log(expm1_over_t))


def norlund_bernoulli_row(K: int, gamma, x) -> list:
    """``B_0^(gamma)(x) .. B_K^(gamma)(x)``.

    Computed as ``k! [t^k] exp(gamma * log(t/(e^t-1)) + x t)``, so ``gamma``
    and ``x`` can be numbers, polynomials or symbol names.
    """
    if K < 0:
        raise ValueError("K must be nonnegative")
    gamma, x = _as_ring_value(gamma), _as_ring_value(x)
    floaty = is_mp(gamma) or is_mp(x)
    if floaty:
        gamma, x = to_mp(gamma), to_mp(x)
    if K == 0:
        return [one_like(gamma + x)]
    L = _log_gf_coeffs(K)
    u = []
    for k in range(K + 1):
        c = gamma * (to_mp(L[k]) if floaty else L[k])
        if k == 1:
            c = c + x
        u.append(c)
    v = series_exp_recurrence(TruncatedSeries(u))
    return [v[k] * math.factorial(k) for k in range(K + 1)]


def norlund_bernoulli(k: int, gamma, x):
    """Single Norlund-Bernoulli value ``B_k^(gamma)(x)``."""
    return norlund_bernoulli_row(k, gamma, x)[k]
