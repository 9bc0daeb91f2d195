"""High-precision ground truth independent of the factorial-series code.

``log_gamma`` shifts its argument upward with the recurrence until the
Binet (Stirling) series, truncated after ``n`` terms, has a remainder
provably below the target:

    |R_(2n-1)(w)| <= |B_2n| sec^(2n)(theta/2) / (2n (2n-1) |w|^(2n-1)),
    |B_2n| <= 2 (2n)! zeta(2n) / (2 pi)^(2n),  zeta(2n) <= 1 / (1 - 2^(1-2n)).

The truncation is certified; rounding is covered by running at twice the
requested precision.
"""
from __future__ import annotations

import math
from fractions import Fraction

import mpmath

from .errors import BranchCutError, InvfacError, PoleError
from .gammaexp import GammaRatioSpec, invariants
from .numerics import (
    is_exact,
    nonpositive_integer_distance,
    pochhammer,
    to_exact,
    to_mp,
    working_precision,
)
from .specialnumbers import bernoulli_numbers, norlund_bernoulli_row

MAX_SHIFT = 1 << 16


def _log2_binet_bound(r: float, cos_theta: float, n: int) -> float:
    """log2 of the remainder bound after ``n - 1`` Binet terms at ``|w| = r``."""
    sec2 = 2.0 / (1.0 + cos_theta)
    two_n = 2 * n
    log_b = (
        math.log(2.0)
        + math.lgamma(two_n + 1)
        - two_n * math.log(2 * math.pi)
        - math.log1p(-(2.0 ** (1 - two_n)))
    )
    log_bound = log_b + n * math.log(sec2) - math.log(two_n * (two_n - 1)) - (two_n - 1) * math.log(r)
    return log_bound / math.log(2.0)


def choose_shift(z, target_bits: int) -> tuple[int, int]:
    """Smallest shift ``m`` (and truncation ``n``) certifying ``2^-target_bits``.

    Returns ``(m, n)``: evaluate the Binet series at ``w = z + m`` keeping
    the terms ``r = 1 .. n-1``.
    """
    zc = complex(z)
    margin = 2.0
    for m in range(MAX_SHIFT):
        w = zc + m
        r = abs(w)
        if r == 0:
            continue
        cos_theta = w.real / r
        if cos_theta <= -1.0 + 1e-12:
            continue
        prev = math.inf
        n = 1
        while True:
            lb = _log2_binet_bound(r, cos_theta, n)
            if lb + margin <= -target_bits:
                return m, n
            if lb > prev:
                break
            prev = lb
            n += 1
    raise InvfacError(f"no shift below {MAX_SHIFT} certifies the requested precision")


def _check_argument(z, prec: int, allow_cut: bool):
    if is_exact(z):
        if nonpositive_integer_distance(z) == 0:
            raise PoleError(f"log_gamma has a pole at {z}")
        on_cut = Fraction(to_exact(z).imag) == 0 and Fraction(to_exact(z).real) < 0
    else:
        zc = to_mp(z)
        if nonpositive_integer_distance(zc) <= mpmath.ldexp(1, -prec):
            raise PoleError(f"log_gamma argument {zc} is within 2^-{prec} of a pole")
        on_cut = zc.imag == 0 and zc.real < 0
    if on_cut and not allow_cut:
        shift = math.ceil(-float(to_mp(z).real)) + 1
        raise BranchCutError(
            f"argument {z} lies on the negative real axis; shift by m >= {shift} "
            "(log_gamma(z) = log_gamma(z+m) - sum log(z+i)) or use the reflection formula"
        )


def _log_gamma(z, prec: int, allow_cut: bool = False):
    _check_argument(z, prec, allow_cut)
    with working_precision(prec):
        # on the cut the principal logs pick the upper side; only exp() of
        # the result is meaningful there
        zm = to_mp(z)
        m, n = choose_shift(zm, prec + 4)
        B = bernoulli_numbers(max(2 * n, 2))
        w = zm + m
        acc = (w - mpmath.mpf(0.5)) * mpmath.log(w) - w + mpmath.log(2 * mpmath.pi) / 2
        inv = 1 / w
        inv2 = inv * inv
        power = inv
        for r in range(1, n):
            c = B[2 * r] / (2 * r * (2 * r - 1))
            acc += c * power
            power *= inv2
        for i in range(m):
            acc -= mpmath.log(zm + i)
        return acc


def log_gamma(z, prec: int = 256):
    """Principal-branch ``log Gamma(z)`` with absolute error at most ``2^-prec``.

    The result is an ``mpc`` carrying ``2 * prec`` bits.
    """
    return _log_gamma(z, prec, allow_cut=False)


def gamma(z, prec: int = 256):
    """``Gamma(z)`` via :func:`log_gamma` (negative reals allowed)."""
    _check_argument(z, prec, allow_cut=True)
    with working_precision(prec):
        return mpmath.exp(_log_gamma(z, prec, allow_cut=True))


def _hits_pole(w) -> bool:
    if is_exact(w):
        return nonpositive_integer_distance(w) == 0
    return nonpositive_integer_distance(w) <= mpmath.ldexp(1, -mpmath.mp.prec // 2)


def w_direct(spec: GammaRatioSpec, z, prec: int | None = None):
    """``W(z) = exp(sum log Gamma(A_k z + a_k) - sum log Gamma(B_j z + b_j) - z log rho)``.

    Points where a denominator gamma has a pole (and no numerator one) give
    an exact zero; any numerator pole raises :class:`PoleError`, canceled
    or not.
    """
    prec = spec.precision_bits if prec is None else prec
    inv = invariants(spec)
    num_args = [A * z + a for A, a in zip(spec.A, spec.a)]
    den_args = [B * z + b for B, b in zip(spec.B, spec.b)]
    with working_precision(prec):
        for w in num_args:
            if _hits_pole(w):
                raise PoleError(f"W has a gamma pole at z = {z} (numerator argument {w})")
        if any(_hits_pole(w) for w in den_args):
            return mpmath.mpc(0)
        acc = mpmath.mpc(0)
        for w in num_args:
            acc += _log_gamma(w, prec, allow_cut=True)
        for w in den_args:
            acc -= _log_gamma(w, prec, allow_cut=True)
        acc -= to_mp(z) * inv.log_rho
        return mpmath.exp(acc)


def two_gamma_spec(t, x, prec: int = 256) -> GammaRatioSpec:
    """Spec of ``Gamma(z+t) / Gamma(z+x)``."""
    return GammaRatioSpec((1,), (t,), (1,), (x,), prec)


def _require_not_negative_integer(value, name: str):
    v = to_exact(value) if is_exact(value) else to_mp(value)
    if is_exact(v):
        bad = Fraction(v.imag) == 0 and Fraction(v.real) >= 1 and Fraction(v.real).denominator == 1
    else:
        bad = abs(v.imag) == 0 and v.real >= 1 and mpmath.isint(v.real)
    if bad:
        raise ValueError(f"{name} must not be a positive integer")


def tricomi_erdelyi_eval(t, x, z, N: int, prec: int = 256):
    """Partial sum through ``n = N`` of the asymptotic expansion

        Gamma(z+t)/Gamma(z+x) ~ z^(t-x+1) sum_n (-1)^n B_n^(t-x+1)(t) (x-t)_n / (n! z^(n+1)).
    """
    _require_not_negative_integer(-t, "-t")
    _require_not_negative_integer(-x, "-x")
    with working_precision(prec):
        zm = to_mp(z)
        if zm.real <= 0:
            raise ValueError("tricomi_erdelyi_eval needs |arg z| < pi/2")
        order = t - x + 1
        B = norlund_bernoulli_row(N, order, t)
        acc = mpmath.mpc(0)
        zpow = zm
        for n in range(N + 1):
            coeff = (-1) ** n * B[n] * pochhammer(x - t, n) / math.factorial(n)
            acc += to_mp(coeff) / zpow
            zpow *= zm
        return mpmath.exp(to_mp(order) * mpmath.log(zm)) * acc


def norlund43_eval(t, x, z, N: int, prec: int = 256):
    """Partial sum through ``m = N`` of the convergent series

        Gamma(z+t)/(Gamma(z+x) z^(t-x+1))
            = sum_m (-1)^m B_m^(t-x+m+1)(1-x) (t-x+1)_m / (m! (z+t)_(m+1)).

    Multiply by ``z^(t-x+1)`` to approximate ``Gamma(z+t)/Gamma(z+x)``.
    """
    with working_precision(prec):
        zm = to_mp(z)
        tm = to_mp(t)
        acc = mpmath.mpc(0)
        rising = mpmath.mpc(1)
        for m in range(N + 1):
            rising *= zm + tm + m
            if rising == 0:
                raise PoleError(f"(z+t)_{m + 1} vanishes at z = {z}")
            lead = pochhammer(t - x + 1, m)
            if lead == 0:
                continue
            B = norlund_bernoulli_row(m, t - x + m + 1, 1 - x)[m]
            acc += to_mp((-1) ** m * B * lead / math.factorial(m)) / rising
        return acc
