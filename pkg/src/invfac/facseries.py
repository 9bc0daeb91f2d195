"""Convergent inverse factorial series for balanced gamma ratios.

Two forms are supported:

``PlainShift(sigma)`` (requires ``mu == 1``)::

    W(z) = nu * sum_n d_n / (z+sigma)_(n+1),   d_n = sum_r C_r s_sigma(n, r)

``GammaPrefactor(theta)`` (any ``mu``)::

    W(z) = nu * sum_n h_n Gamma(z+theta+1) / Gamma(z+theta+mu+n+1)

Stored coefficients never include ``nu``; it is kept as ``scale`` because it
is irrational in general while the coefficients are exact for rational
parameters.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Sequence

import mpmath

from .errors import AmbiguousError, PoleError, RangeError, SpecError
from .gammaexp import GammaRatioSpec, c_coefficients, invariants
from .numerics import (
    gen_binomial,
    is_exact,
    nonpositive_integer_distance,
    pochhammer,
    to_exact,
    to_mp,
    working_precision,
    zero_like,
)
from .oracle import _log_gamma
from .specialnumbers import norlund_bernoulli_row, noncentral_stirling_table, stirling_first

PLAIN = "PlainShift"
GAMMA = "GammaPrefactor"


@dataclass(frozen=True)
class FactorialSeries:
    """An evaluable inverse factorial series.

    ``shift`` is ``sigma`` for :data:`PLAIN` and ``theta`` for :data:`GAMMA`.
    The n-th term is ``scale * coeffs[n] / (z+sigma)_(n+1)`` or
    ``scale * coeffs[n] * Gamma(z+theta+1) / Gamma(z+theta+mu+n+1)``.
    """

    form: str
    shift: Any
    mu: Any
    scale: Any
    coeffs: tuple
    spec: GammaRatioSpec = field(compare=False)
    route: str = "stirling"

    def __post_init__(self):
        if self.form not in (PLAIN, GAMMA):
            raise ValueError(f"unknown form {self.form!r}")
        if not self.coeffs:
            raise ValueError("need at least one coefficient")

    @property
    def N(self) -> int:
        return len(self.coeffs) - 1

    @property
    def exact(self) -> bool:
        return all(is_exact(c) for c in self.coeffs) and is_exact(self.shift)

    def scaled_coefficients(self) -> list:
        """Coefficients with ``nu`` folded in (``nu * d_n`` or ``h_n``)."""
        return [self.scale * c for c in self.coeffs]


def _mu_is_one(spec: GammaRatioSpec, mu) -> bool:
    if spec.exact:
        return mu == 1
    return abs(to_mp(mu) - 1) <= spec.tolerance


def _coerce_param(spec: GammaRatioSpec, v):
    if spec.exact and is_exact(v):
        return to_exact(v)
    return to_mp(v)


def _combine(C: Sequence, table: list[list], N: int) -> list:
    out = []
    for n in range(N + 1):
        acc = zero_like(table[n][0])
        for r in range(n + 1):
            acc = acc + C[r] * table[n][r]
        out.append(acc)
    return out


def theorem_coeffs(spec: GammaRatioSpec, sigma, N: int) -> FactorialSeries:
    """``d_n = sum_{r<=n} C_r s_sigma(n, r)`` for ``mu = 1`` specs."""
    inv = invariants(spec)
    if not _mu_is_one(spec, inv.mu):
        raise SpecError(
            f"theorem_coeffs needs mu = 1 (got mu = {inv.mu}); use corollary_coeffs_stirling"
        )
    if not spec.exact or not is_exact(sigma):
        spec = spec if not spec.exact else spec.as_float()
    with working_precision(spec.precision_bits):
        sigma = _coerce_param(spec, sigma)
        C = c_coefficients(spec, N)
        table = noncentral_stirling_table(N, sigma)
        d = _combine(C, table, N)
    return FactorialSeries(PLAIN, sigma, Fraction(1) if spec.exact else to_mp(1),
                           inv.nu, tuple(d), spec, "theorem")


def corollary_coeffs_stirling(spec: GammaRatioSpec, theta, N: int) -> FactorialSeries:
    """``h_n / nu = sum_r C_r(augmented) s_(theta+mu)(n, r)``.

    The augmented spec appends ``Gamma(z+theta+mu) / Gamma(z+theta+1)``,
    which has ``mu = 1``.  For ``mu = 1`` the gamma prefactor collapses and
    the result is returned in plain form with ``sigma = theta + 1``.
    """
    inv = invariants(spec)
    if not spec.exact or not is_exact(theta):
        spec = spec if not spec.exact else spec.as_float()
    with working_precision(spec.precision_bits):
        theta = _coerce_param(spec, theta)
        mu = inv.mu if spec.exact else to_mp(inv.mu)
        aug = spec.augmented(theta, mu)
        C = c_coefficients(aug, N)
        table = noncentral_stirling_table(N, theta + mu)
        h = _combine(C, table, N)
    if _mu_is_one(spec, mu):
        return FactorialSeries(PLAIN, theta + 1, mu, inv.nu, tuple(h), spec, "corollary-stirling")
    return FactorialSeries(GAMMA, theta, mu, inv.nu, tuple(h), spec, "corollary-stirling")


def _is_nonpositive_integer(spec: GammaRatioSpec, v) -> bool:
    if is_exact(v):
        return nonpositive_integer_distance(v) == 0
    return nonpositive_integer_distance(v) <= spec.tolerance


def corollary_coeffs_nb(spec: GammaRatioSpec, theta, N: int) -> FactorialSeries:
    """``h_n / nu = sum_{r+k=n} (-1)^k C_r (r+mu)_k B_k^(n+mu)(-theta) / k!``.

    ``Gamma(n+mu)/Gamma(r+mu)`` is taken as the Pochhammer ``(r+mu)_(n-r)``.
    """
    inv = invariants(spec)
    if _is_nonpositive_integer(spec, inv.mu):
        raise SpecError(f"mu = {inv.mu} is a nonpositive integer; use corollary_coeffs_stirling")
    if not spec.exact or not is_exact(theta):
        spec = spec if not spec.exact else spec.as_float()
    with working_precision(spec.precision_bits):
        theta = _coerce_param(spec, theta)
        mu = inv.mu if spec.exact else to_mp(inv.mu)
        C = c_coefficients(spec, N)
        h = []
        for n in range(N + 1):
            B = norlund_bernoulli_row(n, n + mu, -theta)
            acc = zero_like(C[0])
            for r in range(n + 1):
                k = n - r
                acc = acc + (-1) ** k * C[r] * pochhammer(r + mu, k) * B[k] / math.factorial(k)
            h.append(acc)
    if _mu_is_one(spec, mu):
        return FactorialSeries(PLAIN, theta + 1, mu, inv.nu, tuple(h), spec, "corollary-nb")
    return FactorialSeries(GAMMA, theta, mu, inv.nu, tuple(h), spec, "corollary-nb")


# ---------------------------------------------------------------------------
# Rearrangements


def power_to_factorial(C: Sequence, N: int | None = None) -> list:
    """``b_n = (-1)^n sum_r (-1)^r s(n, r) C_r``: coefficients of ``sum b_n/(z)_(n+1)``
    equal to ``sum C_r / z^(r+1)``."""
    N = len(C) - 1 if N is None else N
    if N >= len(C):
        raise RangeError(f"need C_0..C_{N}, got {len(C)} values")
    out = []
    for n in range(N + 1):
        acc = zero_like(C[0])
        for r in range(n + 1):
            s = stirling_first(n, r)
            if s:
                acc = acc + (-1) ** r * s * C[r]
        out.append((-1) ** n * acc)
    return out


def shift_coeffs(u: Sequence, sigma) -> list:
    """``v_(k+1) = sum_j (sigma)_j / j! u_(k+1-j)``; ``u[0]`` holds ``u_1``."""
    weights = [pochhammer(sigma, j) / math.factorial(j) for j in range(len(u))]
    return [sum((weights[j] * u[k - j] for j in range(k + 1)), zero_like(u[0]))
            for k in range(len(u))]


def unshift_coeffs(v: Sequence, sigma) -> list:
    """Inverse of :func:`shift_coeffs`: ``u_(k+1) = sum_j (-1)^j binom(sigma, j) v_(k+1-j)``."""
    weights = [(-1) ** j * gen_binomial(sigma, j) for j in range(len(v))]
    return [sum((weights[j] * v[k - j] for j in range(k + 1)), zero_like(v[0]))
            for k in range(len(v))]


def theorem_coeffs_via_shift(C: Sequence, sigma, N: int) -> list:
    """``d_n`` through the two-step route: Stirling rearrangement, then shift."""
    b = power_to_factorial(C, N)
    u = [b[n] / math.factorial(n) for n in range(N + 1)]
    v = shift_coeffs(u, sigma)
    return [v[n] * math.factorial(n) for n in range(N + 1)]


# ---------------------------------------------------------------------------
# Evaluation


@dataclass(frozen=True)
class Diagnostics:
    term_magnitudes: tuple
    tail_ratio: Any  # |last term| / |partial sum|; heuristic truncation indicator


def _on_lattice(w, tol) -> bool:
    if is_exact(w):
        return nonpositive_integer_distance(w) == 0
    return nonpositive_integer_distance(w) <= tol


def _magnitude(x) -> float:
    if is_exact(x):
        return abs(complex(x))
    return float(abs(x))


def evaluate(fs: FactorialSeries, z, N: int | None = None):
    """Plain partial sum ``S_N`` and per-term diagnostics.

    Exact inputs (exact coefficients, shift, ``z`` and ``nu``) give an exact
    result for the plain form, and for the gamma form when ``mu`` is an
    integer.  Otherwise the result is an ``mpc``.
    """
    N = fs.N if N is None else N
    if N > fs.N:
        raise RangeError(f"N = {N} exceeds the {fs.N + 1} stored coefficients; "
                         "recompute the series with a larger order")
    if N < 0:
        raise RangeError("N must be nonnegative")
    spec = fs.spec
    tol = mpmath.ldexp(1, -spec.precision_bits // 2)
    with working_precision(spec.precision_bits):
        exact = fs.exact and is_exact(z) and (fs.form == PLAIN or _is_integer(fs.mu))
        if not exact:
            z = to_mp(z)
        if fs.form == PLAIN:
            base = z + fs.shift
            if _on_lattice(base, tol):
                raise PoleError(f"z = {z} lies on the excluded lattice -sigma - l")
            recip = 1 / base
            step_base = base
        else:
            start = z + fs.shift + 1
            if _on_lattice(start, tol):
                raise PoleError(f"z = {z} is a pole of Gamma(z+theta+1)")
            if _on_lattice(start + fs.mu, tol):
                raise PoleError(f"z = {z}: Gamma(z+theta+mu+1) is singular, prefactor undefined")
            recip = _prefactor(start, fs.mu, exact, spec.precision_bits)
            # Gamma(start)/Gamma(start+mu+n) = previous / (start+mu+n-1)
            step_base = start + fs.mu - 1
        total = zero_like(recip)
        mags = []
        term = zero_like(recip)
        for n in range(N + 1):
            if n > 0:
                recip = recip / (step_base + n)
            term = fs.coeffs[n] * recip
            total = total + term
            mags.append(_magnitude(term))
        value = fs.scale * total
        scale_mag = _magnitude(fs.scale)
        mags = tuple(m * scale_mag for m in mags)
        tail = mags[-1] / _magnitude(value) if _magnitude(value) else math.inf
        return value, Diagnostics(mags, tail)


def _is_integer(mu) -> bool:
    if not is_exact(mu):
        return False
    mu = to_exact(mu)
    return Fraction(mu.imag) == 0 and Fraction(mu.real).denominator == 1


def _prefactor(start, mu, exact: bool, prec: int):
    """``Gamma(start) / Gamma(start + mu)``."""
    if exact and _is_integer(mu):
        m = int(Fraction(to_exact(mu).real))
        if m >= 0:
            return 1 / pochhammer(start, m)
        return pochhammer(start + m, -m)
    return mpmath.exp(_log_gamma(start, prec, allow_cut=True)
                      - _log_gamma(start + to_mp(mu), prec, allow_cut=True))


# ---------------------------------------------------------------------------
# Convergence abscissa


class Classification(str, Enum):
    EXACT = "ExactAbscissa"
    UPPER_BOUND = "UpperBoundOnly"
    COINCIDENT = "CoincidentPoleIgnored"


@dataclass(frozen=True)
class AbscissaReport:
    """Rightmost non-canceled pole of ``W`` and how it bounds convergence.

    ``alpha`` is always the real part of the rightmost pole of the expanded
    function (``-inf`` when no pole survives inside the scan window).
    ``effective_alpha`` equals ``alpha`` except for
    :attr:`Classification.COINCIDENT`, where it skips the ignored pole.
    """

    alpha: Any
    classification: Classification
    rightmost_pole: Any
    pole_order: int
    canceled_candidates: tuple
    series_shift: Any
    effective_alpha: Any

    def to_json(self, fmt) -> dict:
        def real(v):
            if v is None:
                return None
            if v in (-math.inf, math.inf):
                return "-inf" if v < 0 else "inf"
            return fmt(v)

        return {
            "alpha": real(self.alpha),
            "classification": self.classification.value,
            "rightmost_pole": None if self.rightmost_pole is None else fmt(self.rightmost_pole),
            "pole_order": self.pole_order,
            "canceled_candidates": [fmt(c) for c in self.canceled_candidates],
            "series_shift": fmt(self.series_shift),
            "effective_alpha": real(self.effective_alpha),
        }


SCAN_WINDOW = 64


class _Decider:
    """Exact or tolerance-based ``is this a nonpositive integer`` decisions."""

    def __init__(self, exact: bool, eps):
        self.exact = exact
        self.eps = eps
        self.band = None if exact else mpmath.sqrt(eps)

    def hit(self, w) -> bool:
        if self.exact:
            return nonpositive_integer_distance(w) == 0
        d = nonpositive_integer_distance(w)
        if d <= self.eps:
            return True
        if d < self.band:
            raise AmbiguousError(f"cannot decide whether {w} is a nonpositive integer "
                                 f"(distance {mpmath.nstr(d, 5)}, eps {mpmath.nstr(self.eps, 5)})")
        return False

    def same(self, u, v) -> bool:
        if self.exact:
            return u == v
        d = abs(to_mp(u) - to_mp(v))
        if d <= self.eps:
            return True
        if d < self.band:
            raise AmbiguousError(f"cannot decide whether {u} and {v} coincide")
        return False


def _pole_scan(spec: GammaRatioSpec, decider: _Decider, window: int):
    """Candidate poles sorted by decreasing real part, with their orders."""
    real = (lambda v: Fraction(v.real)) if decider.exact else (lambda v: to_mp(v).real)
    crude = max(real(-a / A) for A, a in zip(spec.A, spec.a))
    depth = max(spec.p * max(1 / real(A) for A in spec.A), window)
    floor = crude - depth
    cands = []
    seen = set()
    for A, a in zip(spec.A, spec.a):
        l = 0
        while True:
            zc = -(a + l) / A
            if real(zc) < floor:
                break
            if decider.exact:
                if zc not in seen:
                    seen.add(zc)
                    cands.append(zc)
            elif not any(decider.same(zc, c) for c in cands):
                cands.append(zc)
            l += 1
    cands.sort(key=lambda c: real(c), reverse=True)
    out = []
    for zc in cands:
        num = sum(1 for A, a in zip(spec.A, spec.a) if decider.hit(A * zc + a))
        den = sum(1 for B, b in zip(spec.B, spec.b) if decider.hit(B * zc + b))
        out.append((zc, num - den))
    return out, real


def abscissa(spec: GammaRatioSpec, sigma=None, theta=None, eps=None,
             window: int = SCAN_WINDOW) -> AbscissaReport:
    """Convergence abscissa report for the plain (``sigma``) or gamma (``theta``) form.

    For the gamma form the poles examined are those of
    ``W(z) Gamma(z+theta+mu) / Gamma(z+theta+1)`` and the series shift is
    ``theta + mu``.
    """
    if (sigma is None) == (theta is None):
        raise ValueError("give exactly one of sigma or theta")
    spec.require_balanced()
    inv = invariants(spec)
    exact = spec.exact and is_exact(sigma if theta is None else theta)
    work = spec if exact else (spec.as_float() if spec.exact else spec)
    with working_precision(spec.precision_bits):
        if eps is None:
            eps = mpmath.ldexp(1, -spec.precision_bits // 2)
        decider = _Decider(exact, eps)
        if theta is not None:
            theta = to_exact(theta) if exact else to_mp(theta)
            mu = inv.mu if exact else to_mp(inv.mu)
            target = work.augmented(theta, mu)
            shift = theta + mu
        else:
            target = work
            shift = to_exact(sigma) if exact else to_mp(sigma)
        scan, real = _pole_scan(target, decider, window)
        poles = [(zc, order) for zc, order in scan if order > 0]
        canceled = tuple(zc for zc, order in scan if order <= 0)
        if not poles:
            return AbscissaReport(-math.inf, Classification.UPPER_BOUND, None, 0,
                                  canceled, shift, -math.inf)
        z_star, order = poles[0]
        alpha = real(z_star)
        if order == 1 and decider.same(z_star, -shift):
            nxt = poles[1:]
            eff = real(nxt[0][0]) if nxt else -math.inf
            cls = Classification.COINCIDENT
        else:
            eff = alpha
            cls = Classification.EXACT if real(shift) + alpha > 0 else Classification.UPPER_BOUND
        return AbscissaReport(alpha, cls, z_star, order, canceled, shift, eff)
