"""Poincare expansion of balanced gamma ratios

    W(z) = rho^(-z) prod Gamma(A_k z + a_k) / prod Gamma(B_j z + b_j)

normalized as ``z^mu W(z) / nu ~ sum_r C_r z^(-r)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

import mpmath

from .errors import SpecError, UnbalancedSpecError
from .numerics import (
    RatPoly,
    is_exact,
    is_mp,
    poly_eval,
    to_exact,
    to_mp,
    working_precision,
)
from .series import EXP_ROUTES, TruncatedSeries
from .specialnumbers import bernoulli_poly

DEFAULT_PRECISION = 256


def _normalize(v):
    if isinstance(v, (float, complex)):
        return to_mp(v)
    if is_mp(v):
        return v
    if isinstance(v, RatPoly):
        raise TypeError("gamma-ratio parameters must be numbers")
    return to_exact(v)


def _real(v):
    return v.real if not isinstance(v, Fraction) else v


@dataclass(frozen=True)
class GammaRatioSpec:
    """Parameters ``(A, a, B, b)`` of ``W(z)``.

    Exact mode when every parameter is an ``int``/``Fraction``/
    ``GaussianRational``; otherwise float mode at ``precision_bits``.
    """

    A: tuple
    a: tuple
    B: tuple
    b: tuple
    precision_bits: int = DEFAULT_PRECISION

    def __post_init__(self):
        for name in ("A", "a", "B", "b"):
            object.__setattr__(self, name, tuple(_normalize(v) for v in getattr(self, name)))
        if len(self.A) != len(self.a) or len(self.B) != len(self.b):
            raise SpecError("|A| must equal |a| and |B| must equal |b|")
        if not self.A:
            raise SpecError("need at least one numerator gamma factor")
        for scale in self.A + self.B:
            if scale.imag != 0:
                raise SpecError("scale factors A_k, B_j must be real")
            if _real(scale) <= 0:
                raise SpecError("scale factors A_k, B_j must be positive")
        if self.precision_bits < 64:
            raise SpecError("precision_bits must be at least 64")

    @property
    def p(self) -> int:
        return len(self.A)

    @property
    def q(self) -> int:
        return len(self.B)

    @property
    def exact(self) -> bool:
        return all(is_exact(v) for v in self.A + self.a + self.B + self.b)

    @property
    def mode(self) -> str:
        return "exact" if self.exact else "float"

    @property
    def tolerance(self):
        """Float-mode equality tolerance ``2^(-P+8)``."""
        return mpmath.ldexp(1, -self.precision_bits + 8)

    def as_float(self) -> "GammaRatioSpec":
        """The same spec with every parameter converted to mpmath."""
        with working_precision(self.precision_bits):
            conv = {n: tuple(to_mp(v) for v in getattr(self, n)) for n in ("A", "a", "B", "b")}
        return GammaRatioSpec(precision_bits=self.precision_bits, **conv)

    def is_balanced(self) -> bool:
        diff = sum(self.A) - sum(self.B)
        if self.exact:
            return diff == 0
        return abs(diff) <= self.tolerance

    def require_balanced(self):
        if not self.is_balanced():
            raise UnbalancedSpecError(
                f"sum(A) = {sum(self.A)} differs from sum(B) = {sum(self.B)}"
            )

    def swapped(self) -> "GammaRatioSpec":
        return GammaRatioSpec(self.B, self.b, self.A, self.a, self.precision_bits)

    def augmented(self, theta, mu) -> "GammaRatioSpec":
        """Spec of ``W(z) Gamma(z+theta+mu) / Gamma(z+theta+1)``."""
        one = Fraction(1) if self.exact and is_exact(theta) else to_mp(1)
        return GammaRatioSpec(
            self.A + (one,),
            self.a + (theta + mu,),
            self.B + (one,),
            self.b + (theta + 1,),
            self.precision_bits,
        )


# ---------------------------------------------------------------------------
# Normalization invariants


def _integer_root(n: int, k: int) -> int | None:
    """Exact integer k-th root of ``n``, or None."""
    if n < 0:
        return None
    lo, hi = 0, 1 << (n.bit_length() // k + 1)
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if mid ** k <= n:
            lo = mid
        else:
            hi = mid - 1
    return lo if lo ** k == n else None


def exact_power(base: Fraction, exponent) -> Fraction | None:
    """``base ** exponent`` as a rational, or None when it is irrational."""
    base = Fraction(base)
    if base == 1:
        return Fraction(1)
    if not isinstance(exponent, (int, Fraction)):
        if getattr(exponent, "imag", 0) != 0:
            return None
        exponent = Fraction(exponent.real)
    exponent = Fraction(exponent)
    num = base.numerator ** abs(exponent.numerator)
    den = base.denominator ** abs(exponent.numerator)
    rn = _integer_root(num, exponent.denominator)
    rd = _integer_root(den, exponent.denominator)
    if rn is None or rd is None:
        return None
    value = Fraction(rn, rd)
    return 1 / value if exponent < 0 else value


@dataclass(frozen=True)
class Invariants:
    nu: Any
    log_rho: Any
    mu: Any
    rho_exact: Fraction | None = None


def invariants(spec: GammaRatioSpec) -> Invariants:
    """``nu``, ``log rho`` and ``mu``.

    ``nu`` and ``rho`` stay exact whenever every factor happens to be
    rational; ``log rho`` is always an mpmath value.
    """
    spec.require_balanced()
    p, q = spec.p, spec.q
    half = Fraction(1, 2)
    with working_precision(spec.precision_bits):
        mu = sum(spec.b) - sum(spec.a) + Fraction(p - q, 2)
        if not spec.exact:
            mu = to_mp(mu)

        nu = None
        if spec.exact and p == q:
            nu = Fraction(1)
            for A, a in zip(spec.A, spec.a):
                f = exact_power(A, a - half)
                nu = None if f is None or nu is None else nu * f
            for B, b in zip(spec.B, spec.b):
                f = exact_power(B, half - b)
                nu = None if f is None or nu is None else nu * f
        if nu is None:
            log_nu = Fraction(p - q, 2) * mpmath.log(2 * mpmath.pi)
            for A, a in zip(spec.A, spec.a):
                log_nu += (to_mp(a) - half) * mpmath.log(to_mp(A).real)
            for B, b in zip(spec.B, spec.b):
                log_nu += (half - to_mp(b)) * mpmath.log(to_mp(B).real)
            nu = mpmath.exp(log_nu)

        log_rho = mpmath.mpf(0)
        for A in spec.A:
            A = to_mp(A).real
            log_rho += A * mpmath.log(A)
        for B in spec.B:
            B = to_mp(B).real
            log_rho -= B * mpmath.log(B)

        rho_exact = None
        if spec.exact:
            rho_exact = Fraction(1)
            for A in spec.A:
                f = exact_power(A, A)
                rho_exact = None if f is None or rho_exact is None else rho_exact * f
            for B in spec.B:
                f = exact_power(B, -B)
                rho_exact = None if f is None or rho_exact is None else rho_exact * f
    return Invariants(nu=nu, log_rho=log_rho, mu=mu, rho_exact=rho_exact)


# ---------------------------------------------------------------------------
# Q_m and C_r


def _bernoulli_values(n: int, points: Sequence) -> list:
    poly = bernoulli_poly(n)
    return [poly_eval(poly, {"x": x}) for x in points]


def q_coefficients(spec: GammaRatioSpec, M: int) -> list:
    """``[Q_1, ..., Q_M]`` of the log-ratio expansion."""
    spec.require_balanced()
    if M < 1:
        raise ValueError("M must be at least 1")
    with working_precision(spec.precision_bits):
        out = []
        for m in range(1, M + 1):
            num = _bernoulli_values(m + 1, spec.a)
            den = _bernoulli_values(m + 1, spec.b)
            acc = sum((bv / A ** m for bv, A in zip(num, spec.A)), Fraction(0))
            acc -= sum((bv / B ** m for bv, B in zip(den, spec.B)), Fraction(0))
            out.append(acc * Fraction((-1) ** (m + 1), m + 1))
        if not spec.exact:
            out = [to_mp(v) for v in out]
    return out


def c_coefficients(spec: GammaRatioSpec, R: int, route: str = "recurrence") -> list:
    """``[C_0, ..., C_R]`` by the Q-recurrence or one of the exp routes.

    ``recurrence`` uses ``C_r = (1/r) sum_m Q_m C_(r-m)`` directly; the
    ``partition`` and ``nair`` routes exponentiate ``u_k = Q_k / k``.
    """
    if R < 0:
        raise ValueError("R must be nonnegative")
    if route not in EXP_ROUTES:
        raise ValueError(f"unknown route {route!r}; choose from {sorted(EXP_ROUTES)}")
    if R == 0:
        spec.require_balanced()
        return [Fraction(1) if spec.exact else to_mp(1)]
    Q = q_coefficients(spec, R)
    with working_precision(spec.precision_bits):
        if route == "recurrence":
            C = [Fraction(1) if spec.exact else to_mp(1)]
            for r in range(1, R + 1):
                acc = sum((Q[m - 1] * C[r - m] for m in range(1, r + 1)), Fraction(0))
                C.append(acc / r)
            return C
        zero = Fraction(0) if spec.exact else to_mp(0)
        u = TruncatedSeries([zero] + [Q[k - 1] / k for k in range(1, R + 1)])
        return list(EXP_ROUTES[route](u))


def hermite_coeffs(a, J: int) -> list:
    """Coefficients of ``z^-(j-1)``, ``j = 2..J``, in Hermite's expansion of
    ``log Gamma(z+a) - (z+a-1/2) log z + z - log(2 pi)/2``."""
    if J < 2:
        raise ValueError("J must be at least 2")
    a = _normalize(a)
    return [
        (-1) ** j * poly_eval(bernoulli_poly(j), {"x": a}) / (j * (j - 1))
        for j in range(2, J + 1)
    ]


@dataclass(frozen=True)
class PoincareExpansion:
    nu: Any
    log_rho: Any
    mu: Any
    C: tuple
    mode: str
    rho_exact: Fraction | None = None
    spec: GammaRatioSpec | None = field(default=None, compare=False)

    @property
    def R(self) -> int:
        return len(self.C) - 1

    def partial_sum(self, z, R: int | None = None):
        """``sum_{r<=R} C_r z^-r`` in float arithmetic."""
        R = self.R if R is None else R
        z = to_mp(z)
        acc = mpmath.mpc(0)
        for r in range(R, -1, -1):
            acc = acc / z + to_mp(self.C[r])
        return acc


def poincare_expansion(spec: GammaRatioSpec, R: int, route: str = "recurrence") -> PoincareExpansion:
    inv = invariants(spec)
    C = c_coefficients(spec, R, route)
    return PoincareExpansion(
        nu=inv.nu, log_rho=inv.log_rho, mu=inv.mu, C=tuple(C), mode=spec.mode,
        rho_exact=inv.rho_exact, spec=spec,
    )
