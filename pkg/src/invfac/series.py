"""Truncated formal power series and their exponential.

Coefficients can be any ring elements supporting ``+``, ``*`` and division
by integers: ``Fraction``, :class:`~invfac.numerics.GaussianRational`,
:class:`~invfac.numerics.RatPoly` or mpmath numbers.

Three routes compute ``exp`` of a series with zero constant term:

* :func:`series_exp_recurrence` -- ``v_r = (1/r) sum_k k u_k v_{r-k}``, the
  production path;
* :func:`series_exp_partition` -- sum over integer partitions of ``r``;
* :func:`series_exp_nair` -- ``v_r = det(Omega_r) / r!`` for a lower
  Hessenberg matrix built from the ``u_k``.

The latter two are slow on purpose and exist to cross-check the first.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterator, Sequence

from .errors import RangeError
from .numerics import RatPoly, is_mp, is_zero, one_like, zero_like

PARTITION_ORDER_CAP = 12


def _ring(c) -> str:
    return "float" if is_mp(c) else "exact"


@dataclass(frozen=True)
class TruncatedSeries:
    """Coefficients ``c_0 .. c_N`` of a power series known to order ``N``."""

    coeffs: tuple

    def __init__(self, coeffs: Sequence[Any]):
        cs = tuple(Fraction(c) if isinstance(c, int) and not isinstance(c, bool) else c
                   for c in coeffs)
        if not cs:
            raise ValueError("a truncated series needs at least one coefficient")
        rings = {_ring(c) for c in cs}
        if len(rings) > 1:
            raise TypeError("mixed exact and float coefficients in one series")
        object.__setattr__(self, "coeffs", cs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def ring(self) -> str:
        return _ring(self.coeffs[0])

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self) -> Iterator:
        return iter(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i]

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        _check_compatible(self, other)
        return TruncatedSeries([a + b for a, b in zip(self, other)])

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        _check_compatible(self, other)
        return TruncatedSeries([a - b for a, b in zip(self, other)])

    def scale(self, c) -> "TruncatedSeries":
        return TruncatedSeries([c * a for a in self])

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return len(self) == len(other) and all(a == b for a, b in zip(self, other))

    __hash__ = None  # type: ignore[assignment]


def as_series(u) -> TruncatedSeries:
    return u if isinstance(u, TruncatedSeries) else TruncatedSeries(u)


def _check_compatible(a: TruncatedSeries, b: TruncatedSeries):
    if a.order != b.order:
        raise ValueError(f"truncation orders differ: {a.order} != {b.order}")
    if a.ring != b.ring:
        raise TypeError(f"ring mismatch: {a.ring} vs {b.ring}")


def _require_zero_constant(u: TruncatedSeries):
    if not is_zero(u[0]):
        raise ValueError("exp needs a series with zero constant term")


def series_exp_recurrence(u) -> TruncatedSeries:
    u = as_series(u)
    _require_zero_constant(u)
    v = [one_like(u[0])]
    for r in range(1, u.order + 1):
        acc = zero_like(u[0])
        for k in range(1, r + 1):
            if not is_zero(u[k]):
                acc = acc + k * u[k] * v[r - k]
        v.append(acc / r)
    return TruncatedSeries(v)


def _partitions(r: int, largest: int | None = None) -> Iterator[dict]:
    """Partitions of ``r`` as {part: multiplicity}, parts non-increasing."""
    if largest is None:
        largest = r
    if r == 0:
        yield {}
        return
    for part in range(min(r, largest), 0, -1):
        for rest in _partitions(r - part, part):
            out = dict(rest)
            out[part] = out.get(part, 0) + 1
            yield out


def series_exp_partition(u, max_order: int = PARTITION_ORDER_CAP) -> TruncatedSeries:
    u = as_series(u)
    _require_zero_constant(u)
    if u.order > max_order:
        raise RangeError(f"partition route capped at order {max_order}; use recurrence or nair")
    one = one_like(u[0])
    v = [one]
    for r in range(1, u.order + 1):
        acc = zero_like(u[0])
        for mult in _partitions(r):
            term = one
            for i, k in mult.items():
                term = term * u[i] ** k / math.factorial(k)
            acc = acc + term
        v.append(acc)
    return TruncatedSeries(v)


def _nair_matrix(u: TruncatedSeries, r: int) -> list[list]:
    zero = zero_like(u[0])
    rows = []
    for i in range(1, r + 1):
        row = []
        for j in range(1, r + 1):
            if i >= j:
                d = i - j + 1
                row.append(u[d] * d * math.factorial(i - 1) / math.factorial(j - 1))
            elif i == j - 1:
                row.append(zero - 1)
            else:
                row.append(zero)
        rows.append(row)
    return rows


def determinant(matrix: list[list]):
    """Determinant by Gaussian elimination over a field.

    Exact entries pivot on the first nonzero entry; mpmath entries use
    partial pivoting by magnitude.
    """
    n = len(matrix)
    m = [list(row) for row in matrix]
    if any(isinstance(x, RatPoly) for row in m for x in row):
        raise TypeError("determinant needs field elements, not polynomials")
    det = one_like(m[0][0]) if n else Fraction(1)
    floaty = any(is_mp(x) for row in m for x in row)
    for col in range(n):
        if floaty:
            piv = max(range(col, n), key=lambda i: abs(m[i][col]))
            if m[piv][col] == 0:
                return zero_like(det)
        else:
            piv = next((i for i in range(col, n) if m[i][col] != 0), None)
            if piv is None:
                return zero_like(det)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        p = m[col][col]
        det = det * p
        for i in range(col + 1, n):
            f = m[i][col] / p
            if f != 0:
                for j in range(col, n):
                    m[i][j] = m[i][j] - f * m[col][j]
    return det


def series_exp_nair(u) -> TruncatedSeries:
    u = as_series(u)
    _require_zero_constant(u)
    v = [one_like(u[0])]
    for r in range(1, u.order + 1):
        v.append(determinant(_nair_matrix(u, r)) / math.factorial(r))
    return TruncatedSeries(v)


EXP_ROUTES = {
    "recurrence": series_exp_recurrence,
    "partition": series_exp_partition,
    "nair": series_exp_nair,
}


def series_log(v) -> TruncatedSeries:
    """Formal logarithm of a series with ``v_0 = 1`` (inverse of the exp recurrence)."""
    v = as_series(v)
    if v[0] != 1:
        raise ValueError("log needs a series with constant term 1")
    u = [zero_like(v[0])]
    for r in range(1, v.order + 1):
        acc = zero_like(v[0])
        for k in range(1, r):
            acc = acc + k * u[k] * v[r - k]
        u.append(v[r] - acc / r)
    return TruncatedSeries(u)


def series_mul(a, b) -> TruncatedSeries:
    a, b = as_series(a), as_series(b)
    _check_compatible(a, b)
    out = []
    for n in range(a.order + 1):
        acc = zero_like(a[0])
        for k in range(n + 1):
            acc = acc + a[k] * b[n - k]
        out.append(acc)
    return TruncatedSeries(out)
