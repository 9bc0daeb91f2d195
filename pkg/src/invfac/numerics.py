"""Scalar substrate: exact Gaussian rationals, bivariate rational polynomials,
mpmath-backed float values and the Pochhammer / binomial helpers.

Two evaluation modes coexist:

* exact -- ``int``, :class:`fractions.Fraction`, :class:`GaussianRational`
  and :class:`RatPoly` values; arithmetic never leaves the rationals.
* float -- ``mpmath.mpf`` / ``mpmath.mpc`` at the ambient mpmath precision.
  Pipelines enter float mode through :func:`working_precision`, which runs
  at twice the requested output precision.

Mixing a :class:`GaussianRational` with an mpmath value raises ``TypeError``;
conversion to float is always explicit (:func:`to_mp`).
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Any, Mapping

import mpmath

GUARD_FACTOR = 2

_MP_TYPES = (mpmath.mpf, mpmath.mpc)


class GaussianRational:
    """Complex number with rational real and imaginary parts.

    Arithmetic results with a vanishing imaginary part collapse to plain
    ``Fraction`` so that real exact pipelines stay in ``Fraction``.
    """

    __slots__ = ("_re", "_im")

    def __init__(self, re: Any = 0, im: Any = 0):
        self._re = Fraction(re)
        self._im = Fraction(im)

    @property
    def real(self) -> Fraction:
        return self._re

    @property
    def imag(self) -> Fraction:
        return self._im

    def conjugate(self):
        return make_exact(self._re, -self._im)

    def abs2(self) -> Fraction:
        return self._re * self._re + self._im * self._im

    @staticmethod
    def _coerce(other):
        if isinstance(other, GaussianRational):
            return other._re, other._im
        if isinstance(other, (int, Fraction)):
            return Fraction(other), Fraction(0)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return make_exact(self._re + o[0], self._im + o[1])

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return make_exact(self._re - o[0], self._im - o[1])

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return make_exact(o[0] - self._re, o[1] - self._im)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self._re, self._im
        c, d = o
        return make_exact(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        c, d = o
        den = c * c + d * d
        if den == 0:
            raise ZeroDivisionError("GaussianRational division by zero")
        a, b = self._re, self._im
        return make_exact((a * c + b * d) / den, (b * c - a * d) / den)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(*o) / self

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return 1 / (self ** (-n))
        result: Any = Fraction(1)
        base: Any = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __neg__(self):
        return make_exact(-self._re, -self._im)

    def __pos__(self):
        return self

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._re == o[0] and self._im == o[1]

    def __hash__(self):
        if self._im == 0:
            return hash(self._re)
        return hash((self._re, self._im))

    def __bool__(self):
        return bool(self._re) or bool(self._im)

    def __complex__(self):
        return complex(float(self._re), float(self._im))

    def __repr__(self):
        return f"GaussianRational({self._re!s}, {self._im!s})"

    def __str__(self):
        sign = "+" if self._im >= 0 else "-"
        return f"({self._re}{sign}{abs(self._im)}i)"


def make_exact(re: Any, im: Any = 0):
    """Build an exact scalar, collapsing to ``Fraction`` when ``im == 0``."""
    re, im = Fraction(re), Fraction(im)
    if im == 0:
        return re
    return GaussianRational(re, im)


def is_exact(x) -> bool:
    return isinstance(x, (int, Fraction, GaussianRational, RatPoly))


def is_mp(x) -> bool:
    return isinstance(x, _MP_TYPES)


def to_exact(x):
    """Normalize ``int``/``Fraction``/``GaussianRational`` inputs; reject floats."""
    if isinstance(x, bool):
        raise TypeError("bool is not a number here")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, Fraction):
        return x
    if isinstance(x, GaussianRational):
        return make_exact(x.real, x.imag)
    if isinstance(x, RatPoly):
        return x
    raise TypeError(f"not an exact value: {x!r}")


def to_mp(x):
    """Convert any supported scalar to mpmath at the ambient precision."""
    if isinstance(x, mpmath.mpc):
        return x
    if isinstance(x, mpmath.mpf):
        return mpmath.mpc(x)
    if isinstance(x, (int, Fraction)):
        x = Fraction(x)
        return mpmath.mpc(mpmath.mpf(x.numerator) / x.denominator)
    if isinstance(x, GaussianRational):
        re = mpmath.mpf(x.real.numerator) / x.real.denominator
        im = mpmath.mpf(x.imag.numerator) / x.imag.denominator
        return mpmath.mpc(re, im)
    if isinstance(x, (float, complex)):
        return mpmath.mpc(x)
    raise TypeError(f"cannot convert {x!r} to mpmath")


def working_precision(bits: int):
    """Context manager running mpmath at ``GUARD_FACTOR * bits``.

    The doubled guard band is a heuristic, not an error bound.
    """
    if bits < 64:
        raise ValueError("precision must be at least 64 bits")
    return mpmath.workprec(GUARD_FACTOR * bits)


def is_zero(x, tol=None) -> bool:
    if isinstance(x, RatPoly):
        return x.is_zero()
    if is_mp(x) or isinstance(x, (float, complex)):
        if tol is None:
            return x == 0
        return abs(x) <= tol
    return x == 0


def one_like(x):
    """Multiplicative identity in the ring of ``x``."""
    if isinstance(x, (int, GaussianRational)):
        return Fraction(1)
    return x * 0 + 1


def zero_like(x):
    if isinstance(x, (int, GaussianRational)):
        return Fraction(0)
    return x * 0


# ---------------------------------------------------------------------------
# Polynomials over Q in at most two symbols


class RatPoly:
    """Polynomial with rational coefficients in up to two named symbols.

    ``terms`` maps exponent tuples (one entry per symbol) to nonzero
    ``Fraction`` coefficients.  Binary operations align the symbol lists
    of both operands; a result needing three symbols is rejected.
    """

    __slots__ = ("symbols", "terms")
    MAX_SYMBOLS = 2

    def __init__(self, terms: Mapping[tuple, Any] | None = None, symbols=()):
        symbols = tuple(symbols)
        if len(symbols) > self.MAX_SYMBOLS:
            raise ValueError("RatPoly supports at most two symbols")
        if len(set(symbols)) != len(symbols):
            raise ValueError(f"duplicate symbols {symbols}")
        clean = {}
        for exps, c in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != len(symbols):
                raise ValueError("exponent tuple does not match symbols")
            if any(e < 0 for e in exps):
                raise ValueError("negative exponent")
            c = Fraction(c)
            if c:
                clean[exps] = clean.get(exps, Fraction(0)) + c
        self.symbols = symbols
        self.terms = {k: v for k, v in clean.items() if v}

    @classmethod
    def var(cls, name: str) -> "RatPoly":
        return cls({(1,): 1}, (name,))

    @classmethod
    def const(cls, c, symbols=()) -> "RatPoly":
        return cls({(0,) * len(symbols): c}, symbols)

    # -- structure -----------------------------------------------------

    def _reindexed(self, symbols: tuple) -> dict:
        pos = [symbols.index(s) for s in self.symbols]
        out = {}
        for exps, c in self.terms.items():
            new = [0] * len(symbols)
            for p, e in zip(pos, exps):
                new[p] = e
            out[tuple(new)] = c
        return out

    def _align(self, other: "RatPoly"):
        symbols = self.symbols + tuple(s for s in other.symbols if s not in self.symbols)
        if len(symbols) > self.MAX_SYMBOLS:
            raise ValueError(f"too many symbols: {symbols}")
        return symbols, self._reindexed(symbols), other._reindexed(symbols)

    @staticmethod
    def _lift(other):
        if isinstance(other, RatPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return RatPoly.const(other)
        if isinstance(other, GaussianRational) and other.imag == 0:
            return RatPoly.const(other.real)
        return None

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return next(iter(self.terms.values()), Fraction(0))

    def degree(self, symbol: str | None = None) -> int:
        if not self.terms:
            return -1
        if symbol is None:
            return max(sum(e) for e in self.terms)
        if symbol not in self.symbols:
            return 0
        i = self.symbols.index(symbol)
        return max(e[i] for e in self.terms)

    def coeff(self, **powers) -> Fraction:
        key = tuple(powers.get(s, 0) for s in self.symbols)
        if any(s not in self.symbols and e for s, e in powers.items()):
            return Fraction(0)
        return self.terms.get(key, Fraction(0))

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        symbols, a, b = self._align(other)
        out = dict(a)
        for k, c in b.items():
            out[k] = out.get(k, Fraction(0)) + c
        return RatPoly(out, symbols)

    __radd__ = __add__

    def __neg__(self):
        return RatPoly({k: -c for k, c in self.terms.items()}, self.symbols)

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            return RatPoly({k: v * c for k, v in self.terms.items()}, self.symbols)
        other = self._lift(other)
        if other is None:
            return NotImplemented
        symbols, a, b = self._align(other)
        out: dict = {}
        for ka, ca in a.items():
            for kb, cb in b.items():
                k = tuple(x + y for x, y in zip(ka, kb))
                out[k] = out.get(k, Fraction(0)) + ca * cb
        return RatPoly(out, symbols)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, RatPoly):
            other = other.constant_value()
        if isinstance(other, GaussianRational) and other.imag == 0:
            other = other.real
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        c = Fraction(other)
        if c == 0:
            raise ZeroDivisionError("RatPoly division by zero")
        return RatPoly({k: v / c for k, v in self.terms.items()}, self.symbols)

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = RatPoly.const(1, self.symbols)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        _, a, b = self._align(other)
        return a == b

    __hash__ = None  # type: ignore[assignment]

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"RatPoly({self!s})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for exps in sorted(self.terms, key=lambda e: (-sum(e), tuple(-x for x in e))):
            c = self.terms[exps]
            mono = "*".join(
                s if e == 1 else f"{s}^{e}" for s, e in zip(self.symbols, exps) if e
            )
            mag = abs(c)
            if mono and mag == 1:
                body = mono
            elif mono:
                body = f"{mag}*{mono}"
            else:
                body = str(mag)
            parts.append(("-" if c < 0 else "+", body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def to_json(self) -> dict:
        terms = [
            {"exponents": list(e), "coeff": format_number(c)}
            for e, c in sorted(self.terms.items())
        ]
        return {"symbols": list(self.symbols), "terms": terms}


def poly_eval(p: RatPoly, point: Mapping[str, Any]):
    """Substitute values for the symbols of ``p``.

    Horner in the first symbol, with the inner coefficient polynomials in
    the second symbol evaluated the same way.  Values may be exact scalars,
    mpmath numbers or other polynomials.
    """
    missing = [s for s in p.symbols if s not in point]
    if missing:
        raise KeyError(f"unbound symbol(s): {', '.join(missing)}")
    values = [point[s] for s in p.symbols]
    float_mode = any(is_mp(v) for v in values)

    def lift(c):
        return to_mp(c) if float_mode else c

    if not p.symbols:
        return lift(p.terms.get((), Fraction(0)))

    def horner(coeffs: dict, x):
        if not coeffs:
            return lift(Fraction(0))
        acc = lift(Fraction(0))
        for e in range(max(coeffs), -1, -1):
            acc = acc * x + coeffs.get(e, lift(Fraction(0)))
        return acc

    if len(values) == 1:
        return horner({e[0]: lift(c) for e, c in p.terms.items()}, values[0])
    inner: dict = {}
    for (e0, e1), c in p.terms.items():
        inner.setdefault(e0, {})[e1] = lift(c)
    outer = {e0: horner(cs, values[1]) for e0, cs in inner.items()}
    return horner(outer, values[0])


# ---------------------------------------------------------------------------
# Pochhammer and binomials


def pochhammer(z, n: int):
    """Rising factorial ``z (z+1) ... (z+n-1)``; ``1`` for ``n == 0``.

    mpmath floats carry an unbounded binary exponent, so the running
    product cannot overflow and an exact zero factor stays exactly zero.
    """
    if n < 0:
        raise ValueError("pochhammer needs n >= 0")
    if isinstance(z, int):
        z = Fraction(z)
    result = one_like(z)
    for i in range(n):
        result = result * (z + i)
    return result


def gen_binomial(x, k: int):
    """Generalized binomial coefficient ``x (x-1) ... (x-k+1) / k!``."""
    if k < 0:
        raise ValueError("gen_binomial needs k >= 0")
    if isinstance(x, int):
        x = Fraction(x)
    num = one_like(x)
    for i in range(k):
        num = num * (x - i)
    return num / math.factorial(k)


def falling(x, k: int):
    """Falling factorial ``x (x-1) ... (x-k+1)``."""
    result = one_like(x)
    for i in range(k):
        result = result * (x - i)
    return result


def nonpositive_integer_distance(w):
    """Distance from ``w`` to the set {0, -1, -2, ...}.

    Exact inputs return the exact L1 distance (zero iff ``w`` is a hit);
    float inputs return the Euclidean distance as ``mpf``.
    """
    if is_exact(w):
        w = to_exact(w)
        re, im = Fraction(w.real), Fraction(w.imag)
        nearest = min(0, round(re))
        return abs(re - nearest) + abs(im)
    w = to_mp(w)
    nearest = min(0, int(mpmath.nint(w.real)))
    return abs(w - nearest)


# ---------------------------------------------------------------------------
# JSON interchange

_RATIONAL_RE = re.compile(r"^\s*[+-]?\d+\s*(/\s*\d+\s*)?$")


def parse_number(value):
    """Parse a JSON number representation.

    ``"p/q"`` and integer strings or JSON integers give exact values;
    decimal strings and JSON floats give ``mpf`` at the ambient precision.
    ``{"re": ..., "im": ...}`` objects give complex values of the same kind.
    """
    if isinstance(value, dict):
        if set(value) - {"re", "im"}:
            raise ValueError(f"unexpected keys in complex value: {sorted(value)}")
        re_v = parse_number(value.get("re", "0"))
        im_v = parse_number(value.get("im", "0"))
        if is_exact(re_v) and is_exact(im_v):
            return make_exact(re_v, im_v)
        return mpmath.mpc(to_mp(re_v).real, to_mp(im_v).real)
    if isinstance(value, bool):
        raise ValueError("booleans are not numbers")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return mpmath.mpf(repr(value))
    if isinstance(value, str):
        s = value.strip()
        if _RATIONAL_RE.match(s):
            return Fraction(s.replace(" ", ""))
        try:
            return mpmath.mpf(s)
        except (ValueError, TypeError) as exc:
            raise ValueError(f"cannot parse number {value!r}") from exc
    raise ValueError(f"cannot parse number {value!r}")


def _format_real(x, digits: int | None):
    if isinstance(x, (int, Fraction)):
        x = Fraction(x)
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if digits is None:
        digits = mpmath.mp.dps
    return mpmath.nstr(mpmath.mpf(x), digits)


def format_number(v, digits: int | None = None):
    """Inverse of :func:`parse_number` (bit-exact for rationals)."""
    if isinstance(v, RatPoly):
        return v.to_json()
    if isinstance(v, GaussianRational):
        return {"re": _format_real(v.real, None), "im": _format_real(v.imag, None)}
    if isinstance(v, mpmath.mpc) or isinstance(v, complex):
        return {"re": _format_real(v.real, digits), "im": _format_real(v.imag, digits)}
    return _format_real(v, digits)
