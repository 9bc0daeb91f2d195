"""Named regression specs and a seeded generator of random balanced specs."""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .gammaexp import GammaRatioSpec, invariants

F = Fraction


@dataclass(frozen=True)
class Fixture:
    spec: GammaRatioSpec
    alpha: Fraction  # real part of the rightmost non-canceled pole, by hand
    note: str


FIXTURES = {
    # 1/z: poles at -1, -2, ... cancel against the denominator
    "inverse_z": Fixture(GammaRatioSpec((1,), (0,), (1,), (1,)), F(0), "Gamma(z)/Gamma(z+1) = 1/z"),
    # double pole at 0, nothing cancels
    "half_shift_squared": Fixture(
        GammaRatioSpec((1, 1), (0, 0), (1, 1), (F(1, 2), F(1, 2))), F(0),
        "Gamma(z)^2/Gamma(z+1/2)^2",
    ),
    # 1/(z+2): only -2 survives
    "shifted_inverse": Fixture(GammaRatioSpec((1,), (2,), (1,), (3,)), F(-2), "Gamma(z+2)/Gamma(z+3)"),
    # Gamma(2z)/Gamma(z)^2: poles of Gamma(2z) at z = -1/2, -3/2, ... survive; z = 0, -1, ... cancel
    "duplication": Fixture(
        GammaRatioSpec((2,), (0,), (1, 1), (0, 0)), F(-1, 2), "Gamma(2z)/Gamma(z)^2",
    ),
    # mu = 1/2, rightmost pole at 0
    "half_ratio": Fixture(GammaRatioSpec((1,), (0,), (1,), (F(1, 2),)), F(0), "Gamma(z)/Gamma(z+1/2)"),
    # numerator poles at -1/3 - l and -5/2 - l; none cancel
    "mixed": Fixture(
        GammaRatioSpec((1, 1), (F(1, 3), F(5, 2)), (1, 1), (F(7, 4), F(1, 6))), F(-1, 3),
        "Gamma(z+1/3)Gamma(z+5/2)/(Gamma(z+7/4)Gamma(z+1/6))",
    ),
    # (z+1)/((z+5)(z+6)): poles -2, -3, -4 cancel, -5 and -6 survive
    "rational": Fixture(
        GammaRatioSpec((1, 1), (2, 5), (1, 1), (7, 1)), F(-5), "Gamma(z+2)Gamma(z+5)/(Gamma(z+7)Gamma(z+1))",
    ),
}


def _rational(rng: random.Random, lo: int, hi: int, max_den: int = 6) -> Fraction:
    den = rng.randint(1, max_den)
    return Fraction(rng.randint(lo * den, hi * den), den)


def random_balanced_spec(rng: random.Random, max_factors: int = 3,
                         mu_ok=lambda mu: True, precision_bits: int = 256) -> GammaRatioSpec:
    """Random exact balanced spec with small rational parameters.

    ``mu_ok`` filters on the spec's ``mu``; sampling repeats until it passes.
    """
    while True:
        p = rng.randint(1, max_factors)
        q = rng.randint(1, max_factors)
        A = [Fraction(rng.randint(1, 6), rng.randint(1, 3)) for _ in range(p)]
        B = [Fraction(rng.randint(1, 6), rng.randint(1, 3)) for _ in range(q - 1)]
        last = sum(A) - sum(B, Fraction(0))
        if last <= 0:
            continue
        B.append(last)
        a = [_rational(rng, -2, 3) for _ in range(p)]
        b = [_rational(rng, -2, 3) for _ in range(q)]
        spec = GammaRatioSpec(tuple(A), tuple(a), tuple(B), tuple(b), precision_bits)
        if mu_ok(invariants(spec).mu):
            return spec


def random_mu_one_spec(rng: random.Random, precision_bits: int = 256) -> GammaRatioSpec:
    """Random exact balanced spec adjusted so that ``mu = 1`` (last ``b`` absorbs it)."""
    spec = random_balanced_spec(rng, precision_bits=precision_bits)
    mu = invariants(spec).mu
    b = spec.b[:-1] + (spec.b[-1] + 1 - mu,)
    return GammaRatioSpec(spec.A, spec.a, spec.B, b, precision_bits)


def generic_mu(mu) -> bool:
    """``mu`` outside ``{1, 0, -1, -2, ...}``."""
    return not (mu.denominator == 1 and mu <= 1)
