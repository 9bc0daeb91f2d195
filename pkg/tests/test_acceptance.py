"""Acceptance criteria, each at its stated tolerance.

Run under pytest (a summary section lists one PASS/FAIL line per
criterion) or directly: ``python3 tests/test_acceptance.py``.
"""
import math
import random
import statistics
import sys
from fractions import Fraction as F
from pathlib import Path

import mpmath
import pytest

sys.path.insert(0, str(Path(__file__).parent))
from conftest import ACCEPTANCE  # noqa: E402

from invfac.facseries import (  # noqa: E402
    Classification,
    abscissa,
    corollary_coeffs_nb,
    corollary_coeffs_stirling,
    evaluate,
    theorem_coeffs,
)
from invfac.fixtures import FIXTURES, generic_mu, random_balanced_spec, random_mu_one_spec  # noqa: E402
from invfac.gammaexp import GammaRatioSpec, c_coefficients, invariants, poincare_expansion  # noqa: E402
from invfac.identities import (  # noqa: E402
    verify_carlitz_gf,
    verify_connection,
    verify_horizontal_gf,
    verify_identity_one,
    verify_identity_two,
    verify_vertical_gf,
)
from invfac.numerics import to_mp, working_precision  # noqa: E402
from invfac.oracle import log_gamma, norlund43_eval, tricomi_erdelyi_eval, two_gamma_spec, w_direct  # noqa: E402

SEED = 20261018
FIXTURE = FIXTURES["half_shift_squared"].spec


def record(num: int, title: str, ok: bool, detail: str):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {num:2d}: {title} ({detail})"
    ACCEPTANCE[num] = line
    print(line)
    assert ok, line


def sci(x) -> str:
    return mpmath.nstr(x, 3)


def test_criterion_01_identities():
    bad = [f"one m={m}" for m in range(11) if not verify_identity_one(m)[0]]
    bad += [f"two m={m}" for m in range(11) if not verify_identity_two(m)[0]]
    bad += [f"conn n={n} l={l}" for n in range(11) for l in range(n + 1) if not verify_connection(n, l)[0]]
    record(1, "identity suite, exact residual 0", not bad, f"{22 + 66 - len(bad)}/88 cases zero" + (f"; {bad}" if bad else ""))


def test_criterion_02_c_routes():
    rng = random.Random(SEED)
    mismatches = 0
    for _ in range(5):
        spec = random_balanced_spec(rng)
        ref = c_coefficients(spec, 8, "recurrence")
        mismatches += c_coefficients(spec, 8, "partition") != ref
        mismatches += c_coefficients(spec, 8, "nair") != ref
    record(2, "C_0..C_8 equal across recurrence, partition, Nair", mismatches == 0,
           f"5 random rational specs, {mismatches} mismatches")


def test_criterion_03_dual_h():
    rng = random.Random(SEED + 3)
    mismatches = 0
    mus = []
    for _ in range(5):
        spec = random_balanced_spec(rng, mu_ok=generic_mu)
        mus.append(str(invariants(spec).mu))
        theta = F(rng.randint(-12, 12), rng.randint(1, 5))
        h1 = corollary_coeffs_stirling(spec, theta, 10).coeffs
        h2 = corollary_coeffs_nb(spec, theta, 10).coeffs
        mismatches += sum(a != b for a, b in zip(h1, h2))
    record(3, "h_n Stirling route equals Norlund-Bernoulli route, n <= 10", mismatches == 0,
           f"mu in {mus}, {mismatches} mismatches")


def test_criterion_04_theorem_vs_corollary():
    rng = random.Random(SEED + 4)
    specs = [FIXTURE] + [random_mu_one_spec(rng) for _ in range(5)]
    mismatches = 0
    for spec in specs:
        sigma = F(rng.randint(1, 12), rng.randint(1, 4))
        cor = corollary_coeffs_stirling(spec, sigma - 1, 10)
        thm = theorem_coeffs(spec, sigma, 10)
        mismatches += cor.form != "PlainShift" or cor.shift != sigma or cor.coeffs != thm.coeffs
    record(4, "corollary at theta = sigma - 1 reproduces theorem coefficients", mismatches == 0,
           f"{len(specs)} mu = 1 specs, {mismatches} mismatches")


def test_criterion_05_terminating():
    fs = theorem_coeffs(FIXTURES["inverse_z"].spec, 0, 12)
    value, _ = evaluate(fs, 3)
    ok = fs.coeffs == (1,) + (0,) * 12 and value == F(1, 3) and isinstance(value, F)
    record(5, "Gamma(z)/Gamma(z+1), sigma = 0 terminates; evaluate(3) = 1/3 exactly", ok,
           f"d = {[str(c) for c in fs.coeffs[:4]]}..., value = {value}")


def test_criterion_06_convergence():
    fs = theorem_coeffs(FIXTURE, 1, 50)
    parts = []
    ok = True
    with working_precision(FIXTURE.precision_bits):
        for z in (mpmath.mpf(2), mpmath.mpc(1, 2)):
            ref = w_direct(FIXTURE, z)
            errs = [abs(evaluate(fs, z, N)[0] - ref) for N in (5, 10, 20, 40, 50)]
            mono = all(a > b for a, b in zip(errs[:4], errs[1:4]))
            tol = errs[4] <= 1e-6
            ok = ok and mono and tol
            parts.append(f"z={mpmath.nstr(z, 3)}: errors {[sci(e) for e in errs[:4]]} "
                         f"{'decreasing' if mono else 'NOT decreasing'}, N=50 error {sci(errs[4])} "
                         f"{'<=' if tol else '>'} 1e-6")
    record(6, "fixture series converges to the oracle", ok, "; ".join(parts))


def test_criterion_07_abscissa():
    problems = []
    for name, fx in FIXTURES.items():
        spec = fx.spec
        crude = max(-a / A for A, a in zip(spec.A, spec.a))
        for sigma in (F(-3), F(1, 2), F(1), F(5, 2)):
            rep = abscissa(spec, sigma=sigma)
            if rep.alpha != fx.alpha:
                problems.append(f"{name}: alpha {rep.alpha} != {fx.alpha}")
            if not any(c.real >= crude for c in rep.canceled_candidates) and rep.alpha != crude:
                problems.append(f"{name}: alpha {rep.alpha} != -min a/A = {crude}")
            if rep.classification is Classification.COINCIDENT:
                if rep.rightmost_pole != -sigma:
                    problems.append(f"{name}: coincident flag at sigma={sigma}")
            elif (rep.classification is Classification.EXACT) != (sigma + rep.alpha > 0):
                problems.append(f"{name}: classification {rep.classification.value} at sigma={sigma}")
    cancel = abscissa(FIXTURES["inverse_z"].spec, sigma=0)
    if cancel.alpha != 0:
        problems.append(f"Gamma(z)/Gamma(z+1) alpha {cancel.alpha}")
    record(7, "abscissa matches hand-computed poles and classification rule", not problems,
           f"{len(FIXTURES)} fixtures x 4 shifts; Gamma(z)/Gamma(z+1) alpha = {cancel.alpha}"
           + (f"; {problems}" if problems else ""))


def test_criterion_08_generating_functions():
    h = all(verify_horizontal_gf(n)[0] for n in range(13))
    v = all(verify_vertical_gf(l, 10)[0] for l in range(5))
    c = verify_carlitz_gf(8)[0]
    record(8, "horizontal, vertical and Carlitz generating functions", h and v and c,
           f"horizontal n<=12 {h}, vertical l<=4 N<=10 {v}, Carlitz n<=8 {c}")


def _random_points(count, rng):
    pts = []
    for i in range(count):
        if i % 5 == 0:
            pts.append(mpmath.mpf(rng.uniform(0.05, 120)))
        else:
            sign = 1 if rng.random() < 0.5 else -1
            pts.append(mpmath.mpc(rng.uniform(-40, 60), sign * rng.uniform(0.05, 60)))
    return pts


def test_criterion_09_oracle():
    rng = random.Random(SEED + 9)
    worst = mpmath.mpf(0)
    worst_refl = mpmath.mpf(0)
    worst_rec = mpmath.mpf(0)
    with working_precision(512):
        two_pi_i = 2j * mpmath.pi
        for z in _random_points(50, rng):
            worst = max(worst, abs(log_gamma(z, 256) - log_gamma(z, 512)))
        for z in _random_points(10, rng):
            if z.imag == 0:
                z = z + 0.5j
            d = log_gamma(z, 256) + log_gamma(1 - z, 256) - mpmath.log(mpmath.pi / mpmath.sin(mpmath.pi * z))
            k = mpmath.nint(d.imag / (2 * mpmath.pi))
            worst_refl = max(worst_refl, abs(d - k * two_pi_i))
            d = log_gamma(z + 1, 256) - log_gamma(z, 256) - mpmath.log(z)
            k = mpmath.nint(d.imag / (2 * mpmath.pi))
            worst_rec = max(worst_rec, abs(d - k * two_pi_i))
        w_err = abs(w_direct(FIXTURE, 2, 256) - 16 / (9 * mpmath.pi))
    bound = mpmath.mpf(2) ** -254
    ok = worst <= bound and worst_refl <= bound and worst_rec <= bound and w_err <= mpmath.mpf(10) ** -70
    record(9, "log_gamma P=256 vs P=512, reflection, recurrence, w_direct fixture", ok,
           f"max diff {sci(worst)} vs 2^-254 = {sci(bound)}, reflection {sci(worst_refl)}, "
           f"recurrence {sci(worst_rec)}, |W(2) - 16/(9 pi)| = {sci(w_err)}")


def test_criterion_10_two_gamma():
    t, x = F(1, 4), F(3, 4)
    spec = two_gamma_spec(t, x)
    with working_precision(256):
        ref50 = w_direct(spec, 50)
        rel = abs(tricomi_erdelyi_eval(t, x, 50, 8) - ref50) / abs(ref50)
        z = mpmath.mpf(5)
        scale = mpmath.power(z, to_mp(t - x + 1))
        raw = norlund43_eval(t, x, z, 40)
        lhs = w_direct(spec, z) / scale  # Gamma(z+t) / (Gamma(z+x) z^(t-x+1))
        err = abs(raw - lhs)
        err_w = abs(raw * scale - w_direct(spec, z))
    ok = rel <= 1e-10 and err <= 1e-8
    record(10, "Tricomi-Erdelyi and Norlund two-gamma expansions", ok,
           f"Tricomi rel error {sci(rel)} <= 1e-10; Norlund N=40 error {sci(err)} <= 1e-8 "
           f"(times z^(t-x+1): {sci(err_w)})")


def _order_on_ray(spec, R, angle):
    exp = poincare_expansion(spec, R)
    nu, mu = to_mp(exp.nu), to_mp(exp.mu)
    xs, ys = [], []
    for k in range(10):
        r = mpmath.mpf(100) * mpmath.mpf(10) ** (mpmath.mpf(k) / 9)
        z = r * mpmath.expjpi(mpmath.mpf(angle))
        lhs = mpmath.power(z, mu) * w_direct(spec, z) / nu
        err = abs(lhs - exp.partial_sum(z, R))
        xs.append(float(mpmath.log(r)))
        ys.append(float(mpmath.log(err)))
    return -statistics.linear_regression(xs, ys).slope


def test_criterion_11_slope():
    R = 4
    orders = {}
    with working_precision(256):
        for name in ("half_shift_squared", "duplication", "mixed"):
            for angle in (0, 0.25, -1 / 3):
                orders[(name, angle)] = _order_on_ray(FIXTURES[name].spec, R, angle)
    worst = min(orders.values())
    record(11, "Poincare partial sums, empirical order >= R + 0.9 at R = 4", worst >= R + 0.9,
           f"min order {worst:.3f} over 3 specs x 3 rays (arg 0, pi/4, -pi/3), |z| in [100, 1000]")


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
