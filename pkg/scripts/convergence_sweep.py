"""Partial-sum error of the plain factorial series against the oracle.

Prints CSV (z, N, abs_error, error * N^(Re z) / log N) and a fitted
algebraic rate per point.  The fixture's double pole at z = 0 makes the
error decay algebraically in N, roughly like log(N) / N^(Re z).
"""
import argparse
import csv
import math
import statistics
import sys
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from invfac.facseries import evaluate, theorem_coeffs
from invfac.gammaexp import GammaRatioSpec
from invfac.numerics import working_precision
from invfac.oracle import w_direct


@dataclass
class SweepConfig:
    A: tuple = (1, 1)
    a: tuple = (0, 0)
    B: tuple = (1, 1)
    b: tuple = (Fraction(1, 2), Fraction(1, 2))
    sigma: Fraction = Fraction(1)
    points: list = field(default_factory=lambda: [mpmath.mpf(2), mpmath.mpc(1, 2), mpmath.mpf(4)])
    n_list: list = field(default_factory=lambda: [5, 10, 20, 40, 80, 160])
    precision_bits: int = 128


def run(cfg: SweepConfig, out=sys.stdout):
    spec = GammaRatioSpec(cfg.A, cfg.a, cfg.B, cfg.b, cfg.precision_bits)
    # float coefficients: exact ones grow large quickly past N ~ 60
    fs = theorem_coeffs(spec.as_float(), cfg.sigma, max(cfg.n_list))
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["z", "N", "abs_error", "scaled_error"])
    with working_precision(cfg.precision_bits):
        for z in cfg.points:
            ref = w_direct(spec, z)
            xs, ys = [], []
            for N in cfg.n_list:
                err = abs(evaluate(fs, z, N)[0] - ref)
                writer.writerow([mpmath.nstr(z, 6), N, mpmath.nstr(err, 6),
                                 mpmath.nstr(err * mpmath.power(N, mpmath.re(z)) / math.log(N), 6)])
                xs.append(math.log(N))
                ys.append(float(mpmath.log(err)))
            rate = -statistics.linear_regression(xs, ys).slope
            print(f"# z={mpmath.nstr(z, 6)}: fitted error ~ N^-{rate:.2f}", file=sys.stderr)


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--max-n", type=int, default=160)
    p.add_argument("--precision-bits", type=int, default=128)
    args = p.parse_args()
    n_list = [n for n in SweepConfig().n_list if n <= args.max_n]
    run(SweepConfig(n_list=n_list, precision_bits=args.precision_bits))


if __name__ == "__main__":
    main()
