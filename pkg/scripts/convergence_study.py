#!/usr/bin/env python3
"""Convergence of the correction hierarchy against the Newton oracle.

Emits a CSV with one row per (N, n, lambda, order): the partial-sum error
and, per (N, n), the fitted log-log slopes.  The error at order K should
scale like lambda^(K+1).

Usage: python scripts/convergence_study.py --N 1 4 5 --K 3 \
           --lambdas 1e-2 1e-3 1e-4 --b 1 --g 1/2
"""
import argparse
import csv
import sys
from fractions import Fraction

from mpmath import mp

from kratzerqes.verify import convergence_report


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--N", type=int, nargs="+", default=[1, 4, 5])
    ap.add_argument("--n", type=int, default=0)
    ap.add_argument("--K", type=int, default=3)
    ap.add_argument("--lambdas", type=Fraction, nargs="+",
                    default=[Fraction(1, 100), Fraction(1, 1000),
                             Fraction(1, 10000)])
    ap.add_argument("--b", type=Fraction, default=Fraction(1))
    ap.add_argument("--g", type=Fraction, default=Fraction(1, 2))
    ap.add_argument("--dps", type=int, default=50)
    args = ap.parse_args()

    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["N", "n", "lambda", "order", "error", "slope"])
    for N in args.N:
        rep = convergence_report(N, args.n, args.K, args.lambdas,
                                 args.b, args.g, dps=args.dps)
        for K in range(args.K + 1):
            for lam, err in zip(rep.lambda_grid, rep.errors_per_order[K]):
                w.writerow([N, args.n, str(lam), K, mp.nstr(err, 6),
                            f"{rep.fitted_slopes[K]:.3f}"])


if __name__ == "__main__":
    main()
