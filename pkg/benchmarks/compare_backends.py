#!/usr/bin/env python3
"""Time the hot kernels on the compiled extension and the pure-Python
fallback side by side.

Usage: python benchmarks/compare_backends.py [--reps N]
"""

from __future__ import annotations

import argparse
import time

from nlspectra import _purepy

try:
    from nlspectra import _core
except ImportError:
    _core = None

TOL = 10 * 2.220446049250313e-16

CASES = [
    ("gamma(2.7)", lambda k: k.gamma(2.7)),
    ("digamma(1.5)", lambda k: k.digamma(1.5)),
    ("log_gamma_ratio(0.5, 1e-4)", lambda k: k.log_gamma_ratio(0.5, 1e-4)),
    ("bessel_j(1/2, 6)", lambda k: k.bessel_j(1, 6.0)),
    ("bessel_j(0, 15)  [backward recurrence]", lambda k: k.bessel_j(0, 15.0)),
    ("bessel_j(0, 50)  [large-x expansion]", lambda k: k.bessel_j(0, 50.0)),
    ("stable_prefactor(0.5, 1/3, 1.5)", lambda k: k.stable_prefactor(0.5, 1.0 / 3.0, 1.5)),
    ("maclaurin_lambda(d=3, a=2, kd=6)", lambda k: k.maclaurin_lambda(3, 2.0, 6.0, 1.0, TOL, 4000)),
    ("drummond_2f0(1, 1, z=9)", lambda k: k.drummond_2f0(1.0, 1.0, 9.0, 0, TOL, 500)),
    ("drummond_2f0_fixed(1, 1, z=8, K=100)", lambda k: k.drummond_2f0_fixed(1.0, 1.0, 8.0, 0, 100)),
]


def time_ns(fn, backend, reps):
    for _ in range(min(reps, 200)):
        fn(backend)
    t0 = time.perf_counter_ns()
    for _ in range(reps):
        fn(backend)
    return (time.perf_counter_ns() - t0) / reps


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--reps", type=int, default=20000)
    args = parser.parse_args()

    name_w = max(len(name) for name, _ in CASES)
    header = f"{'kernel':<{name_w}}  {'python (ns)':>12}"
    if _core is not None:
        header += f"  {'compiled (ns)':>14}  {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for name, fn in CASES:
        py = time_ns(fn, _purepy, args.reps)
        line = f"{name:<{name_w}}  {py:>12.0f}"
        if _core is not None:
            cc = time_ns(fn, _core, args.reps)
            line += f"  {cc:>14.0f}  {py / cc:>7.1f}x"
        print(line)
    if _core is None:
        print("\ncompiled extension not available; showing the fallback only")


if __name__ == "__main__":
    main()
