"""Timing comparison of the compiled kernels against the NumPy fallback.

Run as a script:

    python3 benchmarks/bench_kernels.py [--repeats 7]

Times c_factor, layer_integrand, and rk4_shoot on workloads shaped like the
ones the solver produces (quadrature node batches, shooting marches). Prints
best-of-N wall times per call and the native/pure speedup. Exits with a note
instead of numbers when the extension is not built.
"""

import argparse
import math
import time

import numpy as np

from biflogis.kernels import pure

try:
    from biflogis.kernels import _native as native
except ImportError:
    native = None


def best_of(fn, repeats, inner):
    best = math.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        for _ in range(inner):
            fn()
        best = min(best, (time.perf_counter() - t0) / inner)
    return best


def workloads():
    rng = np.random.default_rng(20240817)
    u_small = rng.uniform(0.0, 1.0, 24)       # one embedded quadrature batch
    u_large = rng.uniform(0.0, 1.0, 4096)     # stacked refinement batches
    v_nodes = rng.uniform(0.0, 9.0, 1024)
    eps = 1e-9
    em = 1.0 - eps
    return [
        ("c_factor n=24", 2000,
         lambda impl: (lambda: impl.c_factor(u_small, 2.5))),
        ("c_factor n=4096", 200,
         lambda impl: (lambda: impl.c_factor(u_large, 2.5))),
        ("layer_integrand n=1024", 500,
         lambda impl: (lambda: impl.layer_integrand(v_nodes, eps, em,
                                                    2.5, 4.0))),
        ("rk4_shoot n=10000", 20,
         lambda impl: (lambda: impl.rk4_shoot(15.0, 0.5, 3.0, 10000, 1e-4))),
    ]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeats", type=int, default=7,
                    help="timing repetitions per case (best is kept)")
    args = ap.parse_args()

    if native is None:
        print("native extension not built; nothing to compare "
              "(pip install . with Cython and a C compiler present)")
        return

    header = f"{'case':<26} {'pure':>12} {'native':>12} {'speedup':>9}"
    print(header)
    print("-" * len(header))
    for name, inner, make in workloads():
        t_pure = best_of(make(pure), args.repeats, inner)
        t_native = best_of(make(native), args.repeats, inner)
        print(f"{name:<26} {t_pure * 1e6:>10.1f}us {t_native * 1e6:>10.1f}us "
              f"{t_pure / t_native:>8.1f}x")


if __name__ == "__main__":
    main()
