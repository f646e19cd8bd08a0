#!/usr/bin/env python3
"""Benchmark: compiled MPFR kernels vs the pure-Python mpmath kernels.

Times the raw series kernels on representative workloads and prints a
speedup table. The two backends compute bit-identical sums, so this is a
pure like-for-like comparison. Run:

    python3 benchmarks/bench_kernels.py [--points N]
"""

import argparse
import time

from mpmath import mpf

from sqcos import _kernel_py, compiled_available
from sqcos.bounds import geometric_grid

try:
    from sqcos import backend as _backend
    from sqcos import _kernel  # noqa: F401  (presence check)
except ImportError:
    _kernel = None


def _time(fn, pts, repeat=1):
    t0 = time.perf_counter()
    for _ in range(repeat):
        for x in pts:
            fn(x)
    return (time.perf_counter() - t0) / repeat


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--points", type=int, default=400,
                        help="grid points per workload (default 400)")
    args = parser.parse_args()

    tol = mpf("1e-50")
    workloads = [
        ("deriv series, alternating, n=0,  x in (1e-4, 1e2]", 420,
         lambda kern: lambda x: kern.cos_series(0, x, True, 420, tol, 10000),
         geometric_grid(mpf("1e-4"), mpf(100), args.points)),
        ("deriv series, alternating, n=20, x in (1e-4, 1e4]", 460,
         lambda kern: lambda x: kern.cos_series(20, x, True, 460, tol, 10000),
         geometric_grid(mpf("1e-4"), mpf(10) ** 4, args.points)),
        ("deriv series, positive,    n=5,  x in [1e-3, 25]", 420,
         lambda kern: lambda x: kern.cos_series(5, x, False, 420, tol, 10000),
         geometric_grid(mpf("1e-3"), mpf(25), args.points)),
        ("sinc deriv series,         n=8,  x in [1e-3, 50]", 500,
         lambda kern: lambda x: kern.sinc_series(8, x, 500, tol, 10000),
         geometric_grid(mpf("1e-3"), mpf(50), args.points)),
    ]

    if not compiled_available():
        print("compiled kernel not built; only timing the Python backend")

    print(f"{'workload':54s} {'python':>10s} {'compiled':>10s} {'speedup':>8s}")
    for name, _prec, make, pts in workloads:
        t_py = _time(make(_kernel_py), pts)
        line = f"{name:54s} {t_py*1e3:9.1f}ms"
        if compiled_available():
            t_cy = _time(make(_CompiledShim()), pts)
            line += f" {t_cy*1e3:9.1f}ms {t_py/t_cy:7.1f}x"
        print(line)


class _CompiledShim:
    """Adapts the compiled module to the Python-kernel signatures."""

    @staticmethod
    def cos_series(n, x, alt, prec, tol, max_terms):
        return _backend.cos_series(n, x, alt, prec, tol, max_terms)

    @staticmethod
    def sinc_series(n, x, prec, tol, max_terms):
        return _backend.sinc_series(n, x, prec, tol, max_terms)


if __name__ == "__main__":
    main()
