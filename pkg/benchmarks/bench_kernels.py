"""Compare the compiled kernels with the numpy fallback.

Run with ``python3 benchmarks/bench_kernels.py``.
"""
import timeit

import numpy as np

from bohrkit import _fallback

try:
    from bohrkit import _kernels
except ImportError:  # not built
    _kernels = None

SIZES = (64, 256, 1024)


def _cases(n, rng):
    a = rng.normal(size=n + 1) + 1j * rng.normal(size=n + 1)
    b = rng.normal(size=n + 1) + 1j * rng.normal(size=n + 1)
    phi = 0.3 * b
    phi[0] = 0
    den = np.array([1.0, -0.5 + 0.2j, 0.1, 0.05j, -0.02])
    return {
        "cauchy_product": lambda m: m.cauchy_product(a, b, n),
        "compose_horner (deg 6)": lambda m: m.compose_horner(a[:7], phi),
        "reciprocal": lambda m: m.reciprocal(np.r_[1.0, 0.1 * a[1:]]),
        "rational_series (deg 4)": lambda m: m.rational_series(a[:5], den, n),
        "majorant_sum": lambda m: m.majorant_sum(a, 0.7),
    }


def best_time(fn, module, repeat=5):
    number = 1
    while timeit.timeit(lambda: fn(module), number=number) < 0.05 and number < 10**5:
        number *= 4
    return min(timeit.repeat(lambda: fn(module), number=number, repeat=repeat)) / number


def main():
    rng = np.random.default_rng(0)
    print(f"{'kernel':<26s}{'N':>6s}{'numpy [us]':>14s}{'cython [us]':>14s}{'speedup':>10s}")
    for n in SIZES:
        for name, fn in _cases(n, rng).items():
            t_np = best_time(fn, _fallback) * 1e6
            if _kernels is None:
                print(f"{name:<26s}{n:>6d}{t_np:>14.1f}{'-':>14s}{'-':>10s}")
                continue
            t_cy = best_time(fn, _kernels) * 1e6
            print(f"{name:<26s}{n:>6d}{t_np:>14.1f}{t_cy:>14.1f}{t_np / t_cy:>9.1f}x")


if __name__ == "__main__":
    main()
