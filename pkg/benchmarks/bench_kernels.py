"""Benchmark the numba kernels against their numpy fallbacks."""

import time

import numpy as np

from hardyops import _kernels as K


def benchmark(func, *args, n_warmup=2, n_iter=20):
    """Mean wall time in ms."""
    for _ in range(n_warmup):
        func(*args)
    start = time.perf_counter()
    for _ in range(n_iter):
        func(*args)
    return (time.perf_counter() - start) / n_iter * 1000


def cases(n, rng):
    a = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    b = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    b[0] = 2.0
    t = np.zeros(n, dtype=np.complex128)
    t[1:4] = [0.5, 0.25, 0.125]
    m = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    v0 = rng.standard_normal(n) + 0j
    return {
        "series_mul": (a, b, n),
        "series_div": (a, b, n),
        "series_exp": (0.1 * a, n),
        "power_columns": (a, t, n),
        "power_iteration_gram": (m, v0, 1e-10, 2000),
    }


def main():
    if not K.HAVE_NUMBA:
        print("numba not installed; nothing to compare")
        return
    rng = np.random.default_rng(0)
    print(f"{'kernel':<22}{'n':>6}{'numpy ms':>12}{'numba ms':>12}{'speedup':>10}")
    for n in (64, 256, 512):
        for name, args in cases(n, rng).items():
            t_np = benchmark(getattr(K, name + "_numpy"), *args)
            t_nb = benchmark(getattr(K, name + "_numba"), *args)
            print(f"{name:<22}{n:>6}{t_np:>12.3f}{t_nb:>12.3f}{t_np / t_nb:>9.1f}x")


if __name__ == "__main__":
    main()
