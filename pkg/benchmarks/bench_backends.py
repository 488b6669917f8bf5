#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure NumPy fallback.

Run after installing the package:

    python3 benchmarks/bench_backends.py

Workloads mirror the hot paths of the test and acceptance suites: scalar
variation counts on short vectors, cyclic convolution, the exhaustive
3^P fixed-point scan and the pairwise variation scan.
"""

import time

import numpy as np

from relayosc._kernels import pure

try:
    from relayosc._kernels import _fast
except ImportError:
    _fast = None


def timeit(fn, repeat=3):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_scalar(mod, vectors):
    def run():
        for v in vectors:
            mod.sign_changes(v)
            mod.sign_changes_max(v)
            mod.cyclic_variation_minus(v)
            mod.cyclic_variation_plus(v)
    return run


def bench_convolve(mod, pairs):
    def run():
        for v, w in pairs:
            mod.cyclic_convolve(v, w)
    return run


def make_scan_input(P):
    rng = np.random.default_rng(0)
    gbar = np.sort(rng.uniform(0.1, 1.0, P))[::-1].copy()
    return -np.roll(gbar, 3), 1e-9 * gbar.sum()


def make_lemma_input(n, kw):
    rng = np.random.default_rng(1)
    half = n // 2
    V = np.array([np.roll([1] * half + [-1] * (n - half), k) for k in range(n)],
                 dtype=np.int8)
    W = np.empty((kw, n))
    for i in range(kw):
        vals = np.sort(rng.normal(size=n))
        m = rng.integers(1, n)
        W[i] = np.roll(np.concatenate([vals[:m], vals[m:][::-1]]),
                       rng.integers(n))
    return V, np.ascontiguousarray(W)


def main():
    rng = np.random.default_rng(42)
    vectors = [rng.choice([-1.0, 0.0, 1.0], size=rng.integers(4, 16))
               for _ in range(2000)]
    pairs = [(rng.normal(size=24), rng.normal(size=24)) for _ in range(2000)]
    scan_b, scan_tol = make_scan_input(12)
    V, W = make_lemma_input(7, 20000)

    workloads = [
        ("variation counts, 2000 x 4 ops", lambda mod: bench_scalar(mod, vectors)),
        ("cyclic convolution, 2000 x n=24", lambda mod: bench_convolve(mod, pairs)),
        ("fixed-point scan, 3^12", lambda mod: lambda: mod.scan_fixed_points(scan_b, scan_tol)),
        ("pairwise variation scan, 7x20000 pairs",
         lambda mod: lambda: mod.count_lemma1_violations(V, W)),
    ]

    print(f"{'workload':44s} {'python':>10s} {'compiled':>10s} {'speedup':>8s}")
    for name, make in workloads:
        t_py = timeit(make(pure))
        if _fast is None:
            print(f"{name:44s} {t_py:9.3f}s {'n/a':>10s} {'n/a':>8s}")
            continue
        t_c = timeit(make(_fast))
        print(f"{name:44s} {t_py:9.3f}s {t_c:9.3f}s {t_py / t_c:7.1f}x")
    if _fast is None:
        print("\ncompiled backend not available; build with `pip install -e .`")


if __name__ == "__main__":
    main()
