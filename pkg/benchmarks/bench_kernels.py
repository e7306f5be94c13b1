"""Benchmark the compiled split-scan kernel against the numpy fallback.

Both backends must return identical (threshold, cost) pairs; the point of
the compiled path is speed on the tree-training hot loop, not different
answers. Run directly: python benchmarks/bench_kernels.py
"""

import time

import numpy as np

from sarcalab.kernels import _split_py

try:
    from sarcalab.kernels import _split_c
except ImportError:
    _split_c = None


def make_case(n, rng):
    values = np.sort(rng.random(n))
    # duplicate runs exercise the equal-value boundary handling
    values[rng.random(n) < 0.3] = np.round(values[rng.random(n) < 0.3].mean(), 2)
    values = np.sort(values)
    labels = rng.integers(0, 2, n).astype(np.int64)
    return values, labels


def bench(fn, cases, repeats=5):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        for values, labels in cases:
            fn(values, labels)
        best = min(best, time.perf_counter() - start)
    return best


def main():
    rng = np.random.default_rng(0)
    for n in (64, 512, 4096, 32768):
        cases = [make_case(n, rng) for _ in range(max(4, 2048 // n))]

        if _split_c is not None:
            for values, labels in cases:
                got_c = _split_c.scan_split(values, labels)
                got_py = _split_py.scan_split(values, labels)
                same = (got_c == got_py) or (
                    np.isnan(got_c[0]) and np.isnan(got_py[0]) and got_c[1] == got_py[1]
                )
                assert same, f"backend disagreement at n={n}: {got_c} vs {got_py}"

        t_py = bench(_split_py.scan_split, cases)
        line = f"n={n:>6}  python={t_py * 1e3:8.3f} ms"
        if _split_c is not None:
            t_c = bench(_split_c.scan_split, cases)
            line += f"  compiled={t_c * 1e3:8.3f} ms  speedup={t_py / t_c:5.2f}x"
        else:
            line += "  (compiled backend unavailable)"
        print(line)
    if _split_c is not None:
        print("backends agree on every case")


if __name__ == "__main__":
    main()
