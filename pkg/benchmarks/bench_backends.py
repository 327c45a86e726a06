"""Timing comparison of the numba kernels against their pure-NumPy twins.

Run with ``python benchmarks/bench_backends.py``. The same comparison is
available end to end by setting ERREXP_DISABLE_NUMBA=1 and timing the CLI.
"""

import time

import numpy as np

from errexp._backend import USING_NUMBA
from errexp._kernels import (
    count_detection_errors_nb,
    count_detection_errors_np,
    type_log_probs_nb,
    type_log_probs_np,
)
from errexp.dist import log_factorial_table


def _time(fn, *args, repeat=5):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def bench_type_log_probs():
    n, k = 400, 4
    rng = np.random.default_rng(0)
    counts = rng.multinomial(n, [0.25] * k, size=200_000).astype(np.int64)
    log2q = np.log2(np.array([0.1, 0.2, 0.3, 0.4]))
    table = np.asarray(log_factorial_table(n))
    ref = type_log_probs_np(counts, log2q, table)
    out = type_log_probs_nb(counts, log2q, table)  # includes compile on first call
    assert np.allclose(ref, out)
    return (
        _time(type_log_probs_np, counts, log2q, table),
        _time(type_log_probs_nb, counts, log2q, table),
    )


def bench_count_errors():
    rng = np.random.default_rng(0)
    stat = rng.standard_normal(5_000_000)
    hyp = rng.integers(1, 3, size=stat.size)
    assert count_detection_errors_np(stat, hyp, 0.0) == count_detection_errors_nb(
        stat, hyp, 0.0
    )
    return (
        _time(count_detection_errors_np, stat, hyp, 0.0),
        _time(count_detection_errors_nb, stat, hyp, 0.0),
    )


def main():
    print(f"active backend: {'numba' if USING_NUMBA else 'numpy'}")
    print(f"{'kernel':<24}{'numpy [s]':>12}{'numba [s]':>12}{'speedup':>10}")
    for name, fn in (
        ("type_log_probs", bench_type_log_probs),
        ("count_detection_errors", bench_count_errors),
    ):
        t_np, t_nb = fn()
        print(f"{name:<24}{t_np:>12.4f}{t_nb:>12.4f}{t_np / t_nb:>10.2f}x")


if __name__ == "__main__":
    main()
