"""Benchmark the compiled Monte Carlo kernel against the NumPy fallback.

Both backends consume identical pre-drawn uniforms, so besides timing the
script asserts that their outputs agree bit-for-bit.

Run:  python benchmarks/bench_kernels.py [n_events]
"""

import sys
import time

import numpy as np

from homsim.beamsplitter import (
    classical_output_distribution,
    quantum_output_distribution,
)
from homsim.mc import kernel_py

try:
    from homsim.mc import _kernel
except ImportError:
    _kernel = None


def bench(kernel, na, nb, overlaps, uniforms, p_detect, p_dark, qcdf, ccdf,
          repeats=5):
    best = float("inf")
    counts = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        counts = kernel.simulate_active_stratum(
            na, nb, overlaps, uniforms, p_detect, p_dark, qcdf, ccdf
        )
        best = min(best, time.perf_counter() - t0)
    return counts, best


def main():
    n_events = int(sys.argv[1]) if len(sys.argv) > 1 else 2_000_000
    rng = np.random.default_rng(42)
    p_detect = (0.1, 0.1, 0.1, 0.1)
    p_dark = (2.5e-5,) * 4

    print(f"{n_events} events per stratum, best of 5")
    print(f"{'stratum':>8} {'numpy':>12} {'cython':>12} {'speedup':>8}")
    for na, nb in [(1, 1), (1, 2), (2, 2), (4, 4)]:
        overlaps = rng.random(n_events)
        uniforms = rng.random((n_events, 6))
        qcdf = np.cumsum(quantum_output_distribution(na, nb))
        ccdf = np.cumsum(classical_output_distribution(na, nb))
        ref, t_py = bench(
            kernel_py, na, nb, overlaps, uniforms, p_detect, p_dark, qcdf, ccdf
        )
        if _kernel is None:
            print(f"({na},{nb}) {t_py*1e3:10.2f}ms    (extension not built)")
            continue
        got, t_cy = bench(
            _kernel, na, nb, overlaps, uniforms, p_detect, p_dark, qcdf, ccdf
        )
        assert np.array_equal(ref, got), f"backend mismatch at ({na},{nb})"
        print(
            f"  ({na},{nb}) {t_py*1e3:10.2f}ms {t_cy*1e3:10.2f}ms "
            f"{t_py / t_cy:7.2f}x"
        )
    print("outputs identical across backends" if _kernel is not None else "")


if __name__ == "__main__":
    main()
