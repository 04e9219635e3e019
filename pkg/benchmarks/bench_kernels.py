"""Compare the compiled grid kernel against the pure-numpy fallback.

Run: python3 benchmarks/bench_kernels.py
"""

import time

import numpy as np

from infoload import ExpSaturating, PowerCost, Trader, kernels
from infoload.agent import information_grid


def bench(fn, args, repeats=20):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - start)
    return best


def main():
    trader = Trader(1.0, 1.0, ExpSaturating(1.0), PowerCost(0.1, 2.0))
    s_code, s_param = trader.success.kernel_code()
    c_code, c_scale, c_param = trader.cost.kernel_code()

    print(f"selected backend: {kernels.BACKEND}")
    print(f"{'grid points':>12} {'selected':>12} {'pure numpy':>12} {'speedup':>8}")
    for n_points in (10_000, 100_000, 1_000_000):
        grid = information_grid(100.0, 100.0 / (n_points - 1))
        args = (np.ascontiguousarray(grid), s_code, s_param, c_code, c_scale,
                c_param, trader.gain, trader.loss)
        t_sel = bench(kernels.utility_grid, args)
        t_py = bench(kernels.pure_python_utility_grid, args)
        print(f"{len(grid):>12} {t_sel * 1e3:>10.3f}ms {t_py * 1e3:>10.3f}ms "
              f"{t_py / t_sel:>7.2f}x")


if __name__ == "__main__":
    main()
