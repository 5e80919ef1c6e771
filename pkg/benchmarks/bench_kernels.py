"""Compare the compiled elimination kernel against the pure Python twin.

Usage: python3 benchmarks/bench_kernels.py [--repeats N]

Times batched rank computations over random matrices for a few shapes
and field sizes and prints a speedup table.  The same seeded inputs are
fed to both kernels and the results are cross-checked.
"""

import argparse
import time

import numpy as np

from gcnet import _gfcore_py
from gcnet.ffield import field_from_size

try:
    from gcnet import _gfcore
except ImportError:
    _gfcore = None


def time_kernel(kernel, batches, tables, repeats):
    best = float("inf")
    ranks = []
    for _ in range(repeats):
        start = time.perf_counter()
        ranks = [kernel(m.copy(), *tables) for m in batches]
        best = min(best, time.perf_counter() - start)
    return best, ranks


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=5)
    parser.add_argument("--batch", type=int, default=400)
    args = parser.parse_args()

    if _gfcore is None:
        print("compiled kernel unavailable; nothing to compare")
        return 1

    print(f"{'q':>4} {'shape':>10} {'python':>12} {'compiled':>12} {'speedup':>9}")
    for q in (2, 16):
        field = field_from_size(q)
        tables = (field.add_table, field.mul_table, field.inv_table, field.neg_table)
        rng = np.random.default_rng(q)
        for rows, cols in [(8, 8), (16, 32), (48, 64)]:
            batches = [
                rng.integers(0, q, size=(rows, cols)).astype(np.int16)
                for _ in range(args.batch)
            ]
            t_py, r_py = time_kernel(_gfcore_py.rank_destructive, batches, tables, args.repeats)
            t_c, r_c = time_kernel(_gfcore.rank_destructive, batches, tables, args.repeats)
            if r_py != r_c:
                raise SystemExit("kernel results disagree")
            print(f"{q:>4} {rows:>4}x{cols:<5} {t_py * 1e3:>10.2f}ms {t_c * 1e3:>10.2f}ms "
                  f"{t_py / t_c:>8.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
