"""Time the batch kernels under both backends on a full block of S_n.

    python benchmarks/bench_kernels.py --n 9 --repeat 5
"""
import argparse
import time

import numpy as np

from mmp import _kernels as K


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=9)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    t0 = time.perf_counter()
    perms = K.all_permutations(args.n)
    print(f"S_{args.n}: {len(perms)} rows, built in {time.perf_counter() - t0:.3f}s")

    backends = sorted(K.IMPLEMENTATIONS)
    kernels = {
        "match_profile": lambda b: K.match_profile(perms, b),
        "ltr_counts": lambda b: K.ltr_counts(perms, b),
        "top_maxima": lambda b: K.top_maxima(perms, 3, b),
        "border_counts": lambda b: K.border_counts(perms, b),
    }
    print(f"{'kernel':<15}" + "".join(f"{b:>12}" for b in backends) + f"{'speedup':>10}")
    for name, fn in kernels.items():
        row, outs = [], {}
        for b in backends:
            if b == "numba":
                fn(b)  # compile outside the timed runs
            t, outs[b] = best_of(lambda: fn(b), args.repeat)
            row.append(t)
        ref = outs[backends[0]]
        assert all(np.array_equal(ref, o) for o in outs.values()), name
        speed = f"{row[backends.index('numpy')] / row[backends.index('numba')]:.1f}x" if len(backends) == 2 else "-"
        print(f"{name:<15}" + "".join(f"{t:>11.4f}s" for t in row) + f"{speed:>10}")


if __name__ == "__main__":
    main()
