#!/usr/bin/env python3
"""Benchmark the compiled pair-enumeration kernel against the numpy fallback.

Times a full canonical-pair sweep (the hot loop behind atlas, census, and
law commands) for several site counts:

    python benchmarks/bench_kernels.py --sizes 8 10 12 --repeat 3
"""

import argparse
import time

from sgatlas.kernels import available_backends


def sweep(pair_block, n, chunk_pairs=1 << 22):
    """Consume every block the way the atlas writers do."""
    dim = 1 << n
    total = 0
    checksum = 0
    row = 0
    while row < dim:
        stop = row
        pairs = 0
        while stop < dim and pairs < chunk_pairs:
            pairs += dim - stop
            stop += 1
        rows, cols, k, ae, d1 = pair_block(n, row, stop)
        total += rows.size
        checksum += int(k.sum()) + int(ae.sum()) + int(d1.sum())
        row = stop
    return total, checksum


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", type=int, nargs="+", default=[8, 10, 11, 12])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    backends = available_backends()
    print(f"backends: {', '.join(backends)}")
    header = f"{'n':>3} {'pairs':>12}"
    for name in backends:
        header += f" {name + ' [s]':>12}"
    if len(backends) == 2:
        header += f" {'speedup':>8}"
    print(header)

    for n in args.sizes:
        times = {}
        reference = None
        for name, fn in backends.items():
            best = float("inf")
            for _ in range(args.repeat):
                start = time.perf_counter()
                total, checksum = sweep(fn, n)
                best = min(best, time.perf_counter() - start)
            if reference is None:
                reference = (total, checksum)
            elif (total, checksum) != reference:
                raise SystemExit(f"backend mismatch at n={n}")
            times[name] = best
        line = f"{n:>3} {reference[0]:>12}"
        for name in backends:
            line += f" {times[name]:>12.4f}"
        if len(times) == 2:
            line += f" {times['python'] / times['cython']:>8.2f}x"
        print(line)


if __name__ == "__main__":
    main()
