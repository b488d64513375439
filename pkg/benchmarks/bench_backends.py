#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure-numpy fallback.

Run without arguments to time both backends (each in its own process, so
the import-time backend choice is honored) and print a comparison table:

    python3 benchmarks/bench_backends.py [--n 4194304] [--repeat 3]

``--single`` runs the timings under the current CESARO_BACKEND only and
prints machine-readable lines; the parent mode uses it internally.
"""

import argparse
import os
import subprocess
import sys
import time


def timings(n: int, repeat: int):
    import numpy as np

    from cesaro import (
        a_s_set,
        backend_name,
        block_means,
        cesaro_means,
        counterexample,
        density_band,
        kernels,
    )
    from cesaro.blocks import GeometricPartition

    kernels.warmup()
    x = np.random.default_rng(0).uniform(-1.0, 1.0, n)
    scan_out = np.empty(n)
    j_count = GeometricPartition(1.5).completed_blocks(n)

    cases = [
        ("sign-values", lambda: kernels.counterexample_values(1, n + 1)),
        ("a_s-values", lambda: kernels.a_s_values(0.5, 1, n + 1)),
        ("running-sums", lambda: kernels.running_sums(x, 0.0, 0.0, scan_out)),
        ("cesaro-means", lambda: cesaro_means(counterexample(), n)),
        ("block-means-1.5", lambda: block_means(counterexample(), 1.5, j_count)),
        ("density-band", lambda: density_band(a_s_set(0.5), n)),
    ]
    rows = []
    for name, fn in cases:
        fn()  # warm any remaining lazy state
        best = float("inf")
        for _ in range(repeat):
            t0 = time.perf_counter()
            fn()
            best = min(best, time.perf_counter() - t0)
        rows.append((name, best))
    return backend_name(), rows


def run_single(args) -> None:
    name, rows = timings(args.n, args.repeat)
    print(f"BACKEND {name}")
    for case, seconds in rows:
        print(f"BENCH {case} {seconds:.6f}")


def run_compare(args) -> None:
    results = {}
    for mode in ("numba", "numpy"):
        env = dict(os.environ, CESARO_BACKEND=mode)
        proc = subprocess.run(
            [sys.executable, __file__, "--single", "--n", str(args.n),
             "--repeat", str(args.repeat)],
            env=env, capture_output=True, text=True,
        )
        if proc.returncode != 0:
            print(f"{mode}: failed\n{proc.stderr}", file=sys.stderr)
            continue
        rows = {}
        for line in proc.stdout.splitlines():
            if line.startswith("BENCH "):
                _, case, seconds = line.split()
                rows[case] = float(seconds)
        results[mode] = rows

    if set(results) != {"numba", "numpy"}:
        sys.exit(1)
    print(f"n = {args.n}, best of {args.repeat}")
    print(f"{'case':<18}{'numba [ms]':>12}{'numpy [ms]':>12}{'speedup':>10}")
    for case in results["numba"]:
        nb = results["numba"][case] * 1e3
        fb = results["numpy"][case] * 1e3
        print(f"{case:<18}{nb:>12.2f}{fb:>12.2f}{fb / nb:>10.2f}x")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--single", action="store_true",
                        help="time only the current backend")
    parser.add_argument("--n", type=int, default=1 << 22)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    if args.single:
        run_single(args)
    else:
        run_compare(args)


if __name__ == "__main__":
    main()
