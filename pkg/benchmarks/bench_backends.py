#!/usr/bin/env python3
"""Benchmark the compiled pair-scan kernel against the numpy fallback.

The kernel sits on the hot path of two operations: full verification and the
decoder's cache-membership audit.  This script times both operations on
mid-sized arrays under every built backend and prints the speedup.

Usage: python benchmarks/bench_backends.py [--repeat N]
"""

import argparse
import time

from pdakit import (PacketStore, construct_ext_general, construct_general,
                    decode_and_verify, deliver, params_of, verify_pda)
from pdakit import _kernels


def timed(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - start)
    return best, result


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    big = construct_general(6, 5, 5, 1)       # 38880 x 30, ~2.3M scan pairs
    mid = construct_ext_general(5, 3, 4, 2)   # 625 x 600
    store = PacketStore.synthetic(mid.k, mid.f, packet_size=64, seed=0)
    demand = list(range(1, mid.k + 1))
    log = deliver(mid, store, demand)

    cases = [
        (f"verify {big.f}x{big.k} (S={params_of(big).s})",
         lambda: verify_pda(big).valid),
        (f"verify {mid.f}x{mid.k} (S={params_of(mid).s})",
         lambda: verify_pda(mid).valid),
        (f"decode {mid.f}x{mid.k}, {mid.k} users",
         lambda: decode_and_verify(mid, store, demand, log).success),
    ]

    backends = _kernels.available_backends()
    if "compiled" not in backends:
        print("compiled kernel not built; timing the python backend only")

    width = max(len(name) for name, _ in cases)
    header = f"{'operation':<{width}}  " + "".join(
        f"{b:>12}" for b in backends)
    if len(backends) == 2:
        header += f"{'speedup':>10}"
    print(header)
    for name, fn in cases:
        times = {}
        for backend in backends:
            _kernels.set_backend(backend)
            elapsed, ok = timed(fn, args.repeat)
            assert ok is True
            times[backend] = elapsed
        row = f"{name:<{width}}  " + "".join(
            f"{times[b] * 1e3:>10.1f}ms" for b in backends)
        if len(backends) == 2:
            row += f"{times['python'] / times['compiled']:>9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
