"""Benchmark the coset-oracle kernels: numba lane vs pure-numpy fallback.

Usage: python benchmarks/bench_cosets.py [--repeat N]

The same comparison can be forced process-wide by setting
LOCALZETA_NO_NUMBA=1, which removes the numba lane entirely.
"""

import argparse
import time

from localzeta import _kernels, cosets


def time_call(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return best, result


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    lanes = ["numpy"]
    if _kernels.HAS_NUMBA:
        lanes.append("numba")
        # trigger JIT compilation outside the timed region
        cosets.double_coset_partition(2, method="full", lane="numba")
    else:
        print("numba unavailable (or disabled via LOCALZETA_NO_NUMBA); "
              "timing the numpy lane only")

    print(f"{'kernel':<38}" + "".join(f"{lane:>12}" for lane in lanes))

    rows = [
        ("enumerate GL4(F_2), 65536 dets",
         lambda lane: _kernels.enumerate_invertible_keys(2, lane=lane)),
        ("full double-coset partition p=2",
         lambda lane: cosets.double_coset_partition(2, "full", lane=lane)),
    ]
    for label, fn in rows:
        cells = []
        for lane in lanes:
            best, _ = time_call(lambda: fn(lane), args.repeat)
            cells.append(f"{best * 1e3:10.1f}ms")
        print(f"{label:<38}" + "".join(f"{c:>12}" for c in cells))

    best, report = time_call(
        lambda: cosets.double_coset_partition(3, "quotient"), args.repeat)
    print(f"{'quotient partition p=3 (520 flags)':<38}{best * 1e3:>10.1f}ms")
    print(f"\npartition check: classes={report.class_count}, "
          f"t1_distinct={report.t1_distinct}")


if __name__ == "__main__":
    main()
