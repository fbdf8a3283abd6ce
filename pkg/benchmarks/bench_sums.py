"""Time the two exact weighted-sum strategies on partial sums of realistic size.

Usage: python benchmarks/bench_sums.py [--repeat 3]
"""

import argparse
import time

from apostol_lab.sums import weighted_sum, weighted_sum_horner

# (label, number of summands, ratio numerator, ratio denominator)
CASES = [
    ("witt p=7 N=5, ratio 1", 7 ** 5, 1, 1),
    ("fermionic p=5 N=6, ratio -1", 5 ** 6, -1, 1),
    ("q-integral p=5 N=6, q=6", 5 ** 6, 6, 1),
    ("q-integral d=4 p=5 N=6, lambda q=36", 4 * 5 ** 6, 36, 1),
    ("rational ratio 6/11, M=5^5", 5 ** 5, 6, 11),
]


def _best(fn, coeffs, a, b, repeat):
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn(coeffs, a, b)
        best = min(best, time.perf_counter() - t0)
    return best, result


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    print(f"{'case':40s} {'horner s':>10s} {'split s':>10s} {'speedup':>8s}")
    for label, M, a, b in CASES:
        coeffs = [x * (x - 1) * ((x % 4 == 1) - (x % 4 == 3)) for x in range(M)]
        th, rh = _best(weighted_sum_horner, coeffs, a, b, args.repeat)
        ts, rs = _best(weighted_sum, coeffs, a, b, args.repeat)
        if rh[0] * rs[1] != rs[0] * rh[1]:
            raise SystemExit(f"results disagree for {label}")
        print(f"{label:40s} {th:10.4f} {ts:10.4f} {th / ts if ts else float('inf'):8.1f}")


if __name__ == "__main__":
    main()
