"""Exact weighted geometric sums over integer coefficient lists.

The partial sums behind the p-adic integrals have the shape
sum_{x<M} c_x r^x with integer c_x and rational r = a/b. Plain Horner
evaluation costs O(M) multiplications of numbers that grow to M*log(a)
bits; splitting the range in halves keeps the operands balanced so the
big products go through CPython's Karatsuba multiplication instead.
"""

from __future__ import annotations

from typing import Sequence, Tuple

__all__ = ["weighted_sum", "weighted_sum_horner"]

_LEAF = 64


def weighted_sum_horner(coeffs: Sequence[int], a: int, b: int = 1) -> Tuple[int, int]:
    """sum_x coeffs[x] (a/b)^x as (numerator, denominator), by Horner's rule."""
    M = len(coeffs)
    if M == 0:
        return 0, 1
    num, bpow = 0, 1
    for x in range(M - 1, -1, -1):
        num = num * a + coeffs[x] * bpow
        bpow *= b
    return num, bpow // b


def _split(coeffs: Sequence[int], a: int, b: int, lo: int, hi: int) -> Tuple[int, int, int]:
    """(N, a^len, b^len) with N = sum_{lo<=x<hi} c_x a^(x-lo) b^(hi-x)."""
    if hi - lo <= _LEAF:
        num, apow, bpow = 0, 1, 1
        for x in range(hi - 1, lo - 1, -1):
            # prepend term x: N <- c_x b^(hi-x) + a N
            bpow *= b
            num = num * a + coeffs[x] * bpow
            apow *= a
        return num, apow, bpow
    mid = (lo + hi) // 2
    nl, al, bl = _split(coeffs, a, b, lo, mid)
    nr, ar, br = _split(coeffs, a, b, mid, hi)
    return nl * br + al * nr, al * ar, bl * br


def weighted_sum(coeffs: Sequence[int], a: int, b: int = 1) -> Tuple[int, int]:
    """sum_x coeffs[x] (a/b)^x as (numerator, denominator); b > 0.

    The pair is not reduced: reducing would cost a gcd of huge integers
    while callers only need p-adic information.
    """
    if b <= 0:
        raise ValueError("denominator must be positive")
    if not coeffs:
        return 0, 1
    if a == b:
        return sum(coeffs), 1
    if a == -b:
        return sum(coeffs[0::2]) - sum(coeffs[1::2]), 1
    num, _, bpow = _split(coeffs, a, b, 0, len(coeffs))
    return num, bpow
