"""Truncated formal power series over the exact rings of :mod:`apostol_lab.rings`.

Coefficients are stored as ordinary coefficients a_n of t^n; the
exponential-generating-function value n! * a_n is produced only by
:func:`egf_coefficient`.
"""

from __future__ import annotations

import os
from fractions import Fraction
from math import factorial
from typing import Callable, List, Sequence

__all__ = [
    "DEFAULT_TRUNCATION",
    "SeriesError",
    "TruncSeries",
    "default_truncation",
    "series_mul",
    "series_div",
    "series_compose",
    "log1p",
    "binomial_series",
    "egf_coefficient",
    "exp_series",
    "falling_factorial",
    "binom_general",
]

DEFAULT_TRUNCATION = 16


def default_truncation() -> int:
    raw = os.environ.get("APOSTOL_LAB_TRUNCATION")
    if raw:
        return int(raw)
    return DEFAULT_TRUNCATION


class SeriesError(ArithmeticError):
    """Raised for non-invertible leading coefficients or bad substitutions."""


def _zero(c) -> bool:
    return c == 0


class TruncSeries:
    """sum_{n <= T} a_n t^n with exact coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence, T: int | None = None):
        cs = list(coeffs)
        if T is None:
            T = len(cs) - 1
        if T < 0:
            raise SeriesError("truncation order must be nonnegative")
        cs = cs[: T + 1] + [0] * (T + 1 - len(cs))
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("TruncSeries is immutable")

    @property
    def T(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def constant(cls, c, T: int) -> "TruncSeries":
        return cls([c], T)

    @classmethod
    def variable(cls, T: int, scale=1) -> "TruncSeries":
        """The series scale * t."""
        return cls([0, scale], T)

    def __getitem__(self, n: int):
        return self.coeffs[n]

    def __len__(self):
        return len(self.coeffs)

    def truncate(self, T: int) -> "TruncSeries":
        return TruncSeries(self.coeffs, min(T, self.T))

    def map(self, fn: Callable) -> "TruncSeries":
        return TruncSeries([fn(c) for c in self.coeffs], self.T)

    def valuation(self) -> int:
        """Index of the first nonzero coefficient (T + 1 for the zero series)."""
        for i, c in enumerate(self.coeffs):
            if not _zero(c):
                return i
        return len(self.coeffs)

    def _lift(self, other) -> "TruncSeries":
        if isinstance(other, TruncSeries):
            return other
        return TruncSeries([other], self.T)

    def __add__(self, other):
        if not isinstance(other, TruncSeries):
            cs = list(self.coeffs)
            cs[0] = cs[0] + other
            return TruncSeries(cs, self.T)
        T = min(self.T, other.T)
        return TruncSeries([self.coeffs[i] + other.coeffs[i] for i in range(T + 1)], T)

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries([-c for c in self.coeffs], self.T)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, TruncSeries):
            return series_mul(self, other)
        return TruncSeries([c * other for c in self.coeffs], self.T)

    def __rmul__(self, other):
        return TruncSeries([other * c for c in self.coeffs], self.T)

    def __truediv__(self, other):
        if isinstance(other, TruncSeries):
            return series_div(self, other)
        if isinstance(other, int):
            other = Fraction(other)
        return TruncSeries([c / other for c in self.coeffs], self.T)

    def __pow__(self, k: int):
        if k < 0:
            raise SeriesError("negative powers: use series_div")
        result = TruncSeries([1], self.T)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        T = min(self.T, other.T)
        return all(self.coeffs[i] == other.coeffs[i] for i in range(T + 1))

    __hash__ = None

    def __call__(self, g: "TruncSeries") -> "TruncSeries":
        return series_compose(self, g)

    def egf(self) -> List:
        """All EGF values n! * a_n."""
        return [c * factorial(n) for n, c in enumerate(self.coeffs)]

    def __repr__(self):
        return "TruncSeries([" + ", ".join(str(c) for c in self.coeffs) + f"], T={self.T})"


def series_mul(f: TruncSeries, g: TruncSeries) -> TruncSeries:
    T = min(f.T, g.T)
    a, b = f.coeffs, g.coeffs
    out = []
    for n in range(T + 1):
        acc = 0
        for k in range(n + 1):
            x = a[k]
            if not _zero(x):
                y = b[n - k]
                if not _zero(y):
                    acc = acc + x * y
        out.append(acc)
    return TruncSeries(out, T)


def series_div(f: TruncSeries, g: TruncSeries) -> TruncSeries:
    """f / g, cancelling a common factor t^k first when g(0) = 0.

    The truncation of the result drops by k because k coefficients of the
    numerator are consumed by the cancellation.
    """
    T = min(f.T, g.T)
    f, g = f.truncate(T), g.truncate(T)
    k = g.valuation()
    if k > T:
        raise SeriesError("division by the zero series")
    if k:
        if f.valuation() < k:
            raise SeriesError(
                f"pole at t=0: divisor has a zero of order {k} the numerator does not share"
            )
        f = TruncSeries(f.coeffs[k:], T - k)
        g = TruncSeries(g.coeffs[k:], T - k)
        T -= k
    g0 = g.coeffs[0]
    try:
        inv = Fraction(1) / g0
    except ZeroDivisionError as exc:
        raise SeriesError(f"leading coefficient {g0} is not invertible") from exc
    out: List = []
    gc, fc = g.coeffs, f.coeffs
    for n in range(T + 1):
        acc = fc[n]
        for j in range(1, n + 1):
            y = gc[j]
            if not _zero(y):
                acc = acc - y * out[n - j]
        out.append(acc * inv)
    return TruncSeries(out, T)


def series_compose(f: TruncSeries, g: TruncSeries) -> TruncSeries:
    """f(g(t)) by Horner's scheme; g must have zero constant term."""
    if not _zero(g.coeffs[0]):
        raise SeriesError("composition needs g(0) = 0")
    T = min(f.T, g.T)
    g = g.truncate(T)
    acc = TruncSeries([f.coeffs[T]], T)
    for k in range(T - 1, -1, -1):
        acc = series_mul(acc, g) + f.coeffs[k]
    return acc


def _log1p_coeffs(T: int) -> TruncSeries:
    return TruncSeries([0] + [Fraction((-1) ** (k + 1), k) for k in range(1, T + 1)], T)


def log1p(g: TruncSeries) -> TruncSeries:
    """log(1 + g) for g with zero constant term."""
    if not _zero(g.coeffs[0]):
        raise SeriesError("log1p needs g(0) = 0")
    return series_compose(_log1p_coeffs(g.T), g)


def exp_series(T: int, scale=1) -> TruncSeries:
    """e^{scale * t}."""
    out = []
    power = Fraction(1)
    for n in range(T + 1):
        out.append(power / factorial(n))
        power = power * scale
    return TruncSeries(out, T)


def binom_general(alpha, n: int):
    """alpha (alpha-1) ... (alpha-n+1) / n! in alpha's ring."""
    acc = Fraction(1)
    for k in range(n):
        acc = acc * (alpha - k)
    return acc / factorial(n)


def falling_factorial(x, n: int):
    acc = 1
    for k in range(n):
        acc = acc * (x - k)
    return acc


def binomial_series(alpha, g: TruncSeries) -> TruncSeries:
    """(1 + g)^alpha = sum_n binom(alpha, n) g^n."""
    if not _zero(g.coeffs[0]):
        raise SeriesError("binomial_series needs g(0) = 0")
    outer = TruncSeries([binom_general(alpha, n) for n in range(g.T + 1)], g.T)
    return series_compose(outer, g)


def egf_coefficient(f: TruncSeries, n: int):
    if n < 0 or n > f.T:
        raise IndexError(f"index {n} beyond truncation T={f.T}")
    return f.coeffs[n] * factorial(n)
