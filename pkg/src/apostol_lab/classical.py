"""Classical number and polynomial families, defined by generating functions.

Every family value is the EGF coefficient of its generating function,
expanded in :class:`~apostol_lab.series.TruncSeries`. Closed forms live
next to them as independent cross-checks.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Dict, List, Optional

from .dirichlet import DirichletChar
from .rings import LogExpr, as_fraction, log_symbol
from .series import (
    SeriesError,
    TruncSeries,
    binomial_series,
    exp_series,
    log1p,
    series_div,
)

__all__ = [
    "FAMILY_IDS",
    "FamilySpec",
    "PoleError",
    "family_values",
    "bernoulli_numbers",
    "bernoulli_poly",
    "apostol_bernoulli",
    "lambda_bernoulli",
    "euler_poly",
    "apostol_euler",
    "frobenius_euler_poly",
    "frobenius_euler_numbers",
    "stirling1",
    "stirling2",
    "lambda_stirling2",
    "array_poly",
    "bernoulli2nd",
    "gen_chi_values",
    "gen_euler_alternating",
    "decomposition_values",
    "falling_factorial_poly",
    "b2_integral_definition",
    "b2_kim_closed_form",
    "b2_roman_closed_form",
    "cauchy_recurrence",
    "poly_eval",
]

FAMILY_IDS = (
    "bernoulli",
    "apostol_bernoulli",
    "lambda_bernoulli",
    "euler",
    "apostol_euler",
    "frobenius_euler",
    "stirling1",
    "stirling2",
    "lambda_stirling2",
    "array_poly",
    "bernoulli2nd",
    "gen_bernoulli_chi",
    "gen_euler_chi",
)

# room for removable t-factors cancelled during division
_MARGIN = 2


class PoleError(ArithmeticError):
    """A generating function has a genuine pole at t = 0."""


def _egf(series: TruncSeries, max_n: int) -> List:
    if series.T < max_n:
        raise SeriesError(f"series truncated at {series.T}, need {max_n}")
    return [series.coeffs[n] * factorial(n) for n in range(max_n + 1)]


def _quotient(num: TruncSeries, den: TruncSeries, what: str) -> TruncSeries:
    try:
        return series_div(num, den)
    except SeriesError as exc:
        raise PoleError(f"{what}: {exc}") from exc


def bernoulli_numbers(max_n: int) -> List[Fraction]:
    """B_n from t/(e^t - 1), so B_1 = -1/2."""
    return bernoulli_poly(0, max_n)


def bernoulli_poly(x, max_n: int) -> List[Fraction]:
    return apostol_bernoulli(x, 1, max_n)


def apostol_bernoulli(x, lam, max_n: int) -> List[Fraction]:
    """Apostol-Bernoulli polynomials at x: t e^{xt} / (lam e^t - 1)."""
    return list(_apostol_bernoulli(as_fraction(x), as_fraction(lam), max_n))


@lru_cache(maxsize=4096)
def _apostol_bernoulli(x: Fraction, lam: Fraction, max_n: int):
    T = max_n + _MARGIN
    num = TruncSeries.variable(T) * exp_series(T, x)
    den = exp_series(T) * lam - 1
    return tuple(_egf(_quotient(num, den, f"apostol_bernoulli(lambda={lam})"), max_n))


def lambda_bernoulli(x, lam, max_n: int) -> List[LogExpr]:
    """(log lam + t) e^{xt} / (lam e^t - 1) with log lam kept as the symbol Lλ."""
    x, lam = as_fraction(x), as_fraction(lam)
    if lam == 0:
        raise ValueError("lambda must be nonzero")
    T = max_n + _MARGIN
    Ll = log_symbol(lam, "Lλ")
    ex = exp_series(T, x)
    den = exp_series(T) * lam - 1
    t_part = _egf(_quotient(TruncSeries.variable(T) * ex, den, "lambda_bernoulli"), max_n)
    if Ll.is_zero():
        return [LogExpr.const(v) for v in t_part]
    log_part = _egf(_quotient(ex, den, f"lambda_bernoulli(lambda={lam})"), max_n)
    return [Ll * a + b for a, b in zip(log_part, t_part)]


def euler_poly(x, max_n: int) -> List[Fraction]:
    return apostol_euler(x, 1, max_n)


def apostol_euler(x, lam, max_n: int) -> List[Fraction]:
    """2 e^{xt} / (lam e^t + 1)."""
    return list(_apostol_euler(as_fraction(x), as_fraction(lam), max_n))


@lru_cache(maxsize=4096)
def _apostol_euler(x: Fraction, lam: Fraction, max_n: int):
    T = max_n + _MARGIN
    num = exp_series(T, x) * 2
    den = exp_series(T) * lam + 1
    return tuple(_egf(_quotient(num, den, f"apostol_euler(lambda={lam})"), max_n))


def frobenius_euler_poly(x, u, max_n: int) -> List[Fraction]:
    """(1 - u) e^{xt} / (e^t - u); H_n(0; u) are the Frobenius-Euler numbers."""
    x, u = as_fraction(x), as_fraction(u)
    if u == 1:
        raise ValueError("Frobenius-Euler polynomials need u != 1")
    return list(_frobenius_euler(x, u, max_n))


@lru_cache(maxsize=4096)
def _frobenius_euler(x: Fraction, u: Fraction, max_n: int):
    T = max_n + _MARGIN
    num = exp_series(T, x) * (1 - u)
    den = exp_series(T) - u
    return tuple(_egf(series_div(num, den), max_n))


def frobenius_euler_numbers(u, max_n: int) -> List[Fraction]:
    return frobenius_euler_poly(0, u, max_n)


# --- Stirling numbers from their generating functions ---

@lru_cache(maxsize=None)
def _stirling1_table(N: int):
    T = N + 1
    L = log1p(TruncSeries.variable(T))
    table = [[Fraction(0)] * (N + 1) for _ in range(N + 1)]
    power = TruncSeries([1], T)
    for k in range(N + 1):
        vals = _egf(power, N)
        for n in range(N + 1):
            table[n][k] = vals[n] / factorial(k)
        power = power * L
    return tuple(tuple(int(v) for v in row) for row in table)


@lru_cache(maxsize=None)
def _stirling2_table(N: int):
    T = N + 1
    E = exp_series(T) - 1
    table = [[0] * (N + 1) for _ in range(N + 1)]
    power = TruncSeries([1], T)
    for k in range(N + 1):
        vals = _egf(power, N)
        for n in range(N + 1):
            table[n][k] = int(vals[n] / factorial(k))
        power = power * E
    return tuple(tuple(row) for row in table)


def _table_size(n: int) -> int:
    return max(24, 8 * ((n + 8) // 8))


def stirling1(n: int, k: int) -> int:
    """Signed Stirling numbers of the first kind: (log(1+t))^k / k!."""
    if n < 0 or k < 0:
        return 0
    return _stirling1_table(_table_size(max(n, k)))[n][k]


def stirling2(n: int, k: int) -> int:
    """(e^t - 1)^k / k!."""
    if n < 0 or k < 0:
        return 0
    return _stirling2_table(_table_size(max(n, k)))[n][k]


def lambda_stirling2(v: int, lam, max_n: int) -> List[Fraction]:
    """S_2(n, v; lam) for n = 0..max_n: (lam e^t - 1)^v / v!."""
    return array_poly(v, 0, lam, max_n)


def array_poly(v: int, x, lam, max_n: int) -> List[Fraction]:
    """lambda-array polynomials S_v^n(x; lam): (lam e^t - 1)^v / v! e^{xt}."""
    if v < 0:
        raise ValueError("v must be a nonnegative integer")
    x, lam = as_fraction(x), as_fraction(lam)
    T = max_n
    base = exp_series(T) * lam - 1
    series = (base ** v) * exp_series(T, x) / factorial(v)
    return _egf(series, max_n)


def bernoulli2nd(x, max_n: int) -> List[Fraction]:
    """Bernoulli polynomials of the second kind: t/log(1+t) (1+t)^x."""
    return list(_bernoulli2nd(as_fraction(x), max_n))


@lru_cache(maxsize=256)
def _bernoulli2nd(x: Fraction, max_n: int):
    T = max_n + _MARGIN
    t = TruncSeries.variable(T)
    q = series_div(t, log1p(t))
    return tuple(_egf(q * binomial_series(x, t), max_n))


# --- characters ---

def _char_weighted_exp(chi: DirichletChar, weight, T: int, sign: int = 1) -> TruncSeries:
    """sum_j (sign*weight)^j chi(j) e^{jt}."""
    acc = TruncSeries([0], T)
    w = as_fraction(weight) * sign
    for j in range(chi.modulus):
        c = chi(j)
        if c != 0:
            acc = acc + exp_series(T, j) * (c * w ** j)
    return acc


def gen_chi_values(kind: str, chi: DirichletChar, lam, max_n: int, check: bool = True) -> List:
    """Generalized Apostol-Bernoulli / Apostol-Euler numbers attached to chi.

    The series path is normative; with ``check`` the d-decomposition over
    Apostol polynomials at lam^d is evaluated too and must agree exactly.
    """
    lam = as_fraction(lam)
    d = chi.modulus
    T = max_n + _MARGIN
    if kind == "bernoulli":
        num = TruncSeries.variable(T) * _char_weighted_exp(chi, lam, T)
        den = exp_series(T, d) * lam ** d - 1
    elif kind == "euler":
        num = _char_weighted_exp(chi, lam, T) * 2
        den = exp_series(T, d) * lam ** d + 1
    else:
        raise ValueError(f"unknown kind {kind!r}")
    values = _egf(_quotient(num, den, f"gen_{kind}_chi(lambda={lam})"), max_n)
    if check:
        other = decomposition_values(kind, chi, lam, max_n)
        if any(a != b for a, b in zip(values, other)):
            raise ArithmeticError(f"d-decomposition disagrees with the series for {kind}, lambda={lam}")
    return values


def decomposition_values(kind: str, chi: DirichletChar, lam, max_n: int, exponent: Optional[int] = None) -> List:
    """d^{n-1} sum_j lam^j chi(j) B_n(j/d; lam^e) (Euler analogue with d^n).

    ``exponent`` defaults to the modulus d; other values reproduce the
    literal lam^p reading for comparison.
    """
    lam = as_fraction(lam)
    d = chi.modulus
    e = d if exponent is None else exponent
    out = [Fraction(0)] * (max_n + 1)
    for j in range(d):
        c = chi(j)
        if c == 0:
            continue
        if kind == "bernoulli":
            polys = apostol_bernoulli(Fraction(j, d), lam ** e, max_n)
            scale = [Fraction(d) ** (n - 1) for n in range(max_n + 1)]
        else:
            polys = apostol_euler(Fraction(j, d), lam ** e, max_n)
            scale = [Fraction(d) ** n for n in range(max_n + 1)]
        for n in range(max_n + 1):
            out[n] = out[n] + c * lam ** j * scale[n] * polys[n]
    return out


def gen_euler_alternating(chi: DirichletChar, lam, max_n: int) -> List:
    """d^n sum_j (-1)^j lam^j chi(j) E_n(j/d; lam^d), the alternating-sign generalized Euler numbers.

    Generating function 2 sum_j (-lam)^j chi(j) e^{jt} / (lam^d e^{dt} + 1).
    """
    lam = as_fraction(lam)
    d = chi.modulus
    T = max_n + _MARGIN
    num = _char_weighted_exp(chi, lam, T, sign=-1) * 2
    den = exp_series(T, d) * lam ** d + 1
    return _egf(_quotient(num, den, f"alternating Euler(lambda={lam})"), max_n)


# --- Bernoulli polynomials of the second kind: closed forms ---

def falling_factorial_poly(n: int) -> List[int]:
    """Coefficients (low to high) of (u)_n by direct expansion of u(u-1)...(u-n+1)."""
    poly = [1]
    for k in range(n):
        nxt = [0] * (len(poly) + 1)
        for i, c in enumerate(poly):
            nxt[i + 1] += c
            nxt[i] -= k * c
        poly = nxt
    return poly


def poly_eval(coeffs, x):
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def b2_integral_definition(n: int, x) -> Fraction:
    """int_x^{x+1} (u)_n du by an exact antiderivative."""
    x = as_fraction(x)
    poly = falling_factorial_poly(n)
    anti = [Fraction(0)] + [Fraction(c, i + 1) for i, c in enumerate(poly)]
    return poly_eval(anti, x + 1) - poly_eval(anti, x)


def b2_kim_closed_form(n: int, x) -> Fraction:
    x = as_fraction(x)
    return sum(
        (Fraction(stirling1(n, l), l + 1) * ((x + 1) ** (l + 1) - x ** (l + 1)) for l in range(n + 1)),
        Fraction(0),
    )


def b2_roman_closed_form(n: int, x, variant: str = "corrected") -> Fraction:
    """b_n(0) + sum_l n S_1(., l-1)/l x^l.

    The literal display indexes the Stirling number as S_1(n-l, l-1);
    ``variant="corrected"`` uses S_1(n-1, l-1), the coefficient of the
    derivative identity b_n'(x) = n (x)_{n-1}.
    """
    x = as_fraction(x)
    b0 = bernoulli2nd(0, n)[n]
    acc = b0
    for l in range(1, n + 1):
        s = stirling1(n - l, l - 1) if variant == "as-written" else stirling1(n - 1, l - 1)
        acc += Fraction(n * s, l) * x ** l
    return acc


def cauchy_recurrence(n: int, variant: str = "corrected") -> tuple:
    """(lhs, rhs) of the Cauchy-number recurrence.

    as-written: sum_{k<n} (-1)^k C(n,k) b_k(0) = n! delta_{n,1}.
    corrected: sum_{k<=n} C(n,k) b_k(0) (-1)^{n-k} (n-k)!/(n-k+1) = delta_{n,0},
    the coefficient form of (t/log(1+t)) (log(1+t)/t) = 1.
    """
    b = bernoulli2nd(0, n)
    if variant == "as-written":
        lhs = sum((Fraction((-1) ** k * comb(n, k)) * b[k] for k in range(n)), Fraction(0))
        return lhs, Fraction(factorial(n) if n == 1 else 0)
    lhs = sum(
        (comb(n, k) * b[k] * Fraction((-1) ** (n - k) * factorial(n - k), n - k + 1) for k in range(n + 1)),
        Fraction(0),
    )
    return lhs, Fraction(1 if n == 0 else 0)


# --- dispatch used by the CLI ---

@dataclass(frozen=True)
class FamilySpec:
    family: str
    x: Fraction = Fraction(0)
    lam: Fraction = Fraction(1)
    u: Optional[Fraction] = None
    v: int = 0
    chi: Optional[DirichletChar] = None
    extra: Dict = field(default_factory=dict)

    def validate(self):
        if self.family not in FAMILY_IDS:
            raise ValueError(f"unknown family {self.family!r}")
        if self.lam == 0:
            raise ValueError("lambda must be nonzero")
        if self.family == "frobenius_euler":
            if self.u is None or self.u == 1:
                raise ValueError("frobenius_euler needs u != 1")
        if self.family in ("gen_bernoulli_chi", "gen_euler_chi") and self.chi is None:
            raise ValueError(f"{self.family} needs a character")
        if self.v < 0:
            raise ValueError("v must be nonnegative")


def family_values(spec: FamilySpec, max_n: int) -> List[LogExpr]:
    spec.validate()
    f, x, lam = spec.family, spec.x, spec.lam
    if f == "lambda_bernoulli":
        return lambda_bernoulli(x, lam, max_n)
    if f == "bernoulli":
        vals = bernoulli_poly(x, max_n)
    elif f == "apostol_bernoulli":
        vals = apostol_bernoulli(x, lam, max_n)
    elif f == "euler":
        vals = euler_poly(x, max_n)
    elif f == "apostol_euler":
        vals = apostol_euler(x, lam, max_n)
    elif f == "frobenius_euler":
        vals = frobenius_euler_poly(x, spec.u, max_n)
    elif f == "stirling1":
        vals = [Fraction(stirling1(n, spec.v)) for n in range(max_n + 1)]
    elif f == "stirling2":
        vals = [Fraction(stirling2(n, spec.v)) for n in range(max_n + 1)]
    elif f == "lambda_stirling2":
        vals = lambda_stirling2(spec.v, lam, max_n)
    elif f == "array_poly":
        vals = array_poly(spec.v, x, lam, max_n)
    elif f == "bernoulli2nd":
        vals = bernoulli2nd(x, max_n)
    elif f == "gen_bernoulli_chi":
        vals = gen_chi_values("bernoulli", spec.chi, lam, max_n)
    else:
        vals = gen_chi_values("euler", spec.chi, lam, max_n)
    return [LogExpr.const(v) for v in vals]
