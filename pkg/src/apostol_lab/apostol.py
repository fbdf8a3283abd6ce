"""Generalized Apostol-Daehee and Apostol-Changhee numbers attached to a character.

Both families are defined by generating functions in t where the
substitution e^s = 1 + lam*t turns the character sums into Apostol-type
Bernoulli/Euler generating functions. The series path is normative; the
closed finite sums are computed separately so the two can be compared.

The Daehee generating function is

    (q-1)/log q * (log lam + log q + log(1 + lam t))
        * sum_j (lam q)^j chi(j) (1+lam t)^j / ((lam q)^d (1+lam t)^d - 1)

and the Changhee one is

    [2] * sum_j (-1)^j chi(j) (lam q)^j (1+lam t)^j / ((lam q)^d (1+lam t)^d + 1)

with [2] = 1 + q.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import List, Optional

from .classical import (
    PoleError,
    apostol_bernoulli,
    apostol_euler,
    bernoulli2nd,
    gen_chi_values,
    stirling1,
)
from .dirichlet import DirichletChar
from .rings import LogExpr, as_fraction, log_symbol
from .series import (
    SeriesError,
    TruncSeries,
    binomial_series,
    default_truncation,
    falling_factorial,
    log1p,
    series_div,
)

__all__ = [
    "DaeheeContext",
    "ChangheeContext",
    "daehee_series",
    "daehee_numbers",
    "daehee_polynomials",
    "daehee_closed_form",
    "daehee_da4",
    "daehee_da5",
    "changhee_series",
    "changhee_numbers",
    "changhee_polynomials",
    "changhee_closed_form",
    "binomial_transfer",
    "apostol_chi_sums",
]

_MARGIN = 2


@dataclass(frozen=True)
class DaeheeContext:
    """Parameters of the Daehee family.

    ``q=None`` selects the q -> 1 limit, where the prefactor (q-1)/log q is
    replaced by 1 and q is set to 1.
    """

    chi: DirichletChar
    lam: Fraction
    q: Optional[Fraction] = None
    T: int = 0

    def __post_init__(self):
        object.__setattr__(self, "lam", as_fraction(self.lam))
        if self.q is not None:
            object.__setattr__(self, "q", as_fraction(self.q))
        if self.T <= 0:
            object.__setattr__(self, "T", default_truncation())
        if self.lam == 0:
            raise ValueError("lambda must be nonzero")
        if self.q is not None:
            if self.q in (0, 1):
                raise ValueError("symbolic-q mode needs q not in {0, 1}; use the q-limit mode for q -> 1")
            if (self.lam * self.q) ** self.chi.modulus == 1:
                raise PoleError(
                    f"(lambda*q)^d = 1 for lambda={self.lam}, q={self.q}, d={self.chi.modulus}: pole at t=0"
                )

    @property
    def limit(self) -> bool:
        return self.q is None

    @property
    def qv(self) -> Fraction:
        return Fraction(1) if self.q is None else self.q

    @property
    def mode(self) -> str:
        return "q-limit-1" if self.limit else "symbolic-q"

    def prefactor(self) -> LogExpr:
        """(q-1)/log q, or 1 in the limit mode."""
        if self.limit:
            return LogExpr.const(Fraction(1))
        return LogExpr.const(self.q - 1) / LogExpr.symbol("Lq")

    def log_lam_q(self) -> LogExpr:
        """log(lam q) written as Lλ + Lq."""
        lq = LogExpr() if self.limit else log_symbol(self.q, "Lq")
        return log_symbol(self.lam, "Lλ") + lq

    def describe(self) -> dict:
        return {
            "chi": self.chi.label,
            "lambda": str(self.lam),
            "q": "limit1" if self.limit else str(self.q),
        }


@dataclass(frozen=True)
class ChangheeContext:
    chi: DirichletChar
    lam: Fraction
    q: Fraction = Fraction(1)
    T: int = 0

    def __post_init__(self):
        object.__setattr__(self, "lam", as_fraction(self.lam))
        object.__setattr__(self, "q", as_fraction(self.q))
        if self.T <= 0:
            object.__setattr__(self, "T", default_truncation())
        if self.lam == 0:
            raise ValueError("lambda must be nonzero")
        if self.q == 0:
            raise ValueError("q must be nonzero")
        if (self.lam * self.q) ** self.chi.modulus == -1:
            raise PoleError(
                f"(lambda*q)^d = -1 for lambda={self.lam}, q={self.q}, d={self.chi.modulus}: pole at t=0"
            )

    @property
    def bracket2(self) -> Fraction:
        """[2] = 1 + q."""
        return 1 + self.q

    @property
    def odd_modulus(self) -> bool:
        return self.chi.modulus % 2 == 1

    def describe(self) -> dict:
        return {"chi": self.chi.label, "lambda": str(self.lam), "q": str(self.q)}


def _one_plus(lam: Fraction, T: int) -> TruncSeries:
    return TruncSeries([1, lam], T)


def _character_sum_series(chi: DirichletChar, base, lam: Fraction, T: int, alternating: bool) -> TruncSeries:
    """sum_j (+-1)^j chi(j) base^j (1 + lam t)^j."""
    step = _one_plus(lam, T)
    power = TruncSeries([1], T)
    acc = TruncSeries([0], T)
    for j in range(chi.modulus):
        c = chi(j)
        if c != 0:
            w = c * base ** j
            if alternating and j % 2:
                w = -w
            acc = acc + power * w
        power = power * step
    return acc


def daehee_series(ctx: DaeheeContext, T: int) -> TruncSeries:
    """Generating function of the Daehee numbers as a series of LogExpr coefficients."""
    lam, q, d = ctx.lam, ctx.qv, ctx.chi.modulus
    base = lam * q
    csum = _character_sum_series(ctx.chi, base, lam, T, alternating=False)
    den = (_one_plus(lam, T) ** d) * (base ** d) - 1
    s = log1p(TruncSeries.variable(T, lam))
    beta = ctx.log_lam_q()
    alpha = ctx.prefactor()
    try:
        log_part = series_div(s * csum, den)
        if den.coeffs[0] == 0:
            if not beta.is_zero():
                raise PoleError(
                    f"pole at t=0: (lambda*q)^d = 1 while log(lambda*q) is not 0 (lambda={lam}, q={q})"
                )
            return TruncSeries([alpha * c for c in log_part.coeffs], log_part.T)
        const_part = series_div(csum, den)
    except SeriesError as exc:
        raise PoleError(str(exc)) from exc
    Tr = min(log_part.T, const_part.T)
    return TruncSeries(
        [alpha * (beta * const_part.coeffs[n] + log_part.coeffs[n]) for n in range(Tr + 1)], Tr
    )


def _egf_values(series: TruncSeries, max_n: int) -> List:
    if max_n > series.T:
        raise SeriesError(f"index {max_n} beyond truncation {series.T}")
    return [series.coeffs[n] * factorial(n) for n in range(max_n + 1)]


def _check_max_n(ctx, max_n: int):
    if max_n > ctx.T:
        raise ValueError(f"max_n={max_n} exceeds the truncation T={ctx.T}")


def daehee_numbers(ctx: DaeheeContext, max_n: int) -> List[LogExpr]:
    _check_max_n(ctx, max_n)
    vals = _egf_values(daehee_series(ctx, max_n + _MARGIN), max_n)
    return [LogExpr.const(v) for v in vals]


def daehee_polynomials(ctx: DaeheeContext, z, max_n: int) -> List[LogExpr]:
    """EGF coefficients of F_D(t) (1 + lam t)^z."""
    _check_max_n(ctx, max_n)
    z = as_fraction(z)
    F = daehee_series(ctx, max_n + _MARGIN)
    G = F * binomial_series(z, TruncSeries.variable(F.T, ctx.lam))
    return [LogExpr.const(v) for v in _egf_values(G, max_n)]


def binomial_transfer(values: List, lam, z, max_n: int) -> List:
    """sum_j C(n,j) lam^{n-j} (z)_{n-j} values[j]."""
    lam, z = as_fraction(lam), as_fraction(z)
    out = []
    for n in range(max_n + 1):
        acc = LogExpr()
        for j in range(n + 1):
            acc = acc + values[j] * (comb(n, j) * lam ** (n - j) * falling_factorial(z, n - j))
        out.append(acc)
    return out


def apostol_chi_sums(chi: DirichletChar, base: Fraction, mu: Fraction, N: int) -> List:
    """A_n = d^{n-1} sum_j base^j chi(j) B_n(j/d; mu) for n = 0..N."""
    d = chi.modulus
    out = [Fraction(0)] * (N + 1)
    for j in range(d):
        c = chi(j)
        if c == 0:
            continue
        polys = apostol_bernoulli(Fraction(j, d), mu, N)
        w = c * base ** j
        for n in range(N + 1):
            out[n] = out[n] + w * Fraction(d) ** (n - 1) * polys[n]
    return out


def _daehee_inner(chi, lam, q, m, mu, weight_per_j, ell_power):
    """sum_j w_j sum_l C(m,l) lam^{...} b_{m-l}(0) sum_n d^{n-1} B_n(j/d; mu) S_1(l, n).

    ``weight_per_j(j)`` and ``ell_power(j, l)`` carry the parts that differ
    between the literal and corrected readings.
    """
    d = chi.modulus
    b2 = bernoulli2nd(0, m)
    acc = Fraction(0)
    for j in range(d):
        c = chi(j)
        if c == 0:
            continue
        polys = apostol_bernoulli(Fraction(j, d), mu, m)
        wj = c * weight_per_j(j)
        for l in range(m + 1):
            inner = sum(
                (Fraction(d) ** (n - 1) * polys[n] * stirling1(l, n) for n in range(l + 1)),
                Fraction(0),
            )
            acc = acc + wj * comb(m, l) * ell_power(j, l) * b2[m - l] * inner
    return acc


def daehee_closed_form(ctx: DaeheeContext, max_n: int, variant: str = "corrected") -> List[LogExpr]:
    """D_{m-1} for m = 1..max_n+1 from the closed triple sum.

    Symbolic q uses the general theorem; the q-limit mode uses its q -> 1
    corollary. ``variant="as-written"`` keeps the printed lambda exponents
    lam^{m+j-l-1} and the bare second sum; ``"corrected"`` carries the factor
    lam^{m-1} produced by substituting (lam t)^l into the second-kind
    Bernoulli series.
    """
    if variant not in ("as-written", "corrected"):
        raise ValueError(f"unknown variant {variant!r}")
    chi, lam, q = ctx.chi, ctx.lam, ctx.qv
    d = chi.modulus
    mu = (lam * q) ** d
    out = []
    alpha = ctx.prefactor()
    beta = ctx.log_lam_q()
    for m in range(1, max_n + 2):
        if variant == "as-written":
            if ctx.limit:
                first = _daehee_inner(chi, lam, q, m, mu, lambda j: 1, lambda j, l: lam ** (m + j - l - 1))
                second_w = lambda j: lam ** j
            else:
                first = _daehee_inner(chi, lam, q, m, mu, lambda j: q ** j, lambda j, l: lam ** (m + j - l - 1))
                second_w = lambda j: (lam * q) ** j
            second_scale = Fraction(1)
        else:
            first = _daehee_inner(chi, lam, q, m, mu, lambda j: (lam * q) ** j, lambda j, l: lam ** (m - 1))
            second_w = lambda j: (lam * q) ** j
            second_scale = lam ** (m - 1)
        second = Fraction(0)
        for j in range(d):
            c = chi(j)
            if c == 0:
                continue
            polys = apostol_bernoulli(Fraction(j, d), mu, m)
            second = second + c * second_w(j) * sum(
                (Fraction(d) ** (n - 1) * polys[n] * stirling1(m - 1, n) for n in range(m)), Fraction(0)
            )
        value = alpha * (beta * first / m + second * second_scale)
        out.append(value)
    return out


def daehee_da4(chi: DirichletChar, max_n: int) -> List[LogExpr]:
    """lambda = 1, q -> 1: sum_j chi(j) sum_n d^{n-1} B_n(j/d) S_1(m, n)."""
    d = chi.modulus
    out = []
    bern = {j: apostol_bernoulli(Fraction(j, d), 1, max_n) for j in range(d)}
    for m in range(max_n + 1):
        acc = Fraction(0)
        for j in range(d):
            c = chi(j)
            if c == 0:
                continue
            acc = acc + c * sum(
                (Fraction(d) ** (n - 1) * bern[j][n] * stirling1(m, n) for n in range(m + 1)), Fraction(0)
            )
        out.append(LogExpr.const(acc))
    return out


def daehee_da5(chi: DirichletChar, max_n: int) -> List[LogExpr]:
    """sum_n B_{n,chi} S_1(m, n)."""
    B = gen_chi_values("bernoulli", chi, 1, max_n)
    return [
        LogExpr.const(sum((B[n] * stirling1(m, n) for n in range(m + 1)), Fraction(0)))
        for m in range(max_n + 1)
    ]


# --- Changhee ---

def changhee_series(ctx: ChangheeContext, T: int) -> TruncSeries:
    lam, q, d = ctx.lam, ctx.q, ctx.chi.modulus
    base = lam * q
    csum = _character_sum_series(ctx.chi, base, lam, T, alternating=True)
    den = (_one_plus(lam, T) ** d) * (base ** d) + 1
    try:
        return series_div(csum * ctx.bracket2, den)
    except SeriesError as exc:
        raise PoleError(str(exc)) from exc


def changhee_numbers(ctx: ChangheeContext, max_n: int) -> List[LogExpr]:
    _check_max_n(ctx, max_n)
    vals = _egf_values(changhee_series(ctx, max_n + _MARGIN), max_n)
    return [LogExpr.const(v) for v in vals]


def changhee_polynomials(ctx: ChangheeContext, z, max_n: int) -> List[LogExpr]:
    _check_max_n(ctx, max_n)
    z = as_fraction(z)
    F = changhee_series(ctx, max_n + _MARGIN)
    G = F * binomial_series(z, TruncSeries.variable(F.T, ctx.lam))
    return [LogExpr.const(v) for v in _egf_values(G, max_n)]


def changhee_closed_form(ctx: ChangheeContext, max_n: int, variant: str = "corrected") -> List[LogExpr]:
    """Ch_m as the double sum over Apostol-Euler polynomials at (lam q)^d.

    as-written: sum_j (-q)^j chi(j) sum_n lam^{j+n} d^n E_n(j/d; (lam q)^d) S_1(m, n).
    corrected: ([2]/2) lam^m sum_j (-lam q)^j chi(j) sum_n d^n E_n(j/d; (lam q)^d) S_1(m, n).
    """
    if variant not in ("as-written", "corrected"):
        raise ValueError(f"unknown variant {variant!r}")
    chi, lam, q = ctx.chi, ctx.lam, ctx.q
    d = chi.modulus
    mu = (lam * q) ** d
    euler = {j: apostol_euler(Fraction(j, d), mu, max_n) for j in range(d)}
    out = []
    for m in range(max_n + 1):
        acc = Fraction(0)
        for j in range(d):
            c = chi(j)
            if c == 0:
                continue
            for n in range(m + 1):
                term = Fraction(d) ** n * euler[j][n] * stirling1(m, n)
                if variant == "as-written":
                    term = term * (-q) ** j * lam ** (j + n)
                else:
                    term = term * (-lam * q) ** j
                acc = acc + c * term
        if variant == "corrected":
            acc = acc * ctx.bracket2 / 2 * lam ** m
        out.append(LogExpr.const(acc))
    return out
