"""p-adic numbers at tracked precision and partial sums of p-adic integrals.

Partial sums are exact rationals (kept as unreduced numerator/denominator
pairs, since the numbers get very large) and are only reduced p-adically
when compared with a target. Measures:

* bosonic (Volkenborn): p^-N sum_{x<p^N} f(x)
* fermionic: sum_{x<p^N} (-1)^x f(x), and its q-deformation
  (1+q)/(1+q^M) sum_{x<M} f(x) (-q)^x
* q-Volkenborn: sum_{x<M} f(x) q^x / [M]_q

When the integrand carries a character of modulus d the sums run over
x < d p^N, the natural level sets of Z_p x Z/dZ.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from math import comb, factorial
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .classical import (
    bernoulli_numbers,
    bernoulli_poly,
    euler_poly,
    falling_factorial_poly,
    poly_eval,
    stirling2,
)
from .dirichlet import DirichletChar
from .rings import LogExpr, as_fraction
from .sums import weighted_sum

__all__ = [
    "DEFAULT_PRECISION",
    "EXACT_MATCH",
    "SUMMAND_BUDGET",
    "BudgetError",
    "PadicPreconditionError",
    "QpNumber",
    "Distance",
    "vp",
    "padic_log",
    "logexpr_eval_padic",
    "IntegrandSpec",
    "volkenborn_partial",
    "fermionic_partial",
    "q_volkenborn_partial",
    "witt_report",
    "mahler_coefficients",
    "mahler_integral",
    "binomial_poly",
    "PartialSum",
    "ValuationTable",
    "CheckResult",
    "golden_key",
    "integral_rep_check",
    "translation_check",
    "fermionic_shift_check",
    "q_functional_equation_check",
    "load_witt_golden",
    "is_prime",
]

DEFAULT_PRECISION = 40
SUMMAND_BUDGET = 10 ** 6


class BudgetError(ValueError):
    """The partial sum would exceed the summand budget."""


class PadicPreconditionError(ValueError):
    """A parameter violates a p-adic precondition (congruence, parity, ...)."""


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    k = 2
    while k * k <= p:
        if p % k == 0:
            return False
        k += 1
    return True


def _check_prime(p: int, odd: bool = False):
    if not is_prime(p):
        raise PadicPreconditionError(f"p={p} is not prime")
    if odd and p == 2:
        raise PadicPreconditionError("p must be odd here")


def _vp_int(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of 0")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _split_p(n: int, p: int, prec: int) -> Tuple[int, int]:
    """(v, u mod p^prec) with n = p^v u; works through a residue so huge n stay cheap."""
    r = n % p ** (prec + 64)
    if r == 0:
        v = _vp_int(n, p)
        return v, (n // p ** v) % p ** prec
    v = _vp_int(r, p)
    return v, (r // p ** v) % p ** prec


def vp(x, p: int) -> Optional[int]:
    """p-adic valuation of an exact rational; None for 0 (infinite)."""
    x = as_fraction(x)
    if x == 0:
        return None
    return _vp_int(x.numerator, p) - _vp_int(x.denominator, p)


# stands in for an infinite valuation (the two sides agree exactly)
EXACT_MATCH = 10 ** 9


@dataclass(frozen=True)
class Distance:
    """v_p(a - b): an exact integer, or only a lower bound when precision runs out."""

    value: int
    exact: bool = True

    @classmethod
    def infinite(cls) -> "Distance":
        return cls(EXACT_MATCH, exact=False)

    @property
    def is_infinite(self) -> bool:
        return self.value >= EXACT_MATCH

    def __str__(self):
        if self.is_infinite:
            return "inf"
        return str(self.value) if self.exact else f">={self.value}"

    def at_least(self, k: int) -> bool:
        return self.value >= k


@dataclass(frozen=True)
class QpNumber:
    """p^valuation * unit + O(p^(valuation + prec)).

    The zero sentinel has unit = 0 and prec = 0; its valuation is then the
    absolute precision to which it is known to vanish.
    """

    p: int
    valuation: int
    unit: int
    prec: int

    def __post_init__(self):
        if self.unit and self.unit % self.p == 0:
            raise ValueError("unit part divisible by p")

    # constructors

    @classmethod
    def zero(cls, p: int, abs_prec: int) -> "QpNumber":
        return cls(p, abs_prec, 0, 0)

    @classmethod
    def from_ratio(cls, num: int, den: int, p: int, prec: int = DEFAULT_PRECISION) -> "QpNumber":
        """num/den to relative precision prec; 0 is returned as exact-looking zero at abs precision prec."""
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if num == 0:
            return cls.zero(p, prec)
        vn, un = _split_p(num, p, prec)
        vd, ud = _split_p(den, p, prec)
        m = p ** prec
        unit = un * pow(ud, -1, m) % m
        return cls(p, vn - vd, unit, prec)

    @classmethod
    def from_rational(cls, x, p: int, prec: int = DEFAULT_PRECISION) -> "QpNumber":
        x = as_fraction(x)
        return cls.from_ratio(x.numerator, x.denominator, p, prec)

    # queries

    @property
    def is_zero(self) -> bool:
        return self.unit == 0

    @property
    def abs_prec(self) -> int:
        return self.valuation + self.prec

    def to_fraction(self) -> Fraction:
        """The representative p^v * unit (0 for the zero sentinel)."""
        if self.is_zero:
            return Fraction(0)
        return Fraction(self.unit) * Fraction(self.p) ** self.valuation

    def __str__(self):
        if self.is_zero:
            return f"O({self.p}^{self.valuation})"
        return f"{self.unit}*{self.p}^{self.valuation} + O({self.p}^{self.abs_prec})"

    __repr__ = __str__

    # arithmetic

    def _coerce(self, other) -> "QpNumber":
        if isinstance(other, QpNumber):
            if other.p != self.p:
                raise ValueError("different primes")
            return other
        x = as_fraction(other)
        v = vp(x, self.p)
        if v is None:
            return QpNumber.zero(self.p, self.abs_prec + 64)
        return QpNumber.from_rational(x, self.p, max(self.abs_prec - v, 1) + 8)

    @staticmethod
    def _normalize(p: int, v: int, value: int, abs_prec: int) -> "QpNumber":
        m = p ** (abs_prec - v) if abs_prec > v else 1
        value %= m
        if value == 0:
            return QpNumber.zero(p, abs_prec)
        k = _vp_int(value, p)
        return QpNumber(p, v + k, value // p ** k, abs_prec - v - k)

    def __add__(self, other):
        o = self._coerce(other)
        ap = min(self.abs_prec, o.abs_prec)
        if self.is_zero and o.is_zero:
            return QpNumber.zero(self.p, ap)
        if self.is_zero:
            v = o.valuation
            return QpNumber._normalize(self.p, v, o.unit, ap)
        if o.is_zero:
            return QpNumber._normalize(self.p, self.valuation, self.unit, ap)
        v = min(self.valuation, o.valuation)
        total = self.unit * self.p ** (self.valuation - v) + o.unit * self.p ** (o.valuation - v)
        return QpNumber._normalize(self.p, v, total, ap)

    __radd__ = __add__

    def __neg__(self):
        if self.is_zero:
            return self
        m = self.p ** self.prec
        return QpNumber(self.p, self.valuation, (-self.unit) % m, self.prec)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        if self.is_zero or o.is_zero:
            # O(p^a) * (p^v u) is O(p^(a+v)); for two zeros add the bounds
            return QpNumber.zero(self.p, self.valuation + o.valuation)
        prec = min(self.prec, o.prec)
        m = self.p ** prec
        return QpNumber(self.p, self.valuation + o.valuation, self.unit * o.unit % m, prec)

    __rmul__ = __mul__

    def inverse(self) -> "QpNumber":
        if self.is_zero:
            raise ZeroDivisionError("p-adic number indistinguishable from 0 at this precision")
        m = self.p ** self.prec
        return QpNumber(self.p, -self.valuation, pow(self.unit, -1, m), self.prec)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = QpNumber.from_rational(1, self.p, self.prec if not self.is_zero else DEFAULT_PRECISION)
        for _ in range(k):
            result = result * self
        return result

    def distance(self, other) -> Distance:
        """v_p(self - other), flagged as a lower bound if the difference vanishes at working precision."""
        d = self - self._coerce(other)
        if d.is_zero:
            return Distance(d.valuation, exact=False)
        return Distance(d.valuation)


def _ratio_distance(num: int, den: int, target: Union[QpNumber, Fraction], p: int) -> Distance:
    """v_p(num/den - target) with an exact target whenever possible."""
    if isinstance(target, QpNumber):
        return QpNumber.from_ratio(num, den, p, target.prec + 32).distance(target)
    t = as_fraction(target)
    diff = num * t.denominator - t.numerator * den
    if diff == 0:
        return Distance.infinite()
    # only p-adic information of diff is needed; reduce modulo a large p-power
    mod = p ** 512
    r = diff % mod
    v_diff = _vp_int(r, p) if r else _vp_int(diff, p)
    return Distance(v_diff - _vp_int(den, p) - _vp_int(t.denominator, p))


# --- logarithm ---

def _ilog(k: int, p: int) -> int:
    e = 0
    while k >= p:
        k //= p
        e += 1
    return e


def padic_log(u, p: Optional[int] = None, prec: int = DEFAULT_PRECISION) -> QpNumber:
    """log u = sum_{k>=1} (-1)^{k+1} (u-1)^k / k for u = 1 mod p, p odd.

    ``u`` may be a QpNumber or an exact rational (then ``p`` is required).
    """
    if isinstance(u, QpNumber):
        p = u.p
        x_rat = (u - 1).to_fraction()
        K = (u - 1).abs_prec
    else:
        if p is None:
            raise ValueError("p is required for a rational argument")
        x_rat = as_fraction(u) - 1
        K = prec + 1
    _check_prime(p, odd=True)
    if x_rat == 0:
        return QpNumber.zero(p, K)
    vx = vp(x_rat, p)
    if vx < 1:
        raise PadicPreconditionError(f"log needs u = 1 mod {p}; got u - 1 with valuation {vx}")
    acc = Fraction(0)
    k = 1
    while k * vx - _ilog(k, p) <= K:
        acc += Fraction((-1) ** (k + 1), k) * x_rat ** k
        k += 1
    if acc == 0:
        return QpNumber.zero(p, K)
    v = vp(acc, p)
    return QpNumber.from_rational(acc, p, max(K - v, 1))


def logexpr_eval_padic(expr: LogExpr, lam, q, p: int, prec: int = DEFAULT_PRECISION) -> QpNumber:
    """Substitute Lλ = log_p(lam), Lq = log_p(q) (q=None meaning log q = 0)."""
    logs = {
        0: padic_log(lam, p, prec) if as_fraction(lam) != 1 else None,
        1: padic_log(q, p, prec) if q is not None and as_fraction(q) != 1 else None,
    }

    def ev(poly) -> QpNumber:
        acc = QpNumber.zero(p, prec + 40)
        for (i, j), c in poly.items():
            term = QpNumber.from_rational(c, p, prec + 8) if not isinstance(c, QpNumber) else c
            for idx, e in ((0, i), (1, j)):
                if e:
                    if logs[idx] is None:
                        term = None
                        break
                    term = term * logs[idx] ** e
            if term is not None:
                acc = acc + term
        return acc

    for poly in (expr.num, expr.den):
        for c in poly.values():
            if not isinstance(c, (int, Fraction)):
                raise PadicPreconditionError("only rational coefficients embed in Q_p here")
    return ev(expr.num) / ev(expr.den)


# --- integrands ---

@dataclass(frozen=True)
class IntegrandSpec:
    """Integrand kinds: "monomial" x^n, "shifted" (z+x)^n, "binomial" C(x,j),
    "falling-lambda-chi" (x)_n lam^(x+n) chi(x), and "polynomial" with
    rational coefficients (low to high).
    """

    kind: str
    n: int = 0
    z: Fraction = Fraction(0)
    lam: Fraction = Fraction(1)
    chi: Optional[DirichletChar] = None
    coeffs: Tuple[Fraction, ...] = ()

    def __post_init__(self):
        if self.kind not in ("monomial", "shifted", "binomial", "falling-lambda-chi", "polynomial"):
            raise ValueError(f"unknown integrand kind {self.kind!r}")
        if self.n < 0:
            raise ValueError("degree must be nonnegative")
        object.__setattr__(self, "z", as_fraction(self.z))
        object.__setattr__(self, "lam", as_fraction(self.lam))
        object.__setattr__(self, "coeffs", tuple(as_fraction(c) for c in self.coeffs))

    @property
    def period(self) -> int:
        return self.chi.modulus if self.chi is not None else 1

    def check(self, p: int):
        if self.kind == "falling-lambda-chi":
            v = vp(self.lam - 1, p)
            if v is not None and v < 1:
                raise PadicPreconditionError(f"lambda={self.lam} must be = 1 mod {p}")
            if self.chi is not None:
                if self.chi.modulus % p == 0:
                    raise PadicPreconditionError(f"character modulus {self.chi.modulus} must be prime to {p}")
                if any(v not in (-1, 0, 1) for v in self.chi.table()):
                    raise PadicPreconditionError("only real characters (values -1, 0, 1) embed in Q_p here")

    def integer_form(self) -> Tuple[List[int], Fraction, Fraction]:
        """(poly, scale, ratio) with f(x) = scale * poly_int(x) * chi(x) * ratio^x.

        poly_int has integer coefficients (low to high).
        """
        if self.kind == "monomial":
            return [0] * self.n + [1], Fraction(1), Fraction(1)
        if self.kind == "shifted":
            u, w = self.z.numerator, self.z.denominator
            poly = [comb(self.n, k) * u ** (self.n - k) * w ** k for k in range(self.n + 1)]
            return poly, Fraction(1, w ** self.n), Fraction(1)
        if self.kind == "binomial":
            return falling_factorial_poly(self.n), Fraction(1, factorial(self.n)), Fraction(1)
        if self.kind == "falling-lambda-chi":
            return falling_factorial_poly(self.n), self.lam ** self.n, self.lam
        den = 1
        for c in self.coeffs:
            den = den * c.denominator // _gcd(den, c.denominator)
        poly = [int(c * den) for c in self.coeffs] or [0]
        return poly, Fraction(1, den), Fraction(1)

    def values(self, M: int, shift: int = 0) -> List[int]:
        """Integer parts poly_int(x) chi(x) for x = shift .. shift+M-1."""
        poly, _, _ = self.integer_form()
        out = []
        for x in range(shift, shift + M):
            acc = 0
            for c in reversed(poly):
                acc = acc * x + c
            if self.chi is not None:
                acc *= int(self.chi(x))
            out.append(acc)
        return out

    def __call__(self, x: int) -> Fraction:
        poly, scale, ratio = self.integer_form()
        val = poly_eval(poly, x) * scale * ratio ** x
        if self.chi is not None:
            val *= self.chi(x)
        return val


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _level(spec: IntegrandSpec, p: int, N: int) -> int:
    M = spec.period * p ** N
    if M > SUMMAND_BUDGET:
        raise BudgetError(f"{M} summands exceed the budget of {SUMMAND_BUDGET}; use a smaller N")
    return M


@dataclass(frozen=True)
class PartialSum:
    """An exact rational num/den, with the level M it was computed at."""

    num: int
    den: int
    M: int

    def to_fraction(self) -> Fraction:
        return Fraction(self.num, self.den)

    def to_qp(self, p: int, prec: int = DEFAULT_PRECISION) -> QpNumber:
        return QpNumber.from_ratio(self.num, self.den, p, prec)

    def distance(self, target, p: int) -> Distance:
        return _ratio_distance(self.num, self.den, target, p)


def _weighted(spec: IntegrandSpec, M: int, weight: Fraction, shift: int = 0) -> Tuple[int, int]:
    """sum_{x<M} f(x + shift) weight^x as (num, den)."""
    _, scale, ratio = spec.integer_form()
    r = ratio * weight
    num, den = weighted_sum(spec.values(M, shift), r.numerator, r.denominator)
    # f(x+shift) carries ratio^shift
    s = scale * ratio ** shift
    return num * s.numerator, den * s.denominator


def volkenborn_partial(spec: IntegrandSpec, p: int, N: int) -> PartialSum:
    """(1/M) sum_{x<M} f(x), M = d p^N."""
    _check_prime(p)
    spec.check(p)
    M = _level(spec, p, N)
    num, den = _weighted(spec, M, Fraction(1))
    return PartialSum(num, den * M, M)


def q_volkenborn_partial(spec: IntegrandSpec, p: int, N: int, q) -> PartialSum:
    """sum_{x<M} f(x) q^x / [M]_q with [M]_q = (q^M - 1)/(q - 1)."""
    q = as_fraction(q)
    if q == 1:
        return volkenborn_partial(spec, p, N)
    _check_prime(p, odd=True)
    _q_check(q, p)
    spec.check(p)
    M = _level(spec, p, N)
    num, den = _weighted(spec, M, q)
    a, b = q.numerator, q.denominator
    # 1/[M]_q = (q - 1)/(q^M - 1) = (a - b) b^(M-1) / (a^M - b^M)
    num = num * (a - b) * b ** (M - 1)
    den = den * (a ** M - b ** M)
    if den < 0:
        num, den = -num, -den
    return PartialSum(num, den, M)


def _q_check(q: Fraction, p: int):
    v = vp(q - 1, p)
    if v is not None and v < 1:
        raise PadicPreconditionError(f"q={q} must be = 1 mod {p}")


def fermionic_partial(spec: IntegrandSpec, p: int, N: int, q=1) -> PartialSum:
    """sum_{x<M} f(x) (-q)^x, times (1+q)/(1+q^M) when q != 1 (p odd)."""
    _check_prime(p, odd=True)
    q = as_fraction(q)
    spec.check(p)
    M = _level(spec, p, N)
    num, den = _weighted(spec, M, -q)
    if q != 1:
        _q_check(q, p)
        a, b = q.numerator, q.denominator
        # (1+q)/(1+q^M) = (a+b) b^(M-1) / (b^M + a^M)
        num = num * (a + b) * b ** (M - 1)
        den = den * (b ** M + a ** M)
    if den < 0:
        num, den = -num, -den
    return PartialSum(num, den, M)


# --- Witt formulas ---

@dataclass
class ValuationTable:
    """v_p(S_N - target) for N = 1..Nmax."""

    label: str
    p: int
    target: str
    rows: List[Tuple[int, Distance]] = field(default_factory=list)

    @property
    def valuations(self) -> List[int]:
        return [d.value for _, d in self.rows]

    @property
    def nondecreasing(self) -> bool:
        v = self.valuations
        return all(a <= b for a, b in zip(v, v[1:]))

    @property
    def strictly_increasing(self) -> bool:
        v = self.valuations
        return all(a < b for a, b in zip(v, v[1:]))

    def to_rows(self) -> List[Dict[str, str]]:
        return [{"N": str(N), "valuation": str(d)} for N, d in self.rows]


def witt_report(kind: str, n: int, p: int, Nmax: int, z=0, Nmin: int = 1) -> ValuationTable:
    """Partial sums of (z+x)^n against B_n(z) (bosonic) or E_n(z) (fermionic)."""
    z = as_fraction(z)
    spec = IntegrandSpec("shifted", n=n, z=z)
    if kind == "bosonic":
        target = bernoulli_poly(z, n)[n]
        partial = lambda N: volkenborn_partial(spec, p, N)
    elif kind == "fermionic":
        target = euler_poly(z, n)[n]
        partial = lambda N: fermionic_partial(spec, p, N)
    else:
        raise ValueError(f"unknown kind {kind!r}")
    table = ValuationTable(f"witt-{kind} n={n} z={z}", p, str(target))
    for N in range(Nmin, Nmax + 1):
        table.rows.append((N, partial(N).distance(target, p)))
    return table


@lru_cache(maxsize=1)
def load_witt_golden() -> Dict[str, int]:
    """Final-level valuation thresholds recorded from a verified pilot run."""
    text = resources.files("apostol_lab").joinpath("data/witt_golden.json").read_text()
    return json.loads(text)["thresholds"]


def golden_key(kind: str, p: int, n: int) -> str:
    return f"{kind}:p={p}:n={n}"


# --- Mahler expansion ---

def mahler_coefficients(coeffs: Sequence) -> List[Fraction]:
    """a_n with f(x) = sum a_n C(x, n), from f = sum c_k x^k via a_n = n! sum_k c_k S_2(k, n)."""
    cs = [as_fraction(c) for c in coeffs]
    k = len(cs) - 1
    return [
        factorial(n) * sum((cs[j] * stirling2(j, n) for j in range(n, k + 1)), Fraction(0))
        for n in range(k + 1)
    ]


def mahler_integral(coeffs: Sequence, kind: str = "bosonic") -> Fraction:
    """Exact integral of a polynomial through its Mahler coefficients.

    bosonic: sum (-1)^n a_n / (n+1); fermionic: sum (-1)^n a_n / 2^n.
    """
    a = mahler_coefficients(coeffs)
    if kind == "bosonic":
        return sum((Fraction((-1) ** n, n + 1) * an for n, an in enumerate(a)), Fraction(0))
    if kind == "fermionic":
        return sum((Fraction((-1) ** n, 2 ** n) * an for n, an in enumerate(a)), Fraction(0))
    raise ValueError(f"unknown kind {kind!r}")


def binomial_poly(j: int) -> List[Fraction]:
    """Coefficients of C(x, j)."""
    return [Fraction(c, factorial(j)) for c in falling_factorial_poly(j)]


# --- integral representations ---

def integral_rep_check(kind: str, ctx, n: int, p: int, Nmax: int, Nmin: int = 1) -> ValuationTable:
    """Partial sums of (x)_n lam^(x+n) chi(x) against the series value of index n.

    kind "daehee" integrates against mu_q (the bosonic measure in the q-limit
    mode) and compares with the Daehee number; kind "changhee" integrates
    against mu_{-q} and compares with the Changhee number.
    """
    from .apostol import ChangheeContext, DaeheeContext, changhee_numbers, daehee_numbers

    _check_prime(p, odd=True)
    lam = ctx.lam
    spec = IntegrandSpec("falling-lambda-chi", n=n, lam=lam, chi=ctx.chi)
    spec.check(p)
    if kind == "daehee":
        if not isinstance(ctx, DaeheeContext):
            raise TypeError("daehee check needs a DaeheeContext")
        q = ctx.q
        if q is not None:
            _q_check(q, p)
        value = daehee_numbers(ctx, n)[n]
        partial = lambda N: q_volkenborn_partial(spec, p, N, 1 if q is None else q)
    elif kind == "changhee":
        if not isinstance(ctx, ChangheeContext):
            raise TypeError("changhee check needs a ChangheeContext")
        q = ctx.q
        if q != 1:
            _q_check(q, p)
        value = changhee_numbers(ctx, n)[n]
        partial = lambda N: fermionic_partial(spec, p, N, q)
    else:
        raise ValueError(f"unknown kind {kind!r}")
    if value.is_constant():
        target: Union[Fraction, QpNumber] = Fraction(value.constant_value())
    else:
        target = logexpr_eval_padic(value, lam, q, p)
    table = ValuationTable(f"{kind} n={n} chi={ctx.chi.label} lambda={lam} q={q}", p, str(value))
    for N in range(Nmin, Nmax + 1):
        table.rows.append((N, partial(N).distance(target, p)))
    return table


# --- functional equations ---

@dataclass
class CheckResult:
    name: str
    p: int
    N: int
    distance: Distance
    threshold: int
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.distance.at_least(self.threshold)


def _poly_shift(coeffs: Sequence[Fraction], m: int) -> List[Fraction]:
    """Coefficients of f(x + m)."""
    out = [Fraction(0)] * len(coeffs)
    for k, c in enumerate(coeffs):
        for i in range(k + 1):
            out[i] += c * comb(k, i) * m ** (k - i)
    return out


def _poly_derivative(coeffs: Sequence[Fraction]) -> List[Fraction]:
    return [k * c for k, c in enumerate(coeffs)][1:] or [Fraction(0)]


def translation_check(coeffs: Sequence, m: int, p: int, N: int, threshold: Optional[int] = None) -> CheckResult:
    """int f(x+m) - int f(x) against sum_{x<m} f'(x) at level N (bosonic)."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    cs = [as_fraction(c) for c in coeffs] or [Fraction(0)]
    lhs = volkenborn_partial(IntegrandSpec("polynomial", coeffs=tuple(_poly_shift(cs, m))), p, N).to_fraction()
    lhs -= volkenborn_partial(IntegrandSpec("polynomial", coeffs=tuple(cs)), p, N).to_fraction()
    rhs = sum((poly_eval(_poly_derivative(cs), x) for x in range(m)), Fraction(0))
    v = vp(lhs - rhs, p)
    dist = Distance.infinite() if v is None else Distance(v)
    # coefficient denominators divisible by p cost precision
    loss = max([0] + [-(vp(c, p) or 0) for c in cs if c])
    thr = N - 1 - loss if threshold is None else threshold
    return CheckResult(f"translation m={m}", p, N, dist, thr, f"rhs={rhs}")


def fermionic_shift_check(coeffs: Sequence, p: int, N: int) -> Tuple[Fraction, Fraction]:
    """(lhs, exact) for int f(x+1) dmu_-1 + int f dmu_-1 at level N.

    At finite level the left side telescopes to f(0) + f(p^N) exactly,
    which tends to 2 f(0).
    """
    cs = [as_fraction(c) for c in coeffs] or [Fraction(0)]
    a = fermionic_partial(IntegrandSpec("polynomial", coeffs=tuple(_poly_shift(cs, 1))), p, N).to_fraction()
    b = fermionic_partial(IntegrandSpec("polynomial", coeffs=tuple(cs)), p, N).to_fraction()
    return a + b, poly_eval(cs, 0) + poly_eval(cs, p ** N)


def q_functional_equation_check(chi: DirichletChar, lam, t, q, p: int, N: int) -> CheckResult:
    """q^d int f(x+d) dmu_q - int f dmu_q against
    (q-1)/log q (sum_{j<d} q^j f'(j) + log q sum_{j<d} q^j f(j))
    for f(x) = R^x chi(x), R = lam (1 + lam t), t in p Z_p.

    Here f'(j) = log(R) f(j) since chi is locally constant.
    """
    lam, t, q = as_fraction(lam), as_fraction(t), as_fraction(q)
    _check_prime(p, odd=True)
    if vp(t, p) is not None and vp(t, p) < 1:
        raise PadicPreconditionError("t must lie in p Z_p")
    R = lam * (1 + lam * t)
    d = chi.modulus
    spec = IntegrandSpec("falling-lambda-chi", n=0, lam=R, chi=chi)
    spec.check(p)
    _q_check(q, p)
    M = _level(spec, p, N)
    # q^d sum_{x<M} f(x+d) q^x / [M]_q  -  sum_{x<M} f(x) q^x / [M]_q
    n1, d1 = _weighted(spec, M, q, shift=d)
    n0, d0 = _weighted(spec, M, q)
    qd = q ** d
    a, b = q.numerator, q.denominator
    diff_num = (n1 * qd.numerator * d0 - n0 * d1 * qd.denominator) * (a - b) * b ** (M - 1)
    diff_den = d1 * d0 * qd.denominator * (a ** M - b ** M)
    fj = sum((R ** j * q ** j * chi(j) for j in range(d)), Fraction(0))
    logR = padic_log(R, p)
    logq = padic_log(q, p)
    rhs = (logR * fj + logq * fj) * (q - 1) / logq
    dist = _ratio_distance(diff_num, diff_den, rhs, p)
    return CheckResult(f"q-functional equation d={d}", p, N, dist, N - 1)
