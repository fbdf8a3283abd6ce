"""Exact scalar arithmetic.

Three layers are used throughout the package:

* ``Fraction`` from the standard library is the rational scalar.
* :class:`CycQ` is an element of the cyclotomic field Q(zeta_m), stored as a
  coefficient vector reduced modulo the m-th cyclotomic polynomial.
* :class:`LogExpr` is a rational function in the two formal symbols
  ``Lλ`` (log lambda) and ``Lq`` (log q) with rational or cyclotomic
  coefficients.

Everything is immutable.
"""

from __future__ import annotations

import functools
import re
from fractions import Fraction
from typing import Dict, Iterable, Tuple, Union

__all__ = [
    "RingMismatchError",
    "CycQ",
    "LogExpr",
    "Scalar",
    "cyclotomic_polynomial",
    "euler_phi",
    "as_fraction",
    "parse_rational",
    "format_scalar",
    "parse_scalar",
    "log_symbol",
]


class RingMismatchError(TypeError):
    """Operands live in different coefficient rings."""


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


_RAT_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def parse_rational(text: str) -> Fraction:
    """Parse ``"a"`` or ``"a/b"``; floats are rejected on purpose."""
    m = _RAT_RE.match(text)
    if not m:
        raise ValueError(f"not an exact rational (use 'a' or 'a/b'): {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) else 1
    if den == 0:
        raise ZeroDivisionError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def euler_phi(m: int) -> int:
    result, n, k = m, m, 2
    while k * k <= n:
        if n % k == 0:
            while n % k == 0:
                n //= k
            result -= result // k
        k += 1
    if n > 1:
        result -= result // n
    return result


def _divisors(m: int):
    return [k for k in range(1, m + 1) if m % k == 0]


def _int_poly_divexact(a, b):
    """Exact division of integer polynomials (low-to-high coefficient lists), b monic."""
    a = list(a)
    out = [0] * (len(a) - len(b) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = a[i + len(b) - 1]
        out[i] = c
        if c:
            for j, bj in enumerate(b):
                a[i + j] -= c * bj
    if any(a[: len(b) - 1]):
        raise ArithmeticError("inexact polynomial division")
    return out


@functools.lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> Tuple[int, ...]:
    """Coefficients (low to high) of Phi_m, via x^m - 1 = prod_{k | m} Phi_k."""
    if m < 1:
        raise ValueError("cyclotomic order must be positive")
    poly = [-1] + [0] * (m - 1) + [1]
    for k in _divisors(m)[:-1]:
        poly = _int_poly_divexact(poly, cyclotomic_polynomial(k))
    return tuple(poly)


# --- polynomials over Q as tuples (low to high), used for CycQ inversion ---

def _trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _qpoly_divmod(a, b):
    a = _trim(a)
    b = _trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lead = b[-1]
    while len(a) >= len(b) and a:
        c = a[-1] / lead
        shift = len(a) - len(b)
        q[shift] = c
        for j, bj in enumerate(b):
            a[shift + j] -= c * bj
        a = _trim(a)
    return _trim(q), a


def _qpoly_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _qpoly_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return _trim([x - y for x, y in zip(a, b)])


def _qpoly_inverse_mod(a, modulus):
    """Inverse of a modulo an irreducible modulus by the extended Euclidean algorithm."""
    r0, r1 = _trim(modulus), _trim(a)
    s0, s1 = [], [Fraction(1)]
    while r1:
        q, r = _qpoly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _qpoly_sub(s0, _qpoly_mul(q, s1))
    if len(r0) != 1:
        raise ZeroDivisionError("element is not invertible")
    c = r0[0]
    return [x / c for x in s0]


class CycQ:
    """Element of Q(zeta_m) as a polynomial in zeta_m of degree < phi(m)."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs: Iterable = ()):
        phi = euler_phi(order)
        cs = [as_fraction(c) for c in coeffs]
        if len(cs) > phi:
            cs = _reduce_mod_phi(cs, order)
        cs = cs + [Fraction(0)] * (phi - len(cs))
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("CycQ is immutable")

    @classmethod
    def zeta(cls, order: int, power: int = 1) -> "CycQ":
        power %= order
        return cls(order, [0] * power + [1])

    @classmethod
    def from_rational(cls, order: int, value) -> "CycQ":
        return cls(order, [as_fraction(value)])

    def embed(self, order: int) -> "CycQ":
        """Explicit embedding Q(zeta_m) -> Q(zeta_M) for m | M."""
        if order % self.order:
            raise RingMismatchError(f"Q(zeta_{self.order}) does not embed in Q(zeta_{order})")
        step = order // self.order
        out = [Fraction(0)] * (step * (len(self.coeffs) - 1) + 1)
        for i, c in enumerate(self.coeffs):
            out[i * step] = c
        return CycQ(order, out)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def _coerce(self, other) -> "CycQ | None":
        if isinstance(other, CycQ):
            if other.order == self.order:
                return other
            # orders 1 and 2 both give Q itself
            if euler_phi(other.order) == 1:
                return CycQ(self.order, other.coeffs)
            if euler_phi(self.order) == 1:
                return None
            raise RingMismatchError(
                f"cannot mix Q(zeta_{self.order}) and Q(zeta_{other.order}) without embed()"
            )
        if isinstance(other, (int, Fraction)):
            return CycQ(self.order, [other])
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, CycQ):
                return other + self
            return NotImplemented
        return CycQ(self.order, [a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CycQ(self.order, [-a for a in self.coeffs])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, CycQ):
                return -(other - self)
            return NotImplemented
        return CycQ(self.order, [a - b for a, b in zip(self.coeffs, o.coeffs)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycQ(self.order, [a * other for a in self.coeffs])
        o = self._coerce(other)
        if o is None:
            if isinstance(other, CycQ):
                return other * self
            return NotImplemented
        n = len(self.coeffs)
        prod = [Fraction(0)] * (2 * n - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    if b:
                        prod[i + j] += a * b
        return CycQ(self.order, _reduce_mod_phi(prod, self.order))

    __rmul__ = __mul__

    def inverse(self) -> "CycQ":
        if self.is_zero():
            raise ZeroDivisionError("division by zero in cyclotomic field")
        if len(self.coeffs) == 1:
            return CycQ(self.order, [1 / self.coeffs[0]])
        inv = _qpoly_inverse_mod(list(self.coeffs), [Fraction(c) for c in cyclotomic_polynomial(self.order)])
        return CycQ(self.order, inv)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero in cyclotomic field")
            return CycQ(self.order, [a / other for a in self.coeffs])
        o = self._coerce(other)
        if o is None:
            if isinstance(other, CycQ):
                return CycQ(other.order, self.coeffs) / other
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = CycQ(self.order, [1])
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        if isinstance(other, CycQ):
            try:
                o = self._coerce(other)
            except RingMismatchError:
                return False
            if o is None:
                return other == self
            return self.coeffs == o.coeffs
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash((self.order, self.coeffs))

    def __repr__(self):
        return f"CycQ({self.order}, {[str(c) for c in self.coeffs]})"

    def __str__(self):
        return format_scalar(self)


def _reduce_mod_phi(coeffs, order):
    phi_poly = cyclotomic_polynomial(order)
    deg = len(phi_poly) - 1
    cs = list(coeffs)
    for i in range(len(cs) - 1, deg - 1, -1):
        c = cs[i]
        if c:
            shift = i - deg
            for j in range(deg):
                if phi_poly[j]:
                    cs[shift + j] -= c * phi_poly[j]
            cs[i] = Fraction(0)
    return cs[:deg] if len(cs) >= deg else cs


Scalar = Union[int, Fraction, CycQ]


def format_scalar(c) -> str:
    if isinstance(c, CycQ):
        if euler_phi(c.order) == 1:
            return str(c.coeffs[0])
        return f"cyc{c.order}[" + ",".join(str(x) for x in c.coeffs) + "]"
    return str(Fraction(c))


_CYC_RE = re.compile(r"^cyc(\d+)\[([^\]]*)\]$")


def parse_scalar(text: str):
    text = text.strip()
    m = _CYC_RE.match(text)
    if m:
        order = int(m.group(1))
        return CycQ(order, [parse_rational(x) for x in m.group(2).split(",")])
    return parse_rational(text)


def _is_zero(c) -> bool:
    return c == 0


def _scalar(c):
    return Fraction(c) if isinstance(c, int) else c


# --- bivariate polynomials in (Lλ, Lq): dict {(i, j): coeff} ---

Mono = Tuple[int, int]
Poly = Dict[Mono, Scalar]


def _padd(a: Poly, b: Poly, sign=1) -> Poly:
    out = dict(a)
    for k, v in b.items():
        nv = out.get(k, 0) + (v if sign > 0 else -v)
        if _is_zero(nv):
            out.pop(k, None)
        else:
            out[k] = nv
    return out


def _pmul(a: Poly, b: Poly) -> Poly:
    out: Poly = {}
    for (i1, j1), c1 in a.items():
        for (i2, j2), c2 in b.items():
            k = (i1 + i2, j1 + j2)
            out[k] = out.get(k, 0) + c1 * c2
    return {k: v for k, v in out.items() if not _is_zero(v)}


def _pscale(a: Poly, c) -> Poly:
    if _is_zero(c):
        return {}
    return {k: v * c for k, v in a.items()}


def _pshift(a: Poly, di: int, dj: int) -> Poly:
    return {(i + di, j + dj): v for (i, j), v in a.items()}


_ONE: Poly = {(0, 0): Fraction(1)}

LAMBDA_SYMBOL = "Lλ"
Q_SYMBOL = "Lq"


class LogExpr:
    """Rational function num/den in the formal symbols Lλ and Lq.

    Equality is decided by cross-multiplication. The denominator is kept
    with leading coefficient 1 in lexicographic order of (deg Lλ, deg Lq),
    and common monomial factors are cancelled; no general gcd is taken.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Poly | None = None, den: Poly | None = None):
        num = {k: _scalar(v) for k, v in (num or {}).items() if not _is_zero(v)}
        den = {k: _scalar(v) for k, v in (den if den is not None else _ONE).items() if not _is_zero(v)}
        if not den:
            raise ZeroDivisionError("LogExpr with zero denominator")
        if not num:
            den = _ONE
        else:
            mi = min(min(i for i, _ in num), min(i for i, _ in den))
            mj = min(min(j for _, j in num), min(j for _, j in den))
            if mi or mj:
                num = _pshift(num, -mi, -mj)
                den = _pshift(den, -mi, -mj)
            lead = den[max(den)]
            if lead != 1:
                inv = 1 / lead
                num = _pscale(num, inv)
                den = _pscale(den, inv)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("LogExpr is immutable")

    @classmethod
    def const(cls, c) -> "LogExpr":
        if isinstance(c, LogExpr):
            return c
        return cls({(0, 0): c})

    @classmethod
    def symbol(cls, which: str) -> "LogExpr":
        if which in (LAMBDA_SYMBOL, "Llam", "lambda"):
            return cls({(1, 0): Fraction(1)})
        if which in (Q_SYMBOL, "q"):
            return cls({(0, 1): Fraction(1)})
        raise ValueError(f"unknown log symbol {which!r}")

    @property
    def is_polynomial(self) -> bool:
        return len(self.den) == 1 and (0, 0) in self.den

    def is_constant(self) -> bool:
        return self.is_polynomial and all(k == (0, 0) for k in self.num)

    def constant_value(self):
        if not self.is_constant():
            raise ValueError(f"{self} depends on log symbols")
        return self.num.get((0, 0), Fraction(0))

    def symbols(self) -> set:
        out = set()
        for poly in (self.num, self.den):
            for i, j in poly:
                if i:
                    out.add(LAMBDA_SYMBOL)
                if j:
                    out.add(Q_SYMBOL)
        return out

    @staticmethod
    def _lift(x) -> "LogExpr | None":
        if isinstance(x, LogExpr):
            return x
        if isinstance(x, (int, Fraction, CycQ)):
            return LogExpr({(0, 0): x})
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if not o.num:
            return self
        if not self.num:
            return o
        if self.den == o.den:
            return LogExpr(_padd(self.num, o.num), self.den)
        if len(self.den) == 1 and len(o.den) == 1:
            (ma, ca), = self.den.items()
            (mb, cb), = o.den.items()
            lcm = (max(ma[0], mb[0]), max(ma[1], mb[1]))
            na = _pscale(_pshift(self.num, lcm[0] - ma[0], lcm[1] - ma[1]), 1 / ca)
            nb = _pscale(_pshift(o.num, lcm[0] - mb[0], lcm[1] - mb[1]), 1 / cb)
            return LogExpr(_padd(na, nb), {lcm: Fraction(1)})
        return LogExpr(
            _padd(_pmul(self.num, o.den), _pmul(o.num, self.den)), _pmul(self.den, o.den)
        )

    __radd__ = __add__

    def __neg__(self):
        return LogExpr(_pscale(self.num, -1), self.den)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, CycQ)):
            return LogExpr(_pscale(self.num, other), self.den)
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if not self.num or not o.num:
            return LogExpr()
        return LogExpr(_pmul(self.num, o.num), _pmul(self.den, o.den))

    __rmul__ = __mul__

    def inverse(self) -> "LogExpr":
        if not self.num:
            raise ZeroDivisionError("LogExpr division by zero")
        return LogExpr(self.den, self.num)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, CycQ)):
            if _is_zero(other):
                raise ZeroDivisionError("LogExpr division by zero")
            return LogExpr(_pscale(self.num, 1 / other if not isinstance(other, int) else Fraction(1, other)), self.den)
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = LogExpr.const(Fraction(1))
        for _ in range(k):
            result = result * self
        return result

    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return not _padd(_pmul(self.num, o.den), _pmul(o.num, self.den), sign=-1)

    __hash__ = None

    def __repr__(self):
        return f"LogExpr({self})"

    def __str__(self):
        num = _format_poly(self.num)
        if self.is_polynomial and self.den[(0, 0)] == 1:
            return num
        return f"({num})/({_format_poly(self.den)})"

    @classmethod
    def parse(cls, text: str) -> "LogExpr":
        text = text.strip()
        if text.startswith("("):
            depth = 0
            for i, ch in enumerate(text):
                depth += ch == "("
                depth -= ch == ")"
                if depth == 0:
                    break
            num_txt = text[1:i]
            rest = text[i + 1:].strip()
            if rest:
                if not (rest.startswith("/(") and rest.endswith(")")):
                    raise ValueError(f"malformed LogExpr {text!r}")
                return cls(_parse_poly(num_txt), _parse_poly(rest[2:-1]))
            return cls(_parse_poly(num_txt))
        return cls(_parse_poly(text))


def _mono_str(i: int, j: int) -> str:
    parts = []
    if i:
        parts.append(LAMBDA_SYMBOL + (f"^{i}" if i > 1 else ""))
    if j:
        parts.append(Q_SYMBOL + (f"^{j}" if j > 1 else ""))
    return "*".join(parts)


def _format_poly(poly: Poly) -> str:
    if not poly:
        return "0"
    terms = []
    for (i, j) in sorted(poly, key=lambda k: (-(k[0] + k[1]), -k[0])):
        c = poly[(i, j)]
        mono = _mono_str(i, j)
        cs = format_scalar(c)
        if not mono:
            terms.append(cs)
        elif cs == "1":
            terms.append(mono)
        elif cs == "-1":
            terms.append("-" + mono)
        else:
            terms.append(f"{cs}*{mono}")
    out = terms[0]
    for t in terms[1:]:
        out += " - " + t[1:] if t.startswith("-") else " + " + t
    return out


_TERM_SPLIT = re.compile(r"\s+([+-])\s+")


def _parse_poly(text: str) -> Poly:
    text = text.strip()
    pieces = _TERM_SPLIT.split(text)
    terms = [(1, pieces[0])]
    for k in range(1, len(pieces), 2):
        terms.append((1 if pieces[k] == "+" else -1, pieces[k + 1]))
    poly: Poly = {}
    for sign, term in terms:
        term = term.strip()
        if term.startswith("-"):
            sign, term = -sign, term[1:]
        coeff = Fraction(1)
        i = j = 0
        for factor in term.split("*"):
            factor = factor.strip()
            base, _, exp = factor.partition("^")
            e = int(exp) if exp else 1
            if base in (LAMBDA_SYMBOL, "Llam"):
                i += e
            elif base == Q_SYMBOL:
                j += e
            else:
                coeff = coeff * parse_scalar(factor)
        poly = _padd(poly, {(i, j): coeff * sign})
    return poly


def log_symbol(value, which: str) -> LogExpr:
    """Formal log of an exact rational parameter; log 1 is exactly 0."""
    if as_fraction(value) == 1:
        return LogExpr()
    return LogExpr.symbol(which)

