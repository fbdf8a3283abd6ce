"""Dirichlet characters with exact cyclotomic values.

Characters are stored as full value tables over 0..d-1. The group
(Z/dZ)^x is split into cyclic factors by the Chinese remainder theorem; a
character is fixed by the exponent tuple giving the image of each factor's
generator, and :func:`enumerate_characters` lists characters in
lexicographic order of those tuples (index 0 is the principal character).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import List, Tuple

from .rings import CycQ, euler_phi

__all__ = [
    "DirichletChar",
    "enumerate_characters",
    "kronecker_character",
    "kronecker_symbol",
    "is_fundamental_discriminant",
    "conductor",
    "parse_character",
    "trivial_character",
]


def _factorize(n: int) -> List[Tuple[int, int]]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1
    if n > 1:
        out.append((n, 1))
    return out


def _mult_order(g: int, n: int) -> int:
    k, x = 1, g % n
    while x != 1 % n:
        x = x * g % n
        k += 1
    return k


def _primitive_root(n: int) -> int:
    phi = euler_phi(n)
    for g in range(2, n):
        if math.gcd(g, n) == 1 and _mult_order(g, n) == phi:
            return g
    return 1


def _crt_lift(residue: int, modulus: int, total: int) -> int:
    """x = residue mod `modulus` and x = 1 mod total/modulus."""
    other = total // modulus
    for x in range(residue % modulus, total, modulus):
        if x % other == 1 % other:
            return x
    raise ArithmeticError("CRT lift failed")


@lru_cache(maxsize=None)
def _cyclic_decomposition(d: int) -> Tuple[Tuple[int, int], ...]:
    """(generator mod d, order) for each cyclic factor of (Z/dZ)^x."""
    gens = []
    for p, e in _factorize(d):
        pe = p ** e
        if p == 2:
            if e == 2:
                gens.append((_crt_lift(3, pe, d), 2))
            elif e >= 3:
                gens.append((_crt_lift(pe - 1, pe, d), 2))
                gens.append((_crt_lift(5, pe, d), 2 ** (e - 2)))
        else:
            gens.append((_crt_lift(_primitive_root(pe), pe, d), euler_phi(pe)))
    return tuple(gens)


@dataclass(frozen=True)
class DirichletChar:
    """A Dirichlet character mod `modulus` with values in Q(zeta_order)."""

    modulus: int
    values: Tuple[CycQ, ...]
    order: int
    label: str = ""

    def __post_init__(self):
        if len(self.values) != self.modulus:
            raise ValueError("value table must have one entry per residue")

    def __call__(self, n: int):
        """chi(n) as a Fraction when the field is Q, else a CycQ."""
        v = self.values[n % self.modulus]
        if euler_phi(self.order) == 1:
            return v.coeffs[0]
        return v

    @property
    def is_principal(self) -> bool:
        return self.order == 1

    @property
    def is_real(self) -> bool:
        return self.order <= 2

    def table(self) -> List:
        return [self(j) for j in range(self.modulus)]

    def induce(self, modulus: int) -> "DirichletChar":
        """The character mod a multiple of the modulus sharing this one's values on units."""
        if modulus % self.modulus:
            raise ValueError(f"{modulus} is not a multiple of {self.modulus}")
        zero = CycQ(self.order, [])
        vals = tuple(
            self.values[j % self.modulus] if math.gcd(j, modulus) == 1 else zero
            for j in range(modulus)
        )
        return DirichletChar(modulus, vals, self.order, f"{self.label}->mod{modulus}")

    def __eq__(self, other):
        if not isinstance(other, DirichletChar):
            return NotImplemented
        return self.modulus == other.modulus and self.table() == other.table()

    def __hash__(self):
        return hash((self.modulus, tuple(str(v) for v in self.values)))


def _character_from_exponents(d: int, exps: Tuple[int, ...]) -> DirichletChar:
    gens = _cyclic_decomposition(d)
    order = 1
    for (_, n_i), a in zip(gens, exps):
        order = math.lcm(order, n_i // math.gcd(a, n_i))
    zero = CycQ(order, [])
    vals = [zero] * d
    # walk every unit as a product of generator powers
    units = [(1 % d, [0] * len(gens))] if d > 1 else [(0, [])]
    for idx, (g, n_i) in enumerate(gens):
        new = []
        for x, e in units:
            y = x
            for k in range(n_i):
                ek = list(e)
                ek[idx] = k
                new.append((y, ek))
                y = y * g % d
        units = new
    for x, e in units:
        power = sum(a * k * order // n_i for (_, n_i), a, k in zip(gens, exps, e))
        vals[x] = CycQ.zeta(order, power)
    label = f"mod:{d}:" + ",".join(map(str, exps)) if exps else f"mod:{d}"
    return DirichletChar(d, tuple(vals), order, label)


def enumerate_characters(d: int) -> List[DirichletChar]:
    if d < 1:
        raise ValueError("modulus must be positive")
    gens = _cyclic_decomposition(d)
    exps: List[Tuple[int, ...]] = [()]
    for _, n_i in gens:
        exps = [e + (a,) for e in exps for a in range(n_i)]
    return [_character_from_exponents(d, e) for e in exps]


def trivial_character() -> DirichletChar:
    return DirichletChar(1, (CycQ(1, [1]),), 1, "trivial")


def kronecker_symbol(a: int, n: int) -> int:
    """Kronecker symbol (a/n) by quadratic reciprocity."""
    if n == 0:
        return 1 if a in (1, -1) else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    if v:
        if a % 2 == 0:
            return 0
        if v % 2 and a % 8 in (3, 5):
            result = -result
    # now n odd and positive: Jacobi symbol
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def is_fundamental_discriminant(D: int) -> bool:
    if D in (0, 1):
        return False

    def squarefree(n):
        return all(e == 1 for _, e in _factorize(abs(n)))

    if D % 4 == 1:
        return squarefree(D)
    if D % 4 == 0:
        m = D // 4
        return m % 4 in (2, 3) and squarefree(m)
    return False


def kronecker_character(D: int) -> DirichletChar:
    """The real character n -> (D/n) mod |D| for a fundamental discriminant D."""
    if not is_fundamental_discriminant(D):
        raise ValueError(f"{D} is not a fundamental discriminant")
    d = abs(D)
    vals = tuple(CycQ(2, [kronecker_symbol(D, j)]) for j in range(d))
    return DirichletChar(d, vals, 2, f"kronecker:{D}")


def conductor(chi: DirichletChar) -> int:
    d = chi.modulus
    for f in range(1, d + 1):
        if d % f:
            continue
        ok = True
        seen = {}
        for j in range(d):
            if math.gcd(j, d) != 1:
                continue
            key = j % f
            if key in seen and seen[key] != chi.values[j]:
                ok = False
                break
            seen[key] = chi.values[j]
        if ok:
            return f
    return d


def parse_character(spec: str) -> DirichletChar:
    """Parse "trivial", "kronecker:D" or "mod:d:index"."""
    spec = spec.strip()
    if spec == "trivial":
        return trivial_character()
    kind, _, rest = spec.partition(":")
    if kind == "kronecker":
        return kronecker_character(int(rest))
    if kind == "mod":
        d_txt, _, idx_txt = rest.partition(":")
        d = int(d_txt)
        chars = enumerate_characters(d)
        idx = int(idx_txt) if idx_txt else 0
        if not 0 <= idx < len(chars):
            raise ValueError(f"character index {idx} out of range for modulus {d}")
        chi = chars[idx]
        return DirichletChar(chi.modulus, chi.values, chi.order, spec)
    raise ValueError(f"unknown character description {spec!r}")

