"""Exact arithmetic: Q/Z, p-adic valuations, residue symbols and prime fields."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache

from sympy import discrete_log, factorint, isprime, legendre_symbol, multiplicity, primitive_root

from ncp.errors import InputError


@dataclass(frozen=True, order=True)
class QZ:
    """An element of Q/Z, stored as a reduced fraction num/den with 0 <= num < den."""

    num: int = 0
    den: int = 1

    def __post_init__(self):
        if self.den < 1 or not 0 <= self.num < self.den or math.gcd(self.num, self.den) != 1:
            raise InputError(f"QZ needs a reduced fraction in [0, 1), got {self.num}/{self.den}")

    @classmethod
    def of(cls, num: int | Fraction, den: int = 1) -> QZ:
        if den == 0:
            raise InputError("QZ denominator must be nonzero")
        frac = Fraction(num) / den
        frac -= math.floor(frac)
        return cls(frac.numerator, frac.denominator)

    @classmethod
    def parse(cls, text: str | int) -> QZ:
        if isinstance(text, int):
            return cls.of(text)
        try:
            return cls.of(Fraction(str(text).strip()))
        except (ValueError, ZeroDivisionError) as e:
            raise InputError(f"Cannot read {text!r} as an element of Q/Z") from e

    @property
    def order(self) -> int:
        return self.den

    def is_zero(self) -> bool:
        return self.num == 0

    def as_fraction(self) -> Fraction:
        return Fraction(self.num, self.den)

    def __add__(self, other: QZ) -> QZ:
        return QZ.of(self.as_fraction() + other.as_fraction())

    def __neg__(self) -> QZ:
        return QZ.of(-self.as_fraction())

    def __sub__(self, other: QZ) -> QZ:
        return self + (-other)

    def __mul__(self, k: int) -> QZ:
        return QZ.of(self.as_fraction() * k)

    __rmul__ = __mul__

    def p_primary(self) -> dict[int, QZ]:
        parts = {}
        for p, e in sorted(factorint(self.den).items()):
            pe = p**e
            rest = self.den // pe
            parts[p] = QZ.of(self.num * pow(rest, -1, pe), pe)
        return parts

    def __str__(self):
        return f"{self.num}/{self.den}"


def qz_add(x: QZ, y: QZ) -> QZ:
    return x + y


def qz_order(x: QZ) -> int:
    return x.order


def qz_p_primary(x: QZ) -> dict[int, QZ]:
    return x.p_primary()


def qz_sum(values) -> QZ:
    total = QZ()
    for value in values:
        total = total + value
    return total


def vp(n: int, p: int) -> int:
    """Largest e with p^e | n."""
    if n == 0:
        raise InputError("v_p(0) is not a natural number")
    return int(multiplicity(p, abs(n)))


def legendre(a: int, p: int) -> int:
    if p == 2 or not isprime(p):
        raise InputError(f"Legendre symbol needs an odd prime, got {p}")
    if a % p == 0:
        return 0
    return int(legendre_symbol(a % p, p))


def squarefree_part(n: int) -> int:
    """The squarefree integer in the class of n modulo squares."""
    if n == 0:
        raise InputError("0 has no square class")
    core = -1 if n < 0 else 1
    for p, e in factorint(abs(n)).items():
        if e % 2:
            core *= p
    return core


@lru_cache(maxsize=None)
def _dlog(q: int, g: int, a: int) -> int:
    return int(discrete_log(q, a, g))


@dataclass(frozen=True)
class PrimeField:
    """The field F_q for a prime q; multiplicative logs are taken to the smallest primitive root."""

    q: int

    def __post_init__(self):
        if not isprime(self.q):
            raise InputError(f"F_q needs a prime q, got {self.q}")

    @cached_property
    def generator(self) -> int:
        return int(primitive_root(self.q))

    def dlog(self, a: int) -> int:
        a %= self.q
        if a == 0:
            raise InputError(f"0 has no discrete log in F_{self.q}")
        if a == 1:
            return 0
        return _dlog(self.q, self.generator, a)

    def check_exponent(self, n: int):
        if n < 1 or (self.q - 1) % n:
            raise InputError(f"Exponent {n} does not divide q - 1 = {self.q - 1}")

    def root_of_unity(self, n: int) -> int:
        """zeta_n = g^((q-1)/n), the base of every n-th power residue symbol."""
        self.check_exponent(n)
        return pow(self.generator, (self.q - 1) // n, self.q)

    def power_class(self, a: int, n: int) -> int:
        """k with a^((q-1)/n) = zeta_n^k, i.e. the class of a in F_q*/(F_q*)^n."""
        self.check_exponent(n)
        return self.dlog(a) % n

    def is_power(self, a: int, n: int) -> bool:
        return self.power_class(a, n) == 0


def power_class_order(a: int, n: int, q: int) -> int:
    """Order of a in F_q*/(F_q*)^n; the residue degree of a degree-one place with radicand a."""
    field = PrimeField(q)
    if a % q == 0:
        raise InputError("power_class_order needs a nonzero element")
    k = field.power_class(a, n)
    return n // math.gcd(k, n)
