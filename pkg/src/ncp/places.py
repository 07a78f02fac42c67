"""Base fields Q and F_q(t), their places, residue norms and deterministic enumeration."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterator

from sympy import isprime, nextprime
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_irreducible_p

from ncp.arith import PrimeField, vp
from ncp.errors import InputError

PRIME, REAL, POLY, INF = "prime", "real", "poly", "inf"
_KIND_RANK = {PRIME: 0, POLY: 0, INF: 1, REAL: 2}


@dataclass(frozen=True)
class BaseField:
    """Q (kind "Q") or the rational function field F_q(t) (kind "Fq")."""

    kind: str
    q: int | None = None

    def __post_init__(self):
        if self.kind == "Q":
            if self.q is not None:
                raise InputError("Q takes no constant field size")
        elif self.kind == "Fq":
            if self.q is None or not isprime(self.q):
                raise InputError(f"F_q(t) needs a prime q, got {self.q}")
        else:
            raise InputError(f"Unknown base field kind {self.kind!r}")

    @classmethod
    def rationals(cls) -> BaseField:
        return cls("Q")

    @classmethod
    def function_field(cls, q: int) -> BaseField:
        return cls("Fq", q)

    @property
    def is_function_field(self) -> bool:
        return self.kind == "Fq"

    @property
    def characteristic(self) -> int:
        return self.q if self.is_function_field else 0

    @cached_property
    def constants(self) -> PrimeField:
        if not self.is_function_field:
            raise InputError("Q has no constant field F_q")
        return PrimeField(self.q)

    def owns(self, place: Place) -> bool:
        if self.is_function_field:
            return place.kind in (POLY, INF) and place.q == self.q
        return place.kind in (PRIME, REAL)

    def __str__(self):
        return f"F_{self.q}(t)" if self.is_function_field else "Q"


def format_poly(coeffs: tuple[int, ...], var: str = "t") -> str:
    """Render descending coefficients as 't^2 + 2*t + 1'."""
    degree = len(coeffs) - 1
    terms = []
    for i, c in enumerate(coeffs):
        power = degree - i
        if c == 0:
            continue
        if power == 0:
            terms.append(str(c))
            continue
        mono = var if power == 1 else f"{var}^{power}"
        terms.append(mono if c == 1 else f"{c}*{mono}")
    return " + ".join(terms) or "0"


@dataclass(frozen=True)
class Place:
    """A place of Q (rational prime or the real place) or of F_q(t) (monic irreducible or infinity).

    Polynomial places keep descending coefficients reduced mod q, leading coefficient 1.
    """

    kind: str
    p: int | None = None
    q: int | None = None
    coeffs: tuple[int, ...] = ()

    @classmethod
    def prime(cls, p: int) -> Place:
        if not isprime(p):
            raise InputError(f"{p} is not a prime")
        return cls(PRIME, p=p)

    @classmethod
    def real(cls) -> Place:
        return cls(REAL)

    @classmethod
    def infinity(cls, q: int) -> Place:
        return cls(INF, q=q)

    @classmethod
    def poly(cls, coeffs, q: int) -> Place:
        """Place of a monic irreducible given by descending coefficients."""
        reduced = tuple(int(c) % q for c in coeffs)
        while reduced and reduced[0] == 0:
            reduced = reduced[1:]
        if len(reduced) < 2 or reduced[0] != 1:
            raise InputError(f"Place polynomial must be monic of positive degree, got {list(coeffs)}")
        if not gf_irreducible_p(list(reduced), q, ZZ):
            raise InputError(f"{format_poly(reduced)} is not irreducible over F_{q}")
        return cls(POLY, q=q, coeffs=reduced)

    @classmethod
    def from_ascending(cls, coeffs, q: int) -> Place:
        return cls.poly(tuple(reversed(list(coeffs))), q)

    @property
    def is_archimedean(self) -> bool:
        return self.kind == REAL

    @property
    def degree(self) -> int:
        if self.kind == POLY:
            return len(self.coeffs) - 1
        return 1

    @property
    def norm(self) -> int:
        return residue_norm(self)

    def sort_key(self):
        norm = 0 if self.is_archimedean else self.norm
        return (self.is_archimedean, norm, _KIND_RANK[self.kind], self.coeffs, self.p or 0)

    def __lt__(self, other: Place) -> bool:
        return self.sort_key() < other.sort_key()

    def __str__(self):
        if self.kind == PRIME:
            return str(self.p)
        if self.kind == POLY:
            return format_poly(self.coeffs)
        return self.kind


def residue_norm(place: Place) -> int:
    if place.kind == PRIME:
        return place.p
    if place.kind == POLY:
        return place.q**place.degree
    if place.kind == INF:
        return place.q
    raise InputError("The real place has no residue norm")


@lru_cache(maxsize=None)
def monic_irreducibles(q: int, degree: int) -> tuple[tuple[int, ...], ...]:
    """All monic irreducibles of the given degree over F_q, lexicographic in descending coefficients."""
    found = []
    for tail in itertools.product(range(q), repeat=degree):
        coeffs = (1,) + tail
        if gf_irreducible_p(list(coeffs), q, ZZ):
            found.append(coeffs)
    return tuple(found)


def iter_places(field: BaseField, include_real: bool = False) -> Iterator[Place]:
    """Finite places in ascending (norm, lexicographic) order; endless."""
    if include_real and not field.is_function_field:
        yield Place.real()
    if field.is_function_field:
        q = field.q
        for degree in itertools.count(1):
            for coeffs in monic_irreducibles(q, degree):
                yield Place(POLY, q=q, coeffs=coeffs)
            if degree == 1:
                yield Place.infinity(q)
    else:
        p = 2
        while True:
            yield Place(PRIME, p=p)
            p = nextprime(p)


def enumerate_places(field: BaseField, bound: int, include_real: bool = False) -> list[Place]:
    if bound < 2:
        raise InputError(f"Place enumeration needs bound >= 2, got {bound}")
    places = []
    for place in iter_places(field):
        if place.norm > bound:
            break
        places.append(place)
    if include_real and not field.is_function_field:
        places.append(Place.real())
    return places


def residue_rep(place: Place, f):
    """Image of f in the residue field at place.

    Over Q f is an integer or Fraction and the result an int mod p; over F_q(t) f is a
    RationalFunction and the result an int (degree one) or descending coefficients mod place.
    """
    if place.kind == REAL:
        raise InputError("The real place has no residue field")
    if place.kind == PRIME:
        frac = Fraction(f)
        if vp(frac.denominator, place.p) > 0:
            raise InputError(f"{f} has a pole at {place}")
        return frac.numerator * pow(frac.denominator, -1, place.p) % place.p
    return f.residue(place)
