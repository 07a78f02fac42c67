"""Nonzero elements of F_q(t) kept in factored form: c * prod P^e over monic irreducibles P."""

from __future__ import annotations

from dataclasses import dataclass

from sympy import Poly, Symbol, fraction, sympify, together
from sympy.core.sympify import SympifyError
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_factor, gf_gcdex, gf_mul, gf_pow_mod, gf_rem, gf_strip

from ncp.arith import PrimeField
from ncp.errors import InputError
from ncp.places import INF, POLY, Place, format_poly

T = Symbol("t")


def _reduce(coeffs, q: int) -> list[int]:
    return gf_strip([int(c) % q for c in coeffs])


def _inverse_mod(r: list[int], modulus: list[int], q: int) -> list[int]:
    s, _, h = gf_gcdex(r, modulus, q, ZZ)
    if h != [1]:
        raise InputError("Element is not invertible modulo the place")
    return s


@dataclass(frozen=True)
class RationalFunction:
    q: int
    const: int
    factors: tuple[tuple[tuple[int, ...], int], ...] = ()

    @classmethod
    def build(cls, q: int, const: int, factors=()) -> RationalFunction:
        """Normalize const * prod f^e for arbitrary polynomials f (descending coefficients)."""
        const %= q
        if const == 0:
            raise InputError("Zero is not an element of K*")
        exponents: dict[tuple[int, ...], int] = {}
        for coeffs, e in factors:
            if e == 0:
                continue
            f = _reduce(coeffs, q)
            if not f:
                raise InputError("Zero factor in a radicand")
            lc, parts = gf_factor(f, q, ZZ)
            const = const * pow(int(lc), e, q) % q
            for g, k in parts:
                key = tuple(int(c) for c in g)
                exponents[key] = exponents.get(key, 0) + k * e
        kept = sorted(
            ((g, e) for g, e in exponents.items() if e != 0), key=lambda item: (len(item[0]), item[0])
        )
        return cls(q, const, tuple(kept))

    @classmethod
    def constant(cls, q: int, c: int) -> RationalFunction:
        return cls.build(q, c)

    @classmethod
    def variable(cls, q: int) -> RationalFunction:
        return cls.build(q, 1, [((1, 0), 1)])

    @classmethod
    def from_place(cls, place: Place) -> RationalFunction:
        if place.kind != POLY:
            raise InputError(f"{place} is not a polynomial place")
        return cls(place.q, 1, ((place.coeffs, 1),))

    @classmethod
    def parse(cls, text: str, q: int) -> RationalFunction:
        """Read an expression in t such as '(t-1)*(t-2)' or 't/(t+1)' over F_q."""
        try:
            expr = sympify(str(text), locals={"t": T})
        except (SympifyError, SyntaxError, TypeError) as e:
            raise InputError(f"Cannot parse radicand {text!r}") from e
        num, den = fraction(together(expr))
        try:
            num_coeffs = Poly(num, T, modulus=q).all_coeffs()
            den_coeffs = Poly(den, T, modulus=q).all_coeffs()
        except Exception as e:
            raise InputError(f"{text!r} is not a rational function of t over F_{q}") from e
        return cls.build(q, 1, [(num_coeffs, 1), (den_coeffs, -1)])

    def __mul__(self, other: RationalFunction) -> RationalFunction:
        if other.q != self.q:
            raise InputError("Cannot multiply functions over different constant fields")
        return RationalFunction.build(
            self.q, self.const * other.const, list(self.factors) + list(other.factors)
        )

    def __pow__(self, k: int) -> RationalFunction:
        return RationalFunction.build(
            self.q, pow(self.const, k, self.q), [(g, e * k) for g, e in self.factors]
        )

    @property
    def degree(self) -> int:
        return sum((len(g) - 1) * e for g, e in self.factors)

    def is_constant(self) -> bool:
        return not self.factors

    def support(self) -> list[Place]:
        places = [Place(POLY, q=self.q, coeffs=g) for g, _ in self.factors]
        if self.degree != 0:
            places.append(Place.infinity(self.q))
        return places

    def valuation(self, place: Place) -> int:
        if place.kind == INF:
            return -self.degree
        if place.kind != POLY or place.q != self.q:
            raise InputError(f"{place} is not a place of F_{self.q}(t)")
        return dict(self.factors).get(place.coeffs, 0)

    def unit_residue(self, place: Place):
        """Residue of f / pi^v at place, with pi the monic irreducible itself or 1/t at infinity."""
        q = self.q
        if place.kind == INF:
            return self.const
        modulus = list(place.coeffs)
        acc = [self.const]
        for g, e in self.factors:
            if g == place.coeffs:
                continue
            r = gf_rem(list(g), modulus, q, ZZ)
            if e < 0:
                r, e = _inverse_mod(r, modulus, q), -e
            acc = gf_rem(gf_mul(acc, gf_pow_mod(r, e, modulus, q, ZZ), q, ZZ), modulus, q, ZZ)
        acc = [int(c) for c in acc]
        if place.degree == 1:
            return acc[-1] if acc else 0
        return tuple(acc)

    def residue(self, place: Place):
        v = self.valuation(place)
        if v < 0:
            raise InputError(f"{self} has a pole at {place}")
        if v > 0:
            return 0 if place.degree == 1 else ()
        return self.unit_residue(place)

    def power_symbol(self, place: Place, n: int) -> int:
        """k in Z/n with u^((N-1)/n) = zeta_n^k for the unit part u of f at place."""
        field = PrimeField(self.q)
        u = self.unit_residue(place)
        if isinstance(u, int):
            return field.power_class(u, n)
        field.check_exponent(n)
        norm = self.q**place.degree
        w = gf_pow_mod(list(u), (norm - 1) // n, list(place.coeffs), self.q, ZZ)
        step = (self.q - 1) // n
        return field.dlog(int(w[-1])) // step % n

    def __str__(self):
        parts = []
        for g, e in self.factors:
            body = format_poly(g)
            if len(g) > 2 or g[-1] != 0:
                body = f"({body})"
            parts.append(body if e == 1 else f"{body}^{e}")
        if self.const != 1 or not parts:
            parts.insert(0, str(self.const))
        return "*".join(parts)
