"""Abelian Kummer extensions M = K(n-th roots of radicands) and their local theory.

The Galois group is written on the radicand basis: if the radicand f_i has order o_i in
K*/(K*)^n then Gal(M/K) = Z/o_1 + ... + Z/o_k and sigma acts on the n-th root of
prod f_i^{w_i} by zeta_n^<sigma, w> with <sigma, w> = sum sigma_i w_i (n / o_i) mod n.
Decomposition and inertia groups are annihilators of kernels of the local Kummer maps.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from sympy import factorint, n_order

from ncp import lattice
from ncp.arith import legendre, squarefree_part, vp
from ncp.errors import DependentRadicandsError, ExtensionError, InputError, WildPrimeError
from ncp.functions import RationalFunction
from ncp.lattice import Vector
from ncp.places import PRIME, REAL, BaseField, Place, iter_places

logger = logging.getLogger(__name__)

# odd u mod 8 -> (e_-1, e_5) in Q_2*/(Q_2*)^2 with generators -1, 5, 2
_Q2_UNITS = {1: (0, 0), 3: (1, 1), 5: (0, 1), 7: (1, 0)}


@dataclass(frozen=True)
class AbExt:
    base: BaseField
    n: int
    radicands: tuple
    orders: tuple[int, ...]

    @property
    def degree(self) -> int:
        return math.prod(self.orders)

    @property
    def exponent(self) -> int:
        return math.lcm(*self.orders) if self.orders else 1

    def galois_elements(self) -> list[Vector]:
        return lattice.elements(self.orders)

    span_elements = galois_elements

    def galois_generators(self, subgroup: Sequence[Sequence[int]] | None = None) -> list[Vector]:
        if subgroup is None:
            subgroup = self.galois_elements()
        return lattice.generating_set(subgroup, self.orders)

    def element(self, sigma: Sequence[int]) -> Vector:
        if len(sigma) != len(self.orders):
            raise InputError(f"Galois element needs {len(self.orders)} coordinates, got {len(sigma)}")
        return lattice.reduce(sigma, self.orders)

    def element_order(self, sigma: Sequence[int]) -> int:
        return lattice.element_order(sigma, self.orders)

    def pairing(self, sigma: Sequence[int], w: Sequence[int]) -> int:
        return sum(s * x * (self.n // o) for s, x, o in zip(sigma, w, self.orders)) % self.n

    def radicand_value(self, w: Sequence[int]):
        """The radicand prod f_i^{w_i} (squarefree representative over Q)."""
        if self.base.is_function_field:
            value = RationalFunction.constant(self.base.q, 1)
            for f, e in zip(self.radicands, w):
                if e:
                    value = value * f**e
            return value
        value = 1
        for f, e in zip(self.radicands, w):
            value *= f**e
        return squarefree_part(value)

    def sub_extension(self, indices: Sequence[int]) -> AbExt:
        return AbExt(
            self.base,
            self.n,
            tuple(self.radicands[i] for i in indices),
            tuple(self.orders[i] for i in indices),
        )

    def is_cyclic(self) -> bool:
        return lattice.rank(self.orders) <= 1

    def sylow_is_cyclic(self, p: int) -> bool:
        return len(lattice.sylow_moduli(self.orders, p)) <= 1

    def __str__(self):
        if not self.radicands:
            return str(self.base)
        if self.base.is_function_field:
            roots = ", ".join(f"({f})^(1/{self.n})" for f in self.radicands)
        else:
            roots = ", ".join(f"sqrt({f})" for f in self.radicands)
        return f"{self.base}({roots})"


def _check_exponent(base: BaseField, n: int):
    if base.is_function_field:
        if n < 2 or (base.q - 1) % n:
            raise ExtensionError(f"Kummer exponent {n} must divide q - 1 = {base.q - 1}")
    elif n != 2:
        raise ExtensionError(f"Only multiquadratic extensions of Q are supported, got exponent {n}")


def coerce_radicand(base: BaseField, f):
    if base.is_function_field:
        if isinstance(f, RationalFunction):
            if f.q != base.q:
                raise InputError(f"Radicand {f} lives over F_{f.q}, not F_{base.q}")
            return f
        if isinstance(f, int) and not isinstance(f, bool):
            return RationalFunction.constant(base.q, f)
        return RationalFunction.parse(f, base.q)
    if isinstance(f, bool) or not isinstance(f, int):
        raise InputError(f"Radicands over Q are integers, got {f!r}")
    if f == 0:
        raise InputError("0 is not a radicand")
    return squarefree_part(f)


def class_vector(base: BaseField, n: int, f) -> dict:
    """Coordinates of f in K*/(K*)^n: sign and prime exponents over Q, constant log and exponents over F_q(t)."""
    if base.is_function_field:
        vec = {"const": base.constants.power_class(f.const, n)}
        vec.update((g, e % n) for g, e in f.factors)
    else:
        vec = {-1: 1 if f < 0 else 0}
        vec.update((p, e % n) for p, e in factorint(abs(f)).items())
    return {k: v for k, v in vec.items() if v}


def extension_from_radicands(base: BaseField, n: int, radicands, allow_mixed: bool = True) -> AbExt:
    """Validate independence of the radicand classes; with allow_mixed their orders may be proper divisors of n."""
    _check_exponent(base, n)
    values = [coerce_radicand(base, f) for f in radicands]
    vectors = [class_vector(base, n, f) for f in values]
    keys = sorted({k for v in vectors for k in v}, key=repr)
    rows = [[v.get(k, 0) for k in keys] for v in vectors]
    moduli = [n] * len(keys)
    orders = [lattice.element_order(row, moduli) for row in rows]
    for f, o in zip(values, orders):
        if o == 1:
            raise DependentRadicandsError(f"Radicand {f} is an {n}-th power")
        if not allow_mixed and o != n:
            raise DependentRadicandsError(f"Radicand {f} has order {o} < {n} modulo {n}-th powers")
    if lattice.subgroup_order(rows, moduli) != math.prod(orders):
        raise DependentRadicandsError(f"Radicands {[str(f) for f in values]} are dependent modulo {n}-th powers")
    return AbExt(base, n, tuple(values), tuple(orders))


def build_extension(base: BaseField, n: int, radicands) -> AbExt:
    ext = extension_from_radicands(base, n, radicands, allow_mixed=False)
    logger.debug(f"Built {ext} with group {ext.orders}")
    return ext


@dataclass(frozen=True)
class LocalClassGroup:
    """K_P*/(K_P*)^n as Z/m_1 + ... with the images of the radicands."""

    place: Place
    moduli: tuple[int, ...]
    images: tuple[Vector, ...]
    ramified_axes: tuple[int, ...]
    unramified_axis: int | None

    def image(self, w: Sequence[int]) -> Vector:
        total = lattice.zero(self.moduli)
        for k, img in zip(w, self.images):
            total = lattice.add(total, lattice.scale(k, img, self.moduli), self.moduli)
        return total

    def is_unramified_class(self, v: Sequence[int]) -> bool:
        return all(v[i] == 0 for i in self.ramified_axes)

    def symbol(self, v: Sequence[int]) -> int:
        return 0 if self.unramified_axis is None else v[self.unramified_axis]

    def size(self) -> int:
        return len(lattice.span(self.images, self.moduli))


def _check_place(M: AbExt, P: Place):
    if not M.base.owns(P):
        raise InputError(f"{P} is not a place of {M.base}")


@lru_cache(maxsize=65536)
def local_class_group(M: AbExt, P: Place) -> LocalClassGroup:
    _check_place(M, P)
    if P.kind == REAL:
        images = tuple((1 if f < 0 else 0,) for f in M.radicands)
        return LocalClassGroup(P, (2,), images, (0,), None)
    if P.kind == PRIME:
        p = P.p
        images = []
        for f in M.radicands:
            v = vp(f, p)
            u = f // p**v
            if p == 2:
                images.append(_Q2_UNITS[u % 8] + (v % 2,))
            else:
                images.append((v % 2, 0 if legendre(u, p) == 1 else 1))
        if p == 2:
            return LocalClassGroup(P, (2, 2, 2), tuple(images), (0, 2), 1)
        return LocalClassGroup(P, (2, 2), tuple(images), (0,), 1)
    n = M.n
    images = tuple((f.valuation(P) % n, f.power_symbol(P, n)) for f in M.radicands)
    return LocalClassGroup(P, (n, n), images, (0,), 1)


@dataclass(frozen=True)
class LocalData:
    place: Place
    decomposition: tuple[Vector, ...]
    inertia: tuple[Vector, ...]
    frobenius: Vector

    @property
    def local_degree(self) -> int:
        return len(self.decomposition)

    @property
    def ramification_index(self) -> int:
        return len(self.inertia)

    @property
    def residue_degree(self) -> int:
        return self.local_degree // self.ramification_index

    def is_ramified(self) -> bool:
        return self.ramification_index > 1


def _annihilator(M: AbExt, kummer: Sequence[Vector]) -> tuple[Vector, ...]:
    gens = lattice.generating_set(kummer, M.orders)
    return tuple(s for s in M.galois_elements() if all(M.pairing(s, w) == 0 for w in gens))


@lru_cache(maxsize=4096)
def local_data(M: AbExt, P: Place) -> LocalData:
    lcg = local_class_group(M, P)
    zero = lattice.zero(lcg.moduli)
    span = M.span_elements()
    kernel = [w for w in span if lcg.image(w) == zero]
    unramified = [w for w in span if lcg.is_unramified_class(lcg.image(w))]
    decomposition = _annihilator(M, kernel)
    inertia = _annihilator(M, unramified)
    targets = [(w, lcg.symbol(lcg.image(w))) for w in lattice.generating_set(unramified, M.orders)]
    frobenius = next(
        (s for s in M.galois_elements() if all(M.pairing(s, w) == t for w, t in targets)), None
    )
    if frobenius is None:
        raise ExtensionError(f"No Frobenius lift at {P} in {M}")
    return LocalData(P, decomposition, inertia, frobenius)


def frobenius(M: AbExt, P: Place) -> Vector | None:
    """Frobenius at an unramified finite place, None when P ramifies."""
    if P.kind == REAL:
        return None
    lcg = local_class_group(M, P)
    if not all(lcg.is_unramified_class(img) for img in lcg.images):
        return None
    return tuple(lcg.symbol(img) // (M.n // o) for img, o in zip(lcg.images, M.orders))


def local_degree(M: AbExt, P: Place) -> int:
    if P.kind == REAL:
        _check_place(M, P)
        return 2 if any(f < 0 for f in M.radicands) else 1
    frob = frobenius(M, P)
    if frob is not None:
        return M.element_order(frob)
    return local_class_group(M, P).size()


def ramification_index(M: AbExt, P: Place) -> int:
    if P.kind == REAL:
        return local_degree(M, P)
    lcg = local_class_group(M, P)
    projected = [tuple(img[i] for i in lcg.ramified_axes) for img in lcg.images]
    return len(lattice.span(projected, [lcg.moduli[i] for i in lcg.ramified_axes]))


def is_real_in(M: AbExt) -> bool:
    """Whether the real place of Q stays real in M."""
    return local_degree(M, Place.real()) == 1


@lru_cache(maxsize=1024)
def _ramified_places(M: AbExt) -> tuple[Place, ...]:
    if M.base.is_function_field:
        candidates = {P for f in M.radicands for P in f.support()}
    else:
        primes = {2}
        for f in M.radicands:
            primes.update(factorint(abs(f)))
        candidates = {Place.prime(p) for p in primes}
    return tuple(sorted(P for P in candidates if ramification_index(M, P) > 1))


def ramified_places(M: AbExt) -> list[Place]:
    return list(_ramified_places(M))


def _check_tame(M: AbExt, p: int):
    if p == M.base.characteristic:
        raise WildPrimeError(f"p = {p} is the characteristic of {M.base}")


def _span_values(M: AbExt) -> dict:
    return {M.radicand_value(w): w for w in M.span_elements()}


def constant_span(M: AbExt) -> list[Vector]:
    """Elements of the radicand span that are constants modulo n-th powers (F_q(t) only)."""
    return [
        w
        for w in M.span_elements()
        if set(class_vector(M.base, M.n, M.radicand_value(w))) <= {"const"}
    ]


def roots_of_unity_s(M: AbExt, p: int) -> int:
    """s with p^s the number of p-power roots of unity in M."""
    _check_tame(M, p)
    if M.base.is_function_field:
        c = len(constant_span(M))
        return vp(M.base.q**c - 1, p)
    values = _span_values(M)
    if p == 2:
        return 1 + (-1 in values) + (-1 in values and 2 in values)
    if p == 3:
        return 1 if -3 in values else 0
    return 0


def r_value(M: AbExt) -> int:
    """Maximal r with mu_{2^r} contained in M(sqrt(-1))."""
    _check_tame(M, 2)
    if M.base.is_function_field:
        q = M.base.q
        c = len(constant_span(M))
        e = 1 if q % 4 == 1 else 2
        return vp(q ** math.lcm(c, e) - 1, 2)
    values = _span_values(M)
    return 3 if (2 in values or -2 in values) else 2


@dataclass(frozen=True)
class SubExtension:
    """A subfield of M given by the subgroup of the radicand span that it adjoins roots of."""

    parent: AbExt
    kummer: tuple[Vector, ...]

    @property
    def degree(self) -> int:
        return len(self.kummer)

    def generators(self) -> list[Vector]:
        return lattice.generating_set(self.kummer, self.parent.orders)

    def restriction_order(self, sigma: Sequence[int]) -> int:
        """Order of sigma restricted to this subfield."""
        n = self.parent.n
        return math.lcm(1, *(n // math.gcd(self.parent.pairing(sigma, w), n) for w in self.kummer))

    def fixing_group(self) -> list[Vector]:
        gens = self.generators()
        return [
            s
            for s in self.parent.galois_elements()
            if all(self.parent.pairing(s, w) == 0 for w in gens)
        ]

    def radicand_values(self) -> list:
        return [self.parent.radicand_value(w) for w in self.generators()]

    def __str__(self):
        values = self.radicand_values()
        if not values:
            return str(self.parent.base)
        if self.parent.base.is_function_field:
            roots = ", ".join(f"({f})^(1/{self.parent.n})" for f in values)
        else:
            roots = ", ".join(f"sqrt({f})" for f in values)
        return f"{self.parent.base}({roots})"


def cyclotomic_T(M: AbExt, p: int) -> SubExtension:
    """T = M intersected with K(mu_{p^infinity})."""
    _check_tame(M, p)
    if M.base.is_function_field:
        q = M.base.q
        constants = constant_span(M)
        c = len(constants)
        top = math.gcd(c, int(n_order(q, p)) * p ** vp(c, p)) if c > 1 else 1
        kummer = [w for w in constants if top % M.element_order(w) == 0]
    else:
        if p == 2:
            allowed = {1, -1, 2, -2}
        else:
            allowed = {1, p if p % 4 == 1 else -p}
        kummer = [w for w in M.span_elements() if M.radicand_value(w) in allowed]
    return SubExtension(M, tuple(sorted(kummer)))


def find_primes_with_frobenius(
    M: AbExt,
    sigma: Sequence[int],
    count: int,
    bound: int,
    congruence: tuple[int, int] | None = None,
) -> list[Place]:
    """Unramified places of norm <= bound with Frobenius sigma, in norm order."""
    sigma = M.element(sigma)
    found = []
    for P in iter_places(M.base):
        if P.norm > bound or len(found) >= count:
            break
        if congruence is not None and P.norm % congruence[0] != congruence[1] % congruence[0]:
            continue
        if frobenius(M, P) == sigma:
            found.append(P)
    if len(found) < count:
        logger.warning(f"Search bound exhausted: {len(found)}/{count} places with Frobenius {sigma} below {bound}")
    return found


def qsigma_modulus(M: AbExt, p: int) -> int:
    if p == 2:
        return 2 ** (r_value(M) + 2)
    return p ** (roots_of_unity_s(M, p) + 1)


def qsigma_search(M: AbExt, sigma: Sequence[int], p: int, count: int, bound: int) -> list[Place]:
    """Places in Q_sigma: Frobenius sigma, p not dividing the norm, and the norm of order > f_sigma
    mod p^{s+1} (2^{r+2} when p = 2)."""
    _check_tame(M, p)
    sigma = M.element(sigma)
    modulus = qsigma_modulus(M, p)
    f_sigma = cyclotomic_T(M, p).restriction_order(sigma)
    found = []
    for P in iter_places(M.base):
        if P.norm > bound or len(found) >= count:
            break
        if P.norm % p == 0 or frobenius(M, P) != sigma:
            continue
        if n_order(P.norm % modulus, modulus) > f_sigma:
            found.append(P)
    if len(found) < count:
        logger.warning(f"Search bound exhausted: {len(found)}/{count} places in Q_sigma for {sigma} below {bound}")
    return found
