"""Central extensions 1 -> A -> G -> B -> 1 of abelian p-groups with cyclic kernel A.

A = Z/p^a is written additively with generator z. B = Z/p^{b_1} + ... + Z/p^{b_k} with section
generators x_i = s(e_i). The extension is fixed by x_i^{p^{b_i}} = z^{t_i} and the commutators
[x_i, x_j] = x_i x_j x_i^-1 x_j^-1 = z^{c_ij} (i < j). Elements are normal forms z^alpha x_1^{e_1} ... x_k^{e_k}.
"""

from __future__ import annotations

import itertools
import logging
import math
import random
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from sympy import Matrix

from ncp import lattice
from ncp.config import mutation_enabled
from ncp.errors import InputError
from ncp.lattice import Vector

logger = logging.getLogger(__name__)

Element = tuple[int, Vector]


@dataclass(frozen=True)
class AbGroup:
    p: int
    exponents: tuple[int, ...]

    @property
    def moduli(self) -> tuple[int, ...]:
        return tuple(self.p**b for b in self.exponents)

    @property
    def order(self) -> int:
        return math.prod(self.moduli)

    @property
    def exponent(self) -> int:
        return max(self.moduli, default=1)

    def is_cyclic(self) -> bool:
        return sum(1 for b in self.exponents if b > 0) <= 1

    def elements(self) -> list[Vector]:
        return lattice.elements(self.moduli)

    def torsion(self) -> list[Vector]:
        """B[p]."""
        return [x for x in self.elements() if lattice.scale(self.p, x, self.moduli) == self.zero()]

    def zero(self) -> Vector:
        return lattice.zero(self.moduli)

    def add(self, x: Sequence[int], y: Sequence[int]) -> Vector:
        return lattice.add(x, y, self.moduli)

    def element_order(self, x: Sequence[int]) -> int:
        return lattice.element_order(x, self.moduli)


@dataclass(frozen=True)
class CentralExt:
    p: int
    a: int
    B: AbGroup
    t: tuple[int, ...]
    c: tuple[tuple[int, ...], ...]

    @property
    def kernel_order(self) -> int:
        return self.p**self.a

    @property
    def order(self) -> int:
        return self.kernel_order * self.B.order

    def identity(self) -> Element:
        return (0, self.B.zero())

    def section(self, x: Sequence[int]) -> Element:
        return (0, lattice.reduce(x, self.B.moduli))

    def lift(self, x: Sequence[int], alpha: int) -> Element:
        return (alpha % self.kernel_order, lattice.reduce(x, self.B.moduli))

    def central(self, alpha: int) -> Element:
        return (alpha % self.kernel_order, self.B.zero())

    def elements(self) -> list[Element]:
        return [(alpha, x) for alpha in range(self.kernel_order) for x in self.B.elements()]

    def __str__(self):
        moduli = " x ".join(f"C{m}" for m in self.B.moduli)
        return f"C{self.kernel_order}.({moduli}) t={list(self.t)} c={[list(r) for r in self.c]}"


def ext_build(p: int, a: int, b: Sequence[int], t: Sequence[int], c=None) -> CentralExt:
    """Validate the datum: t_i mod p^a, c upper triangular with p^{min(b_i, b_j)} c_ij = 0 in Z/p^a."""
    k = len(b)
    if a < 0 or any(bi < 1 for bi in b):
        raise InputError(f"Exponents must satisfy a >= 0 and b_i >= 1, got a={a}, b={list(b)}")
    if len(t) != k:
        raise InputError(f"Expected {k} power values, got {len(t)}")
    size = p**a
    if c is None:
        c = [[0] * k for _ in range(k)]
    if isinstance(c, dict):
        matrix = [[0] * k for _ in range(k)]
        for (i, j), value in c.items():
            matrix[i][j] = value
        c = matrix
    if len(c) != k or any(len(row) != k for row in c):
        raise InputError(f"Commutator matrix must be {k} x {k}")
    rows = []
    for i in range(k):
        row = []
        for j in range(k):
            value = c[i][j] % size
            if j <= i and value:
                raise InputError(f"Only c_ij with i < j are given, found c_{i + 1}{j + 1} = {c[i][j]}")
            if value and (p ** min(b[i], b[j]) * value) % size:
                raise InputError(f"c_{i + 1}{j + 1} = {value} has order exceeding gcd(p^b_i, p^b_j)")
            row.append(value)
        rows.append(tuple(row))
    return CentralExt(p, a, AbGroup(p, tuple(b)), tuple(v % size for v in t), tuple(rows))


def ext_mul(E: CentralExt, g: Element, h: Element) -> Element:
    alpha, e = g
    beta, f = h
    total = alpha + beta
    k = len(e)
    for i in range(k):
        for j in range(i + 1, k):
            # x_j^{e_j} x_i^{f_i} = x_i^{f_i} x_j^{e_j} z^{-c_ij e_j f_i}
            total -= E.c[i][j] * e[j] * f[i]
    exps = []
    for i, m in enumerate(E.B.moduli):
        carry, rest = divmod(e[i] + f[i], m)
        total += carry * E.t[i]
        exps.append(rest)
    return (total % E.kernel_order, tuple(exps))


def ext_inv(E: CentralExt, g: Element) -> Element:
    alpha, e = g
    f = lattice.scale(-1, e, E.B.moduli)
    beta, _ = ext_mul(E, (0, e), (0, f))
    return ((-alpha - beta) % E.kernel_order, f)


def ext_pow(E: CentralExt, g: Element, k: int) -> Element:
    if k < 0:
        g, k = ext_inv(E, g), -k
    result = E.identity()
    while k:
        if k & 1:
            result = ext_mul(E, result, g)
        g = ext_mul(E, g, g)
        k >>= 1
    return result


def ext_order(E: CentralExt, g: Element) -> int:
    # orders divide |G|, a power of p
    order = 1
    one = E.identity()
    current = g
    while current != one:
        current = ext_pow(E, current, E.p)
        order *= E.p
    return order


def commutator(E: CentralExt, g: Element, h: Element) -> Element:
    return ext_mul(E, ext_mul(E, g, h), ext_inv(E, ext_mul(E, h, g)))


def fiber(E: CentralExt, x: Sequence[int]) -> list[Element]:
    """pi^-1<x>: the subgroup generated by A and s(x)."""
    g = E.section(x)
    members = []
    power = E.identity()
    for _ in range(E.B.element_order(x)):
        members.extend(ext_mul(E, E.central(alpha), power) for alpha in range(E.kernel_order))
        power = ext_mul(E, power, g)
    return members


def fiber_is_cyclic(E: CentralExt, x: Sequence[int]) -> bool:
    size = E.kernel_order * E.B.element_order(x)
    if size == 1:
        return True
    s = E.section(x)
    for alpha in range(E.kernel_order):
        g = ext_mul(E, E.central(alpha), s)
        if ext_pow(E, g, size // E.p) != E.identity():
            return True
    return False


def all_fibers_cyclic(E: CentralExt) -> bool:
    torsion = set(E.B.torsion())
    ordered = sorted(E.B.elements(), key=lambda x: (x not in torsion, x))
    return all(fiber_is_cyclic(E, x) for x in ordered)


def beta(E: CentralExt, x: Sequence[int], y: Sequence[int], lifts: tuple[int, int] = (0, 0)) -> int:
    """[s(x), s(y)] in A for the lifts z^{lifts[0]} s(x), z^{lifts[1]} s(y)."""
    gx, gy = E.lift(x, lifts[0]), E.lift(y, lifts[1])
    if mutation_enabled("beta-cocycle"):
        product = ext_mul(E, gx, gy)
        alpha, _ = ext_mul(E, product, ext_inv(E, E.section(E.B.add(x, y))))
        return alpha
    alpha, _ = commutator(E, gx, gy)
    return alpha


def gamma(E: CentralExt, x: Sequence[int], alpha: int = 0) -> int:
    """Class of s(x)^p in A/A^p = Z/p (0 when A is trivial)."""
    x = lattice.reduce(x, E.B.moduli)
    if lattice.scale(E.p, x, E.B.moduli) != E.B.zero():
        raise InputError(f"{list(x)} is not in B[{E.p}]")
    if E.a == 0:
        return 0
    value, _ = ext_pow(E, E.lift(x, alpha), E.p)
    return value % E.p


def verify_lemma_33(E: CentralExt, rng: random.Random | None = None, samples: int = 64) -> dict[str, bool]:
    """beta is lift-independent, alternating and bimultiplicative; with rng, on sampled pairs and triples."""
    elements = E.B.elements()
    if rng is None:
        pairs = list(itertools.product(elements, repeat=2))
        triples = list(itertools.product(elements, repeat=3))
    else:
        pairs = [(rng.choice(elements), rng.choice(elements)) for _ in range(samples)]
        triples = [(rng.choice(elements), rng.choice(elements), rng.choice(elements)) for _ in range(samples)]
    lift_independent = all(
        beta(E, x, y, (u, v)) == beta(E, x, y) for x, y in pairs for u, v in ((1, 0), (0, 1), (E.p, 1))
    )
    alternating = all(beta(E, x, x) == 0 for x in elements)
    size = E.kernel_order
    bimultiplicative = all(
        beta(E, E.B.add(x, y), w) == (beta(E, x, w) + beta(E, y, w)) % size
        and beta(E, w, E.B.add(x, y)) == (beta(E, w, x) + beta(E, w, y)) % size
        for x, y, w in triples
    )
    return {"lift_independent": lift_independent, "alternating": alternating, "bimultiplicative": bimultiplicative}


def verify_lemma_34(E: CentralExt, x: Sequence[int]) -> bool:
    """pi^-1<x> cyclic iff A is trivial or generated by s(x)^{ord x}."""
    if E.a == 0:
        return fiber_is_cyclic(E, x)
    alpha, _ = ext_pow(E, E.section(x), E.B.element_order(x))
    return fiber_is_cyclic(E, x) == (alpha % E.p != 0)


def verify_lemma_35(E: CentralExt) -> dict:
    """gamma against fiber cyclicity, and its homomorphism status against the stated criterion."""
    torsion = E.B.torsion()
    nonzero = [x for x in torsion if x != E.B.zero()]
    report: dict = {"p": E.p}
    if E.a == 0:
        report.update(cyclic_fibers_match=True, gamma_homomorphism=True, criterion=True, consistent=True)
        return report
    report["cyclic_fibers_match"] = all(fiber_is_cyclic(E, x) == (gamma(E, x) != 0) for x in nonzero)
    report["gamma_section_independent"] = all(gamma(E, x, 1) == gamma(E, x) for x in torsion)
    homomorphism = all(
        gamma(E, E.B.add(x, y)) == (gamma(E, x) + gamma(E, y)) % E.p
        for x, y in itertools.product(torsion, repeat=2)
    )
    report["gamma_homomorphism"] = homomorphism
    if E.p == 2:
        criterion = all(beta(E, x, y) % 2 == 0 for x, y in itertools.product(torsion, repeat=2))
    else:
        criterion = True
    report["criterion"] = criterion
    report["consistent"] = homomorphism == criterion and report["cyclic_fibers_match"]
    return report


def _profiles(p: int, max_orders: Sequence[int]) -> list[tuple[int, ...]]:
    """Non-increasing exponent tuples of length >= 2 with p^{b_i} <= max_orders[i]."""
    caps = []
    for m in max_orders:
        b = 0
        while p ** (b + 1) <= m:
            b += 1
        caps.append(b)
    profiles = []
    for k in range(2, len(caps) + 1):
        for combo in itertools.product(*(range(1, cap + 1) for cap in caps[:k])):
            if all(combo[i] >= combo[i + 1] for i in range(k - 1)):
                profiles.append(combo)
    return profiles


def _t_range(p: int, a: int, b: int) -> range:
    # s(x_i) -> z s(x_i) shifts t_i by p^{b_i}
    return range(p ** min(a, b))


def _c_range(p: int, a: int, bi: int, bj: int) -> range:
    step = p ** max(a - min(bi, bj), 0)
    return range(0, p**a, step)


def iter_extensions(p: int, a_max: int, max_orders: Sequence[int]) -> Iterator[CentralExt]:
    """Every deduplicated datum with 1 <= a <= a_max and a non-cyclic B within the given orders."""
    for a in range(1, a_max + 1):
        for b in _profiles(p, max_orders):
            pairs = [(i, j) for i in range(len(b)) for j in range(i + 1, len(b))]
            for t in itertools.product(*(_t_range(p, a, bi) for bi in b)):
                for cs in itertools.product(*(_c_range(p, a, b[i], b[j]) for i, j in pairs)):
                    yield ext_build(p, a, b, t, dict(zip(pairs, cs)))


@dataclass
class ScanResult:
    p: int
    examined: int = 0
    pruned: int = 0
    hits: list[CentralExt] = field(default_factory=list)
    counterexamples: list[CentralExt] = field(default_factory=list)


def prop32_scan(p: int, a_max: int, max_orders: Sequence[int]) -> ScanResult:
    """Every extension with B non-cyclic and all fibers cyclic; any with |A| != 2 is a counterexample."""
    result = ScanResult(p)
    for a in range(1, a_max + 1):
        surviving: dict[tuple, list[tuple]] = {}
        for b in _profiles(p, max_orders):
            k = len(b)
            prefix_key = b[:2]
            t_choices = [_t_range(p, a, bi) for bi in b]
            pairs = [(i, j) for i in range(k) for j in range(i + 1, k)]
            c_choices = [_c_range(p, a, b[i], b[j]) for i, j in pairs]
            if k == 3:
                # fibers over the first two generators are fibers of the rank-2 prefix extension
                prefixes = surviving.get(prefix_key, [])
                tail = len(t_choices[2]) * len(c_choices[1]) * len(c_choices[2])
                total = math.prod(len(r) for r in t_choices) * math.prod(len(r) for r in c_choices)
                result.pruned += total - len(prefixes) * tail
                data = [
                    (t12 + (t3,), {(0, 1): c12, (0, 2): c13, (1, 2): c23})
                    for t12, c12 in prefixes
                    for t3 in t_choices[2]
                    for c13 in c_choices[1]
                    for c23 in c_choices[2]
                ]
            else:
                data = [
                    (t, dict(zip(pairs, cs)))
                    for t in itertools.product(*t_choices)
                    for cs in itertools.product(*c_choices)
                ]
            for t, cs in data:
                E = ext_build(p, a, b, t, cs)
                result.examined += 1
                if not all_fibers_cyclic(E):
                    continue
                if k == 2:
                    surviving.setdefault(b, []).append((tuple(t), cs[(0, 1)]))
                result.hits.append(E)
                if not (p == 2 and a == 1):
                    result.counterexamples.append(E)
                    logger.error(f"Extension with all fibers cyclic and |A| = {p**a}: {E}")
    logger.info(
        f"Scanned p={p}: {result.examined} examined, {result.pruned} pruned, {len(result.hits)} hits"
    )
    return result


def q8() -> CentralExt:
    return ext_build(2, 1, (1, 1), (1, 1), {(0, 1): 1})


def d4() -> CentralExt:
    return ext_build(2, 1, (1, 1), (0, 1), {(0, 1): 1})


def _lines(p: int) -> list[tuple[int, int]]:
    return [(1, k) for k in range(p)] + [(0, 1)]


def _as_matrix(g, p: int) -> Matrix:
    M = Matrix(g).applyfunc(lambda v: v % p)
    if M.shape != (2, 2):
        raise InputError(f"Expected a 2 x 2 matrix, got shape {M.shape}")
    if M.det() % p == 0:
        raise InputError(f"Matrix {g} is singular mod {p}")
    return M


def invariant_line(p: int, generators: Sequence) -> tuple[int, int] | None:
    """A line of F_p^2 fixed by every generator, first in the order (1,0), (1,1), ..., (0,1)."""
    mats = [_as_matrix(g, p) for g in generators]
    for A, B in itertools.combinations(mats, 2):
        if ((A * B - B * A).applyfunc(lambda v: v % p)) != Matrix.zeros(2, 2):
            raise InputError("Generators do not commute")
    for v in _lines(p):
        vec = Matrix(v)
        if all(((M * vec)[0] * vec[1] - (M * vec)[1] * vec[0]) % p == 0 for M in mats):
            return v
    return None


def matrix_order(M: Matrix, p: int) -> int:
    identity = Matrix.eye(2)
    power = M
    order = 1
    while power.applyfunc(lambda v: v % p) != identity:
        power = (power * M).applyfunc(lambda v: v % p)
        order += 1
    return order


def random_abelian_generators(rng: random.Random, p: int) -> list[list[list[int]]] | None:
    """Generators of a random cyclic subgroup of GL_2(F_p) of order p^j c with c | p - 1, or None."""
    entries = [rng.randrange(p) for _ in range(4)]
    M = Matrix(2, 2, entries)
    if M.det() % p == 0:
        return None
    order = matrix_order(M, p)
    core = order
    while core % p == 0:
        core //= p
    if (p - 1) % core:
        return None
    return [[[entries[0], entries[1]], [entries[2], entries[3]]]]
