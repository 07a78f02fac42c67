"""Brauer classes of K as Hasse-invariant vectors."""

from __future__ import annotations

import logging
import math
import random
from dataclasses import dataclass
from typing import Mapping, Sequence

from sympy import primefactors

from ncp.abext import AbExt, is_real_in, local_degree, ramified_places
from ncp.arith import QZ, qz_sum, vp
from ncp.config import get_settings
from ncp.errors import IncompleteDataError, InputError, InvalidClassError, SearchExhaustedError, WildPrimeError
from ncp.isolation import d_value, isolated_places, isolation_report
from ncp.places import Place, iter_places

logger = logging.getLogger(__name__)

HALF = QZ(1, 2)


@dataclass(frozen=True)
class BrauerClass:
    """A finitely supported invariant vector; entries sorted by place, zeros dropped."""

    entries: tuple[tuple[Place, QZ], ...] = ()

    @property
    def invariants(self) -> dict[Place, QZ]:
        return dict(self.entries)

    @property
    def support(self) -> list[Place]:
        return [P for P, _ in self.entries]

    def inv(self, P: Place) -> QZ:
        return self.invariants.get(P, QZ())

    def __add__(self, other: BrauerClass) -> BrauerClass:
        total = self.invariants
        for P, x in other.entries:
            total[P] = total.get(P, QZ()) + x
        return make_class(total)

    def __str__(self):
        if not self.entries:
            return "0"
        return "{" + ", ".join(f"{P}: {x}" for P, x in self.entries) + "}"


def make_class(inv: Mapping[Place, QZ]) -> BrauerClass:
    entries = []
    for P, x in inv.items():
        if not isinstance(x, QZ):
            x = QZ.parse(x)
        if P.is_archimedean and x not in (QZ(), HALF):
            raise InvalidClassError(f"Real invariant must be 0 or 1/2, got {x}")
        if not x.is_zero():
            entries.append((P, x))
    kinds = {P.q for P, _ in entries}
    if len(kinds) > 1:
        raise InvalidClassError("Invariants mix places of different base fields")
    total = qz_sum(x for _, x in entries)
    if not total.is_zero():
        raise InvalidClassError(f"Invariants sum to {total}, not 0")
    return BrauerClass(tuple(sorted(entries, key=lambda item: item[0].sort_key())))


def index(alpha: BrauerClass) -> int:
    return math.lcm(1, *(x.order for _, x in alpha.entries))


def restricted_local_index(alpha: BrauerClass, M: AbExt, P: Place) -> int:
    x = alpha.inv(P)
    if x.is_zero():
        return 1
    return (local_degree(M, P) * x).order


def restricted_index(alpha: BrauerClass, M: AbExt) -> int:
    return math.lcm(1, *(restricted_local_index(alpha, M, P) for P in alpha.support))


def restriction_sum(alpha: BrauerClass, M: AbExt) -> QZ:
    """Sum of the invariants of alpha restricted to M over every place of M; zero by reciprocity.

    A place P of K has g_P = [M:K] / [M:K]_P places above it, each with invariant [M:K]_P * inv_P(alpha).
    """
    total = []
    for P, x in alpha.entries:
        n = local_degree(M, P)
        total.append((M.degree // n) * (n * x))
    return qz_sum(total)


def fiber_index(alpha: BrauerClass, M: AbExt, chi_order: int) -> int:
    if chi_order < 1 or chi_order % M.exponent:
        raise InputError(f"|chi| = {chi_order} is not a multiple of exp Gal(M/K) = {M.exponent}")
    return chi_order * restricted_index(alpha, M)


def splits(
    local_degrees: Mapping[Place, int],
    alpha: BrauerClass,
    over: str = "K",
    M: AbExt | None = None,
    complete: bool = False,
) -> bool:
    """Whether L splits alpha (over="K") or alpha^M (over="M", degrees are [L:M]_P)."""
    if over not in ("K", "M"):
        raise InputError(f"splits works over 'K' or 'M', got {over!r}")
    if over == "M" and M is None:
        raise InputError("Splitting over M needs the extension M")
    for P, x in alpha.entries:
        degree = local_degrees.get(P)
        if degree is None:
            if not complete:
                raise IncompleteDataError(f"No local degree given at {P}")
            degree = 1
        needed = x.order if over == "K" else restricted_local_index(alpha, M, P)
        if degree % needed:
            return False
    return True


def _witness(M: AbExt, p: int, value: int, exclude: set, bound: int) -> Place:
    candidates = list(ramified_places(M))
    for P in candidates:
        if P not in exclude and vp(local_degree(M, P), p) == value:
            return P
    for P in iter_places(M.base):
        if P.norm > bound:
            break
        if P not in exclude and vp(local_degree(M, P), p) == value:
            return P
    raise SearchExhaustedError(f"No place with v_{p}(local degree) = {value} below norm {bound}")


def _primary_invariants(M: AbExt, p: int, n: int, S: Sequence[Place], bound: int) -> dict[Place, QZ]:
    report = isolation_report(M, p)
    finite = [P for P in S if not P.is_archimedean]
    v = {P: vp(local_degree(M, P), p) for P in finite}
    taken = set(S)
    p1 = next((P for P in finite if v[P] == report.u1), None)
    if p1 is None:
        p1 = _witness(M, p, report.u1, taken, bound)
        taken.add(p1)
    p2 = next((P for P in finite if P != p1 and v[P] == report.u2), None)
    if p2 is None:
        p2 = _witness(M, p, report.u2, taken | {p1}, bound)
        taken.add(p2)
    top = p ** (n + report.u2)
    inv = {P: QZ.of(1, p ** (n + v[P])) for P in finite if P not in (p1, p2)}
    if p == 2 and any(P.is_archimedean for P in S) and is_real_in(M):
        inv[Place.real()] = HALF
    partial = qz_sum(inv.values())
    b = partial.num * (top // partial.den)
    if p == 2 and b % 2:
        # x needs an odd numerator over top
        extra = _witness(M, p, report.u2, taken | {p1, p2}, bound)
        inv[extra] = QZ.of(1, top)
        b += 1
    inv[p2] = QZ.of(1 if (b + 1) % p else 2, top)
    inv[p1] = -qz_sum(inv.values())
    logger.debug(f"p={p}: balancing place {p1}, order-setting place {p2}, top order {top}")
    return inv


def construct_class(M: AbExt, m: int, S: Sequence[Place]) -> BrauerClass:
    """A class alpha with ind alpha^M = m and d_P(m) | ind_P alpha^M on S, built one primary part at a time."""
    if m < 1:
        raise InputError(f"construct_class needs m >= 1, got {m}")
    char = M.base.characteristic
    if char and m % char == 0:
        raise WildPrimeError(f"m = {m} is divisible by char K = {char}")
    for P in S:
        if not M.base.owns(P):
            raise InputError(f"{P} is not a place of {M.base}")
    S = sorted(set(S))
    bound = get_settings().witness_bound
    total: dict[Place, QZ] = {}
    for p in primefactors(m):
        for P, x in _primary_invariants(M, p, vp(m, p), S, bound).items():
            total[P] = total.get(P, QZ()) + x
    alpha = make_class(total)
    found = restricted_index(alpha, M)
    if found != m:
        raise InvalidClassError(f"Constructed class has restricted index {found}, expected {m}")
    return alpha


def constructor_defects(alpha: BrauerClass, M: AbExt, m: int, S: Sequence[Place]) -> list[str]:
    """Places of S where d_P(m) fails to divide the restricted local index, plus an index mismatch."""
    defects = []
    if restricted_index(alpha, M) != m:
        defects.append(f"restricted index {restricted_index(alpha, M)} != {m}")
    for P in S:
        d = d_value(P, m, M)
        local = restricted_local_index(alpha, M, P)
        if local % d:
            defects.append(f"d_{P}({m}) = {d} does not divide {local}")
    return defects


def check_lemma_2_1(alpha: BrauerClass, M: AbExt, p: int) -> bool:
    """v_p(ind_P alpha^M) <= max(v_p(ind alpha^M) - g_p, 0) at the p-isolated place."""
    total = vp(restricted_index(alpha, M), p)
    for P, q in isolated_places(M):
        if q != p:
            continue
        gap = isolation_report(M, p).gap
        if vp(restricted_local_index(alpha, M, P), p) > max(total - gap, 0):
            return False
    return True


def random_class(rng: random.Random, places: Sequence[Place], max_order: int = 24) -> BrauerClass:
    """2 to 6 finite places with random invariants, the last one balancing the sum."""
    finite = [P for P in places if not P.is_archimedean]
    support = rng.sample(finite, min(len(finite), rng.randint(2, 6)))
    inv = {P: QZ.of(rng.randrange(max_order), rng.randint(1, max_order)) for P in support[:-1]}
    inv[support[-1]] = -qz_sum(inv.values())
    return make_class(inv)
