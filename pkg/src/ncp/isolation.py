"""u-values, the gap g_p, p-isolated places and the divisor d_P(m)."""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass
from functools import lru_cache

from sympy import primefactors

from ncp.abext import AbExt, is_real_in, local_degree, ramified_places
from ncp.arith import vp
from ncp.config import mutation_enabled
from ncp.errors import InputError, WildPrimeError
from ncp.places import Place, iter_places

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class IsolationReport:
    p: int
    u1: int
    u2: int
    isolated_place: Place | None = None

    @property
    def gap(self) -> int:
        return self.u1 - self.u2


@lru_cache(maxsize=1024)
def isolation_report(M: AbExt, p: int) -> IsolationReport:
    if p == M.base.characteristic:
        raise WildPrimeError(f"No isolation theory for p = char K = {p}")
    # every v_p(ord sigma) occurs at infinitely many unramified places
    floor = vp(M.exponent, p)
    ramified = [(vp(local_degree(M, P), p), P) for P in ramified_places(M)]
    values = sorted([v for v, _ in ramified] + [floor, floor], reverse=True)
    u1, u2 = values[0], values[1]
    isolated = None
    if u1 > u2:
        isolated = next(P for v, P in ramified if v == u1)
    return IsolationReport(p, u1, u2, isolated)


def max_unramified_valuation(M: AbExt, p: int, count: int) -> int:
    """Largest v_p of the local degree over the first count unramified finite places."""
    ramified = set(ramified_places(M))
    unramified = (P for P in iter_places(M.base) if P not in ramified)
    return max(vp(local_degree(M, P), p) for P in itertools.islice(unramified, count))


def u_values(M: AbExt, p: int) -> tuple[int, int]:
    report = isolation_report(M, p)
    return report.u1, report.u2


def isolated_places(M: AbExt) -> list[tuple[Place, int]]:
    found = []
    for p in primefactors(M.degree):
        if p == M.base.characteristic:
            continue
        report = isolation_report(M, p)
        if report.isolated_place is not None:
            found.append((report.isolated_place, p))
    return found


def is_isolated(M: AbExt, P: Place, p: int) -> bool:
    if P.is_archimedean or p == M.base.characteristic:
        return False
    return isolation_report(M, p).isolated_place == P


def d_value(P: Place, m: int, M: AbExt) -> int:
    if m < 1:
        raise InputError(f"d_P(m) needs m >= 1, got {m}")
    if P.is_archimedean:
        return math.gcd(m, 2) if is_real_in(M) else 1
    d = 1
    for p in primefactors(m):
        e = vp(m, p)
        if is_isolated(M, P, p) and not mutation_enabled("d-no-gap"):
            e = max(e - isolation_report(M, p).gap, 0)
        d *= p**e
    return d
