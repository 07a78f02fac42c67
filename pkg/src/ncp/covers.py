"""Covers L of M/K, certificates for (B_m) and for the rank-two p^n cover condition, S_0 searches and the
bound report."""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from sympy import divisors, factorint

from ncp import lattice
from ncp.abext import (
    AbExt,
    cyclotomic_T,
    extension_from_radicands,
    find_primes_with_frobenius,
    frobenius,
    local_degree,
    r_value,
    ramification_index,
    roots_of_unity_s,
)
from ncp.arith import squarefree_part, vp
from ncp.config import get_settings
from ncp.errors import DependentRadicandsError, ExtensionError, InputError
from ncp.functions import RationalFunction
from ncp.isolation import d_value, isolated_places
from ncp.lattice import Vector
from ncp.places import POLY, Place, iter_places
from ncp.reports import CertReport

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Cover:
    """An abelian cover L of M/K; L lists M's radicands (raised to L's exponent) first."""

    M: AbExt
    L: AbExt

    @property
    def rel_degree(self) -> int:
        return self.L.degree // self.M.degree

    @property
    def extra_radicands(self) -> tuple:
        return self.L.radicands[len(self.M.radicands) :]

    @property
    def relative_moduli(self) -> tuple[int, ...]:
        """Gal(L/M) as Z/o_j over the extra radicands."""
        return self.L.orders[len(self.M.orders) :]

    def relative_rank(self) -> int:
        return lattice.rank(self.relative_moduli)

    def __str__(self):
        if not self.extra_radicands:
            return str(self.M)
        if self.L.base.is_function_field:
            roots = ", ".join(f"({f})^(1/{self.L.n})" for f in self.extra_radicands)
        else:
            roots = ", ".join(f"sqrt({f})" for f in self.extra_radicands)
        return f"{self.M}({roots})"


def _raise(M: AbExt, n_prime: int) -> list:
    return [f ** (n_prime // M.n) for f in M.radicands]


def build_cover(M: AbExt, extra: Sequence, n_prime: int | None = None) -> Cover:
    n_prime = n_prime or M.n
    if n_prime % M.n:
        raise ExtensionError(f"Cover exponent {n_prime} is not a multiple of {M.n}")
    L = extension_from_radicands(M.base, n_prime, _raise(M, n_prime) + list(extra), allow_mixed=True)
    return Cover(M, L)


def trivial_cover(M: AbExt) -> Cover:
    return Cover(M, M)


def compose(covers: Sequence[Cover]) -> Cover:
    """Compositum of covers of the same M."""
    M = covers[0].M
    n_prime = math.lcm(*(C.L.n for C in covers))
    extra = [f ** (n_prime // C.L.n) for C in covers for f in C.extra_radicands]
    return build_cover(M, extra, n_prime)


def cover_local_degree(C: Cover, P: Place) -> int:
    return local_degree(C.L, P) // local_degree(C.M, P)


def full_local_degree(C: Cover, P: Place) -> bool:
    if P.is_archimedean:
        if local_degree(C.M, P) == 2:
            return True  # complex in M
        return cover_local_degree(C, P) == math.gcd(2, C.rel_degree)
    return cover_local_degree(C, P) == C.rel_degree


def candidate_radicands(base, bound: int) -> Iterator:
    """Scan order for extra radicands: squarefree d by |d| (positive first) over Q; the constant
    generator then monic irreducibles by norm over F_q(t)."""
    if base.is_function_field:
        q = base.q
        yield RationalFunction.constant(q, base.constants.generator)
        for P in iter_places(base):
            if P.norm > bound:
                break
            if P.kind == POLY:
                yield RationalFunction.from_place(P)
        return
    for a in range(1, bound + 1):
        for d in (a, -a):
            if d != 1 and squarefree_part(d) == d:
                yield d


def _root_degree_profiles(m: int, allowed: Sequence[int]) -> list[tuple[int, ...]]:
    """Non-increasing tuples of allowed root degrees (> 1) with product m."""
    profiles = []

    def extend(rest: int, top: int, acc: tuple[int, ...]):
        if rest == 1:
            profiles.append(acc)
            return
        for d in sorted(allowed, reverse=True):
            if 1 < d <= top and rest % d == 0:
                extend(rest // d, d, acc + (d,))

    extend(m, m, ())
    return profiles


def abelian_covers(M: AbExt, m: int, bound: int) -> Iterator[Cover]:
    """Abelian m-covers obtained by adjoining roots of candidate radicands, in deterministic order."""
    if m == 1:
        yield trivial_cover(M)
        return
    if M.base.is_function_field:
        n_prime = math.lcm(M.n, m)
        if (M.base.q - 1) % n_prime:
            n_prime = M.n
    else:
        n_prime = 2
    profiles = _root_degree_profiles(m, divisors(n_prime))
    if not profiles:
        logger.info(f"No Kummer cover of degree {m} with exponent dividing {n_prime}")
        return
    candidates = list(candidate_radicands(M.base, bound))
    for profile in profiles:
        choose = itertools.combinations if len(set(profile)) == 1 else itertools.permutations
        for combo in choose(candidates, len(profile)):
            extra = [f ** (n_prime // d) for f, d in zip(combo, profile)]
            try:
                C = build_cover(M, extra, n_prime)
            except DependentRadicandsError:
                continue
            if C.rel_degree == m:
                yield C


def _d_checks(report: CertReport, C: Cover, m: int, S: Sequence[Place]) -> bool:
    ok = True
    for P in S:
        d = d_value(P, m, C.M)
        got = cover_local_degree(C, P)
        ok &= report.add(f"d_{P}({m}) | [L:M]_{P}", got % d == 0, {"d": d, "local_degree": got})
    return ok


def _passes(C: Cover, m: int, S: Sequence[Place]) -> bool:
    return all(cover_local_degree(C, P) % d_value(P, m, C.M) == 0 for P in S)


def _search_witness(M: AbExt, m: int, S: Sequence[Place], bound: int) -> Cover | None:
    for C in abelian_covers(M, m, bound):
        if _passes(C, m, S):
            return C
    return None


def certify_Bm(C: Cover, m: int, S: Sequence[Place]) -> CertReport:
    """Evaluate a given cover as a (B_m) witness on S."""
    if C.rel_degree != m:
        raise InputError(f"Cover has degree {C.rel_degree}, expected {m}")
    S = sorted(set(S))
    report = CertReport(condition="Bm", params={"m": m}, places=S, witness=C)
    _d_checks(report, C, m, S)
    return report


def check_Bm(M: AbExt, m: int, S: Sequence[Place], bound: int | None = None) -> CertReport:
    """Look for an abelian m-cover L with d_P(m) | [L:M]_P on S; a miss is a bounded-scan outcome only."""
    if m < 1:
        raise InputError(f"(B_m) needs m >= 1, got {m}")
    bound = bound or get_settings().scan_bound
    S = sorted(set(S))
    report = CertReport(condition="Bm", params={"m": m, "bound": bound}, places=S)
    char = M.base.characteristic
    tame = m
    if char and m % char == 0:
        while tame % char == 0:
            tame //= char
        report.notes.append(f"the {char}-part of m is wild: (B_{m // tame}) holds unconditionally")
        if tame == 1:
            report.unconditional = True
            report.add("wild case", True, "p = char K")
            return report
    parts = [p**e for p, e in sorted(factorint(tame).items())]
    if len(parts) <= 1:
        witness = _search_witness(M, tame, S, bound)
    else:
        # (B_m) from (B_{p^n}) for each p | m by composita
        found = [_search_witness(M, part, S, bound) for part in parts]
        witness = None
        if all(found):
            try:
                witness = compose(found)
            except DependentRadicandsError:
                witness = _search_witness(M, tame, S, bound)
        report.notes.append("witness assembled as a compositum of prime-power witnesses")
    if witness is None:
        report.add("abelian witness", False, f"no abelian witness below bound {bound}")
        logger.info(f"(B_{m}) scan for {M} on {[str(P) for P in S]}: no abelian witness below {bound}")
        return report
    report.witness = witness
    _d_checks(report, witness, tame, S)
    return report


def sub_covers(C: Cover, m_sub: int) -> list[Cover]:
    """Sub-covers of degree m_sub generated by M and powers of C's extra radicands."""
    if C.rel_degree % m_sub:
        return []
    base_radicands = list(C.L.radicands[: len(C.M.radicands)])
    extras = C.extra_radicands
    orders = C.relative_moduli
    found = []
    seen = set()
    for choice in itertools.product(*(divisors(o) for o in orders)):
        # choice[j] = order of the class kept from extra j
        if math.prod(choice) != m_sub:
            continue
        kept = [f ** (o // k) for f, o, k in zip(extras, orders, choice) if k > 1]
        try:
            L = extension_from_radicands(C.L.base, C.L.n, base_radicands + kept, allow_mixed=True)
        except DependentRadicandsError:
            continue
        if L not in seen and L.degree == C.M.degree * m_sub:
            seen.add(L)
            found.append(Cover(C.M, L))
    return found


def induced_certificate(report: CertReport, m_sub: int) -> CertReport:
    """(B_m) witness -> (B_{m'}) witness through a sub-cover, for m' | m."""
    m = report.params.get("m")
    if m is None or m % m_sub:
        raise InputError(f"{m_sub} does not divide m = {m}")
    induced = CertReport(
        condition="Bm", params={"m": m_sub, "induced_from": m}, places=list(report.places)
    )
    if report.witness is None:
        induced.add("sub-cover", False, "the parent report has no witness")
        return induced
    subs = sub_covers(report.witness, m_sub)
    if not subs:
        induced.add("sub-cover", False, f"{report.witness} has no sub-cover of degree {m_sub}")
        return induced
    chosen = next((C for C in subs if _passes(C, m_sub, report.places)), subs[0])
    induced.witness = chosen
    _d_checks(induced, chosen, m_sub, report.places)
    return induced


def check_cor210(M: AbExt, p: int, n: int, S: Sequence[Place], C: Cover) -> CertReport:
    if C.M != M:
        raise InputError("The cover does not lie over the given extension")
    if C.rel_degree != p**n:
        raise InputError(f"Cover has degree {C.rel_degree}, expected {p}^{n}")
    S = sorted(set(S))
    report = CertReport(condition="Cor210", params={"p": p, "n": n}, places=S, witness=C)
    for P in S:
        d = d_value(P, p**n, M)
        got = cover_local_degree(C, P)
        report.add(f"(i) d_{P}({p**n}) | [L:M]_{P}", got % d == 0, {"d": d, "local_degree": got})
    rank = C.relative_rank()
    report.add("(ii) Gal(L/M) abelian of rank <= 2", rank <= 2, {"rank": rank})
    report.add("(iii) Gal(M/T) acts trivially on Gal(L/M)", True, "L/K is abelian")
    return report


def cor210_scan(M: AbExt, p: int, n: int, S: Sequence[Place], bound: int | None = None) -> CertReport:
    """First abelian p^n-cover passing the rank-two cover conditions, or a failed report."""
    bound = bound or get_settings().scan_bound
    for C in abelian_covers(M, p**n, bound):
        report = check_cor210(M, p, n, S, C)
        if report.passed:
            return report
    report = CertReport(condition="Cor210", params={"p": p, "n": n, "bound": bound}, places=sorted(set(S)))
    report.add("abelian witness", False, f"no abelian witness below bound {bound}")
    return report


def s0_search(M: AbExt, p: int, n: int, bound: int) -> dict[Vector, Place | None]:
    """One non-isolated place per generator of Gal(M/T) with that Frobenius and N(P) = 1 mod p^n."""
    T = cyclotomic_T(M, p)
    group = T.fixing_group()
    sigmas = lattice.generating_set(group, M.orders) or [lattice.zero(M.orders)]
    isolated = {P for P, q in isolated_places(M) if q == p}
    chosen: dict[Vector, Place | None] = {}
    for sigma in sigmas:
        chosen[sigma] = None
        for P in iter_places(M.base):
            if P.norm > bound:
                break
            if P in isolated or P.norm % p == 0 or (P.norm - 1) % p**n:
                continue
            if frobenius(M, P) == sigma:
                chosen[sigma] = P
                break
        if chosen[sigma] is None:
            logger.warning(f"Search bound exhausted: no S_0 place for {sigma} below {bound}")
    return chosen


def inertia_bound(C: Cover, P: Place, p: int) -> dict:
    e = ramification_index(C.L, P)
    if p == 2:
        limit = 2 ** (r_value(C.M) + 1)
    else:
        limit = p ** roots_of_unity_s(C.M, p)
    return {"e": e, "bound": limit, "holds": limit % e == 0, "full_local_degree": full_local_degree(C, P)}


def inertia_bound_check(C: Cover, P: Place, p: int) -> bool:
    """e_P(L/K) | p^s (odd p) or 2^{r+1} (p = 2)."""
    result = inertia_bound(C, P, p)
    if not result["full_local_degree"]:
        logger.info(f"{C} does not have full local degree at {P}")
    return result["holds"]


@dataclass
class BoundReport:
    p: int
    chi_order: int
    s: int | None = None
    r: int | None = None
    T: str | None = None
    sylow_cyclic: bool | None = None
    ceiling: int | None = None
    exact: int | None = None
    lower: int = 0
    upper: int | None = None
    wild: bool = False
    certified: list[dict] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)


def certified_exponent(report: CertReport, p: int) -> int | None:
    """n such that a passing report certifies (B_{p^n}) on its places; None for failed or foreign reports."""
    if not report.passed:
        return None
    if report.condition == "Bm":
        return vp(report.params["m"], p)
    if report.params.get("p") == p:
        return report.params["n"]
    return None


def certify_powers(M: AbExt, p: int, n_max: int, S: Sequence[Place], bound: int | None = None) -> list[CertReport]:
    """(B_{p^n}) scans for n = 1, 2, ... up to n_max, stopping after the first failure."""
    reports = []
    for n in range(1, n_max + 1):
        report = check_Bm(M, p**n, S, bound)
        reports.append(report)
        if not report.passed:
            logger.info(f"No (B_{p**n}) witness for {M} on {len(report.places)} places below the scan bound")
            break
    return reports


def bound_report(
    M: AbExt,
    p: int,
    chi_order: int,
    obstruction: bool = False,
    certificates: Sequence[CertReport] = (),
) -> BoundReport:
    """Known bounds on b_p(chi) for M = K(chi): the roots-of-unity ceiling, the cases where it is 0 and the
    largest n certified by the given passing reports."""
    if chi_order % M.exponent:
        raise InputError(f"|chi| = {chi_order} is not a multiple of exp Gal(M/K) = {M.exponent}")
    report = BoundReport(p=p, chi_order=chi_order)
    if p == M.base.characteristic:
        report.wild = True
        report.upper = None
        report.notes.append("p = char K: (B_{p^n}) is unconditionally satisfied for every n")
        return report
    report.s = roots_of_unity_s(M, p)
    report.r = r_value(M) if p == 2 else None
    report.T = str(cyclotomic_T(M, p))
    for cert in certificates:
        n = certified_exponent(cert, p)
        if not n:
            continue
        report.certified.append({"n": n, "places": [str(P) for P in cert.places], "witness": str(cert.witness)})
        report.lower = max(report.lower, n)
    report.sylow_cyclic = M.sylow_is_cyclic(p)
    if report.sylow_cyclic:
        report.notes.append("p-Sylow of Gal(M/K) is cyclic: no ceiling derivable")
        if report.certified:
            report.notes.append(f"lower end {report.lower} is certified on the tested place sets only")
        return report
    report.ceiling = 2 * report.s if p % 2 else 2 * (report.r + 2)
    report.upper = report.ceiling
    if report.s == 0 or obstruction:
        report.exact = 0
        report.upper = 0
        report.lower = 0
        reason = "s_p(M) = 0" if report.s == 0 else "obstruction certificate"
        report.notes.append(
            f"b_p = 0 ({reason}): the fiber contains noncrossed products of index {p * chi_order} and above"
        )
    else:
        report.notes.append("interval [lower, upper] for b_p: the cover condition ranges over every finite S")
    if report.certified and report.exact is None:
        report.notes.append(f"lower end {report.lower} is certified on the tested place sets only")
    return report
