"""Reproductions of the worked examples: the multiquadratic example over Q, the bicyclic example
over F_q(t) and the realization of the three-prime construction over an arbitrary base."""

from __future__ import annotations

import itertools
import logging

from sympy import isprime

from ncp.abext import (
    AbExt,
    build_extension,
    extension_from_radicands,
    is_real_in,
    local_degree,
    ramification_index,
    roots_of_unity_s,
)
from ncp.arith import legendre, vp
from ncp.brauer import construct_class, fiber_index, index, restricted_index
from ncp.config import get_settings
from ncp.covers import abelian_covers, bound_report, cover_local_degree
from ncp.errors import DependentRadicandsError, InputError, SearchExhaustedError
from ncp.functions import RationalFunction
from ncp.isolation import isolated_places
from ncp.places import INF, POLY, REAL, BaseField, Place, iter_places
from ncp.reports import PaperReport

logger = logging.getLogger(__name__)

Q = BaseField.rationals()


def _scan_local_degree(M: AbExt, m: int, P: Place, target: int, bound: int) -> tuple[int, str | None]:
    """Abelian m-covers with [L:M]_P = target below the bound: (number scanned, first hit)."""
    scanned = 0
    for C in abelian_covers(M, m, bound):
        scanned += 1
        if cover_local_degree(C, P) == target:
            return scanned, str(C)
    return scanned, None


def _splitting(K1: AbExt, P: Place) -> str:
    n = K1.degree
    e = ramification_index(K1, P)
    f = local_degree(K1, P)
    if f == 1:
        return "split"
    if e == n:
        return "ramified"
    if e == 1 and f == n:
        return "inert"
    return f"e={e}, f={f // e}"


def run_ex41(l: int, q: int, bound: int | None = None) -> PaperReport:
    """Q(sqrt(q), sqrt(-l)) with q = 3 mod 4, q != -l mod 8, q a non-square mod l."""
    bound = bound or get_settings().scan_bound
    report = PaperReport(example="ex41", parameters={"l": l, "q": q, "bound": bound})
    if not (isprime(l) and isprime(q) and l > 2 and q > 2):
        raise InputError(f"l and q must be odd primes, got l={l}, q={q}")
    hypotheses = [
        report.add("q = 3 mod 4", q % 4 == 3, q % 4),
        report.add("q != -l mod 8", (q + l) % 8 != 0, (q + l) % 8),
        report.add("q is a non-square mod l", legendre(q, l) == -1, legendre(q, l)),
    ]
    if not all(hypotheses):
        report.notes.append("hypotheses fail: remaining checks skipped")
        return report
    M = build_extension(Q, 2, [q, -l])
    K1 = M.sub_extension([0])
    ell, big_q, two = Place.prime(l), Place.prime(q), Place.prime(2)
    report.add("[M:Q]_l = 4", local_degree(M, ell) == 4, local_degree(M, ell))
    if l % 4 == 3:
        report.add("[M:Q]_q = 4 (l = 3 mod 4)", local_degree(M, big_q) == 4, local_degree(M, big_q))
    else:
        report.add("[M:Q]_2 = 4 (l = 1 mod 4)", local_degree(M, two) == 4, local_degree(M, two))
    found = isolated_places(M)
    report.add("no isolated primes", not found, [[str(P), p] for P, p in found])
    report.add("K_1 is real and M is not", is_real_in(K1) and not is_real_in(M))
    report.add("-1 is not a square in Q_q", legendre(-1, q) == -1, legendre(-1, q))
    scanned, hit = _scan_local_degree(M, 2, ell, 2, bound)
    report.add("no abelian 2-cover with [L:M]_l = 2", hit is None, {"scanned": scanned, "witness": hit})
    alpha = construct_class(M, 2, [ell])
    chi_order = M.degree
    report.add("witness class: ind alpha = 8", index(alpha) == 8, str(alpha))
    report.add("witness class: ind_l alpha = 8", alpha.inv(ell).order == 8, str(alpha.inv(ell)))
    report.add("witness class: ind alpha^M = 2", restricted_index(alpha, M) == 2, restricted_index(alpha, M))
    size = fiber_index(alpha, M, chi_order)
    report.add("noncrossed product of index 8", size == 8, size)
    report.parameters["M"] = str(M)
    report.parameters["witness"] = str(alpha)
    return report


def _six_targets(report: PaperReport, K1: AbExt, K2: AbExt, pp: Place, q1: Place, q2: Place):
    targets = [
        (K1, "K_1", pp, "inert"),
        (K1, "K_1", q1, "ramified"),
        (K1, "K_1", q2, "split"),
        (K2, "K_2", q1, "inert"),
        (K2, "K_2", pp, "ramified"),
        (K2, "K_2", q2, "ramified"),
    ]
    for field, name, P, want in targets:
        got = _splitting(field, P)
        report.add(f"{P} {want} in {name}", got == want, got)


def _norm_checks(report: PaperReport, p: int, s: int, places):
    for P in places:
        N = P.norm
        ok = N % p**s == 1 % p**s and N % p ** (s + 1) != 1
        report.add(f"N({P}) = 1 mod {p}^{s}, != 1 mod {p}^{s + 1}", ok, N)


def _obstruction_checks(report: PaperReport, M: AbExt, p: int, pp: Place, q1: Place, bound: int):
    report.add("local degree of M at p is full", local_degree(M, pp) == M.degree, local_degree(M, pp))
    report.add("local degree of M at q_1 is full", local_degree(M, q1) == M.degree, local_degree(M, q1))
    found = [(P, r) for P, r in isolated_places(M) if r == p]
    report.add("no isolated primes", not found, [str(P) for P, _ in found])
    scanned, hit = _scan_local_degree(M, p, pp, p, bound)
    report.add(f"no abelian {p}-cover with [L:M]_p = {p}", hit is None, {"scanned": scanned, "witness": hit})
    bounds = bound_report(M, p, M.degree, obstruction=hit is None)
    report.add(f"b_{p} = 0", bounds.exact == 0, bounds.exact)


def run_ex43(p: int, q: int, a: int, bound: int | None = None) -> PaperReport:
    """K = F_q(t), M = K(t^(1/p^s), ((t-1)(t-a))^(1/p^s))."""
    bound = bound or get_settings().scan_bound
    if not isprime(p) or not isprime(q):
        raise InputError(f"p and q must be primes, got p={p}, q={q}")
    if (q - 1) % p:
        raise InputError(f"q = {q} is not 1 mod {p}")
    a %= q
    base = BaseField.function_field(q)
    if a in (0, 1):
        raise InputError(f"a must lie in F_q minus {{0, 1}}, got {a}")
    if base.constants.is_power(a, p):
        raise InputError(f"a = {a} is a {p}-th power in F_{q}")
    s = vp(q - 1, p)
    n = p**s
    report = PaperReport(example="ex43", parameters={"p": p, "q": q, "a": a, "s": s, "bound": bound})
    t = RationalFunction.variable(q)
    f2 = RationalFunction.parse(f"(t-1)*(t-{a})", q)
    M = build_extension(base, n, [t, f2])
    K1, K2 = M.sub_extension([0]), M.sub_extension([1])
    pp = Place.poly((1, -a), q)
    q1 = Place.poly((1, 0), q)
    q2 = Place.poly((1, -1), q)
    report.parameters.update(M=str(M), places={"p": str(pp), "q_1": str(q1), "q_2": str(q2)})
    report.add("s = s_p(F_q(t)) > 0", s > 0, s)
    _six_targets(report, K1, K2, pp, q1, q2)
    _norm_checks(report, p, s, [q1, q2])
    _obstruction_checks(report, M, p, pp, q1, bound)
    return report


def _uniformizer(P: Place):
    if P.kind == POLY:
        return RationalFunction.from_place(P)
    return P.p


def _constant_classes(base: BaseField, n: int) -> list:
    if base.is_function_field:
        g = base.constants.generator
        return [RationalFunction.constant(base.q, pow(g, k, base.q)) for k in range(n)]
    return [1, -1]


def _product(c, parts):
    value = c
    for f, e in parts:
        if e:
            value = value * f**e
    return value


def _satisfies(base: BaseField, n: int, f, inert, ramified, split) -> bool:
    try:
        K1 = extension_from_radicands(base, n, [f], allow_mixed=False)
    except DependentRadicandsError:
        return False
    return (
        _splitting(K1, inert) == "inert"
        and all(_splitting(K1, P) == "ramified" for P in ramified)
        and all(_splitting(K1, P) == "split" for P in split)
    )


def realize_radicand(base: BaseField, n: int, inert: Place, ramified, split, bound: int):
    """A radicand f with the prescribed splitting in K(f^(1/n)), searched over c * prod pi_P^{e_P}
    on the named places, then with one auxiliary prime factor."""
    named = [inert, *ramified, *split]
    pis = [_uniformizer(P) for P in named]
    constants = _constant_classes(base, n)
    auxiliaries = [None]
    for P in iter_places(base):
        if P.norm > bound:
            break
        if P.kind != INF and P not in named:
            auxiliaries.append(_uniformizer(P))
    for aux in auxiliaries:
        for c in constants:
            for exps in itertools.product(range(n), repeat=len(named)):
                parts = list(zip(pis, exps))
                if aux is not None:
                    parts.append((aux, 1))
                f = _product(c, parts)
                if _satisfies(base, n, f, inert, ramified, split):
                    return f
    return None


def run_prop42(p: int, base: BaseField, pp: Place, bound: int | None = None) -> PaperReport:
    """Primes q_1, q_2 with N = 1 mod p^s but not mod p^{s+1}, the splitting targets, and a Kummer
    realization K(f_1^(1/p^s), f_2^(1/p^s)) when one is found."""
    settings = get_settings()
    bound = bound or settings.default_bound
    if p == base.characteristic:
        raise InputError(f"p = {p} is the characteristic of {base}")
    if not base.owns(pp) or pp.kind in (REAL, INF):
        raise InputError(f"{pp} is not a finite place of {base}")
    s = vp(base.q - 1, p) if base.is_function_field else (1 if p == 2 else 0)
    if s == 0:
        raise InputError(f"s_{p}({base}) = 0")
    if pp.norm % p == 0:
        raise InputError(f"p = {p} divides N({pp}) = {pp.norm}")
    n = p**s
    chosen = []
    for P in iter_places(base):
        if P.norm > bound or len(chosen) == 2:
            break
        if P == pp or P.kind == INF:
            continue
        if P.norm % n == 1 % n and P.norm % (n * p) != 1:
            chosen.append(P)
    if len(chosen) < 2:
        raise SearchExhaustedError(f"Found {len(chosen)} of 2 primes q_i below norm {bound}")
    q1, q2 = chosen
    report = PaperReport(
        example="prop42",
        parameters={
            "p": p,
            "base": str(base),
            "s": s,
            "places": {"p": str(pp), "q_1": str(q1), "q_2": str(q2)},
            "targets": {
                "K_1": {"inert": [str(pp)], "ramified": [str(q1)], "split": [str(q2)]},
                "K_2": {"inert": [str(q1)], "ramified": [str(pp), str(q2)]},
            },
        },
    )
    _norm_checks(report, p, s, [q1, q2])
    scan_bound = settings.scan_bound
    f1 = realize_radicand(base, n, pp, [q1], [q2], scan_bound)
    f2 = realize_radicand(base, n, q1, [pp, q2], [], scan_bound)
    if f1 is None or f2 is None:
        report.notes.append(f"no Kummer realization found below bound {scan_bound}")
        return report
    try:
        M = build_extension(base, n, [f1, f2])
    except DependentRadicandsError:
        report.notes.append(f"radicands {f1}, {f2} are dependent")
        return report
    report.parameters.update(f_1=str(f1), f_2=str(f2), M=str(M))
    K1, K2 = M.sub_extension([0]), M.sub_extension([1])
    _six_targets(report, K1, K2, pp, q1, q2)
    report.add(f"s_{p}(K) = {s}", roots_of_unity_s(AbExt(base, n, (), ()), p) == s, s)
    _obstruction_checks(report, M, p, pp, q1, scan_bound)
    return report
