"""Seeded property batteries over every module; each battery reports how many cases it checked and
the first failures it saw."""

from __future__ import annotations

import itertools
import logging
import math
import random
import time
from dataclasses import dataclass, field
from typing import Callable

from sympy import divisors, primerange

from ncp import covers, groupext
from ncp.abext import (
    AbExt,
    build_extension,
    find_primes_with_frobenius,
    frobenius,
    local_data,
    local_degree,
    qsigma_search,
    ramification_index,
)
from ncp.arith import QZ, PrimeField, legendre, power_class_order
from ncp.brauer import (
    check_lemma_2_1,
    construct_class,
    constructor_defects,
    fiber_index,
    index,
    make_class,
    random_class,
    restricted_index,
    restriction_sum,
)
from ncp.config import get_settings
from ncp.errors import InputError, NcpError
from ncp.isolation import isolated_places, isolation_report, max_unramified_valuation
from ncp.places import BaseField, Place, enumerate_places

logger = logging.getLogger(__name__)

Q = BaseField.rationals()
F7 = BaseField.function_field(7)

DEFAULT_SIZES = {
    "random": 200,
    "unramified": 500,
    "classes": 1000,
    "sets": 20,
    "search_bound": 100000,
    "line_trials": 2000,
    "group_samples": 32,
}

MAX_FAILURES = 5


def fixture_extensions() -> dict[str, AbExt]:
    return {
        "Q(sqrt3,sqrt-7)": build_extension(Q, 2, [3, -7]),
        "Q(sqrt-1,sqrt2)": build_extension(Q, 2, [-1, 2]),
        "Q(sqrt-1,sqrt5)": build_extension(Q, 2, [-1, 5]),
        "Q(sqrt-1,sqrt13)": build_extension(Q, 2, [-1, 13]),
        "Q(sqrt11)": build_extension(Q, 2, [11]),
        "Q(sqrt5)": build_extension(Q, 2, [5]),
        "F7(t)(cbrt t, cbrt (t-1)(t-2))": build_extension(F7, 3, ["t", "(t-1)*(t-2)"]),
    }


ISOLATED_FIXTURES = ("Q(sqrt-1,sqrt2)", "Q(sqrt-1,sqrt5)", "Q(sqrt-1,sqrt13)")


@dataclass
class BatteryResult:
    name: str
    checked: int = 0
    failures: list[str] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    def check(self, ok: bool, detail: str):
        self.checked += 1
        if not ok and len(self.failures) < MAX_FAILURES:
            self.failures.append(detail)
        elif not ok:
            self.failures[-1] = detail


Battery = Callable[[random.Random, dict, BatteryResult], None]


def _random_qz(rng: random.Random) -> QZ:
    return QZ.of(rng.randrange(-50, 50), rng.randint(1, 60))


def battery_qz(rng, sizes, out):
    for _ in range(sizes["random"]):
        x, y, z = _random_qz(rng), _random_qz(rng), _random_qz(rng)
        out.check((x + y) + z == x + (y + z), f"associativity {x} {y} {z}")
        out.check(x + y == y + x, f"commutativity {x} {y}")
        out.check(math.lcm(x.order, y.order) % (x + y).order == 0, f"order of {x} + {y}")
        parts = x.p_primary()
        total = QZ()
        for p, part in parts.items():
            total = total + part
            coprime = math.gcd(part.order, x.order // part.order) == 1
            out.check(part.order % p == 0 and coprime, f"{p}-part of {x}")
        out.check(total == x, f"primary parts of {x}")


def battery_legendre(rng, sizes, out):
    primes = list(primerange(3, 200))
    for _ in range(sizes["random"]):
        p = rng.choice(primes)
        a, b = rng.randrange(1, p), rng.randrange(1, p)
        out.check(legendre(a * b, p) == legendre(a, p) * legendre(b, p), f"({a}{b}|{p})")
        euler = pow(a, (p - 1) // 2, p)
        out.check((euler == 1) == (legendre(a, p) == 1), f"Euler criterion ({a}|{p})")


def battery_power_class(rng, sizes, out):
    for q in (7, 13, 19, 31):
        field_ = PrimeField(q)
        for n in (d for d in range(2, q) if (q - 1) % d == 0):
            for _ in range(max(1, sizes["random"] // 20)):
                a, b = rng.randrange(1, q), rng.randrange(1, q)
                got = field_.power_class(a * b, n)
                want = (field_.power_class(a, n) + field_.power_class(b, n)) % n
                out.check(got == want, f"F_{q} class of {a}*{b}")
                out.check(field_.is_power(pow(a, n, q), n), f"{a}^{n} in F_{q}")
    for q in primerange(3, 100):
        for n in divisors(q - 1):
            powers = {pow(x, n, q) for x in range(1, q)}
            for a in range(1, q):
                k = power_class_order(a, n, q)
                ok = n % k == 0 and (k == 1) == (a in powers)
                out.check(ok, f"class order {k} of {a} mod {n}-th powers of F_{q}")


def battery_places(rng, sizes, out):
    for base in (Q, F7, BaseField.function_field(3)):
        places = enumerate_places(base, 400)
        out.check(places == sorted(places), f"enumeration order over {base}")
        out.check(all(a.norm <= b.norm for a, b in zip(places, places[1:])), f"norms ascending over {base}")
        if base.is_function_field:
            linear = [P for P in places if P.norm == base.q]
            out.check(len(linear) == base.q + 1, f"degree-one places of {base}")


def battery_local_degree(rng, sizes, out):
    for name, M in fixture_extensions().items():
        for P in enumerate_places(M.base, 60, include_real=not M.base.is_function_field):
            data = local_data(M, P)
            f = local_degree(M, P)
            out.check(M.degree % f == 0, f"[M:K]_{P} divides [M:K] for {name}")
            out.check(data.local_degree == f, f"decomposition group order at {P} in {name}")
            if P.is_archimedean:
                continue
            e = ramification_index(M, P)
            out.check(f % e == 0, f"e | f at {P} in {name}")
            frob = frobenius(M, P)
            if frob is not None:
                out.check(M.element_order(frob) == f and e == 1, f"Frobenius order at {P} in {name}")


def battery_covers(rng, sizes, out):
    for name, M in fixture_extensions().items():
        places = enumerate_places(M.base, 40)
        trivial = covers.check_Bm(M, 1, places[:3])
        out.check(trivial.passed and trivial.witness.L == M, f"(B_1) for {name}")
        degree = 3 if M.base.is_function_field else 2
        for C in itertools.islice(covers.abelian_covers(M, degree, 30), 6):
            for P in places:
                out.check(
                    covers.cover_local_degree(C, P) * local_degree(M, P) == local_degree(C.L, P),
                    f"local degrees multiply in {C} at {P}",
                )
            cert = covers.check_cor210(M, degree, 1, rng.sample(places, 2), C)
            structural = [c for c in cert.checks if c.name.startswith(("(ii)", "(iii)"))]
            out.check(all(c.passed for c in structural), f"cover conditions (ii)/(iii) for {C}")
    M = fixture_extensions()["Q(sqrt11)"]
    for S in ([Place.prime(5)], [Place.prime(3)], [Place.prime(3), Place.prime(7)]):
        report = covers.check_Bm(M, 4, S, bound=30)
        if not report.passed:
            continue
        for m_sub in (1, 2):
            induced = covers.induced_certificate(report, m_sub)
            out.check(induced.passed, f"(B_{m_sub}) induced from {report.witness}")


def battery_chebotarev(rng, sizes, out):
    bound = sizes["search_bound"]
    for name, M in fixture_extensions().items():
        p = 2 if not M.base.is_function_field else 3
        for sigma in M.galois_elements():
            found = find_primes_with_frobenius(M, sigma, 5, bound)
            out.check(len(found) >= 5, f"places with Frobenius {sigma} in {name}")
            found = qsigma_search(M, sigma, p, 5, bound)
            out.check(len(found) >= 5, f"Q_sigma places for {sigma} in {name}")


def _class_places(M: AbExt) -> list[Place]:
    return enumerate_places(M.base, 13 if not M.base.is_function_field else 7)


def battery_conservation(rng, sizes, out):
    places = enumerate_places(Q, 50)
    M = fixture_extensions()["Q(sqrt3,sqrt-7)"]
    for _ in range(sizes["random"]):
        alpha, beta = random_class(rng, places), random_class(rng, places)
        total = alpha + beta
        out.check(sum((x.as_fraction() for _, x in total.entries), start=0) % 1 == 0, f"sum of {total}")
        out.check(index(alpha) == math.lcm(1, *(x.order for _, x in alpha.entries)), f"index of {alpha}")
        negated = make_class({P: -x for P, x in alpha.entries})
        out.check(not (alpha + negated).entries, f"{alpha} plus its negative")
        out.check(restriction_sum(alpha, M).is_zero(), f"restricted invariants of {alpha} over {M}")


def battery_lemma21(rng, sizes, out):
    fixtures = fixture_extensions()
    for name in ISOLATED_FIXTURES:
        M = fixtures[name]
        places = _class_places(M)
        for _ in range(sizes["classes"]):
            alpha = random_class(rng, places)
            out.check(check_lemma_2_1(alpha, M, 2), f"local index bound for {alpha} over {name}")


def _random_set(rng: random.Random, M: AbExt, forced: list[Place]) -> list[Place]:
    pool = enumerate_places(M.base, 60 if not M.base.is_function_field else 49)
    S = set(rng.sample(pool, rng.randint(1, 4)))
    S.update(forced)
    if not M.base.is_function_field and rng.random() < 0.25:
        S.add(Place.real())
    return sorted(S)


def battery_constructor(rng, sizes, out):
    for name, M in fixture_extensions().items():
        isolated = [P for P, _ in isolated_places(M)]
        for m in (2, 3, 4, 8, 12):
            for trial in range(sizes["sets"]):
                S = _random_set(rng, M, isolated if trial % 2 == 0 else [])
                try:
                    alpha = construct_class(M, m, S)
                except NcpError as e:
                    out.check(False, f"construct_class({name}, {m}, {[str(P) for P in S]}): {e}")
                    continue
                oracle = math.lcm(1, *((local_degree(M, P) * x).order for P, x in alpha.entries))
                out.check(oracle == m, f"restricted index of {alpha} over {name} is {oracle}, not {m}")
                defects = constructor_defects(alpha, M, m, S)
                out.check(not defects, f"{alpha} over {name}, m={m}: {defects}")


def battery_remark23(rng, sizes, out):
    M = fixture_extensions()["Q(sqrt3,sqrt-7)"]
    pool = enumerate_places(Q, 100)
    for m in (2, 4):
        S: list[Place] = []
        seen = set()
        for P in rng.sample(pool, 6):
            S.append(P)
            alpha = construct_class(M, m, S)
            out.check(alpha not in seen, f"class for S = {[str(x) for x in S]} repeats")
            seen.add(alpha)


def battery_index_formula(rng, sizes, out):
    for name, M in fixture_extensions().items():
        places = _class_places(M)
        for _ in range(sizes["random"]):
            alpha = random_class(rng, places)
            chi_order = M.exponent * rng.randint(1, 3)
            size = fiber_index(alpha, M, chi_order)
            out.check(size % chi_order == 0, f"fiber index {size} for |chi| = {chi_order}")
            out.check((size == chi_order) == (restricted_index(alpha, M) == 1), f"fiber index of {alpha}")


def battery_isolation(rng, sizes, out):
    fixtures = fixture_extensions()
    found = isolated_places(fixtures["Q(sqrt-1,sqrt2)"])
    out.check(found == [(Place.prime(2), 2)], f"isolated places of Q(sqrt-1,sqrt2): {found}")
    out.check(isolation_report(fixtures["Q(sqrt-1,sqrt2)"], 2).gap == 1, "gap of Q(sqrt-1,sqrt2)")
    for name in ("Q(sqrt3,sqrt-7)", "Q(sqrt11)", "Q(sqrt5)", "F7(t)(cbrt t, cbrt (t-1)(t-2))"):
        out.check(not isolated_places(fixtures[name]), f"no isolated places in {name}")
    for name in ISOLATED_FIXTURES:
        report = isolation_report(fixtures[name], 2)
        out.check(report.gap == 1, f"gap of {name}: {report.gap}")
        top = max_unramified_valuation(fixtures[name], 2, sizes["unramified"])
        out.check(top <= report.u2, f"v_2 of an unramified local degree in {name} is {top} > u2 = {report.u2}")


def _extensions() -> list[groupext.CentralExt]:
    found = list(groupext.iter_extensions(2, 3, (4, 4)))
    found += list(groupext.iter_extensions(2, 3, (2, 2, 2)))
    found += list(groupext.iter_extensions(3, 2, (9, 3)))
    return found


def _c4_c2() -> groupext.CentralExt:
    return groupext.ext_build(2, 1, (2, 1), (1, 0))


def battery_lemma33(rng, sizes, out):
    for E in _extensions():
        result = groupext.verify_lemma_33(E, rng, sizes["group_samples"])
        for key, ok in result.items():
            out.check(ok, f"{key} fails on {E}")


def battery_lemma34(rng, sizes, out):
    for E in _extensions():
        for x in E.B.elements():
            if x != E.B.zero():
                out.check(groupext.verify_lemma_34(E, x), f"fiber over {x} in {E}")


def battery_lemma35(rng, sizes, out):
    for E in _extensions() + [_c4_c2()]:
        result = groupext.verify_lemma_35(E)
        out.check(result["consistent"], f"gamma criterion on {E}: {result}")


def battery_associativity(rng, sizes, out):
    for E in _extensions():
        elements = E.elements()
        out.check(len(set(elements)) == E.order, f"|G| = |A||B| for {E}")
        z = E.central(1)
        for _ in range(sizes["group_samples"]):
            g, h, k = rng.choice(elements), rng.choice(elements), rng.choice(elements)
            left = groupext.ext_mul(E, groupext.ext_mul(E, g, h), k)
            right = groupext.ext_mul(E, g, groupext.ext_mul(E, h, k))
            out.check(left == right, f"associativity of {g}, {h}, {k} in {E}")
            out.check(groupext.commutator(E, z, g) == E.identity(), f"A central in {E}")


def battery_prop32(rng, sizes, out):
    for p, a_max, orders in ((2, 3, (4, 4, 4)), (3, 3, (9, 9, 9))):
        result = groupext.prop32_scan(p, a_max, orders)
        out.check(not result.counterexamples, f"p={p}: {[str(E) for E in result.counterexamples]}")
        if p == 2:
            out.check(groupext.q8() in result.hits, "Q8 datum missing from the hits")
        else:
            out.check(not result.hits, f"p={p} has hits")


def battery_invariant_line(rng, sizes, out):
    for p in (3, 5, 7):
        out.check(groupext.invariant_line(p, [[[1, 0], [0, 1]]]) == (1, 0), f"identity over F_{p}")
        out.check(groupext.invariant_line(p, [[[1, 1], [0, 1]]]) == (1, 0), f"unipotent over F_{p}")
    trials = 0
    while trials < sizes["line_trials"]:
        p = rng.choice((3, 5, 7))
        gens = groupext.random_abelian_generators(rng, p)
        if gens is None:
            continue
        trials += 1
        out.check(groupext.invariant_line(p, gens) is not None, f"no invariant line for {gens} over F_{p}")


BATTERIES: dict[str, Battery] = {
    "qz": battery_qz,
    "legendre": battery_legendre,
    "power-class": battery_power_class,
    "places": battery_places,
    "local-degree": battery_local_degree,
    "covers": battery_covers,
    "chebotarev": battery_chebotarev,
    "conservation": battery_conservation,
    "lemma21": battery_lemma21,
    "constructor": battery_constructor,
    "remark23": battery_remark23,
    "index-formula": battery_index_formula,
    "isolation": battery_isolation,
    "lemma33": battery_lemma33,
    "lemma34": battery_lemma34,
    "lemma35": battery_lemma35,
    "associativity": battery_associativity,
    "prop32": battery_prop32,
    "invariant-line": battery_invariant_line,
}


def run_property_suite(seed: int | None = None, sizes: dict | None = None, only=None) -> dict:
    seed = get_settings().default_seed if seed is None else seed
    merged = {**DEFAULT_SIZES, **(sizes or {})}
    names = list(only) if only else list(BATTERIES)
    results = []
    for name in names:
        if name not in BATTERIES:
            raise InputError(f"Unknown battery {name!r}; known: {sorted(BATTERIES)}")
        out = BatteryResult(name)
        start = time.perf_counter()
        try:
            BATTERIES[name](random.Random(f"{seed}:{name}"), merged, out)
        except NcpError as e:
            logger.error(f"Battery {name} raised: {e}")
            out.check(False, f"raised {type(e).__name__}: {e}")
        out.seconds = round(time.perf_counter() - start, 3)
        logger.info(f"Battery {name}: {out.checked} checks, {len(out.failures)} failures")
        results.append(out)
    return {
        "seed": seed,
        "sizes": merged,
        "passed": all(r.passed for r in results),
        "batteries": {
            r.name: {"passed": r.passed, "checked": r.checked, "failures": r.failures, "seconds": r.seconds}
            for r in results
        },
    }
