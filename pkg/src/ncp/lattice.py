"""Finite abelian groups written as Z/m_1 + ... + Z/m_r: spans, orders, annihilators, generators."""

from __future__ import annotations

import itertools
import math
from typing import Iterable, Sequence

from sympy import Matrix, primefactors
from sympy.matrices.normalforms import smith_normal_form
from sympy.polys.domains import ZZ

Vector = tuple[int, ...]


def reduce(v: Sequence[int], moduli: Sequence[int]) -> Vector:
    return tuple(int(x) % m for x, m in zip(v, moduli))


def add(u: Sequence[int], v: Sequence[int], moduli: Sequence[int]) -> Vector:
    return tuple((a + b) % m for a, b, m in zip(u, v, moduli))


def scale(k: int, v: Sequence[int], moduli: Sequence[int]) -> Vector:
    return tuple(k * a % m for a, m in zip(v, moduli))


def zero(moduli: Sequence[int]) -> Vector:
    return tuple(0 for _ in moduli)


def elements(moduli: Sequence[int]) -> list[Vector]:
    """All elements in lexicographic order."""
    return list(itertools.product(*(range(m) for m in moduli)))


def element_order(v: Sequence[int], moduli: Sequence[int]) -> int:
    return math.lcm(*(m // math.gcd(a, m) for a, m in zip(v, moduli))) if moduli else 1


def span(generators: Iterable[Sequence[int]], moduli: Sequence[int]) -> set[Vector]:
    """Closure of the generators under addition."""
    found = {zero(moduli)}
    for g in generators:
        g = reduce(g, moduli)
        if g in found:
            continue
        step = set(found)
        multiple = g
        while multiple not in found:
            step.update(add(x, multiple, moduli) for x in found)
            multiple = add(multiple, g, moduli)
        found = step
    return found


def subgroup_order(generators: Iterable[Sequence[int]], moduli: Sequence[int]) -> int:
    """|<generators>| via the Smith normal form of generators stacked on the relations m_i e_i."""
    r = len(moduli)
    if r == 0:
        return 1
    rows = [list(reduce(g, moduli)) for g in generators]
    rows += [[m if i == j else 0 for j in range(r)] for i, m in enumerate(moduli)]
    width = len(rows)
    padded = [row + [0] * (width - r) for row in rows]
    snf = smith_normal_form(Matrix(padded), domain=ZZ)
    index = math.prod(abs(int(snf[i, i])) for i in range(width) if snf[i, i] != 0)
    return math.prod(moduli) // index


def generating_set(subgroup: Iterable[Sequence[int]], moduli: Sequence[int]) -> list[Vector]:
    """Greedy generators of a subgroup, scanning its elements in lexicographic order."""
    gens: list[Vector] = []
    reached = {zero(moduli)}
    for v in sorted(reduce(x, moduli) for x in subgroup):
        if v not in reached:
            gens.append(v)
            reached = span(gens, moduli)
    return gens


def rank(moduli: Sequence[int]) -> int:
    """Minimal number of generators of Z/m_1 + ... + Z/m_r."""
    primes = set()
    for m in moduli:
        primes.update(primefactors(m))
    return max((sum(1 for m in moduli if m % p == 0) for p in primes), default=0)


def sylow_moduli(moduli: Sequence[int], p: int) -> list[int]:
    """Cyclic factors of the p-Sylow subgroup."""
    out = []
    for m in moduli:
        pe = 1
        while m % (pe * p) == 0:
            pe *= p
        if pe > 1:
            out.append(pe)
    return out
