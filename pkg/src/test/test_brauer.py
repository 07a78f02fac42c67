import random

import pytest

from ncp.abext import build_extension
from ncp.arith import QZ
from ncp.brauer import (
    check_lemma_2_1,
    construct_class,
    constructor_defects,
    fiber_index,
    index,
    make_class,
    random_class,
    restricted_index,
    restricted_local_index,
    restriction_sum,
    splits,
)
from ncp.errors import IncompleteDataError, InputError, InvalidClassError, WildPrimeError
from ncp.places import BaseField, Place, enumerate_places

Q = BaseField.rationals()
P2, P3 = Place.prime(2), Place.prime(3)


@pytest.fixture
def witness():
    """The index-8 class over Q(sqrt11, sqrt-3)."""
    return make_class({P3: QZ.of(7, 8), P2: QZ.of(1, 8)})


@pytest.fixture
def m_11_m3():
    return build_extension(Q, 2, [11, -3])


def test_class_invariants(witness):
    assert str(witness) == "{2: 1/8, 3: 7/8}"
    assert witness.inv(P3) == QZ.of(7, 8)
    assert witness.inv(Place.prime(5)).is_zero()
    assert index(witness) == 8


def test_invalid_classes():
    with pytest.raises(InvalidClassError):
        make_class({P2: QZ.of(1, 2)})
    with pytest.raises(InvalidClassError):
        make_class({Place.real(): QZ.of(1, 4), P2: QZ.of(3, 4)})
    with pytest.raises(InvalidClassError):
        make_class({P2: QZ.of(1, 2), Place.poly((1, 0), 7): QZ.of(1, 2)})


def test_sum_cancels():
    alpha = make_class({P2: QZ.of(1, 3), P3: QZ.of(2, 3)})
    assert not (alpha + make_class({P2: QZ.of(2, 3), P3: QZ.of(1, 3)})).entries


def test_restriction_to_m(witness, m_11_m3):
    assert restricted_local_index(witness, m_11_m3, P3) == 2
    assert restricted_local_index(witness, m_11_m3, P2) == 2
    assert restricted_index(witness, m_11_m3) == 2
    assert fiber_index(witness, m_11_m3, 4) == 8
    with pytest.raises(InputError):
        fiber_index(witness, m_11_m3, 3)


def test_splitting(witness, m_11_m3):
    assert splits({P2: 8, P3: 8}, witness)
    assert not splits({P2: 8, P3: 4}, witness)
    assert splits({P2: 2, P3: 2}, witness, over="M", M=m_11_m3)
    with pytest.raises(IncompleteDataError):
        splits({P2: 8}, witness)
    assert not splits({P2: 8}, witness, complete=True)
    with pytest.raises(InputError):
        splits({P2: 8, P3: 8}, witness, over="M")


def test_constructed_class_over_an_isolated_field(m_m1_2):
    alpha = construct_class(m_m1_2, 4, [P2, P3])
    assert restricted_index(alpha, m_m1_2) == 4
    assert alpha.inv(P2) == QZ.of(7, 8)
    assert alpha.inv(P3) == QZ.of(1, 8)
    assert constructor_defects(alpha, m_m1_2, 4, [P2, P3]) == []


def test_gapless_divisor_is_caught(monkeypatch, m_m1_2):
    alpha = construct_class(m_m1_2, 4, [P2, P3])
    monkeypatch.setenv("NCP_MUTATIONS", "d-no-gap")
    assert constructor_defects(alpha, m_m1_2, 4, [P2, P3]) != []


@pytest.mark.parametrize("m", [1, 2, 4, 6])
def test_construct_class_reaches_the_target_index(m_3_m7, m):
    S = [P3, Place.prime(5), Place.real()]
    alpha = construct_class(m_3_m7, m, S)
    assert restricted_index(alpha, m_3_m7) == m
    assert constructor_defects(alpha, m_3_m7, m, S) == []


def test_construct_class_over_f7(m_f7):
    S = [Place.poly((1, 0), 7), Place.poly((1, -2), 7)]
    alpha = construct_class(m_f7, 3, S)
    assert restricted_index(alpha, m_f7) == 3
    assert constructor_defects(alpha, m_f7, 3, S) == []


def test_construct_class_rejects_wild_and_foreign_input(m_f7, m_3_m7):
    with pytest.raises(WildPrimeError):
        construct_class(m_f7, 7, [])
    with pytest.raises(InputError):
        construct_class(m_3_m7, 2, [Place.infinity(7)])
    with pytest.raises(InputError):
        construct_class(m_3_m7, 0, [])


def test_local_index_bound_holds_for_random_classes(m_m1_2):
    rng = random.Random("lemma21")
    places = enumerate_places(Q, 13)
    for _ in range(200):
        assert check_lemma_2_1(random_class(rng, places), m_m1_2, 2)


def test_random_classes_are_valid():
    rng = random.Random(7)
    places = enumerate_places(Q, 50, include_real=True)
    for _ in range(50):
        alpha = random_class(rng, places)
        assert len(alpha.entries) <= 6
        assert all(not P.is_archimedean for P in alpha.support)
        assert sum(x.as_fraction() for _, x in alpha.entries) % 1 == 0


def test_restricted_invariants_sum_to_zero(m_3_m7):
    rng = random.Random(11)
    places = enumerate_places(Q, 50)
    for _ in range(200):
        alpha = random_class(rng, places)
        assert restriction_sum(alpha, m_3_m7).is_zero()


def test_restriction_sum_weights_by_place_count(m_3_m7):
    # [M:K]_5 = 2 since -21 is a square mod 5: two places of M lie above 5
    alpha = make_class({Place.prime(5): QZ.of(1, 4), Place.prime(11): QZ.of(3, 4)})
    assert restricted_local_index(alpha, m_3_m7, Place.prime(5)) == 2
    assert restriction_sum(alpha, m_3_m7).is_zero()
