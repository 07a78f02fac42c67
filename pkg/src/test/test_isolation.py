import pytest

from ncp.abext import build_extension
from ncp.errors import InputError, WildPrimeError
from ncp.isolation import (
    d_value,
    is_isolated,
    isolated_places,
    isolation_report,
    max_unramified_valuation,
    u_values,
)
from ncp.places import BaseField, Place

Q = BaseField.rationals()


def test_two_is_isolated_in_q_i_sqrt2(m_m1_2):
    assert isolated_places(m_m1_2) == [(Place.prime(2), 2)]
    report = isolation_report(m_m1_2, 2)
    assert (report.u1, report.u2, report.gap) == (2, 1, 1)
    assert is_isolated(m_m1_2, Place.prime(2), 2)
    assert not is_isolated(m_m1_2, Place.prime(3), 2)


@pytest.mark.parametrize("radicands", [[-1, 2], [-1, 5], [-1, 13]])
def test_unramified_local_degrees_stay_below_u2(radicands):
    M = build_extension(Q, 2, radicands)
    report = isolation_report(M, 2)
    assert (report.u1, report.u2, report.gap) == (2, 1, 1)
    assert max_unramified_valuation(M, 2, 500) <= report.u2


@pytest.mark.parametrize("radicands", [[3, -7], [11], [5], [-1]])
def test_no_isolated_places_over_q(radicands):
    assert isolated_places(build_extension(Q, 2, radicands)) == []


def test_u_values(m_3_m7, m_11):
    assert u_values(m_3_m7, 2) == (2, 2)
    assert u_values(m_11, 2) == (1, 1)


def test_cubic_example_has_no_isolated_places(m_f7):
    assert isolated_places(m_f7) == []
    with pytest.raises(WildPrimeError):
        isolation_report(m_f7, 7)


def test_d_value_subtracts_the_gap_at_the_isolated_place(m_m1_2):
    assert d_value(Place.prime(2), 4, m_m1_2) == 2
    assert d_value(Place.prime(2), 2, m_m1_2) == 1
    assert d_value(Place.prime(3), 4, m_m1_2) == 4
    assert d_value(Place.prime(2), 12, m_m1_2) == 6


def test_d_value_at_the_real_place(m_m1_2):
    assert d_value(Place.real(), 4, m_m1_2) == 1
    assert d_value(Place.real(), 4, build_extension(Q, 2, [5])) == 2
    assert d_value(Place.real(), 3, build_extension(Q, 2, [5])) == 1


def test_d_value_without_gap_under_mutation(monkeypatch, m_m1_2):
    monkeypatch.setenv("NCP_MUTATIONS", "d-no-gap")
    assert d_value(Place.prime(2), 4, m_m1_2) == 4


def test_d_value_needs_positive_m(m_m1_2):
    with pytest.raises(InputError):
        d_value(Place.prime(2), 0, m_m1_2)
