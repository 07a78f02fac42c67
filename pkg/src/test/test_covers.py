import itertools

import pytest

from ncp.abext import local_degree
from ncp.covers import (
    abelian_covers,
    bound_report,
    build_cover,
    candidate_radicands,
    certify_Bm,
    certify_powers,
    certified_exponent,
    check_Bm,
    check_cor210,
    compose,
    cor210_scan,
    cover_local_degree,
    full_local_degree,
    induced_certificate,
    inertia_bound,
    inertia_bound_check,
    s0_search,
    sub_covers,
    trivial_cover,
)
from ncp.errors import ExtensionError, InputError
from ncp.places import BaseField, Place, enumerate_places

Q = BaseField.rationals()
P3, P5 = Place.prime(3), Place.prime(5)


def test_candidate_order_over_q():
    assert list(candidate_radicands(Q, 6)) == [-1, 2, -2, 3, -3, 5, -5, 6, -6]


def test_candidate_order_over_f7():
    first = [str(f) for f in itertools.islice(candidate_radicands(BaseField.function_field(7), 7), 3)]
    assert first == ["3", "t", "(t + 1)"]


def test_trivial_cover_certifies_b1(m_3_m7):
    report = check_Bm(m_3_m7, 1, [P3, P5])
    assert report.passed
    assert report.witness == trivial_cover(m_3_m7)


def test_quadratic_witness_over_q_sqrt11(m_11):
    report = check_Bm(m_11, 2, [P3])
    assert report.passed
    assert report.witness.extra_radicands == (3,)
    assert cover_local_degree(report.witness, P3) == 2


def test_explicit_cover_failing_divisibility(m_11):
    report = certify_Bm(build_cover(m_11, [2]), 2, [P3])
    assert not report.passed
    assert report.failures() == ["d_3(2) | [L:M]_3"]
    with pytest.raises(InputError):
        certify_Bm(build_cover(m_11, [2]), 4, [P3])


def test_missing_witness_is_a_failed_check(m_11):
    report = check_Bm(m_11, 4, [P3], bound=30)
    assert not report.passed
    assert report.witness is None
    assert report.failures() == ["abelian witness"]


def test_composite_m_without_kummer_covers(m_11):
    report = check_Bm(m_11, 6, [P5], bound=20)
    assert not report.passed


def test_wild_part_is_unconditional(m_f7):
    report = check_Bm(m_f7, 7, [])
    assert report.unconditional and report.passed


def test_local_degrees_multiply(m_3_m7):
    places = enumerate_places(Q, 40, include_real=True)
    for C in itertools.islice(abelian_covers(m_3_m7, 2, 20), 5):
        assert C.rel_degree == 2
        for P in places:
            assert cover_local_degree(C, P) * local_degree(m_3_m7, P) == local_degree(C.L, P)


def test_compose_and_exponent_checks(m_11):
    C = compose([build_cover(m_11, [2]), build_cover(m_11, [5])])
    assert C.rel_degree == 4
    assert C.relative_rank() == 2
    with pytest.raises(ExtensionError):
        build_cover(m_11, [2], 3)


def test_induced_certificates(m_11):
    report = check_Bm(m_11, 4, [P5], bound=30)
    assert report.passed
    assert report.witness.extra_radicands == (2, 5)
    assert full_local_degree(report.witness, P5)
    for m_sub in (1, 2):
        assert induced_certificate(report, m_sub).passed
    assert [C.extra_radicands for C in sub_covers(report.witness, 2)] == [(5,), (2,)]
    with pytest.raises(InputError):
        induced_certificate(report, 3)


def test_rank_two_cover_conditions(m_11):
    report = check_cor210(m_11, 2, 1, [P3], build_cover(m_11, [3]))
    assert report.passed
    rank_three = check_cor210(m_11, 2, 3, [], build_cover(m_11, [2, 3, 5]))
    assert rank_three.failures() == ["(ii) Gal(L/M) abelian of rank <= 2"]
    with pytest.raises(InputError):
        check_cor210(m_11, 2, 2, [P3], build_cover(m_11, [3]))


def test_rank_two_cover_scan(m_11):
    report = cor210_scan(m_11, 2, 1, [P3], bound=20)
    assert report.passed
    assert report.witness.extra_radicands == (3,)


def test_s0_places(m_3_m7):
    chosen = s0_search(m_3_m7, 2, 2, 1000)
    assert {sigma: P.p for sigma, P in chosen.items()} == {(0, 1): 13, (1, 0): 29}


def test_inertia_bound(m_3_m7):
    C = build_cover(m_3_m7, [2])
    assert inertia_bound(C, Place.prime(2), 2) == {
        "e": 4,
        "bound": 8,
        "holds": True,
        "full_local_degree": True,
    }
    assert inertia_bound_check(C, P5, 2)


def test_bound_report_noncyclic(m_3_m7):
    report = bound_report(m_3_m7, 2, 4)
    assert (report.s, report.r, report.ceiling, report.exact) == (1, 2, 8, None)
    assert not report.sylow_cyclic
    assert bound_report(m_3_m7, 2, 4, obstruction=True).exact == 0


def test_bound_report_cyclic(m_11):
    report = bound_report(m_11, 2, 2)
    assert report.sylow_cyclic and report.ceiling is None


def test_bound_report_lower_end_from_certificates(m_11):
    reports = certify_powers(m_11, 2, 2, [P5], bound=30)
    assert [r.passed for r in reports] == [True, True]
    assert [certified_exponent(r, 2) for r in reports] == [1, 2]
    report = bound_report(m_11, 2, 2, certificates=reports)
    assert report.lower == 2
    assert [c["n"] for c in report.certified] == [1, 2]
    assert "lower end 2 is certified on the tested place sets only" in report.notes


def test_bound_report_ignores_failed_and_foreign_certificates(m_11):
    failed = check_Bm(m_11, 4, [P3], bound=30)
    assert certified_exponent(failed, 2) is None
    assert bound_report(m_11, 2, 2, certificates=[failed]).lower == 0
    odd = check_Bm(m_11, 4, [P5], bound=30)
    assert certified_exponent(odd, 3) == 0


def test_certify_powers_stops_at_first_failure(m_11):
    reports = certify_powers(m_11, 2, 3, [P3], bound=30)
    assert [r.passed for r in reports] == [True, False]


def test_obstruction_resets_lower_end(m_11, m_3_m7):
    certificate = check_Bm(m_11, 4, [P5], bound=30)
    report = bound_report(m_3_m7, 2, 4, obstruction=True, certificates=[certificate])
    assert (report.exact, report.lower) == (0, 0)


def test_bound_report_function_field(m_f7):
    report = bound_report(m_f7, 3, 9)
    assert (report.s, report.ceiling) == (1, 2)
    assert bound_report(m_f7, 3, 9, obstruction=True).exact == 0
    assert bound_report(m_f7, 7, 9).wild
    with pytest.raises(InputError):
        bound_report(m_f7, 3, 4)
