import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ncp.errors import InputError
from ncp.groupext import (
    all_fibers_cyclic,
    beta,
    commutator,
    d4,
    ext_build,
    ext_inv,
    ext_mul,
    ext_order,
    ext_pow,
    fiber,
    fiber_is_cyclic,
    gamma,
    invariant_line,
    iter_extensions,
    prop32_scan,
    q8,
    verify_lemma_33,
    verify_lemma_34,
    verify_lemma_35,
)


def test_q8_has_cyclic_fibers_over_every_involution():
    E = q8()
    assert E.order == 8
    for x in [(1, 0), (0, 1), (1, 1)]:
        assert fiber_is_cyclic(E, x)
        assert len(fiber(E, x)) == 4
        assert gamma(E, x) == 1
    assert all_fibers_cyclic(E)


def test_d4_reflection_fiber_is_klein():
    E = d4()
    assert not fiber_is_cyclic(E, (1, 0))
    assert fiber_is_cyclic(E, (0, 1))
    assert not fiber_is_cyclic(E, (1, 1))
    assert gamma(E, (1, 0)) == 0
    assert not all_fibers_cyclic(E)


def test_trivial_fiber_is_the_kernel():
    E = ext_build(2, 3, (1, 1), (0, 0))
    assert fiber_is_cyclic(E, (0, 0))
    assert len(fiber(E, (0, 0))) == 8


def test_split_extension_has_no_cyclic_fibers():
    E = ext_build(2, 1, (1, 1), (0, 0))
    assert all(gamma(E, x) == 0 for x in E.B.torsion())
    assert not any(fiber_is_cyclic(E, x) for x in E.B.elements() if x != (0, 0))


def test_q8_commutator_is_central():
    E = q8()
    i, j = E.section((1, 0)), E.section((0, 1))
    assert commutator(E, i, j) == E.central(1)
    assert beta(E, (1, 0), (0, 1)) == 1
    assert ext_order(E, i) == 4
    assert ext_order(E, E.central(1)) == 2
    assert ext_mul(E, i, ext_inv(E, i)) == E.identity()
    assert ext_pow(E, i, 4) == E.identity()
    assert ext_pow(E, i, -1) == ext_inv(E, i)


def test_ext_build_validation():
    with pytest.raises(InputError):
        ext_build(2, 1, (1, 1), (1,))
    with pytest.raises(InputError):
        ext_build(2, 1, (1, 1), (0, 0), [[1, 0], [0, 0]])
    with pytest.raises(InputError):
        ext_build(2, 2, (1, 1), (0, 0), {(0, 1): 1})
    with pytest.raises(InputError):
        ext_build(2, 1, (0, 1), (0, 0))


extension_data = st.builds(
    lambda t1, t2, c: ext_build(2, 2, (2, 1), (t1, t2), {(0, 1): 2 * c}),
    st.integers(0, 3),
    st.integers(0, 1),
    st.integers(0, 1),
)


@given(extension_data, st.data())
def test_multiplication_is_associative(E, data):
    elements = E.elements()
    g, h, k = (data.draw(st.sampled_from(elements)) for _ in range(3))
    assert ext_mul(E, ext_mul(E, g, h), k) == ext_mul(E, g, ext_mul(E, h, k))
    assert commutator(E, E.central(1), g) == E.identity()


def test_commutator_pairing_on_named_groups():
    for E in (q8(), d4(), ext_build(3, 1, (1, 1), (1, 0), {(0, 1): 1})):
        assert all(verify_lemma_33(E).values())
    assert all(verify_lemma_33(q8(), random.Random(1), samples=16).values())


def test_fiber_and_gamma_criteria_on_q8():
    E = q8()
    assert all(verify_lemma_34(E, x) for x in [(1, 0), (0, 1), (1, 1)])
    report = verify_lemma_35(E)
    assert report["cyclic_fibers_match"] and report["consistent"]
    assert not report["gamma_homomorphism"] and not report["criterion"]


def test_gamma_needs_torsion():
    E = ext_build(2, 1, (2, 1), (1, 0))
    with pytest.raises(InputError):
        gamma(E, (1, 0))


def test_beta_cocycle_mutation_breaks_the_criterion(monkeypatch):
    E = ext_build(2, 1, (2, 1), (1, 0))
    assert verify_lemma_35(E)["consistent"]
    monkeypatch.setenv("NCP_MUTATIONS", "beta-cocycle")
    assert not verify_lemma_35(E)["consistent"]


def test_enumeration_is_deduplicated():
    data = list(iter_extensions(2, 1, (2, 2)))
    # t_i in Z/2 and c_12 in Z/2
    assert len(data) == 8
    assert q8() in data and d4() in data


def test_scan_for_two_finds_only_quaternion_type_groups():
    result = prop32_scan(2, 2, (4, 4))
    assert not result.counterexamples
    assert q8() in result.hits
    assert all(E.p == 2 and E.kernel_order == 2 for E in result.hits)


def test_scan_for_three_finds_nothing():
    result = prop32_scan(3, 1, (3, 3, 3))
    assert result.hits == [] and result.counterexamples == []
    assert result.examined > 0 and result.pruned > 0


@pytest.mark.parametrize("p", [3, 5, 7])
def test_invariant_lines(p):
    assert invariant_line(p, [[[1, 0], [0, 1]]]) == (1, 0)
    assert invariant_line(p, [[[1, 1], [0, 1]]]) == (1, 0)
    assert invariant_line(p, [[[0, 1], [1, 0]]]) == (1, 1)


def test_invariant_line_input_checks():
    with pytest.raises(InputError):
        invariant_line(3, [[[0, 0], [0, 0]]])
    with pytest.raises(InputError):
        invariant_line(3, [[[1, 1], [0, 1]], [[1, 0], [1, 1]]])
