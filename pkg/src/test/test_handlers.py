import json

import pytest

from handlers.brauer import brauer
from handlers.cover import cover
from handlers.field import field
from handlers.groupext import groupext
from handlers.paper import paper
from handlers.search import search
from handlers.suite import suite

M_3_M7 = {"base": "Q", "n": 2, "radicands": [3, -7]}
M_M1_2 = {"base": "Q", "n": 2, "radicands": [-1, 2]}
M_11 = {"base": "Q", "n": 2, "radicands": [11]}
M_11_M3 = {"base": "Q", "n": 2, "radicands": [11, -3]}
Q8 = {"p": 2, "a": 1, "b": [1, 1], "t": [1, 1], "c": [[0, 1], [0, 0]]}


def invoke(handler, **event):
    response = handler(event, None)
    return response["statusCode"], json.loads(response["body"])


def primes_of(places):
    return [P["p"] for P in places]


# field


def test_field_description():
    status, body = invoke(field.handler, ext=M_3_M7)
    assert status == 200
    assert body["degree"] == 4
    assert body["orders"] == [2, 2]
    assert primes_of(body["ramified_places"]) == [2, 3, 7]
    assert "2" in body["roots_of_unity"]
    assert body["real"] is False


def test_local_degree_at_named_places():
    status, body = invoke(field.handler, action="local-degree", ext=M_3_M7, places="5,11,7")
    assert status == 200
    assert [d["local_degree"] for d in body["local_data"]] == [2, 1, 4]
    assert body["local_data"][2]["frobenius"] is None


def test_local_degree_defaults_to_ramified_places():
    status, body = invoke(field.handler, action="local-degree", ext=M_3_M7)
    assert status == 200
    assert [d["place"]["p"] for d in body["local_data"]] == [2, 3, 7]


def test_isolated_places():
    status, body = invoke(field.handler, action="isolated", ext=M_M1_2)
    assert status == 200
    assert body["isolated"] == [{"place": {"type": "prime", "p": 2}, "p": 2}]
    assert body["reports"][0]["gap"] == 1


@pytest.mark.parametrize(
    "event",
    [
        {},
        {"ext": {"radicands": [2, 8]}},
        {"ext": {"base": "Fq", "radicands": ["t"]}},
        {"ext": M_3_M7, "action": "nope"},
        {"ext": M_3_M7, "action": "local-degree", "places": "t"},
    ],
)
def test_field_rejects_bad_requests(event):
    status, body = invoke(field.handler, **event)
    assert status == 400
    assert body["error"]


def test_json_body_is_merged():
    status, body = invoke(field.handler, body=json.dumps({"ext": M_11}))
    assert status == 200
    assert body["degree"] == 2
    status, _ = invoke(field.handler, body="{not json")
    assert status == 400


# brauer


def test_class_index_with_fiber_index():
    klass = {"invariants": {"2": "1/8", "3": "7/8"}}
    status, body = invoke(brauer.handler, action="index", ext=M_11_M3, chi_order=4, **{"class": klass})
    assert status == 200
    assert body["index"] == 8
    assert body["restricted_index"] == 2
    assert body["fiber_index"] == 8


def test_invalid_class_is_a_bad_request():
    status, body = invoke(brauer.handler, action="index", **{"class": {"invariants": {"2": "1/2"}}})
    assert status == 400
    assert body["type"] == "InvalidClassError"


def test_construct_over_the_isolated_field():
    status, body = invoke(brauer.handler, action="construct", ext=M_M1_2, m=4, places="2,3")
    assert status == 200
    assert body["class"]["invariants"] == [
        {"place": {"type": "prime", "p": 2}, "inv": "7/8"},
        {"place": {"type": "prime", "p": 3}, "inv": "1/8"},
    ]
    assert body["restricted_index"] == 4
    assert body["defects"] == []


def test_split_over_k():
    klass = {"invariants": {"2": "1/2", "3": "1/2"}}
    status, body = invoke(brauer.handler, action="split", local_degrees={"2": 2, "3": 2}, **{"class": klass})
    assert status == 200
    assert body["splits"] is True


def test_local_index_bound():
    klass = {"invariants": {"2": "1/8", "3": "7/8"}}
    status, body = invoke(brauer.handler, action="lemma21", ext=M_M1_2, p=2, **{"class": klass})
    assert status == 200
    assert body["holds"] is True


# cover


def test_cover_check_finds_a_witness():
    status, body = invoke(cover.handler, action="check", ext=M_11, m=2, places="3")
    assert status == 200
    assert body["passed"]
    assert body["witness"]["extra_radicands"] == [3]


def test_cover_check_of_a_given_failing_cover():
    status, body = invoke(cover.handler, action="check", ext=M_11, m=2, places="3", extra="2")
    assert status == 422
    assert [c["name"] for c in body["checks"] if not c["passed"]] == ["d_3(2) | [L:M]_3"]


def test_cover_check_with_induced_certificate():
    status, body = invoke(cover.handler, action="check", ext=M_11, m=4, places="5", bound=30, induce=2)
    assert status == 200
    assert body["witness"]["extra_radicands"] == [2, 5]
    assert body["induced"]["passed"]


def test_rank_two_check_needs_a_cover():
    status, _ = invoke(cover.handler, action="check", ext=M_11, condition="cor210", p=2, n=1, places="3")
    assert status == 400


def test_rank_two_cover_scan():
    status, body = invoke(cover.handler, action="scan", ext=M_11, condition="cor210", p=2, n=1, places="3", bound=20)
    assert status == 200
    assert body["condition"] == "Cor210"


def test_bound_report():
    status, body = invoke(cover.handler, action="bound-report", ext=M_3_M7, p=2)
    assert status == 200
    assert body["extension"] == "Q(sqrt(3), sqrt(-7))"
    assert body["obstruction"] is False


def test_bound_report_certifies_lower_end():
    status, body = invoke(cover.handler, action="bound-report", ext=M_11, p=2, places="5", bound=30, certify_up_to=2)
    assert status == 200
    assert body["lower"] == 2
    assert body["upper"] == "inf"
    assert [c["n"] for c in body["certified"]] == [1, 2]


def test_cover_needs_an_action():
    status, _ = invoke(cover.handler, ext=M_11, m=2)
    assert status == 400


# search


def test_s0_search():
    status, body = invoke(search.handler, action="s0", ext=M_3_M7, p=2, n=2, bound=1000)
    assert status == 200
    found = {tuple(row["sigma"]): row["place"]["p"] for row in body["places"]}
    assert found == {(0, 1): 13, (1, 0): 29}


def test_short_frobenius_search_is_exhausted():
    status, body = invoke(search.handler, action="frobenius", ext=M_3_M7, sigma="1,1", count=5, bound=20)
    assert status == 504
    assert body["exhausted"] is True
    assert primes_of(body["places"]) == [5, 17, 19]


def test_frobenius_search_with_congruence():
    status, body = invoke(
        search.handler, action="frobenius", ext=M_M1_2, sigma=[0, 0], count=3, bound=1000, congruence="8,1"
    )
    assert status == 200
    assert primes_of(body["places"]) == [17, 41, 73]


# groupext


def test_verify_q8():
    status, body = invoke(groupext.handler, action="verify", group=Q8)
    assert status == 200
    assert body["order"] == 8
    assert body["all_fibers_cyclic"] is True
    assert all(f["cyclic"] for f in body["fibers"])
    assert body["lemma35"]["consistent"] is True


def test_verify_sampled_is_seeded():
    first = invoke(groupext.handler, action="verify", group=Q8, sampled=True, seed=5)
    second = invoke(groupext.handler, action="verify", group=Q8, sampled=True, seed=5)
    assert first == second


def test_verify_with_the_cocycle_mutation(monkeypatch):
    monkeypatch.setenv("NCP_MUTATIONS", "beta-cocycle")
    status, body = invoke(groupext.handler, action="verify", group={"p": 2, "a": 1, "b": [2, 1], "t": [1, 0]})
    assert status == 422
    assert body["passed"] is False


def test_scan_small_orders():
    status, body = invoke(groupext.handler, action="scan", p=2, max_a=2, max_b="4,4")
    assert status == 200
    assert body["counterexamples"] == []
    assert Q8 in body["hits"]


def test_bad_group_datum():
    status, _ = invoke(groupext.handler, action="verify", group={"p": 2, "a": 1, "b": [1, 1]})
    assert status == 400
    status, _ = invoke(groupext.handler, action="scan", p=2, max_b="4")
    assert status == 400


# paper


def test_worked_example_passes():
    status, body = invoke(paper.handler, action="ex41", l=3, q=11)
    assert status == 200
    assert body["verdict"] is True
    assert body["parameters"]["witness"] == "{2: 1/8, 3: 7/8}"


def test_worked_example_with_failing_hypotheses():
    status, body = invoke(paper.handler, action="ex41", l=3, q=5)
    assert status == 422
    assert body["verdict"] is False


def test_worked_example_with_bad_parameters():
    status, _ = invoke(paper.handler, action="ex43", p=3, q=5, a=2)
    assert status == 400


def test_three_prime_construction():
    status, body = invoke(paper.handler, action="prop42", p=2, place="5")
    assert status == 200
    assert body["parameters"]["f_1"] == "-3"


# suite


def test_suite_subset():
    status, body = invoke(suite.handler, only="qz,legendre", sizes={"random": 10}, seed=4)
    assert status == 200
    assert list(body["batteries"]) == ["qz", "legendre"]
    assert body["seed"] == 4


def test_suite_unknown_battery():
    status, body = invoke(suite.handler, only="nope")
    assert status == 400
    assert "nope" in body["error"]
