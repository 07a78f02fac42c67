import json

import pytest

from ncp.arith import QZ
from ncp.errors import DependentRadicandsError, InputError, InvalidClassError
from ncp.functions import RationalFunction
from ncp.groupext import q8
from ncp.places import BaseField, Place
from ncp.serialize import (
    bound_to_json,
    class_to_json,
    dumps,
    ext_to_json,
    groupext_to_json,
    load_json,
    parse_class,
    parse_extension,
    parse_groupext,
    parse_place,
    parse_places,
    to_jsonable,
)
from ncp.covers import bound_report

Q = BaseField.rationals()
F7 = BaseField.function_field(7)


def test_extension_over_q():
    M = parse_extension({"base": "Q", "n": 2, "radicands": [3, -7]})
    assert str(M) == "Q(sqrt(3), sqrt(-7))"
    assert ext_to_json(M)["orders"] == [2, 2]
    with pytest.raises(DependentRadicandsError):
        parse_extension({"radicands": [2, 8]})
    with pytest.raises(InputError):
        parse_extension({"radicands": ["t"]})
    with pytest.raises(InputError):
        parse_extension([3, -7])


@pytest.mark.parametrize(
    "radicand",
    [
        "(t-1)*(t-2)",
        [["t-1", 1], [[-2, 1], 1]],
        {"const": 1, "factors": [[[-1, 1], 1], [[-2, 1], 1]]},
    ],
)
def test_function_field_radicand_forms(radicand):
    M = parse_extension({"base": "Fq", "q": 7, "n": 3, "radicands": ["t", radicand]})
    assert M.radicands[1] == RationalFunction.parse("(t-1)*(t-2)", 7)
    assert M.degree == 9


def test_places():
    assert parse_place(Q, 7) == Place.prime(7)
    assert parse_place(Q, "7") == Place.prime(7)
    assert parse_place(Q, {"type": "real"}) == Place.real()
    assert parse_place(F7, "t-2") == Place.poly((1, -2), 7)
    assert parse_place(F7, {"type": "poly", "coeffs": [-2, 1]}) == Place.poly((1, -2), 7)
    assert parse_place(F7, "inf") == Place.infinity(7)
    assert parse_places(Q, "2,3, 5") == [Place.prime(2), Place.prime(3), Place.prime(5)]


@pytest.mark.parametrize(
    "base, value",
    [(Q, "t-2"), (Q, 6), (F7, "(t-1)*(t-2)"), (F7, "real"), (Q, {"type": "torus"}), (Q, 2.5)],
)
def test_bad_places(base, value):
    with pytest.raises(InputError):
        parse_place(base, value)


def test_class_forms_agree():
    listed = parse_class(Q, {"invariants": [{"place": 2, "inv": "1/8"}, {"place": "3", "inv": "7/8"}]})
    mapped = parse_class(Q, {"invariants": {"2": "1/8", "3": "7/8"}})
    assert listed == mapped
    assert class_to_json(listed)["invariants"][1] == {"place": {"type": "prime", "p": 3}, "inv": "7/8"}
    with pytest.raises(InvalidClassError):
        parse_class(Q, {"invariants": {"2": "1/8"}})


def test_group_datum():
    datum = {"p": 2, "a": 1, "b": [1, 1], "t": [1, 1], "c": [[0, 1], [0, 0]]}
    assert parse_groupext(datum) == q8()
    assert groupext_to_json(q8()) == datum
    with pytest.raises(InputError):
        parse_groupext({"p": 2, "a": 1, "b": [1, 1]})


def test_bound_report_upper_is_inf_when_wild(m_f7):
    assert bound_to_json(bound_report(m_f7, 7, 3))["upper"] == "inf"


def test_jsonable_values():
    value = {Place.prime(2): [QZ.of(1, 8), (Place.real(),)]}
    assert to_jsonable(value) == {"2": ["1/8", ["real"]]}
    assert json.loads(dumps({"a": 1}, pretty=True)) == {"a": 1}


def test_load_json(tmp_path):
    good = tmp_path / "good.json"
    good.write_text('{"radicands": [5]}')
    assert load_json(good) == {"radicands": [5]}
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    with pytest.raises(InputError):
        load_json(bad)
    with pytest.raises(InputError):
        load_json(tmp_path / "missing.json")
