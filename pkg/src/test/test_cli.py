import json

import pytest

from ncp.cli import EXIT_CODES, _json_arg, _pairs, build_event, build_parser, main
from ncp.errors import InputError

M_3_M7 = '{"base": "Q", "n": 2, "radicands": [3, -7]}'


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, json.loads(out.out), out.err


def test_field_verb(capsys):
    code, body, _ = run_cli(capsys, "field", "--ext", M_3_M7)
    assert code == 0
    assert body["degree"] == 4


def test_global_flags_before_the_verb(capsys):
    code, body, _ = run_cli(capsys, "--ext", M_3_M7, "local-degree", "--places", "5,11")
    assert code == 0
    assert [d["local_degree"] for d in body["local_data"]] == [2, 1]


def test_extension_from_a_file(capsys, tmp_path):
    path = tmp_path / "m.json"
    path.write_text(M_3_M7)
    code, body, _ = run_cli(capsys, "isolated", "--ext", str(path))
    assert code == 0
    assert body["isolated"] == []


def test_failed_check_exits_1(capsys):
    code, body, _ = run_cli(capsys, "paper", "ex41", "--l", "3", "--q", "5")
    assert code == 1
    assert body["verdict"] is False


def test_bad_input_exits_2(capsys):
    code, body, _ = run_cli(capsys, "paper", "ex43", "--p", "3", "--q", "5", "--a", "2")
    assert code == 2
    assert body["type"] == "InputError"


def test_exhausted_search_exits_3(capsys):
    code, body, _ = run_cli(
        capsys, "search", "frobenius", "--ext", M_3_M7, "--sigma", "1,1", "--count", "5", "--bound", "20"
    )
    assert code == 3
    assert body["exhausted"] is True


def test_unexpected_error_exits_4(capsys, monkeypatch):
    def crash(*args):
        raise RuntimeError("boom")

    monkeypatch.setattr("handlers.paper.paper.run_ex41", crash)
    code, body, _ = run_cli(capsys, "paper", "ex41", "--l", "3", "--q", "11")
    assert code == 4
    assert body == {"error": "boom", "type": "RuntimeError"}


def test_malformed_degrees_exit_2(capsys):
    code, body, _ = run_cli(
        capsys, "brauer", "split", "--class", '{"invariants": {"2": "1/2", "3": "1/2"}}', "--degrees", "2=x"
    )
    assert code == 2
    assert "2=x" in body["error"]


def test_split_with_degrees(capsys):
    code, body, _ = run_cli(
        capsys, "brauer", "split", "--class", '{"invariants": {"2": "1/2", "3": "1/2"}}', "--degrees", "2=2,3=4"
    )
    assert code == 0
    assert body["splits"] is True


def test_cover_check_and_pretty_table(capsys):
    code, body, err = run_cli(
        capsys, "cover", "check", "--ext", '{"radicands": [11]}', "--m", "2", "--places", "3", "--pretty"
    )
    assert code == 0
    assert body["passed"]
    assert "ok    d_3(2) | [L:M]_3" in err


def test_bound_report_verb(capsys):
    code, body, _ = run_cli(capsys, "bound-report", "--ext", M_3_M7, "--p", "2")
    assert code == 0
    assert body["extension"] == "Q(sqrt(3), sqrt(-7))"


def test_suite_verb(capsys):
    code, body, _ = run_cli(capsys, "suite", "--only", "qz", "--sizes", "random=5", "--seed", "3")
    assert code == 0
    assert body["seed"] == 3
    assert body["sizes"]["random"] == 5


def test_groupext_verify_verb(capsys):
    group = '{"p": 2, "a": 1, "b": [1, 1], "t": [1, 1], "c": [[0, 1], [0, 0]]}'
    code, body, _ = run_cli(capsys, "groupext", "verify", "--group", group)
    assert code == 0
    assert body["order"] == 8


def test_unknown_verb_is_an_argparse_error():
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 2


def test_event_building():
    argv = ["brauer", "index", "--class", '{"invariants": {"2": "1/2"}}', "--chi-order", "4"]
    args = build_parser().parse_args(argv)
    event = build_event(args)
    assert event == {"action": "index", "class": {"invariants": {"2": "1/2"}}, "chi_order": 4}


def test_pairs():
    assert _pairs("7=2, 3=4") == {"7": 2, "3": 4}
    assert _pairs("") is None
    with pytest.raises(InputError):
        _pairs("7")


def test_json_arg():
    assert _json_arg('[1, 2]') == [1, 2]
    assert _json_arg(None) is None
    with pytest.raises(InputError):
        _json_arg("{broken")
    with pytest.raises(InputError):
        _json_arg("/nonexistent/ext.json")


def test_exit_codes():
    assert EXIT_CODES == {200: 0, 422: 1, 400: 2, 504: 3, 500: 4}
    assert len(set(EXIT_CODES.values())) == len(EXIT_CODES)
