"""Command-line front end: flags, exit codes, JSON schema, determinism."""

import json

import pytest
from click.testing import CliRunner

from cooperad_lab.cli import (RunConfig, field_label, main, parse_field,
                              presentation_from_dict)
from cooperad_lab.exactlinalg import FieldSpec
from cooperad_lab.instances import PresentationError

GOOD_BIALGEBRA = {
    "kind": "bialgebra",
    "name": "demo_Z2",
    "dim": 2,
    "basis": ["e", "g"],
    "mult": [[[0, 0, 1], [1, 1, 1]], [[0, 1, 1], [1, 0, 1]]],
    "unit": [1, 0],
    "comult": [[[0, 0, 1]], [[1, 1, 1]]],
    "counit": [1, 1],
}

GOOD_FROBENIUS = {
    "kind": "frobenius",
    "dim": 2,
    "basis": ["1", "x"],
    "mult": [[[0, 0, 1], [1, 1, 1]], [[0, 1, 1]]],
    "unit": [1, 0],
    "frobenius_functional": [0, 1],
}


@pytest.fixture()
def runner():
    return CliRunner()


def _write(tmp_path, payload, name="inst.json"):
    path = tmp_path / name
    path.write_text(json.dumps(payload), encoding="ascii")
    return str(path)


# -- parsing helpers -------------------------------------------------------

def test_parse_field():
    assert parse_field("Q").kind == "rationals"
    assert parse_field("F7").characteristic == 7
    for bad in ("F4", "R", "F", "Q7"):
        with pytest.raises(Exception):
            parse_field(bad)
    assert field_label(FieldSpec.rationals()) == "Q"
    assert field_label(FieldSpec.prime_field(2)) == "F2"


def test_presentation_from_dict_rational_strings():
    data = dict(GOOD_BIALGEBRA)
    data["counit"] = ["2/2", 1]
    P = presentation_from_dict(data, FieldSpec.rationals())
    assert P.counit == {0: 1, 1: 1}


def test_presentation_from_dict_rejects_bad_shapes():
    field = FieldSpec.rationals()
    for mutate in (
            {"kind": "nope"},
            {"dim": 3},
            {"basis": []},
            {"mult": [[], [], []]},
            {"unit": [1]},
            {"comult": "x"},
            {"counit": [1, None]},
            {"mult": [[[0, 0]], []]},
    ):
        data = dict(GOOD_BIALGEBRA)
        data.update(mutate)
        with pytest.raises(PresentationError):
            presentation_from_dict(data, field)


def test_run_config_defaults():
    config = RunConfig(source="x", presentation=None,
                       field=FieldSpec.rationals(), max_degree=2,
                       suites=("chain",))
    assert not config.fail_fast and not config.as_json


# -- list ------------------------------------------------------------------

def test_list_text(runner):
    res = runner.invoke(main, ["list"])
    assert res.exit_code == 0
    for name in ("Q_Z2", "mat2", "group_frobenius_Z2"):
        assert name in res.output
    assert "suites:" in res.output


def test_list_json(runner):
    res = runner.invoke(main, ["list", "--json"])
    assert res.exit_code == 0
    payload = json.loads(res.output)
    assert len(payload["builtins"]) == 7
    assert {s["name"] for s in payload["suites"]} == \
        {"cooperad", "chain", "homology", "all"}


def test_unknown_flag_exits_2(runner):
    assert runner.invoke(main, ["list", "--nope"]).exit_code == 2


# -- check -----------------------------------------------------------------

def test_check_builtin_all_suites(runner):
    res = runner.invoke(main, ["check", "--builtin", "Q_Z2", "--field", "Q",
                               "--max-degree", "2", "--suite", "all"])
    assert res.exit_code == 0, res.output
    assert "suite cooperad" in res.output
    assert "suite chain identities" in res.output
    assert "homology dimensions by degree: [1, 0, 0]" in res.output


def test_check_json_schema_and_determinism(runner, tmp_path):
    args = ["check", "--builtin", "F2_Z2", "--max-degree", "2",
            "--suite", "chain", "--json"]
    first = runner.invoke(main, args)
    second = runner.invoke(main, args)
    assert first.exit_code == 0
    assert first.output == second.output
    payload = json.loads(first.output)
    assert set(payload) == {"instance", "field", "N", "suites"}
    assert payload["instance"] == "F2_Z2"
    assert payload["field"] == "F2"
    assert payload["N"] == 2
    for suite in payload["suites"]:
        assert set(suite) >= {"name", "pass", "fail", "skip", "witnesses"}
        assert suite["fail"] == 0


def test_check_requires_exactly_one_source(runner, tmp_path):
    assert runner.invoke(main, ["check"]).exit_code == 2
    path = _write(tmp_path, GOOD_BIALGEBRA)
    res = runner.invoke(main, ["check", "--builtin", "Q_Z2",
                               "--input", path])
    assert res.exit_code == 2


def test_check_malformed_json_exits_2(runner, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"kind": "bialgebra", bad', encoding="ascii")
    res = runner.invoke(main, ["check", "--input", str(path)])
    assert res.exit_code == 2
    assert "malformed JSON" in res.output


def test_check_missing_file_exits_2(runner, tmp_path):
    res = runner.invoke(main, ["check", "--input",
                               str(tmp_path / "none.json")])
    assert res.exit_code == 2


def test_check_bad_schema_exits_2(runner, tmp_path):
    data = dict(GOOD_BIALGEBRA)
    data["unit"] = [1]
    res = runner.invoke(main, ["check", "--input", _write(tmp_path, data)])
    assert res.exit_code == 2
    assert "invalid presentation" in res.output


def test_check_bad_field_exits_2(runner):
    res = runner.invoke(main, ["check", "--builtin", "Q_Z2",
                               "--field", "F4"])
    assert res.exit_code == 2


def test_check_custom_inputs_pass(runner, tmp_path):
    for payload in (GOOD_BIALGEBRA, GOOD_FROBENIUS):
        path = _write(tmp_path, payload)
        res = runner.invoke(main, ["check", "--input", path,
                                   "--max-degree", "2", "--suite", "chain"])
        assert res.exit_code == 0, res.output


def test_check_broken_presentation_exits_1(runner, tmp_path):
    data = dict(GOOD_BIALGEBRA)
    data["comult"] = [[[0, 0, 1]], [[1, 0, 1]]]
    res = runner.invoke(main, ["check", "--input", _write(tmp_path, data),
                               "--max-degree", "2"])
    assert res.exit_code == 1
    assert "witness" in res.output


def test_check_fail_fast_skips_later_suites(runner, tmp_path):
    data = dict(GOOD_BIALGEBRA)
    data["comult"] = [[[0, 0, 1]], [[1, 0, 1]]]
    path = _write(tmp_path, data)
    slow = runner.invoke(main, ["check", "--input", path,
                                "--max-degree", "2"])
    fast = runner.invoke(main, ["check", "--input", path,
                                "--max-degree", "2", "--fail-fast"])
    assert fast.exit_code == 1
    assert "suite cooperad" in slow.output
    assert "suite cooperad" not in fast.output


def test_check_field_override(runner):
    res = runner.invoke(main, ["check", "--builtin", "Q_Z2", "--field",
                               "F3", "--max-degree", "2", "--suite",
                               "cooperad", "--json"])
    assert res.exit_code == 0
    assert json.loads(res.output)["field"] == "F3"


# -- homology ----------------------------------------------------------------

def test_homology_dims_text(runner):
    res = runner.invoke(main, ["homology", "--builtin", "dual_numbers",
                               "--max-degree", "3"])
    assert res.exit_code == 0
    assert "homology dimensions by degree: [2, 1, 1, 1]" in res.output


def test_homology_structure_json(runner):
    args = ["homology", "--builtin", "Q_Z2", "--max-degree", "1",
            "--structure", "--json"]
    first = runner.invoke(main, args)
    assert first.exit_code == 0
    payload = json.loads(first.output)
    assert payload["dims"] == [1, 0]
    assert payload["basis"]["0"] == ["z0"]
    assert payload["cup"] == [{"component": [0, 0], "degree": 0,
                               "entries": [["z0", "z0⊗z0", "1"]]}]
    assert payload["cobracket"] == []
    assert first.output == runner.invoke(main, args).output


def test_homology_structure_text(runner):
    res = runner.invoke(main, ["homology", "--builtin", "F2_Z2",
                               "--max-degree", "2", "--structure"])
    assert res.exit_code == 0
    assert "degree 2: z2 -> z0⊗z2 + z1⊗z1 + z2⊗z0" \
        in res.output
    assert "transferred cobracket" in res.output
    assert "(all components vanish)" in res.output


def test_homology_broken_presentation_exits_1(runner, tmp_path):
    data = dict(GOOD_BIALGEBRA)
    data["comult"] = [[[0, 0, 1]], [[1, 0, 1]]]
    res = runner.invoke(main, ["homology", "--input",
                               _write(tmp_path, data)])
    assert res.exit_code == 1
