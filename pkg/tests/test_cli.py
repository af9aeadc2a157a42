"""CLI: deterministic output, exit codes, and each subcommand."""

import json

import pytest

from factorstruct.cli import EXIT_NEGATIVE, EXIT_OK, EXIT_USAGE, main


def write_json(path, obj):
    path.write_text(json.dumps(obj))
    return str(path)


@pytest.fixture
def veronese3_spec(tmp_path):
    return write_json(tmp_path / "spec.json", {"kind": "veronese", "m": 3})


@pytest.fixture
def veronese2_spec(tmp_path):
    return write_json(tmp_path / "spec2.json", {"kind": "veronese", "m": 2})


@pytest.fixture
def cubic_points(tmp_path):
    return write_json(
        tmp_path / "pts.json", {"groups": [["1", "2", "3", "4", "5"]]}
    )


def run(capsys, argv):
    code = main(argv)
    return code, capsys.readouterr().out


def test_build_and_verify(capsys, veronese3_spec):
    code, out = run(capsys, ["build", "--spec", veronese3_spec])
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["m"] == 3 and doc["dim"] == 4 and doc["partition"] == [3]

    code, out = run(capsys, ["verify", "--spec", veronese3_spec])
    assert code == EXIT_OK
    assert json.loads(out)["passed"] is True


def test_curve_command(capsys, veronese3_spec):
    code, out = run(capsys, ["curve", "--spec", veronese3_spec, "--group", "1"])
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["degree"] == 3 and doc["slot"] == 1
    code, _ = run(capsys, ["curve", "--spec", veronese3_spec, "--group", "9"])
    assert code == EXIT_USAGE


def test_facets_command_agrees_and_is_deterministic(
    capsys, veronese3_spec, cubic_points
):
    argv = [
        "facets",
        "--spec",
        veronese3_spec,
        "--points",
        cubic_points,
        "--method",
        "both",
    ]
    code1, out1 = run(capsys, argv)
    code2, out2 = run(capsys, argv)
    assert code1 == code2 == EXIT_OK
    assert out1 == out2  # byte-identical
    doc = json.loads(out1)
    assert doc["agree"] is True
    assert len(doc["gale"]) == len(doc["bruteforce"]) == 6
    incident = {tuple(c["incident"]) for c in doc["gale"]}
    assert incident == {
        (0, 1, 2),
        (0, 1, 4),
        (0, 2, 3),
        (0, 3, 4),
        (1, 2, 4),
        (2, 3, 4),
    }


def test_cone_and_polytope_commands(capsys, veronese3_spec, cubic_points):
    code, out = run(
        capsys, ["cone", "--spec", veronese3_spec, "--points", cubic_points]
    )
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["pointed"] is True and len(doc["generators"]) == 5

    code, out = run(
        capsys,
        [
            "polytope",
            "--spec",
            veronese3_spec,
            "--points",
            cubic_points,
            "--beta",
            "225,-55,15,-5",
        ],
    )
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["simplicial"] is True and len(doc["vertices"]) == 6

    # beta on the boundary: negative outcome, exit 2
    code, out = run(
        capsys,
        [
            "polytope",
            "--spec",
            veronese3_spec,
            "--points",
            cubic_points,
            "--beta",
            "1,0,0,0",
        ],
    )
    assert code == EXIT_NEGATIVE
    assert json.loads(out)["error"] == "BetaNotInterior"


def test_delzant_command_exit_codes(capsys, veronese2_spec, tmp_path):
    pts = write_json(
        tmp_path / "dz.json", {"xs": ["0", "1", "2"], "scales": ["1", "1", "1"]}
    )
    code, out = run(
        capsys,
        ["delzant", "--spec", veronese2_spec, "--points", pts, "--beta", "5,-3,3"],
    )
    assert code == EXIT_OK
    assert json.loads(out)["status"] == "Delzant"

    code, out = run(
        capsys,
        ["delzant", "--spec", veronese2_spec, "--points", pts, "--beta", "5,-3,6"],
    )
    assert code == EXIT_OK
    assert json.loads(out)["status"] == "RationalDelzant"

    code, out = run(
        capsys,
        ["delzant", "--spec", veronese2_spec, "--points", pts, "--beta", "1,-1,2"],
    )
    assert code == EXIT_NEGATIVE
    assert json.loads(out)["status"] == "BetaNotInterior"


def test_usage_errors_exit_3(capsys, tmp_path, veronese3_spec):
    code, out = run(
        capsys,
        ["build", "--spec", write_json(tmp_path / "bad.json", {"kind": "nope"})],
    )
    assert code == EXIT_USAGE
    assert json.loads(out)["error"] == "InputError"

    missing = str(tmp_path / "does-not-exist.json")
    code, _ = run(capsys, ["build", "--spec", missing])
    assert code == EXIT_USAGE

    bad = tmp_path / "notjson.json"
    bad.write_text("{")
    code, _ = run(capsys, ["build", "--spec", str(bad)])
    assert code == EXIT_USAGE

    code = main(["frobnicate", "--spec", veronese3_spec])
    capsys.readouterr()
    assert code == EXIT_USAGE


def test_deficient_cone_is_negative_outcome(capsys, veronese2_spec, tmp_path):
    pts = write_json(tmp_path / "few.json", {"groups": [["0", "1"]]})
    code, out = run(
        capsys, ["facets", "--spec", veronese2_spec, "--points", pts]
    )
    assert code == EXIT_NEGATIVE
    assert json.loads(out)["error"] == "NotFullDimensional"


def test_product_sv_spec_kinds(capsys, tmp_path):
    spec = write_json(
        tmp_path / "sv.json", {"kind": "product_sv", "partition": [2, 1]}
    )
    code, out = run(capsys, ["build", "--spec", spec])
    assert code == EXIT_OK
    assert json.loads(out)["partition"] == [2, 1]

    spec = write_json(
        tmp_path / "std.json",
        {"kind": "standard_sv", "partition": [1, 1], "gammas": [["0", "1"], ["1", "0"]]},
    )
    code, out = run(capsys, ["build", "--spec", spec])
    assert code == EXIT_OK
    assert json.loads(out)["m"] == 2
