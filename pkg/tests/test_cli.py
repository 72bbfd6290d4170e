import io
import json
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest

from weylkit.cli import main

SCHEMA = json.loads((Path(__file__).parents[1] / "docs" / "cli_schema.json").read_text())

# one fixture invocation per documented subcommand
COMMANDS = [
    ["weyl", "eval", "--op", "2*x*dx + 3*y*dy", "--poly", "y^2 - x^3"],
    ["weyl", "mul", "--lhs", "dx", "--rhs", "x"],
    ["idealizer", "member", "--f", "y^2 - x^3", "--op", "2*x*dx + 3*y*dy"],
    ["idealizer", "basis", "--f", "y^2 - x^3", "--n", "2"],
    ["idealizer", "basis", "--f", "y^2 - x^3", "--n", "1", "--point", "1,1"],
    ["idealizer", "dims", "--f", "y^2 - x^3", "--max-deg", "3", "--quotient"],
    ["torsion", "dims", "--curve", "2,3", "--max-n", "6"],
    ["torsion", "dims", "--f", "y^2 - x^3", "--max-n", "3", "--point", "1,1"],
    ["torsion", "check", "--f", "y^2 - x^3", "--max-n", "5", "--filtration", "2"],
    ["torsion", "probe", "--f", "y^2 - x^3", "--n0", "0", "--m-max", "2"],
    ["curve", "dmod-basis", "--curve", "2,3", "--order", "2", "--window", "2,1"],
    ["curve", "correspond", "--curve", "2,3", "--n", "3"],
    ["curve", "preserves", "--curve", "2,3", "--op", "dt^2 - 2*t^-1*dt"],
]


def run(argv):
    out = io.StringIO()
    code = main(argv, stdout=out)
    return code, out.getvalue()


@pytest.mark.parametrize("argv", COMMANDS, ids=[" ".join(c[:2]) for c in COMMANDS])
@pytest.mark.parametrize("fmt", ["json", "csv", "text"])
def test_deterministic_and_successful(argv, fmt):
    first = run(argv + ["--format", fmt])
    second = run(argv + ["--format", fmt])
    assert first == second
    assert first[0] == 0, first[1]


@pytest.mark.parametrize("argv", COMMANDS, ids=[" ".join(c[:2]) for c in COMMANDS])
def test_json_matches_schema(argv):
    code, text = run(argv + ["--format", "json"])
    doc = json.loads(text)
    jsonschema.validate(doc, SCHEMA)
    assert doc["violations"] == []


def test_weyl_mul_text():
    assert run(["weyl", "mul", "--lhs", "dx", "--rhs", "x"]) == (0, "x*dx + 1\n")


def test_torsion_dims_csv_header():
    code, text = run(["torsion", "dims", "--curve", "2,3", "--max-n", "2", "--format", "csv"])
    lines = text.splitlines()
    assert lines[0] == "n,dim,bound"
    assert lines[1:] == ["0,1,1", "1,3,3", "2,5,6"]


def test_idealizer_dims_json():
    code, text = run(["idealizer", "dims", "--f", "y^2 - x^3", "--max-deg", "2", "--format", "json"])
    assert [r["dim"] for r in json.loads(text)["results"]] == [1, 3, 7]


@pytest.mark.parametrize(
    "argv",
    [
        ["weyl", "eval", "--op", "dx^", "--poly", "x"],
        ["torsion", "dims", "--f", "y^2 - x^3", "--curve", "2,3", "--max-n", "2"],
        ["torsion", "dims", "--f", "y^2 - x^3", "--max-n", "99"],
        ["idealizer", "dims", "--f", "7", "--max-deg", "1"],
        ["curve", "correspond", "--curve", "2,4", "--n", "1"],
        ["nonsense"],
    ],
)
def test_input_errors_exit_2(argv, capsys):
    assert run(argv)[0] == 2


def test_level_cap_from_environment(monkeypatch):
    monkeypatch.setenv("WEYLKIT_MAX_LEVEL", "3")
    assert run(["torsion", "dims", "--curve", "2,3", "--max-n", "4"])[0] == 2
    assert run(["torsion", "dims", "--curve", "2,3", "--max-n", "3"])[0] == 0


def test_corrupted_row_gives_violation_exit(corrupt_rows):
    code, text = run(["torsion", "check", "--f", "y^2 - x^3", "--max-n", "4", "--format", "json"])
    assert code == 1
    doc = json.loads(text)
    jsonschema.validate(doc, SCHEMA)
    assert {v["check"] for v in doc["violations"]} == {"independence", "leading_term"}
    again = run(["torsion", "check", "--f", "y^2 - x^3", "--max-n", "4", "--format", "json"])
    assert again == (code, text)


def test_preserves_is_a_query_not_a_violation():
    code, text = run(["curve", "preserves", "--curve", "2,3", "--op", "dt", "--format", "json"])
    assert code == 0
    (row,) = json.loads(text)["results"]
    assert row["preserves"] is False
    assert row["counterexample"] == {"exponent": 2, "lands_on": 1}


def test_out_file(tmp_path):
    target = tmp_path / "out.txt"
    assert run(["weyl", "mul", "--lhs", "dy", "--rhs", "y", "--out", str(target)])[0] == 0
    assert target.read_text() == "y*dy + 1\n"


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "weylkit", "weyl", "mul", "--lhs", "dx", "--rhs", "x"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout == "x*dx + 1\n"
