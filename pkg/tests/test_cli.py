import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from quatsys.cli import EXIT_FAILED, EXIT_OK, EXIT_PARSE, EXIT_PRECONDITION, main
from quatsys.textio import parse_quat, render_quat

ROOT = Path(__file__).resolve().parents[1]
FIXTURES = ROOT / "fixtures"
GOLDEN = Path(__file__).parent / "golden"
REGEN = os.environ.get("QUATSYS_REGEN_GOLDEN") == "1"

# (golden name, argv relative to the fixtures directory)
CASES = [
    ("det_minor_row1", ["det", "hermitian_minor.json", "--anchor", "row:1"]),
    ("det_minor_col2", ["det", "hermitian_minor.json", "--anchor", "col:2"]),
    ("det_singular", ["det", "singular_hermitian.json"]),
    ("ddet_similarity", ["det", "normal_similarity.json", "--anchor", "ddet"]),
    ("inv_minor", ["inv", "hermitian_minor.json"]),
    ("solve_minor_right", ["solve", "hermitian_minor.json"]),
    ("solve_minor_left", ["solve", "hermitian_minor.json", "--side", "left", "--method", "general"]),
    ("drazin_singular", ["drazin", "singular_hermitian.json"]),
    ("eig_normal", ["eig-normal", "normal_similarity.json"]),
    ("eig_normal_similarity", ["eig-normal", "normal_similarity.json", "--similarity"]),
    ("exp_minor", ["exp", "hermitian_minor.json", "--t", "1/2"]),
    ("lqds_solve_singular", ["lqds-solve", "singular_system.json"]),
    ("lqds_verify_singular", ["lqds-verify", "singular_system.json"]),
    ("lqds_solve_ramp", ["lqds-solve", "ramp_system.json"]),
    ("lqds_solve_ramp_exact", ["lqds-solve", "ramp_system.json", "--backend", "exact"]),
    ("lqds_verify_ramp", ["lqds-verify", "ramp_system.json"]),
]


def run(argv, capsys):
    cwd = os.getcwd()
    os.chdir(FIXTURES)
    try:
        code = main(argv)
    finally:
        os.chdir(cwd)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def fields(text):
    return dict(line.split(" = ", 1) for line in text.splitlines())


@pytest.mark.parametrize("name, argv", CASES, ids=[c[0] for c in CASES])
def test_golden_output(name, argv, capsys):
    code, out, err = run(argv, capsys)
    assert code == EXIT_OK, err
    path = GOLDEN / f"{name}.txt"
    if REGEN:
        GOLDEN.mkdir(exist_ok=True)
        path.write_text(out)
    assert out == path.read_text()


def test_minor_value_through_row_anchor(capsys):
    _, out, _ = run(["det", "hermitian_minor.json", "--anchor", "row:1"], capsys)
    assert fields(out)["value"] == "1"


def test_drazin_index_and_rank(capsys):
    _, out, _ = run(["drazin", "singular_hermitian.json"], capsys)
    f = fields(out)
    assert (f["index"], f["rank"], f["principal_minor_sum"]) == ("1", "2", "4")


def test_normal_example_through_cli(capsys):
    _, out, _ = run(["eig-normal", "normal_similarity.json", "--similarity"], capsys)
    f = fields(out)
    assert f["gram_charpoly"] == "x^3 - 13*x^2 + 32*x - 20"
    assert f["gram_eigenvalues"] == "10, 2, 1"
    assert (f["similar_check"], f["expected"]) == ("ok", "match")


def test_singular_problem_through_cli(capsys):
    _, out, _ = run(["lqds-solve", "singular_system.json"], capsys)
    f = fields(out)
    assert f["coefficient[0]"] == "1/2j, -1/2i - 1/2k, 1/2k"
    assert f["coefficient[1]"] == "-1/2 + 1/2j, 0, 1/2i - 1/2k"
    assert f["homogeneous"] == "none"


def test_ramp_problem_through_cli(capsys):
    code, out, _ = run(["lqds-verify", "ramp_system.json"], capsys)
    f = fields(out)
    assert code == EXIT_OK
    assert float(f["residual"]) <= 1e-6
    assert float(f["expected.max_deviation"]) <= 1e-2


def test_oracle_through_cli(capsys):
    code, out, _ = run(["oracle", "ramp_system.json"], capsys)
    f = fields(out)
    assert code == EXIT_OK and f["status"] == "ok"
    assert float(f["max_deviation"]) <= 1e-6


def test_exact_ramp_coefficients_are_short_decimals(capsys):
    _, out, _ = run(["lqds-solve", "ramp_system.json", "--backend", "exact"], capsys)
    f = fields(out)
    assert f["coefficient[1]"].startswith("12/5 + 7/10i + 6/5j + 1/10k")


def write(tmp_path, doc, name="doc.json"):
    path = tmp_path / name
    path.write_text(doc if isinstance(doc, str) else json.dumps(doc))
    return str(path)


@pytest.mark.parametrize("doc", [
    "{not json",
    {"A": [["1", "i+i"]]},
    {"A": [["1", "2q"]]},
    {"B": [["1"]]},
])
def test_parse_errors_exit_3(tmp_path, capsys, doc):
    code, out, err = run(["det", write(tmp_path, doc)], capsys)
    assert code == EXIT_PARSE and out == "" and err.startswith("error:")


def test_missing_file_is_a_parse_error(capsys):
    assert run(["det", "no_such_file.json"], capsys)[0] == EXIT_PARSE


@pytest.mark.parametrize("command, doc", [
    ("inv", {"A": [["1", "k"], ["-k", "1"]]}),
    ("solve", {"A": [["1", "k"], ["-k", "1"]], "b": ["1", "0"]}),
    ("eig-normal", {"A": [["1", "i"], ["0", "1"]]}),
    ("eig-normal", {"A": [["0", "1"], ["-1", "0"]], "T": [["1", "1"], ["1", "1"]]}),
])
def test_precondition_errors_exit_2(tmp_path, capsys, command, doc):
    argv = [command, write(tmp_path, doc)] + (["--similarity"] if "T" in doc else [])
    code, out, _ = run(argv, capsys)
    assert code == EXIT_PRECONDITION and out == ""


def test_non_hermitian_request_exits_2(tmp_path, capsys):
    path = write(tmp_path, {"A": [["1", "i"], ["0", "1"]]})
    assert run(["inv", path, "--method", "hermitian"], capsys)[0] == EXIT_PRECONDITION


def test_shape_mismatch_exits_2(tmp_path, capsys):
    path = write(tmp_path, {"A": [["1", "0"], ["0", "1"]], "b": ["1"]})
    assert run(["solve", path], capsys)[0] == EXIT_PRECONDITION


def test_failed_verification_exits_1(tmp_path, capsys):
    doc = json.loads((FIXTURES / "singular_system.json").read_text())
    doc["expected"]["coefficients"][0][0] = "1"
    code, out, _ = run(["lqds-verify", write(tmp_path, doc)], capsys)
    assert code == EXIT_FAILED
    assert fields(out)["expected"] == "mismatch"


def _literals(node):
    if isinstance(node, str):
        yield node
    elif isinstance(node, list):
        for item in node:
            yield from _literals(item)
    elif isinstance(node, dict):
        for key, value in node.items():
            if key not in ("side", "backend"):
                yield from _literals(value)


@pytest.mark.parametrize("path", sorted(FIXTURES.glob("*.json")), ids=lambda p: p.name)
def test_fixture_literals_round_trip(path):
    literals = list(_literals(json.loads(path.read_text())))
    assert literals
    for text in literals:
        assert render_quat(parse_quat(text)) == text


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "quatsys", "det", "hermitian_minor.json", "--anchor", "row:1"],
                          cwd=FIXTURES, capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout == (GOLDEN / "det_minor_row1.txt").read_text()
