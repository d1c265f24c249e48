import json
from pathlib import Path

import pytest

import cli
from test_triangulation import CLOSED_SPHERE

GOLDEN_DIR = Path(__file__).resolve().parent / "golden"
GOLDEN_ARGS = {"boundary": ["--index"]}


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    assert code == cli.EXIT_OK
    return json.loads(out)


def fields(document, name):
    return next(s for s in document["sections"] if s["name"] == name)["fields"]


def table(document, name):
    return next(s for s in document["sections"] if s["name"] == name)["table"]


def test_info_figure8_text(capsys):
    code, out, _ = run(capsys, "info", "--builtin", "figure8")
    assert code == 0
    assert "tetrahedra: 2" in out
    assert "edges: 2" in out
    assert "edge degrees: (6, 6)" in out
    assert "orientable: yes" in out
    assert "dim V: 4" in out
    assert "dim W: 5" in out
    assert "torus" in out


def test_info_gieseking_json(capsys):
    document = run_json(capsys, "info", "--builtin", "gieseking")
    summary = fields(document, "triangulation")
    assert summary["tetrahedra"] == "1"
    assert summary["orientable"] is False
    assert summary["dim W"] == "2"
    cusps = table(document, "cusps")
    assert cusps["rows"][0][cusps["columns"].index("kind")] == "klein_bottle"
    assert cusps["rows"][0][cusps["columns"].index("H1")] == "Z + Z/2"


def test_info_missing_file(capsys, tmp_path):
    code, out, err = run(capsys, "info", str(tmp_path / "missing.tri"))
    assert code == cli.EXIT_INVALID
    assert out == ""
    assert "was not found" in err


def test_info_parse_error(capsys, tmp_path):
    path = tmp_path / "bad.tri"
    path.write_text("tetrahedra: 1\n0: 0 1203 | 0 2013\n", encoding="utf-8")
    code, _, err = run(capsys, "info", str(path))
    assert code == cli.EXIT_INVALID
    assert "line 2" in err


def test_info_closed_triangulation(capsys, tmp_path):
    path = tmp_path / "closed.tri"
    path.write_text(CLOSED_SPHERE, encoding="utf-8")
    code, _, err = run(capsys, "info", str(path))
    assert code == cli.EXIT_INVALID
    assert "ClosedTriangulationError" in err or "NonCuspedLink" in err


def test_info_from_file(capsys, tmp_path, figure8):
    path = tmp_path / "f8.tri"
    path.write_text(figure8.to_text(), encoding="utf-8")
    code, out, _ = run(capsys, "info", str(path))
    assert code == 0
    assert "dim W: 5" in out


def test_basis_pairing(capsys):
    document = run_json(capsys, "basis", "--builtin", "figure8")
    assert fields(document, "canonical basis")["dim V"] == "4"
    assert table(document, "phi(beta)")["rows"] == [["-2", "0"], ["0", "-2"]]
    assert table(document, "phi(alpha)")["rows"] == [["0", "0"], ["0", "0"]]


def test_basis_gieseking(capsys):
    document = run_json(capsys, "basis", "--builtin", "gieseking")
    assert len(table(document, "canonical basis")["rows"]) == 2


def test_qmatch(capsys):
    document = run_json(capsys, "qmatch", "--builtin", "figure8")
    summary = fields(document, "Q-matching system")
    assert summary["rank"] == "1"
    assert summary["nullity"] == "5"
    assert summary["row sum zero"] is True
    assert len(table(document, "Q-matching system")["rows"]) == 2


def test_enumerate_counts(capsys):
    figure8 = run_json(capsys, "enumerate", "--builtin", "figure8")
    assert fields(figure8, "fundamental solutions")["count"] == "20"
    assert fields(figure8, "fundamental solutions")["compact"] == "2"
    gieseking = run_json(capsys, "enumerate", "--builtin", "gieseking")
    assert fields(gieseking, "fundamental solutions")["count"] == "3"
    assert fields(gieseking, "fundamental solutions")["boundary route"] == "double cover"


def test_enumerate_chi_column(capsys):
    document = run_json(capsys, "enumerate", "--builtin", "figure8")
    solutions = table(document, "fundamental solutions")
    chi = solutions["columns"].index("chi")
    assert {row[chi] for row in solutions["rows"]} == {"-1"}


def test_enumerate_scale_limit(capsys):
    code, _, err = run(capsys, "enumerate", "--builtin", "figure8", "--max-columns", "4")
    assert code == cli.EXIT_INVALID
    assert "ScaleLimit" in err


def test_boundary_vector(capsys):
    document = run_json(capsys, "boundary", "--builtin", "figure8", "--vector", "1,0,0,0,0,2")
    summary = fields(document, "boundary classes")
    assert summary["gcd"] == "1"
    assert summary["compact"] is False


def test_boundary_index(capsys):
    document = run_json(capsys, "boundary", "--builtin", "figure8", "--index")
    assert fields(document, "image index") == {"index": "2", "reference index": "2"}


def test_boundary_zero_vector(capsys):
    document = run_json(capsys, "boundary", "--builtin", "figure8", "--vector", "0,0,0,0,0,0")
    summary = fields(document, "boundary classes")
    assert summary["gcd"] == "0"
    assert summary["compact"] is True


def test_boundary_not_a_solution(capsys):
    code, _, err = run(capsys, "boundary", "--builtin", "figure8", "--vector", "1,0,0,0,0,0")
    assert code == cli.EXIT_INVALID
    assert "NotASolution" in err


def test_boundary_wrong_length(capsys):
    code, _, _ = run(capsys, "boundary", "--builtin", "figure8", "--vector", "1,2")
    assert code == cli.EXIT_INVALID


def test_boundary_cusp_out_of_range(capsys):
    code, _, err = run(
        capsys, "boundary", "--builtin", "figure8", "--vector", "1,2,0,0,0,0", "--cusp", "1"
    )
    assert code == cli.EXIT_INVALID
    assert "IndexOutOfRange" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["boundary", "--builtin", "figure8"],
        ["boundary", "--builtin", "figure8", "--vector", "1,a"],
        ["info"],
        ["info", "--builtin", "trefoil"],
    ],
)
def test_usage_errors(capsys, argv):
    with pytest.raises(SystemExit) as info:
        cli.main(argv)
    assert info.value.code == 2


@pytest.mark.parametrize("command", ["info", "basis", "qmatch", "enumerate"])
@pytest.mark.parametrize("fmt", ["text", "json"])
def test_output_is_deterministic(capsys, command, fmt):
    _, first, _ = run(capsys, command, "--builtin", "gieseking", "--format", fmt)
    _, second, _ = run(capsys, command, "--builtin", "gieseking", "--format", fmt)
    assert first == second


def test_text_and_json_carry_the_same_fields(capsys):
    document = run_json(capsys, "info", "--builtin", "figure8")
    _, text, _ = run(capsys, "info", "--builtin", "figure8")
    for section in document["sections"]:
        assert f"--- {section['name']} ---" in text
        for key in section["fields"]:
            assert f"{key}: " in text
        if section["table"] is not None:
            for column in section["table"]["columns"]:
                assert column in text


def test_info_directory_path(capsys, tmp_path):
    code, out, err = run(capsys, "info", str(tmp_path))
    assert code == cli.EXIT_INVALID
    assert out == ""
    assert "could not be read" in err


def test_info_undecodable_file(capsys, tmp_path):
    path = tmp_path / "binary.tri"
    path.write_bytes(b"\xff\xfe\x00tetrahedra")
    code, _, err = run(capsys, "info", str(path))
    assert code == cli.EXIT_INVALID
    assert "could not be read" in err


@pytest.mark.parametrize("command", ["info", "basis", "qmatch", "boundary"])
@pytest.mark.parametrize("builtin", ["figure8", "gieseking"])
def test_text_matches_golden(capsys, command, builtin):
    argv = [command, "--builtin", builtin, *GOLDEN_ARGS.get(command, [])]
    code, out, _ = run(capsys, *argv)
    assert code == cli.EXIT_OK
    expected = (GOLDEN_DIR / f"{command}_{builtin}.txt").read_text(encoding="utf-8")
    assert out == expected


@pytest.mark.parametrize("command", ["info", "basis", "qmatch", "boundary"])
@pytest.mark.parametrize("builtin", ["figure8", "gieseking"])
def test_json_matches_golden(capsys, command, builtin):
    document = run_json(capsys, command, "--builtin", builtin, *GOLDEN_ARGS.get(command, []))
    expected = json.loads((GOLDEN_DIR / f"{command}_{builtin}.json").read_text(encoding="utf-8"))
    assert document == expected
