import json

from gentle_cli import main


def lines(capsys):
    return [json.loads(line) for line in capsys.readouterr().out.splitlines() if line.strip()]


def test_fixtures(capsys):
    assert main(["fixtures"]) == 0
    (record,) = lines(capsys)
    assert "ntorus1" in record["items"]
    assert record["count"] == len(record["items"])


def test_mu(capsys):
    assert main(["mu", "torus1", "β", "γ"]) == 0
    (record,) = lines(capsys)
    assert record["result"] == "-βγ"


def test_mu_text_format(capsys):
    assert main(["mu", "torus1", "γ", "δ", "--format", "text"]) == 0
    assert capsys.readouterr().out.strip() == "γ, δ -> γδ"


def test_missing_fixture_is_an_io_error(capsys):
    assert main(["validate", "no-such-dimer"]) == 2


def test_malformed_file_is_invalid_input(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text('{"format": 1, "punctures": [', encoding="utf-8")
    assert main(["validate", str(path)]) == 1


def test_structural_errors_are_invalid_input(tmp_path):
    path = tmp_path / "digon.json"
    path.write_text(json.dumps({
        "format": 1,
        "punctures": ["x", "y"],
        "arcs": [{"id": "e1", "head": "y", "tail": "x"}, {"id": "e2", "head": "x", "tail": "y"}],
        "rotation": {"x": [["e1", "tail"], ["e2", "head"]], "y": [["e2", "tail"], ["e1", "head"]]},
    }), encoding="utf-8")
    assert main(["validate", str(path)]) == 1


def test_negative_caps_are_invalid_input():
    assert main(["validate", "ntorus1", "--trunc", "-1"]) == 1


def test_zigzags(capsys):
    assert main(["zigzags", "ntorus1"]) == 0
    (record,) = lines(capsys)
    assert record["count"] == 3


def test_zigzags_of_an_arc_system_fail():
    assert main(["zigzags", "torus1"]) == 1


def test_render_writes_a_file(tmp_path, capsys):
    out = tmp_path / "q4.svg"
    assert main(["render", "q4", "dimer", "--out", str(out)]) == 0
    (record,) = lines(capsys)
    assert record["path"] == str(out)
    assert out.exists()
