import json

import pytest

from mindegree.cli import main


@pytest.fixture(autouse=True)
def _cache(tmp_path, monkeypatch):
    monkeypatch.setenv("MINDEGREE_CACHE", str(tmp_path / "cache"))


def test_mu(capsys):
    assert main(["mu", "deg 7: (1 2 3), (1 2)(4 5 6 7)"]) == 0
    assert capsys.readouterr().out.startswith("mu = 7")


def test_mu_json_is_checkable(tmp_path, capsys):
    out = tmp_path / "c6.json"
    assert main(["mu", "C6", "--json", "--output", str(out)]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["certificate"]["mu"] == 5
    assert main(["check", str(out)]) == 0


def test_centralizer(capsys):
    assert main(["centralizer", "H7"]) == 0
    out = capsys.readouterr().out
    assert "order 4" in out and "(4 5 6 7)" in out


def test_lattice_writes_cache(tmp_path, capsys):
    assert main(["lattice", "S4"]) == 0
    assert "11 classes" in capsys.readouterr().out
    assert list((tmp_path / "cache").glob("lattice-S4-*.json"))
    assert main(["lattice", "S6", "--budget", "5"]) == 2


def test_verify(tmp_path, capsys):
    out = tmp_path / "v5.json"
    assert main(["verify", "--degree", "5", "--output", str(out)]) == 0
    assert "violations: 0" in capsys.readouterr().out
    assert main(["check", str(out)]) == 0


def test_verify_needs_deep(capsys):
    assert main(["verify", "--degree", "8"]) == 3
    assert main(["verify", "--degree", "12", "--deep"]) == 3


def test_witness10(capsys):
    assert main(["witness10"]) == 0
    assert "10 < 12: strict inequality" in capsys.readouterr().out


def test_table(capsys):
    assert main(["table", "--max-degree", "4", "--format", "csv"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "label,order,mu,in_wright_class,generators"
    assert any(line.startswith("4#2,4,4,true") for line in lines)


def test_check_rejects_single_character_change(tmp_path, capsys):
    out = tmp_path / "w.json"
    assert main(["witness10", "--output", str(out)]) == 0
    text = out.read_text()
    i = text.index('"mu":10')
    bad = tmp_path / "bad.json"
    bad.write_text(text[:i] + '"mu":11' + text[i + 7:])
    assert main(["check", str(bad)]) == 1
    assert "rejected" in capsys.readouterr().out


def test_input_errors(tmp_path, capsys):
    assert main(["mu", "S3 x"]) == 3
    assert main(["mu", "deg 3: (1 4)"]) == 3
    assert main(["check", str(tmp_path / "missing.json")]) == 3
    assert main(["nonsense"]) == 3
