import json

import pytest

from audioactive import cli
from audioactive.core import evolve


@pytest.fixture(autouse=True)
def cache(tmp_path_factory, monkeypatch):
    monkeypatch.setenv("AUDIOACTIVE_CACHE_DIR", str(tmp_path_factory.getbasetemp() / "cache"))


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_say(capsys):
    code, out, _ = run(capsys, "say", "1", "7")
    assert code == 0
    assert out.splitlines()[-1] == "1113213211"


def test_say_fixed_point(capsys):
    code, out, _ = run(capsys, "say", "22", "5", "--format", "json")
    data = json.loads(out)
    assert data["terms"] == ["22"] * 6
    assert data["ratios"][1:] == [1.0] * 5


def test_say_ratio_is_length_ratio(capsys):
    _, out, _ = run(capsys, "say", "1", "40", "--format", "json")
    ratios = json.loads(out)["ratios"]
    assert ratios[-1] == len(evolve("1", 40)) / len(evolve("1", 39))


def test_bad_literal(capsys):
    code, out, err = run(capsys, "say", "1x", "3")
    assert code == 2 and out == ""
    assert json.loads(err)["error"] == "input"


def test_bad_config(capsys):
    code, _, err = run(capsys, "cosmo", "--L", "0")
    assert code == 2
    assert json.loads(err)["error"] == "input"


def test_split(capsys):
    assert json.loads(run(capsys, "split", "22")[1]) == ["22"]
    s = evolve("1", 9)
    atoms = json.loads(run(capsys, "split", s)[1])
    assert "".join(atoms) == s
    assert max(map(len, atoms)) <= 80


def test_split_exotic_literal(capsys):
    assert json.loads(run(capsys, "split", "1(12)3")[1]) == ["1(12)", "3"]


def test_table_and_cache(capsys, tmp_path):
    code, out, _ = run(capsys, "table")
    assert code == 0
    data = json.loads(out)
    assert len(data["elements"]) == 92
    # a second call reads the cache and must say the same thing
    assert run(capsys, "table")[1] == out
    files = sorted(p.suffix for p in cli.cache_dir().iterdir())
    assert files == [".json", ".sha256"]


def test_tampered_cache_is_rederived(capsys):
    out = run(capsys, "table")[1]
    path = next(cli.cache_dir().glob("*.json"))
    path.write_text(path.read_text().replace('"22"', '"33"'))
    assert run(capsys, "table")[1] == out


def test_lambda(capsys):
    code, out, _ = run(capsys, "lambda")
    data = json.loads(out)
    assert code == 0
    assert abs(data["lambda"] - 1.303577269) < 1e-8
    assert len(data["charPoly"]) == 93


def test_abundance(capsys):
    code, out, _ = run(capsys, "abundance")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "id,string,abundance" and len(lines) == 93


def test_longevity(capsys):
    code, out, _ = run(capsys, "longevity", "22", "--format", "text")
    assert code == 0 and out == "0\n"


def test_longevity_cap(capsys):
    code, _, err = run(capsys, "longevity", "1", "--cap-days", "2")
    assert code == 3
    assert json.loads(err)["error"] == "cap"


def test_cosmo_not_proven(capsys, tmp_path):
    target = tmp_path / "cert.json"
    code, out, _ = run(capsys, "cosmo", "--generation-cap", "2", "--out", str(target))
    assert code == 3 and out == ""
    cert = json.loads(target.read_text())
    assert cert["status"] == "NOT-PROVEN" and cert["haltedAt"] is None
    assert [g["i"] for g in cert["generations"]] == [1, 2]


def test_deterministic(capsys):
    a = run(capsys, "cosmo", "--generation-cap", "3")[1]
    b = run(capsys, "cosmo", "--generation-cap", "3")[1]
    assert a == b
