import io
import json
import subprocess
import sys

import pytest

from framedkh.cli import RunConfig, default_parallelism, main


def run(*argv):
    out = io.StringIO()
    code = main([str(a) for a in argv], out=out)
    return code, out.getvalue()


def test_compute_hopf(fixture_path):
    code, text = run("compute", fixture_path("hopf.pd"))
    assert code == 0
    lines = text.splitlines()
    assert [l.split("||")[0].strip() for l in lines[2:]] == ["6", "2", "-2", "-6"]
    assert text.count("Z") == 4


def test_compute_classical(fixture_path):
    code, text = run("compute", fixture_path("trefoil.pd"), "--classical", "--orient", fixture_path("trefoil.or"),
                     "--format", "json")
    assert code == 0
    rec = {(r["i"], r["j"]): (r["free_rank"], r["torsion"]) for r in json.loads(text)}
    assert rec[3, 7] == (0, [2]) and rec[0, 1] == (1, [])


def test_compute_classical_needs_orientation(fixture_path, capsys):
    with pytest.raises(SystemExit) as err:
        run("compute", fixture_path("trefoil.pd"), "--classical")
    assert err.value.code == 2


def test_compute_unknot_json(fixture_path):
    code, text = run("compute", fixture_path("unknot.pd"), "--format", "json")
    assert text.strip() == '[{"a":0,"b":2,"free_rank":1,"torsion":[]},{"a":0,"b":-2,"free_rank":1,"torsion":[]}]'


def test_compute_csv(fixture_path):
    code, text = run("compute", fixture_path("trefoil.pd"), "--format", "csv")
    assert text.splitlines()[0] == "a,b,free_rank,torsion" and "-3,-5,0,2" in text


def test_output_deterministic_across_parallelism(fixture_path):
    outs = {run("compute", fixture_path("torus8.pd"), "--parallel", p, "--format", f)[1]
            for p in (1, 2) for f in ("json",)}
    assert len(outs) == 1
    assert run("compute", fixture_path("torus8.pd"))[1] == run("compute", fixture_path("torus8.pd"))[1]


def test_json_matches_table(fixture_path):
    _, text = run("compute", fixture_path("trefoil.pd"), "--format", "json")
    _, table = run("compute", fixture_path("trefoil.pd"))
    cells = sum(1 for line in table.splitlines()[2:] for c in line.split("||")[1].split("|") if c.strip())
    assert cells == len(json.loads(text))


def test_torus_modes():
    code, text = run("torus", 2, "--check")
    assert code == 0 and "PASS" in text
    assert run("torus", 5, "--oracle")[1] == run("torus", 5, "--direct")[1]
    code, text = run("torus", 11)
    assert text.count("Z_2") == 5


def test_torus_rejects_zero(capsys):
    with pytest.raises(SystemExit) as err:
        run("torus", 0)
    assert err.value.code == 2
    assert "positive" in capsys.readouterr().err


def test_bracket(fixture_path):
    assert run("bracket", fixture_path("hopf.pd"))[1] == "A^6 + A^2 + A^-2 + A^-6\n"
    assert json.loads(run("bracket", fixture_path("empty.pd"), "--format", "json")[1]) == {"0": 1}


def test_les(fixture_path):
    code, text = run("les", fixture_path("trefoil.pd"), "--crossing", 0)
    assert code == 0 and "EXACT" in text and "beta" in text
    code, text = run("les", fixture_path("trefoil.pd"), "--crossing", 0, "--probe-connecting")
    assert "|degree| = 2" in text
    code, text = run("les", fixture_path("trefoil.pd"), "--crossing", 1, "--probe-connecting", "--grading", -1, -5)
    assert "|degree| = 2" in text
    code, text = run("les", fixture_path("hopf.pd"), "--crossing", 0, "--format", "json", "--probe-connecting")
    data = json.loads(text)
    assert data["exact"] and all(c["holds"] for c in data["beta"])


def test_les_bad_crossing(fixture_path, capsys):
    code, _ = run("les", fixture_path("hopf.pd"), "--crossing", 9)
    assert code == 1
    assert "out of range" in capsys.readouterr().err


def test_check(fixture_path):
    code, text = run("check", fixture_path("torus8.pd"))
    assert code == 0 and text.count("PASS") == 4
    code, text = run("check", fixture_path("corrupted.fixture"))
    assert code == 1 and text.startswith("FAIL dd=0")
    code, text = run("check", fixture_path("empty.pd"))
    assert code == 0 and "bracket 1)" in text and "FAIL" not in text


def test_parse_error_reported(tmp_path, capsys):
    bad = tmp_path / "bad.pd"
    bad.write_text("X 1 2 3\n")
    code, _ = run("compute", bad)
    assert code == 1
    assert "line 1" in capsys.readouterr().err


def test_dump_round_trips(fixture_path, tmp_path):
    code, text = run("dump", fixture_path("trefoil.pd"))
    f = tmp_path / "t.fixture"
    f.write_text(text)
    code, out = run("check", f)
    assert code == 0 and out == "PASS dd=0\n"


def test_parallelism_fallback(monkeypatch):
    monkeypatch.setenv("KH_THREADS", "3")
    assert default_parallelism() == 3
    monkeypatch.delenv("KH_THREADS")
    assert default_parallelism() >= 1
    with pytest.raises(ValueError):
        RunConfig("compute", ["x"], parallel=0).validate()


def test_console_script(fixture_path):
    res = subprocess.run([sys.executable, "-m", "framedkh.cli", "bracket", str(fixture_path("trefoil.pd"))],
                         capture_output=True, text=True, check=True)
    assert res.stdout == "A^7 + A^3 + A^-1 - A^-9\n"
