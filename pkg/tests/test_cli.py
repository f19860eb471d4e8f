import io
import json
import subprocess
import sys

import pytest

import corpus
from hopflab import cli, formats, locality


def run(argv, stdin_text=None, monkeypatch=None):
    out = io.StringIO()
    if stdin_text is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin_text))
    code = cli.main(argv, stdout=out)
    return code, out.getvalue()


@pytest.fixture
def b_file(tmp_path):
    path = tmp_path / "b.hsc"
    assert cli.main(["example", "B", "--p", "2", "--sigma", "0", "-o", str(path)]) == 0
    return path


def test_example_b_then_theorem_a(b_file):
    code, out = run(["verify", "theorem-a", str(b_file), "--json"])
    assert code == 0
    doc = json.loads(out)
    assert doc["schema"] == cli.JSON_SCHEMA
    assert doc["data"]["counterexample_flag"] is True
    assert doc["data"]["dim"] == 8


def test_heisenberg_pipe_to_duality(monkeypatch, capsys):
    assert cli.main(["example", "heisenberg", "--p", "3"]) == 0
    text = capsys.readouterr().out
    code, out = run(["verify", "duality"], stdin_text=text, monkeypatch=monkeypatch)
    assert code == 0 and "PASS" in out and "FAIL" not in out


def test_injected_locality_discrepancy(tmp_path, monkeypatch):
    path = tmp_path / "d.hsc"
    formats.save(corpus.build("dual", "tpoly", 2, 2), path)
    assert run(["verify", "theorem-a", str(path)])[0] == 0
    real = locality.is_local

    def lying(H):
        v = real(H)
        if H.meta.startswith("Gamma^1"):
            v = locality.LocalityVerdict(not v.is_local, None, v.chain_dims)
        return v

    monkeypatch.setattr(locality, "is_local", lying)
    code, out = run(["verify", "theorem-a", str(path), "--json"])
    assert code == 1
    failed = [c for c in json.loads(out)["reports"][0]["checks"] if not c["passed"]]
    assert failed and failed[0]["witness"]


def test_check_exit_codes(tmp_path):
    good = tmp_path / "good.hsc"
    formats.save(corpus.build("cyclic", 3, 2), good)
    assert run(["check", str(good)])[0] == 0
    bad = tmp_path / "bad.hsc"
    formats.save(corpus.fault_corpus()["antipode zeroed"], bad)
    code, out = run(["check", str(bad)])
    assert code == 1 and "witness=" in out
    trunc = tmp_path / "trunc.hsc"
    trunc.write_text(good.read_text()[:50])
    assert run(["check", str(trunc)])[0] == 2
    assert run(["check", str(tmp_path / "missing.hsc")])[0] == 2
    assert run(["frobnicate"])[0] == 2


def test_example_constraint_rejected(tmp_path):
    assert run(["example", "A", "--p", "3", "--sigma", "1", "--lambda", "1",
                "-o", str(tmp_path / "a.hsc")])[0] == 2
    assert run(["example", "cyclic-group", "--p", "3"])[0] == 2


def test_all_examples_generate(tmp_path):
    for name, extra in [("A", ["--sigma", "1", "--mu", "2"]), ("B", []), ("heisenberg", []),
                        ("witt-line", []), ("truncated-line", []), ("divided-line", []),
                        ("cyclic-group", ["4"]), ("smash-demo", [])]:
        path = tmp_path / f"{name}.hsc"
        assert cli.main(["example", name, *extra, "--p", "3", "-o", str(path)]) == 0
        assert run(["check", str(path)])[0] == 0
    pres = tmp_path / "a.hpres"
    assert cli.main(["example", "A", "--p", "2", "--presentation", "-o", str(pres)]) == 0
    assert json.loads(pres.read_text())["format"] == "hpres/1"
    assert run(["check", str(pres)])[0] == 0


def test_dual_command(tmp_path):
    src = tmp_path / "c.hsc"
    formats.save(corpus.build("cyclic", 2, 3), src)
    out = tmp_path / "d.hsc"
    assert run(["dual", str(src), "-o", str(out)])[0] == 0
    assert formats.load(out).tensors_equal(corpus.build("dual", "cyclic", 2, 3))


def test_coradical_and_series(tmp_path):
    src = tmp_path / "t.hsc"
    formats.save(corpus.build("tpoly", 2, 2), src)
    code, out = run(["coradical", str(src), "--json"])
    assert code == 0 and json.loads(out)["data"]["dims"] == [1, 3, 4]
    code, out = run(["coradical", str(src)])
    assert "H_1: 1, t, t^2" in out
    code, out = run(["series", "lower", str(src), "--json"])
    assert code == 0 and json.loads(out)["data"]["dims"] == [4, 2, 1]
    code, out = run(["series", "upper", str(src)])
    assert code == 0 and "[1, 4]" in out


def test_skipped_and_strict(tmp_path):
    src = tmp_path / "dc3.hsc"
    formats.save(corpus.build("dual", "cyclic", 2, 3), src)
    code, out = run(["verify", "pointed", str(src)])
    assert code == 0 and "skipped:" in out
    assert run(["verify", "pointed", str(src), "--strict"])[0] == 1
    code, out = run(["verify", "duality", str(tmp_path / "dc3.hsc")])
    assert code == 0 and "skipped:" in out


@pytest.mark.parametrize("what", ["corollary-b", "radical-lemmas", "factors", "pointed", "subalgebras"])
def test_verify_commands(what, tmp_path, monkeypatch):
    monkeypatch.setenv("HOPFLAB_SEED", "7")
    src = tmp_path / "h.hsc"
    formats.save(corpus.build("heisenberg", 2), src)
    code, out = run(["verify", what, str(src), "--json"])
    assert code == 0
    doc = json.loads(out)
    assert doc["exit_code"] == 0 and doc["reports"]


def test_analyze_is_deterministic(b_file):
    a = run(["analyze", str(b_file), "--json"])
    b = run(["analyze", str(b_file), "--json"])
    assert a == b and a[0] == 0
    doc = json.loads(a[1])
    assert doc["data"]["schema"] == "hopflab.analysis/1"


def test_console_script(tmp_path):
    path = tmp_path / "w.hsc"
    r = subprocess.run([sys.executable, "-m", "hopflab.cli", "example", "witt-line", "--p", "3",
                        "-o", str(path)], capture_output=True, text=True)
    assert r.returncode == 0
    r = subprocess.run([sys.executable, "-m", "hopflab.cli", "verify", "corollary-b", str(path)],
                       capture_output=True, text=True)
    assert r.returncode == 0 and "(iii) all primitives nilpotent = False" in r.stdout
