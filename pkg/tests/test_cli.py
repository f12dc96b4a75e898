import json
import subprocess
import sys

import pytest

from oax.cli import main

from conftest import FIXTURES


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def fx(name):
    return FIXTURES / name


def test_conflict_bsb(capsys):
    code, out, _ = run(capsys, "conflict", fx("bsb.json"), fx("museum.json"))
    assert code == 1
    assert "oax:absoluteSizeWidth is the sole conflicting axis" in out


def test_conflict_json_is_deterministic(capsys):
    args = ("conflict", fx("bsb.json"), fx("museum.json"), "--external", fx("side-verdicts.json"), "--format", "json")
    _, first, _ = run(capsys, *args)
    _, second, _ = run(capsys, *args)
    assert first == second
    d = json.loads(first)
    assert d["verdict"] == "Conflict" and d["sole_conflicting_axis"] == "oax:absoluteSizeWidth"


def test_conflict_unknown_and_plot(capsys, tmp_path):
    png = tmp_path / "boxes.png"
    code, out, _ = run(capsys, "conflict", fx("either-or.json"), fx("museum.json"), "--plot", png)
    assert code == 3
    assert png.read_bytes()[:4] == b"\x89PNG"


def test_subsume_and_refine(capsys):
    assert run(capsys, "subsume", fx("downstream.json"), fx("upstream.json"))[0] == 0
    assert run(capsys, "subsume", fx("upstream.json"), fx("downstream.json"))[0] == 1
    code, out, _ = run(capsys, "refine", fx("upstream.json"), fx("downstream-wider.json"))
    assert code == 1 and "RefinementViolation" in out


def test_request(capsys):
    code, out, _ = run(capsys, "request", fx("bsb.json"), "width=1200,height=400")
    assert code == 1 and "VIOLATED" in out
    code, out, _ = run(capsys, "request", fx("bsb.json"), "width=600,height=400", "--format", "json")
    assert code == 3 and json.loads(out)["unevaluated"] == ["odrl:purpose", "odrl:spatial"]
    assert run(capsys, "request", fx("upstream.json"), "width=600,height=400")[0] == 0


def test_request_context_file(capsys, tmp_path):
    ctx = tmp_path / "ctx.json"
    ctx.write_text('{"width": 600, "height": 400}')
    assert run(capsys, "request", fx("upstream.json"), ctx)[0] == 0


def test_lint_and_validate(capsys):
    code, out, _ = run(capsys, "lint", fx("contradiction.json"))
    assert code == 1 and "SelfContradiction" in out
    code, out, _ = run(capsys, "lint", fx("upstream.json"))
    assert code == 0 and "IncompleteCoverage" in out
    assert run(capsys, "validate", fx("out-of-bounds.json"))[0] == 1
    assert run(capsys, "validate", fx("upstream.json"))[:2] == (0, "no findings\n")


def test_parse_errors_exit_2(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"uid": ')
    code, _, err = run(capsys, "validate", bad)
    assert code == 2 and "line 1" in err
    assert run(capsys, "conflict", bad, fx("bsb.json"))[0] == 2
    assert run(capsys, "lint", tmp_path / "absent.json")[0] == 2


def test_emit(capsys, tmp_path):
    out_file = tmp_path / "p.p"
    code, _, _ = run(capsys, "emit", fx("downstream.json"), fx("upstream.json"), "--relation", "subsume",
                     "-o", out_file, "--axioms", tmp_path / "ax")
    assert code == 0
    assert "conjecture" in out_file.read_text()
    assert (tmp_path / "ax" / "AXIS000-0.ax").is_file()
    code, out, _ = run(capsys, "emit", fx("downstream.json"), fx("upstream.json"), "--format", "smt")
    assert code == 0 and "(set-info :status sat)" in out
    code, _, err = run(capsys, "emit", fx("bsb.json"), fx("museum.json"))
    assert code == 3 and "non-axis" in err


def test_bench_generate_and_run(capsys, tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    code, out, _ = run(capsys, "bench", "generate", "--format", "json")
    assert code == 0 and json.loads(out)["total"] == 117
    monkeypatch.setenv("PATH", str(tmp_path / "nothing"))
    monkeypatch.delenv("OAX_VAMPIRE", raising=False)
    monkeypatch.delenv("OAX_Z3", raising=False)
    code, out, err = run(capsys, "bench", "run", "--report", "rep")
    assert code == 2 and "skipped" in err
    assert sorted(p.name for p in (tmp_path / "rep").iterdir()) == [
        "concordance.csv", "concordance.json", "concordance.png", "concordance.txt"]
    code, _, err = run(capsys, "bench", "run", "--provers", "vampire")
    assert code == 2 and "vampire" in err
    assert run(capsys, "bench", "run", "--provers", "e")[0] == 2
    assert run(capsys, "bench", "run", "--dir", "elsewhere")[0] == 2


def test_profile_dump(capsys):
    code, out, _ = run(capsys, "profile", "--dump", "--format", "json", "--discrete", "width")
    rows = json.loads(out)["operands"]
    assert code == 0 and len(rows) == 15
    assert rows[0]["density"] == "IntegerDiscrete"


def test_bad_config(capsys, tmp_path):
    cfg = tmp_path / "oax.toml"
    cfg.write_text("nonsense = 1\n")
    code, _, err = run(capsys, "profile", "--config", cfg)
    assert code == 2 and "config error" in err


def test_usage_error_exits_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["conflict"])
    assert exc.value.code == 2


def test_console_script():
    proc = subprocess.run([sys.executable, "-m", "oax.cli", "--version"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.startswith("oax ")


def test_simple_cases(capsys, tmp_path):
    assert run(capsys, "validate", fx("bsb.json"))[0] == 0
    assert run(capsys, "conflict", fx("upstream.json"), fx("upstream.json"))[0] == 0
    code, out, _ = run(capsys, "request", fx("bsb.json"), "width=400,height=400")
    assert out.startswith("satisfied: Yes")
    empty = tmp_path / "empty.json"
    empty.write_text('{"uid": "e", "permission": [{"action": "display"}]}')
    assert run(capsys, "request", empty, "")[0] == 0
    width_only = tmp_path / "w.json"
    width_only.write_text('{"uid": "w", "permission": [{"action": "reproduce", "constraint": ['
                          '{"leftOperand": "oax:absoluteSizeWidth", "operator": "lteq", "rightOperand": 700}]}]}')
    assert run(capsys, "conflict", width_only, fx("upstream.json"))[0] == 3
