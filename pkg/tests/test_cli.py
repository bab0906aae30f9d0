import json
import subprocess
import sys

import pytest

from rlm.frontend.cli import main

LIAR = """universe F = 1..12
relation r(m, n) := n == m and m % 2 == 0
relation s(m, n) := n == m and m % 3 == 0
classify forall_li(r, s)
classify exists_li(r, s)
"""


def test_examples_exit_zero(capsys):
    assert main(["examples"]) == 0
    out = capsys.readouterr().out
    assert "44/44 checks passed" in out or "checks passed, 0 failing" in out


def test_run_json(tmp_path, capsys):
    f = tmp_path / "liar.rl"
    f.write_text(LIAR)
    assert main(["run", str(f), "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    classes = [r["result"]["class"] for r in doc["reports"]]
    assert classes == ["Nonsense", "Indefinite"]
    assert doc["reports"][0]["result"]["absurd"] is True


def test_missing_file_and_parse_error(tmp_path, capsys):
    assert main(["run", str(tmp_path / "missing.rl")]) == 2
    bad = tmp_path / "bad.rl"
    bad.write_text("universe = 1..3")
    assert main(["run", str(bad)]) == 2
    err = capsys.readouterr().err
    assert "bad.rl:1:" in err


def test_mismatch_exits_one(tmp_path):
    f = tmp_path / "m.rl"
    f.write_text(LIAR + "classify r expect class = Absurd\n")
    assert main(["run", str(f)]) == 1


def test_runtime_error_exits_one(tmp_path, capsys):
    f = tmp_path / "z.rl"
    f.write_text("universe F = 1..3\nrelation z(m, n) := m // 0 == 1\n")
    assert main(["run", str(f)]) == 1


def test_usage_errors():
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["run", "x.rl", "--seed", "notanumber"])
    assert exc.value.code == 2


def test_laws_command(capsys):
    assert main(["laws", "--trials", "50", "--size", "5"]) == 0
    out = capsys.readouterr().out
    assert "FAIL" not in out and "de Morgan" in out
    assert main(["laws", "--trials", "0"]) == 2


def test_print_round_trip(tmp_path, capsys):
    f = tmp_path / "l.rl"
    f.write_text(LIAR)
    assert main(["print", str(f)]) == 0
    once = capsys.readouterr().out
    g = tmp_path / "l2.rl"
    g.write_text(once)
    assert main(["print", str(g)]) == 0
    assert capsys.readouterr().out == once


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "rlm", "examples"], capture_output=True, text=True)
    assert proc.returncode == 0
