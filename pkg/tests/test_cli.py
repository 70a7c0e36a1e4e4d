from __future__ import annotations

import io
import subprocess
import sys

import pytest

from kmob.cli import main, split_components


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_mobius_cubic(data_dir):
    code, text = run("mobius", str(data_dir / "cubic.poset"))
    assert code == 0
    assert text == "0\t1\nA\t1\nB\t1\nC\t-1\nD\t-1\n# support=5 nonzero=5\n"


def test_mobius_singleton_and_cycle(fixtures_dir, capsys):
    assert run("mobius", str(fixtures_dir / "singleton.poset")) == (0, "X\t1\n# support=1 nonzero=1\n")
    code, _ = run("mobius", str(fixtures_dir / "cycle.poset"))
    assert code == 2
    assert "cycle" in capsys.readouterr().err


def test_mobius_line_numbered_error(tmp_path, capsys):
    f = tmp_path / "bad.poset"
    f.write_text("elem a\nrel a b\n")
    assert run("mobius", str(f))[0] == 2
    assert "bad.poset:2: unknown label 'b'" in capsys.readouterr().err


def test_closure_cubic(data_dir):
    code, text = run("closure", str(data_dir / "cubic.universe"))
    assert code == 0
    lines = text.splitlines()
    assert [l for l in lines if l.startswith("elem")] == [f"elem {x}" for x in "0ABCD"]
    assert "rel 0 C" in lines and "rel D B" in lines
    assert lines[-6:] == ["0\t1", "A\t1", "B\t1", "C\t-1", "D\t-1", "# support=5 nonzero=5"]


def test_closure_single_seed_and_invalid(fixtures_dir, capsys, monkeypatch):
    code, text = run("closure", str(fixtures_dir / "single_seed.universe"))
    assert code == 0 and "elem X\n" in text and "elem p" not in text
    code, _ = run("closure", str(fixtures_dir / "inconsistent.universe"))
    assert code == 2
    assert "violation: component not contained: E in meet(A,B)" in capsys.readouterr().err
    monkeypatch.setenv("KMOB_CEILING", "3")
    assert run("closure", str(fixtures_dir / "../../src/kmob/data/cubic.universe"))[0] == 2


def test_kclass():
    code, text = run("kclass", "--n", "3", "--parabolic", "", "--components", "231,312")
    assert code == 0
    assert text == "123\t1\n132\t-1\n213\t-1\n231\t1\n312\t1\n# support=5 nonzero=5\n"
    assert run("kclass", "--n", "3", "--components", "321")[1].endswith("321\t1\n# support=6 nonzero=1\n")
    code, text = run("kclass", "--n", "4", "--parabolic", "1,3", "--components", "(2),(1,1)")
    assert code == 0 and text.endswith("# support=4 nonzero=3\n")
    assert "1324\t-1" in text


def test_kclass_reports_normalization():
    code, text = run("kclass", "--n", "3", "--components", "231,213")
    assert code == 0
    assert text.startswith("# normalized: dropped 213\n")


@pytest.mark.parametrize("argv", [
    ["kclass", "--n", "3", "--components", "2134"],
    ["kclass", "--n", "3", "--components", "221"],
    ["kclass", "--n", "4", "--parabolic", "1,3", "--components", "2134"],
    ["kclass", "--n", "3", "--parabolic", "5", "--components", "123"],
    ["kclass", "--n", "3", "--components", "(1)"],
    ["kclass", "--components", "12"],
    ["verify", "--n", "3"],
    ["bogus"],
    [],
])
def test_input_errors_exit_2(argv, capsys):
    assert run(*argv)[0] == 2


def test_verify_all_antichains():
    code, text = run("verify", "--n", "3", "--all-antichains")
    assert code == 0
    assert text.splitlines()[-1] == "# checked=8 passed=8 failed=0"
    assert all(l.startswith("PASS") for l in text.splitlines()[:-1])
    code, text = run("verify", "--n", "3", "--components", "231,312")
    assert code == 0 and text.startswith("PASS\t{231,312}")


def test_verify_corrupted_universe_exits_1(fixtures_dir, data_dir):
    code, text = run("verify", "--universe", str(fixtures_dir / "cubic_corrupted.universe"))
    assert code == 1
    assert text.startswith("FAIL\t{A,B}")
    assert run("verify", "--universe", str(data_dir / "cubic.universe"),
               "--all-antichains")[0] == 0


def test_split_components():
    assert split_components("231,312") == ["231", "312"]
    assert split_components("(2),(1,1)") == ["(2)", "(1,1)"]
    assert split_components("2,1,3,4,5,6,7,8,10,9;1,2,3,4,5,6,7,8,9,10") == [
        "2,1,3,4,5,6,7,8,10,9", "1,2,3,4,5,6,7,8,9,10"]


def test_deterministic_subprocess_output():
    cmd = [sys.executable, "-m", "kmob", "verify", "--n", "4", "--parabolic", "2", "--all-antichains"]
    first = subprocess.run(cmd, capture_output=True)
    second = subprocess.run(cmd, capture_output=True)
    assert first.returncode == 0
    assert first.stdout == second.stdout and first.stdout
