import csv
import io
import json
import shutil
import subprocess
import sys

import pytest

from istk.cli import BENCH_COLUMNS, main


@pytest.fixture
def files(tmp_path):
    (tmp_path / "p4.txt").write_text("1 2\n2 3\n3 4\n")
    (tmp_path / "star4.txt").write_text("1 2\n1 3\n1 4\n")
    (tmp_path / "k3.col").write_text("c triangle\np edge 3 3\ne 1 2\ne 1 3\ne 2 3\n")
    (tmp_path / "split.txt").write_text("1 2\n3 4\n")
    (tmp_path / "bad.txt").write_text("1 2 3\n")
    return tmp_path


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_solve_yes(files, capsys):
    code, out, _ = run(capsys, "solve", "--input", files / "p4.txt", "--k", 2)
    lines = out.split("\n")
    assert code == 0 and lines[0] == "YES" and set(lines[1:4]) == {"1 2", "2 3", "3 4"}


def test_solve_no_json(files, capsys):
    code, out, _ = run(capsys, "solve", "--input", files / "star4.txt", "--k", 2, "--json")
    d = json.loads(out)
    assert code == 0 and d["schema"] == 1 and d["decision"] is False and d["opt"] == 1


def test_oracle(files, capsys):
    assert run(capsys, "oracle", "--input", files / "star4.txt")[:2] == (0, "opt = 1\n")
    assert run(capsys, "oracle", "--input", files / "k3.col", "--format", "dimacs")[1] == "opt = 1\n"


def test_kernelize_json_bound(capsys):
    code, out, _ = run(capsys, "kernelize", "--gen", "gnp:n=200,m=600", "--k", 20, "--seed", 7, "--json")
    d = json.loads(out)
    assert code == 0 and d["schema"] == 1
    if d["variant"] == "kernel":
        assert d["kernel_n"] <= 2 * d["k_prime"] - 2


def test_kernelize_kernel_roundtrips(tmp_path, capsys):
    trace = tmp_path / "trace.json"
    code, out, _ = run(capsys, "kernelize", "--gen", "caterpillar:8,3", "--k", 12, "--json", "--trace", trace)
    d = json.loads(out)
    assert code == 0 and d["variant"] == "kernel" and d["kernel_n"] <= 2 * d["k_prime"] - 2
    (tmp_path / "kernel.txt").write_text(d["kernel"])
    code, out, _ = run(capsys, "kernelize", "--input", tmp_path / "kernel.txt", "--json")
    assert code == 0 and json.loads(out)["n"] == d["kernel_n"]
    t = json.loads(trace.read_text())
    assert t["schema"] == 1 and len(t["trace"]) == d["reductions"] > 0


def test_solve_then_verify(files, capsys):
    cert = files / "cert.txt"
    assert run(capsys, "solve", "--gen", "gnp:n=12,m=16", "--seed", 3, "--k", 5, "--cert", cert)[0] == 0
    if cert.exists():
        code, out, _ = run(capsys, "verify", "--gen", "gnp:n=12,m=16", "--seed", 3, "--k", 5, "--cert", cert)
        assert code == 0 and out.startswith("ACCEPT")
    (files / "c.txt").write_text("1 2\n1 3\n1 4\n")
    code, out, _ = run(capsys, "verify", "--input", files / "star4.txt", "--k", 2, "--cert", files / "c.txt")
    assert code == 1 and out.startswith("REJECT")


@pytest.mark.parametrize(
    "argv,code",
    [
        (["oracle", "--input", "{d}/missing.txt"], 2),
        (["oracle", "--input", "{d}/split.txt"], 2),
        (["oracle", "--input", "{d}/bad.txt"], 2),
        (["oracle", "--gen", "nope:3"], 2),
        (["oracle"], 2),
        (["solve", "--input", "{d}/p4.txt", "--k", "-1"], 3),
        (["oracle", "--gen", "complete:20"], 4),
        (["solve", "--gen", "gnp:n=60,m=61", "--k", "58", "--cap", "8"], 4),
    ],
)
def test_exit_codes(files, capsys, argv, code):
    assert main([a.format(d=files) for a in argv]) == code


def test_env_cap(files, capsys, monkeypatch):
    monkeypatch.setenv("ISTK_CAP", "3")
    assert main(["oracle", "--input", str(files / "p4.txt")]) == 4
    assert main(["oracle", "--input", str(files / "p4.txt"), "--cap", "4"]) == 0


def test_bench_csv(capsys):
    code, out, _ = run(capsys, "bench", "--gen", "gnp:n=120,m=130", "--count", 3, "--k", 70)
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 3 and list(rows[0]) == BENCH_COLUMNS
    for r in rows:
        if r["kernel_n_2k"]:
            assert int(r["kernel_n_2k"]) <= 2 * 70 - 2


def test_bench_parallel_is_ordered(capsys):
    argv = ["bench", "--gen", "gnp:n=80,m=90", "--count", 4, "--k", 45, "--json"]
    seq = json.loads(run(capsys, *argv)[1])["rows"]
    par = json.loads(run(capsys, *argv, "--jobs", 2)[1])["rows"]
    strip = lambda rows: [{k: v for k, v in r.items() if k != "wall_time"} for r in rows]
    assert strip(seq) == strip(par)


def test_selftest_small(capsys):
    code, out, _ = run(capsys, "selftest", "--max-n", 5, "--random", 20, "--json")
    d = json.loads(out)
    assert code == 0 and d["passed"] and d["graphs"] == 6 + 21 + 20


@pytest.mark.skipif(shutil.which("istk") is None, reason="console script not installed")
def test_console_script(files):
    res = subprocess.run(["istk", "oracle", "--input", str(files / "star4.txt")], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.strip() == "opt = 1"


def test_module_entry(files):
    res = subprocess.run([sys.executable, "-m", "istk.cli", "oracle", "--input", str(files / "p4.txt")],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.strip() == "opt = 2"
