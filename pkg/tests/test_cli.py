import csv
import io
import subprocess
import sys

import pytest

from lcis import cli, fast, genlb
from lcis.core import read_sequence, write_sequence
from lcis.oracle import theorem1_bound

from helpers import FIG_A, FIG_B


@pytest.fixture
def fig_files(tmp_path):
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    write_sequence(a, FIG_A)
    write_sequence(b, FIG_B)
    return str(a), str(b)


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("algo", ["fast", "dp", "brute"])
def test_run_figure(capsys, fig_files, algo):
    assert run(capsys, "run", *fig_files, "--algo", algo)[:2] == (0, "4\n")


def test_run_witness_uses_raw_values(capsys, tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    a.write_text("10 30 50 20 50 40 50\n")
    b.write_text("10 20 50 30 50 40 50\n")
    code, out, _ = run(capsys, "run", str(a), str(b), "--algo", "dp", "--witness")
    assert code == 0 and out == "4\n10 20 40 50\n"


def test_run_empty_and_errors(capsys, tmp_path):
    e = tmp_path / "e"
    e.write_text("")
    assert run(capsys, "run", str(e), str(e))[:2] == (0, "0\n")
    big = tmp_path / "big"
    write_sequence(big, range(1, 21))
    code, _, err = run(capsys, "run", str(big), str(big), "--algo", "brute")
    assert code == 2 and "capped" in err
    bad = tmp_path / "bad"
    bad.write_text("1 x 3")
    assert run(capsys, "run", str(bad), str(e))[0] == 2
    assert run(capsys, "run", str(tmp_path / "missing"), str(e))[0] == 2
    assert run(capsys, "run", str(e), str(e), "--witness")[0] == 2


def test_usage_error_from_argparse():
    with pytest.raises(SystemExit) as exc:
        cli.main(["run"])
    assert exc.value.code == 2


def test_sig(capsys, fig_files, tmp_path):
    code, out, _ = run(capsys, "sig", *fig_files, "--per-symbol")
    lines = out.split()
    assert code == 0
    per = dict(line.split(",") for line in lines[1:])
    assert per["5"] == "4" and int(lines[0]) == sum(map(int, per.values()))
    a, b = tmp_path / "x", tmp_path / "y"
    write_sequence(a, [1, 2])
    write_sequence(b, [3, 4])
    assert run(capsys, "sig", str(a), str(b))[1] == "0\n"


def tau_subtotal(capsys, tmp_path, k, variant):
    a, b = tmp_path / f"a{k}{variant}", tmp_path / f"b{k}{variant}"
    code, out, _ = run(capsys, "gen", "--family", "adversarial", "--k", str(k), "--variant", variant, str(a), str(b))
    assert code == 0 and out == f"{k * 4**k}\n"
    inst = genlb.build_padded(k, variant)
    code, out, _ = run(capsys, "sig", str(a), str(b), "--per-symbol")
    per = dict(map(int, line.split(",")) for line in out.split()[1:])
    return sum(per.get(t, 0) for t in inst.tau)


def test_sig_tau_subtotal(capsys, tmp_path):
    assert tau_subtotal(capsys, tmp_path, 3, "amended") == 192
    # the published recursion falls short of the certified count
    assert tau_subtotal(capsys, tmp_path, 3, "printed") == 120


def test_gen_files(capsys, tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    assert run(capsys, "gen", "--family", "adversarial", "--k", "1", str(a), str(b))[:2] == (0, "4\n")
    assert read_sequence(a) == [2, 3, 4, 6, 3, 5, 6]
    assert read_sequence(b) == [2, 3, 3, 6, 4, 5, 6]
    assert run(capsys, "gen", "--n", "0", str(a), str(b))[0] == 0
    assert a.read_bytes() == b"" and b.read_bytes() == b""
    first = []
    for _ in range(2):
        run(capsys, "gen", "--n", "100", "--alphabet", "9", "--seed", "5", str(a), str(b))
        first.append((a.read_bytes(), b.read_bytes()))
    assert first[0] == first[1]
    assert run(capsys, "gen", "--family", "adversarial", str(a), str(b))[0] == 2
    assert run(capsys, "gen", "--family", "adversarial", "--k", "13", str(a), str(b))[0] == 2
    assert run(capsys, "gen", str(a), str(b))[0] == 2


def test_verify_passes(capsys):
    code, out, err = run(capsys, "verify", "--max-n", "64", "--trials", "200")
    assert code == 0 and out == "" and "0 failures" in err
    code, _, err = run(capsys, "verify", "--trials", "0")
    assert code == 0 and "14 adversarial" in err
    assert run(capsys, "verify", "--max-n", "0")[0] == 2


def test_verify_catches_a_broken_build(capsys, monkeypatch):
    real = fast.lcis_fast_run

    def off_by_one(A, B, **kw):
        r = real(A, B, **kw)
        r.value += 1
        return r

    monkeypatch.setattr(fast, "lcis_fast_run", off_by_one)
    code, out, _ = run(capsys, "verify", "--max-n", "10", "--trials", "5", "--seed", "3")
    assert code == 1
    assert "FAIL trial=" in out and "seed=" in out and "brute says" in out


def test_bench_csv(capsys, tmp_path):
    path = tmp_path / "b.csv"
    code = cli.main(["bench", "--sizes", "64,256", "--families", "random,adversarial", "--algos", "fast,dp,brute", "--csv", str(path)])
    assert code == 0
    raw = path.read_bytes()
    assert b"\r" not in raw
    rows = list(csv.DictReader(io.StringIO(raw.decode())))
    assert list(rows[0].keys()) == cli.CSV_HEADER
    assert {r["algo"] for r in rows} == {"fast", "dp"}
    for r in rows:
        n, pairs, sig = int(r["n"]), int(r["match_pairs"]), int(r["sig_pairs"])
        assert 0 <= sig <= pairs and sig <= theorem1_bound(n)
        assert int(r["wall_time_ns"]) > 0
        assert (int(r["probe_count"]) >= 0) == (r["algo"] == "fast")
    by_instance = {}
    for r in rows:
        by_instance.setdefault((r["n"], r["family"]), set()).add(r["lcis"])
    assert all(len(v) == 1 for v in by_instance.values())


def test_bench_stdout_and_errors(capsys, tmp_path):
    code, out, _ = run(capsys, "bench", "--sizes", "12", "--algos", "brute,fast")
    assert code == 0 and out.splitlines()[0] == ",".join(cli.CSV_HEADER) and len(out.splitlines()) == 3
    assert run(capsys, "bench", "--sizes", "a,b")[0] == 2
    assert run(capsys, "bench", "--algos", "slow")[0] == 2
    assert run(capsys, "bench", "--alphabet", "x")[0] == 2
    assert run(capsys, "bench", "--sizes", "8", "--csv", str(tmp_path / "no" / "such" / "dir.csv"))[0] == 2


def test_console_script_smoke(fig_files):
    out = subprocess.run([sys.executable, "-m", "lcis.cli", "run", *fig_files], capture_output=True, text=True)
    assert out.returncode == 0 and out.stdout == "4\n"
