import csv
import io

import pytest

from abmp.cli import main
from abmp.textio import read_instance


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_gen_writes_a_readable_file(tmp_path, capsys):
    path = tmp_path / "t.txt"
    code, _, _ = run(capsys, "gen", "tight4x4", "--out", str(path))
    assert code == 0
    assert read_instance(path).m == 4


def test_solve_worked_instance(capsys):
    code, out, _ = run(capsys, "solve", "--gen", "worked3x6", "--show-scheme")
    assert code == 0
    assert "value      73/90 = 0.811111111111111" in out
    assert "B1: " in out


def test_solve_file_with_oracle_csv(tmp_path, capsys):
    path = tmp_path / "t.txt"
    run(capsys, "gen", "tight4x4", "--out", str(path))
    code, out, _ = run(capsys, "solve", str(path), "-a", "greedy-uniform", "--cover", "adversarial", "--oracle", "--format", "csv")
    assert code == 0
    (row,) = list(csv.DictReader(io.StringIO(out)))
    assert row["instance_id"] == "t"
    assert row["value_frac"] == "3/4" and row["oracle_frac"] == "5/6" and row["ratio_frac"] == "9/10"


@pytest.mark.parametrize("alg", ["exact-scheme", "greedy-welfare", "continuous", "full-cover-best"])
def test_solve_each_algorithm(capsys, alg):
    code, out, _ = run(capsys, "solve", "--gen", "eight-ninths", "--param", "beta=5", "-a", alg, "--steps", "10", "--samples", "20")
    assert code == 0 and "value" in out


def test_bench_sweep_and_floor(capsys):
    argv = ["bench", "--gen", "tight4x4", "-a", "greedy-uniform", "--cover", "adversarial", "--oracle"]
    code, out, _ = run(capsys, *argv)
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0
    assert rows[-1]["instance_id"] == "SUMMARY" and rows[-1]["ratio_frac"] == "9/10"
    code, _, err = run(capsys, *argv, "--floor", "19/20")
    assert code == 1 and "below" in err


def test_bench_random_grid(capsys):
    code, out, _ = run(capsys, "bench", "--gen", "random", "--param", "n=2,3", "--param", "m=3", "--trials", "2", "-a", "greedy-welfare", "--oracle")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0
    assert len(rows) == 4 + 1
    assert all(float(r["ratio_dec"]) >= 0.5 for r in rows)


def test_empty_sweep_is_header_only(capsys):
    code, out, _ = run(capsys, "bench", "--gen", "tight4x4", "--trials", "0")
    assert code == 0
    assert out.splitlines() == [out.splitlines()[0]]
    assert out.startswith("instance_id,algorithm")


def test_verify_and_dq(tmp_path, capsys):
    code, out, _ = run(capsys, "verify", "dq-reduction", "--trials", "5")
    assert code == 0 and out.startswith("PASS dq-reduction")
    path = tmp_path / "w.txt"
    path.write_text("2 2 2 3 3\n")
    code, out, _ = run(capsys, "dq", str(path))
    assert code == 0
    assert "dq_max     5/18" in out and "verdict    YES" in out
    path.write_text("3 1\n")
    assert "verdict    NO" in run(capsys, "dq", str(path))[1]


def test_verify_csv_output(tmp_path, capsys):
    path = tmp_path / "v.csv"
    code, _, err = run(capsys, "verify", "submodularity", "--trials", "3", "--format", "csv", "--out", str(path))
    assert code == 0 and "PASS" in err
    assert path.read_text().startswith("instance,row,pairs_checked,ok")


@pytest.mark.parametrize(
    "argv",
    [
        ["solve", "missing.txt"],
        ["solve"],
        ["solve", "--gen", "eight-ninths"],
        ["solve", "--gen", "random", "--param", "n=2", "--param", "m=3", "--param", "distribution=dirichlet", "-a", "greedy-uniform"],
        ["dq", "missing.txt"],
        ["solve", "--gen", "random", "--param", "n=3", "--param", "m=9", "--budget", "5"],
    ],
)
def test_errors_exit_two(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err.startswith("abmp: error:")


def test_bad_cover_is_a_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["solve", "--gen", "tight4x4", "--cover", "seeded"])
    assert exc.value.code == 2
