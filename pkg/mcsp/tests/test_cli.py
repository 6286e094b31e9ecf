import os
import sys
from pathlib import Path

sys.path.append(str(Path(__file__).resolve().parents[2]))

import pandas as pd
import pytest

from mcsp.bench.datasets import read_instance_file, write_instance_file
from mcsp.cli import main


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch):
    for name in list(os.environ):
        if name.startswith("MCSP_"):
            monkeypatch.delenv(name, raising=False)


@pytest.fixture
def instance_dir(tmp_path):
    directory = tmp_path / "instances"
    directory.mkdir()
    write_instance_file(directory / "a.txt", "ababcab", "abcabab")
    write_instance_file(directory / "b.txt", "abad", "adab")
    return directory


@pytest.fixture
def small_config(tmp_path):
    path = tmp_path / "mcsp.env"
    path.write_text("mmas.n_ants = 5\nmmas.max_time_secs = 5\n", encoding="utf-8")
    return path


def test_gen_writes_fixed_length_instances(tmp_path, capsys):
    out_dir = tmp_path / "gen"
    assert main(["gen", "--length", "12", "--count", "3", "--seed", "4", "--out", str(out_dir)]) == 0
    files = sorted(out_dir.glob("*.txt"))
    assert [path.name for path in files] == ["len12-01.txt", "len12-02.txt", "len12-03.txt"]
    x, y = read_instance_file(files[0])
    assert len(x) == 12
    assert "Wrote 3 instance file(s)" in capsys.readouterr().out


def test_gen_from_fasta(tmp_path):
    fasta = tmp_path / "seqs.fasta"
    fasta.write_text(">r1\nACGTACGT\n>r2\nACG\n", encoding="utf-8")
    out_dir = tmp_path / "gen"
    assert main(["gen", "--fasta", str(fasta), "--min-length", "5", "--out", str(out_dir)]) == 0
    assert [path.name for path in out_dir.glob("*.txt")] == ["r1.txt"]


def test_solve_greedy_and_exact(instance_dir, capsys):
    assert main(["solve", str(instance_dir / "a.txt"), "--algo", "greedy"]) == 0
    assert "cost 2 (greedy)" in capsys.readouterr().out
    assert main(["solve", str(instance_dir / "b.txt"), "--algo", "exact"]) == 0
    assert "cost 2 (exact)" in capsys.readouterr().out


def test_solve_mmas_writes_telemetry(instance_dir, small_config, tmp_path):
    telemetry = tmp_path / "telemetry.csv"
    code = main(
        [
            "solve",
            str(instance_dir / "b.txt"),
            "--config",
            str(small_config),
            "--max-iters",
            "3",
            "--seed",
            "1",
            "--telemetry",
            str(telemetry),
        ]
    )
    assert code == 0
    assert len(pd.read_csv(telemetry)) == 3


def test_bench_writes_summary_runs_and_ablation(instance_dir, small_config, tmp_path):
    summary = tmp_path / "results.csv"
    runs = tmp_path / "runs.csv"
    ablation = tmp_path / "ablation.csv"
    code = main(
        [
            "bench",
            str(instance_dir / "*.txt"),
            "--algos",
            "greedy",
            "mmas",
            "mmas-static",
            "--repeats",
            "2",
            "--max-iters",
            "3",
            "--config",
            str(small_config),
            "--out",
            str(summary),
            "--runs-out",
            str(runs),
            "--ablation",
            str(ablation),
            "--no-timing",
        ]
    )
    assert code == 0
    frame = pd.read_csv(summary)
    assert len(frame) == 6
    assert "time" not in frame.columns
    assert len(pd.read_csv(ablation)) == 2
    assert len(pd.read_csv(runs)) == 2 * (1 + 2 + 2)


def test_bench_without_instances_fails(tmp_path, capsys):
    assert main(["bench", str(tmp_path / "none-*.txt")]) == 2
    assert "no instance files match" in capsys.readouterr().out
    assert main(["bench"]) == 2


@pytest.mark.slow
def test_tune_writes_ranking(tmp_path):
    directory = tmp_path / "tiny"
    directory.mkdir()
    write_instance_file(directory / "t.txt", "abad", "adab")
    out = tmp_path / "tuning.csv"
    code = main(
        ["tune", str(directory / "*.txt"), "--repeats", "1", "--max-iters", "1", "--out", str(out)]
    )
    assert code == 0
    ranking = pd.read_csv(out)
    assert len(ranking) == 243
    assert ranking["rank"].tolist()[:3] == [1, 2, 3]
