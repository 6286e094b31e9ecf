"""Command line: ``python -m mcsp {gen,solve,bench,tune}``."""

from __future__ import annotations

import argparse
import glob
import time
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from mcsp.bench import (
    ALGORITHMS,
    LENGTH_GROUPS,
    InstanceSpec,
    fasta_instances,
    file_instance,
    generate_instance,
    generate_instances,
    load_fasta,
    run_benchmark,
    run_tuning,
    write_ablation_series,
    write_instance_file,
)
from mcsp.blocks import validate_common_partition
from mcsp.config import load_settings
from mcsp.exact import exact_solution
from mcsp.greedy import greedy_solution
from mcsp.mmas import solve


def _add_settings_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", type=str, default=None, help="flat key = value settings file")
    parser.add_argument("--seed", type=int, default=None, help="root random seed")
    parser.add_argument("--max-iters", type=int, default=None, help="iteration cap per MMAS run")
    parser.add_argument("--time", type=float, default=None, help="wall-clock budget per MMAS run (s)")
    parser.add_argument("--workers", type=int, default=None, help="threads for ant constructions")


def _add_fasta_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--fasta", type=str, default=None, help="FASTA file of real sequences")
    parser.add_argument("--min-length", type=int, default=None, help="skip shorter FASTA records")
    parser.add_argument("--max-length", type=int, default=None, help="skip longer FASTA records")
    parser.add_argument("--limit", type=int, default=None, help="keep the first N FASTA records")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mcsp", description="Minimum common string partition toolkit")
    commands = parser.add_subparsers(dest="command", required=True)

    gen = commands.add_parser("gen", help="write instance files")
    gen.add_argument("--group", choices=sorted(LENGTH_GROUPS), default="short", help="length group")
    gen.add_argument("--length", type=int, default=None, help="fixed length instead of a group")
    gen.add_argument("--count", type=int, default=10, help="number of instances")
    gen.add_argument("--seed", type=int, default=0, help="dataset seed")
    gen.add_argument("--out", type=str, default="instances", help="output directory")
    _add_fasta_arguments(gen)

    solve_cmd = commands.add_parser("solve", help="solve one instance file")
    solve_cmd.add_argument("instance", help="instance file (X then Y)")
    solve_cmd.add_argument("--algo", choices=["greedy", "mmas", "exact"], default="mmas")
    solve_cmd.add_argument("--telemetry", type=str, default=None, help="per-iteration CSV (mmas)")
    _add_settings_arguments(solve_cmd)

    bench = commands.add_parser("bench", help="benchmark instance files")
    bench.add_argument("instances", nargs="?", default=None, help="instance file glob")
    bench.add_argument("--algos", nargs="+", choices=list(ALGORITHMS), default=["greedy", "mmas"])
    bench.add_argument("--repeats", type=int, default=None, help="runs per stochastic algorithm")
    bench.add_argument("--out", type=str, default="results.csv", help="summary CSV")
    bench.add_argument("--runs-out", type=str, default=None, help="per-run CSV")
    bench.add_argument("--ablation", type=str, default=None, help="with/without dynamic heuristic series")
    bench.add_argument("--no-timing", action="store_true", help="omit timing columns")
    bench.add_argument("--bench-workers", type=int, default=None, help="instances benchmarked in parallel")
    _add_settings_arguments(bench)
    _add_fasta_arguments(bench)

    tune = commands.add_parser("tune", help="rank parameter permutations")
    tune.add_argument("instances", help="instance file glob")
    tune.add_argument("--repeats", type=int, default=4, help="runs per permutation and instance")
    tune.add_argument("--out", type=str, default="tuning.csv", help="ranking CSV")
    _add_settings_arguments(tune)

    return parser


def _settings_overrides(args: argparse.Namespace) -> Dict[str, Any]:
    overrides: Dict[str, Any] = {
        "mmas.seed": args.seed,
        "mmas.max_iters": args.max_iters,
        "mmas.max_time_secs": args.time,
        "mmas.workers": args.workers,
    }
    if getattr(args, "repeats", None) is not None and args.command == "bench":
        overrides["bench.repeats"] = args.repeats
    if getattr(args, "no_timing", False):
        overrides["bench.include_timing"] = False
    if getattr(args, "bench_workers", None) is not None:
        overrides["bench.workers"] = args.bench_workers
    return overrides


def _file_instances(pattern: str) -> List[InstanceSpec]:
    paths = sorted(glob.glob(pattern))
    if not paths:
        raise ValueError(f"no instance files match '{pattern}'")
    return [file_instance(path) for path in paths]


def _fasta_specs(args: argparse.Namespace, seed: int) -> List[InstanceSpec]:
    records = load_fasta(args.fasta, args.min_length, args.max_length, args.limit)
    return fasta_instances(records, seed)


def _cmd_gen(args: argparse.Namespace) -> int:
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    if args.fasta:
        specs = _fasta_specs(args, args.seed)
    elif args.length is not None:
        specs = [
            InstanceSpec(id=f"len{args.length}-{k + 1:02d}", source="generated", length=args.length, seed=args.seed + k)
            for k in range(args.count)
        ]
    else:
        specs = generate_instances(args.group, args.count, args.seed)

    for spec in specs:
        x, y = generate_instance(spec)
        write_instance_file(out_dir / f"{spec.id}.txt", x, y)
    print(f"✅ Wrote {len(specs)} instance file(s) to {out_dir}")
    return 0


def _cmd_solve(args: argparse.Namespace) -> int:
    settings = load_settings(args.config, _settings_overrides(args))
    spec = file_instance(args.instance)
    x, y = generate_instance(spec)

    started = time.time()
    if args.algo == "greedy":
        solution = greedy_solution(x, y, verbose=True)
    elif args.algo == "exact":
        solution = exact_solution(x, y, settings.exact_limit)
    else:
        result = solve(x, y, settings.mmas_params())
        solution = result.best
        if args.telemetry:
            result.write_telemetry(args.telemetry)
            print(f"   📊 Telemetry written to {args.telemetry}")

    check = validate_common_partition(solution.common_partition, x, y)
    print(f"[✓] {spec.id}: cost {solution.cost} ({args.algo}) in {time.time() - started:.2f}s")
    print("   " + " | ".join(solution.common_partition.substrings(x)))
    if not check:
        print(f"❌ Invalid partition: {check.reason}")
        return 1
    return 0


def _cmd_bench(args: argparse.Namespace) -> int:
    settings = load_settings(args.config, _settings_overrides(args))
    params = settings.mmas_params()
    if args.fasta:
        specs = _fasta_specs(args, params.seed)
    elif args.instances:
        specs = _file_instances(args.instances)
    else:
        raise ValueError("bench needs an instance glob or --fasta")

    bench_settings = settings.bench_settings()
    report = run_benchmark(
        specs,
        args.algos,
        params,
        bench_settings,
        csv_path=args.out,
        runs_csv_path=args.runs_out,
    )
    if args.ablation:
        write_ablation_series(report.records, args.ablation)
    print(f"[✓] Summary written to {args.out}")
    return 0 if not report.failures else 1


def _cmd_tune(args: argparse.Namespace) -> int:
    settings = load_settings(args.config, _settings_overrides(args))
    report = run_tuning(_file_instances(args.instances), settings.mmas_params(), repeats=args.repeats)
    report.ranking().to_csv(args.out, index=False)
    print(f"[✓] Ranking written to {args.out}")
    return 0


COMMANDS = {
    "gen": _cmd_gen,
    "solve": _cmd_solve,
    "bench": _cmd_bench,
    "tune": _cmd_tune,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except ValueError as exc:
        print(f"❌ {type(exc).__name__}: {exc}")
        return 2


__all__ = ["build_parser", "main"]
