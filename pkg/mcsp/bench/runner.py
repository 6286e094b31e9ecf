"""Benchmark orchestration and CSV emission.

Every instance is solved once by greedy (the baseline), then ``repeats``
times by each requested algorithm with seeds derived from the root seed.
Per-trial failures are recorded and skipped.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Dict, List, Literal, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from mcsp.blocks import validate_common_partition
from mcsp.bench.datasets import InstanceSpec, generate_instance
from mcsp.bench.stats import DEFAULT_SIGNIFICANCE, MARK_SAME, t_test
from mcsp.exact import exact_solution
from mcsp.greedy import greedy_solution
from mcsp.heuristics import HeuristicWeights
from mcsp.mmas import MmasParams, Solution, solve


Algorithm = Literal["greedy", "mmas", "mmas-static", "exact"]

ALGORITHMS: Tuple[str, ...] = ("greedy", "mmas", "mmas-static", "exact")

SUMMARY_COLUMNS = [
    "instance",
    "algorithm",
    "runs",
    "greedy",
    "mean",
    "worst",
    "best",
    "difference",
    "stddev",
    "time",
    "t",
    "p",
    "significance",
]

RUN_COLUMNS = ["instance", "algorithm", "run", "cost", "time_to_best_secs", "baseline_cost"]

PathLike = Union[str, Path]


@dataclass
class BenchSettings:
    repeats: int = 3
    significance: float = DEFAULT_SIGNIFICANCE
    workers: int = 1
    include_timing: bool = True

    def __post_init__(self) -> None:
        if self.repeats < 1:
            raise ValueError("repeats must be a positive integer")
        if not 0 < self.significance < 1:
            raise ValueError(f"significance must lie in (0, 1), got {self.significance}")
        if self.workers < 1:
            raise ValueError("workers must be a positive integer")


@dataclass(frozen=True)
class TrialRecord:
    instance_id: str
    algorithm: str
    runs: Tuple[Tuple[int, float], ...]
    baseline_cost: int
    mean: float
    best: int
    worst: int
    stddev: float
    difference: float
    t_stat: Optional[float]
    p_value: Optional[float]
    mark: str

    @classmethod
    def from_runs(
        cls,
        instance_id: str,
        algorithm: str,
        runs: Sequence[Tuple[int, float]],
        baseline_cost: int,
        significance: float = DEFAULT_SIGNIFICANCE,
    ) -> "TrialRecord":
        if not runs:
            raise ValueError(f"{instance_id}/{algorithm}: no runs to aggregate")
        costs = np.array([cost for cost, _ in runs], dtype=float)
        mean = float(costs.mean())
        stddev = float(costs.std(ddof=1)) if costs.size > 1 else 0.0

        t_stat: Optional[float] = None
        p_value: Optional[float] = None
        mark = MARK_SAME
        if costs.size > 1:
            t_stat, p_value, mark = t_test(baseline_cost, costs, significance)

        return cls(
            instance_id=instance_id,
            algorithm=algorithm,
            runs=tuple((int(cost), float(secs)) for cost, secs in runs),
            baseline_cost=int(baseline_cost),
            mean=mean,
            best=int(costs.min()),
            worst=int(costs.max()),
            stddev=stddev,
            difference=mean - baseline_cost,
            t_stat=t_stat,
            p_value=p_value,
            mark=mark,
        )

    @property
    def mean_time_secs(self) -> float:
        return float(np.mean([secs for _, secs in self.runs]))


@dataclass(frozen=True)
class FailureRecord:
    instance_id: str
    algorithm: str
    error_type: str
    message: str


@dataclass
class BenchmarkReport:
    records: List[TrialRecord] = field(default_factory=list)
    failures: List[FailureRecord] = field(default_factory=list)


def derive_seed(root: int, *keys: int) -> int:
    return int(np.random.SeedSequence([root, *keys]).generate_state(1)[0])


def _solve_once(
    algorithm: str, x: str, y: str, params: MmasParams, seed: int
) -> Tuple[Solution, float]:
    started = time.perf_counter()
    if algorithm == "greedy":
        solution = greedy_solution(x, y)
        return solution, time.perf_counter() - started
    if algorithm == "exact":
        solution = exact_solution(x, y)
        return solution, time.perf_counter() - started

    run_params = replace(params, seed=seed, n_runs=1)
    if algorithm == "mmas-static":
        run_params = replace(run_params, weights=HeuristicWeights(a=params.weights.a or 1.0, b=0.0))
    result = solve(x, y, run_params, verbose=False)
    return result.best, result.runs[0].time_to_best_secs


def _bench_instance(
    index: int,
    spec: InstanceSpec,
    algos: Sequence[str],
    params: MmasParams,
    settings: BenchSettings,
    verbose: bool,
) -> Tuple[List[TrialRecord], List[FailureRecord]]:
    records: List[TrialRecord] = []
    failures: List[FailureRecord] = []

    try:
        x, y = generate_instance(spec)
        baseline = greedy_solution(x, y).cost
    except Exception as exc:
        if verbose:
            print(f"   ⚠️ Error preparing instance {spec.id}: {exc}")
        return records, [FailureRecord(spec.id, "greedy", type(exc).__name__, str(exc))]

    for algo_index, algorithm in enumerate(algos):
        started = time.perf_counter()
        try:
            repeats = 1 if algorithm in ("greedy", "exact") else settings.repeats
            runs: List[Tuple[int, float]] = []
            for repeat in range(repeats):
                seed = derive_seed(params.seed, index, algo_index, repeat)
                solution, secs = _solve_once(algorithm, x, y, params, seed)
                check = validate_common_partition(solution.common_partition, x, y)
                if not check:
                    raise RuntimeError(f"{algorithm} produced an invalid partition ({check.reason})")
                runs.append((solution.cost, secs))

            record = TrialRecord.from_runs(spec.id, algorithm, runs, baseline, settings.significance)
            records.append(record)
            if verbose:
                print(
                    f"   📊 {spec.id} [{algorithm}] mean {record.mean:.4f} vs greedy {baseline} "
                    f"({record.mark}) in {time.perf_counter() - started:.2f}s"
                )
        except Exception as exc:
            if verbose:
                print(f"   ⚠️ Error benchmarking {spec.id} with {algorithm}: {exc}")
            failures.append(FailureRecord(spec.id, algorithm, type(exc).__name__, str(exc)))
            continue

    return records, failures


def run_benchmark(
    instances: Sequence[InstanceSpec],
    algos: Sequence[str],
    params: Optional[MmasParams] = None,
    settings: Optional[BenchSettings] = None,
    csv_path: Optional[PathLike] = None,
    runs_csv_path: Optional[PathLike] = None,
    verbose: bool = True,
) -> BenchmarkReport:
    params = params or MmasParams()
    settings = settings or BenchSettings()
    unknown = [algo for algo in algos if algo not in ALGORITHMS]
    if unknown:
        raise ValueError(f"Unknown algorithm(s) {unknown}, expected {list(ALGORITHMS)}")

    start_time = time.time()
    if verbose:
        print(
            f"🔄 Benchmark: {len(instances)} instance(s), algorithms {list(algos)}, "
            f"{settings.repeats} repeat(s)"
        )

    def bench(item: Tuple[int, InstanceSpec]) -> Tuple[List[TrialRecord], List[FailureRecord]]:
        return _bench_instance(item[0], item[1], algos, params, settings, verbose)

    items = list(enumerate(instances))
    if settings.workers > 1:
        with ThreadPoolExecutor(max_workers=settings.workers) as pool:
            outcomes = list(pool.map(bench, items))
    else:
        outcomes = [bench(item) for item in items]

    report = BenchmarkReport()
    for records, failures in outcomes:
        report.records.extend(records)
        report.failures.extend(failures)

    if csv_path is not None:
        write_trial_csv(report.records, csv_path, settings.include_timing)
    if runs_csv_path is not None:
        write_run_csv(report.records, runs_csv_path, settings.include_timing)

    if verbose:
        print(
            f"   ✅ Benchmark complete: {len(report.records)} record(s), "
            f"{len(report.failures)} failure(s) in {time.time() - start_time:.2f}s"
        )
    return report


def _fixed(value: Optional[float]) -> str:
    if value is None:
        return ""
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return f"{value:.4f}"


def _p_value(value: Optional[float]) -> str:
    if value is None:
        return ""
    if value < 1e-4:
        return f"{value:.4e}"
    return f"{value:.4f}"


def trial_frame(records: Sequence[TrialRecord], include_timing: bool = True) -> pd.DataFrame:
    rows = [
        {
            "instance": record.instance_id,
            "algorithm": record.algorithm,
            "runs": len(record.runs),
            "greedy": record.baseline_cost,
            "mean": _fixed(record.mean),
            "worst": record.worst,
            "best": record.best,
            "difference": _fixed(record.difference),
            "stddev": _fixed(record.stddev),
            "time": _fixed(record.mean_time_secs),
            "t": _fixed(record.t_stat),
            "p": _p_value(record.p_value),
            "significance": record.mark,
        }
        for record in records
    ]
    frame = pd.DataFrame(rows, columns=SUMMARY_COLUMNS)
    if not include_timing:
        frame = frame.drop(columns=["time"])
    return frame


def write_trial_csv(records: Sequence[TrialRecord], path: PathLike, include_timing: bool = True) -> Path:
    target = Path(path)
    trial_frame(records, include_timing).to_csv(target, index=False, encoding="utf-8")
    return target


def write_run_csv(records: Sequence[TrialRecord], path: PathLike, include_timing: bool = True) -> Path:
    rows = [
        {
            "instance": record.instance_id,
            "algorithm": record.algorithm,
            "run": run_index,
            "cost": cost,
            "time_to_best_secs": secs,
            "baseline_cost": record.baseline_cost,
        }
        for record in records
        for run_index, (cost, secs) in enumerate(record.runs)
    ]
    frame = pd.DataFrame(rows, columns=RUN_COLUMNS)
    if not include_timing:
        frame = frame.drop(columns=["time_to_best_secs"])
    target = Path(path)
    frame.to_csv(target, index=False, encoding="utf-8")
    return target


def read_trial_records(
    path: PathLike, significance: float = DEFAULT_SIGNIFICANCE
) -> List[TrialRecord]:
    """Rebuild TrialRecords from a per-run CSV written by :func:`write_run_csv`."""

    frame = pd.read_csv(path, float_precision="round_trip", dtype={"instance": str, "algorithm": str})
    if "time_to_best_secs" not in frame.columns:
        frame["time_to_best_secs"] = 0.0

    records: List[TrialRecord] = []
    for (instance_id, algorithm), group in frame.groupby(["instance", "algorithm"], sort=False):
        group = group.sort_values("run")
        runs = [
            (int(cost), float(secs))
            for cost, secs in zip(group["cost"], group["time_to_best_secs"])
        ]
        records.append(
            TrialRecord.from_runs(
                str(instance_id),
                str(algorithm),
                runs,
                int(group["baseline_cost"].iloc[0]),
                significance,
            )
        )
    return records


def ablation_frame(records: Sequence[TrialRecord]) -> pd.DataFrame:
    """Mean cost per instance with and without the dynamic heuristic."""

    means: Dict[str, Dict[str, float]] = {}
    for record in records:
        if record.algorithm in ("mmas", "mmas-static"):
            means.setdefault(record.instance_id, {})[record.algorithm] = record.mean

    paired = [(instance_id, pair) for instance_id, pair in means.items() if len(pair) == 2]
    return pd.DataFrame(
        {
            "x": np.arange(1, len(paired) + 1),
            "instance": [instance_id for instance_id, _ in paired],
            "with_dynamic": [pair["mmas"] for _, pair in paired],
            "without_dynamic": [pair["mmas-static"] for _, pair in paired],
        }
    )


def write_ablation_series(records: Sequence[TrialRecord], path: PathLike) -> Path:
    frame = ablation_frame(records)
    if frame.empty:
        print("⚠️ WARNING: no paired mmas / mmas-static records for the ablation series")
    target = Path(path)
    frame.to_csv(target, index=False, encoding="utf-8")
    return target


__all__ = [
    "Algorithm",
    "ALGORITHMS",
    "SUMMARY_COLUMNS",
    "RUN_COLUMNS",
    "BenchSettings",
    "TrialRecord",
    "FailureRecord",
    "BenchmarkReport",
    "derive_seed",
    "run_benchmark",
    "trial_frame",
    "write_trial_csv",
    "write_run_csv",
    "read_trial_records",
    "ablation_frame",
    "write_ablation_series",
]
