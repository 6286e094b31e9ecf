"""Benchmark entry points.

Re-exports the dataset, statistics, runner and tuning helpers so callers can
import everything from :mod:`mcsp.bench`.
"""

from __future__ import annotations

from mcsp.bench.datasets import (
    DNA_ALPHABET,
    LENGTH_GROUPS,
    FastaParseError,
    InstanceSpec,
    fasta_instances,
    file_instance,
    generate_instance,
    generate_instances,
    load_fasta,
    read_instance_file,
    write_instance_file,
)
from mcsp.bench.runner import (
    ALGORITHMS,
    BenchmarkReport,
    BenchSettings,
    FailureRecord,
    TrialRecord,
    ablation_frame,
    read_trial_records,
    run_benchmark,
    trial_frame,
    write_ablation_series,
    write_run_csv,
    write_trial_csv,
)
from mcsp.bench.stats import (
    MARK_BETTER,
    MARK_SAME,
    MARK_WORSE,
    TTestResult,
    TuningRank,
    t_test,
    t_test_from_summary,
    tuning_rank,
)
from mcsp.bench.tuning import TUNING_VALUES, TuningReport, parameter_grid, run_tuning

__all__ = [
    "DNA_ALPHABET",
    "LENGTH_GROUPS",
    "FastaParseError",
    "InstanceSpec",
    "generate_instance",
    "generate_instances",
    "load_fasta",
    "fasta_instances",
    "write_instance_file",
    "read_instance_file",
    "file_instance",
    "ALGORITHMS",
    "BenchSettings",
    "TrialRecord",
    "FailureRecord",
    "BenchmarkReport",
    "run_benchmark",
    "trial_frame",
    "write_trial_csv",
    "write_run_csv",
    "read_trial_records",
    "ablation_frame",
    "write_ablation_series",
    "MARK_BETTER",
    "MARK_WORSE",
    "MARK_SAME",
    "TTestResult",
    "TuningRank",
    "t_test",
    "t_test_from_summary",
    "tuning_rank",
    "TUNING_VALUES",
    "TuningReport",
    "parameter_grid",
    "run_tuning",
]
