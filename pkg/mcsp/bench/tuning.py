"""Full-factorial parameter tuning ranked by normalised mean cost."""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, replace
from typing import Dict, List, Optional, Sequence

import numpy as np
import pandas as pd

from mcsp.bench.datasets import InstanceSpec, generate_instance
from mcsp.bench.runner import derive_seed
from mcsp.bench.stats import TuningRank, tuning_rank
from mcsp.mmas import MmasParams, solve


TUNING_VALUES: Dict[str, Sequence[float]] = {
    "alpha": (1.0, 2.0, 3.0),
    "beta": (3.0, 5.0, 10.0),
    "epsilon": (0.02, 0.04, 0.05),
    "n_ants": (20, 60, 100),
    "p_best": (0.005, 0.05, 0.5),
}

DEFAULT_TUNING_REPEATS = 4


@dataclass
class TuningReport:
    grid: List[Dict[str, float]]
    costs: pd.DataFrame
    rank: TuningRank

    @property
    def best_params(self) -> Dict[str, float]:
        return self.grid[self.rank.winner]

    def ranking(self) -> pd.DataFrame:
        return self.rank.to_frame(labels=[permutation_label(p) for p in self.grid])


def parameter_grid(values: Optional[Dict[str, Sequence[float]]] = None) -> List[Dict[str, float]]:
    values = values or TUNING_VALUES
    for name in values:
        if name not in MmasParams.__dataclass_fields__:
            raise ValueError(f"'{name}' is not an MMAS parameter")
    names = list(values)
    return [dict(zip(names, combo)) for combo in itertools.product(*(values[name] for name in names))]


def permutation_label(permutation: Dict[str, float]) -> str:
    return ",".join(f"{name}={value:g}" for name, value in permutation.items())


def _apply(base: MmasParams, permutation: Dict[str, float]) -> MmasParams:
    updates = {
        name: int(value) if name == "n_ants" else value for name, value in permutation.items()
    }
    return replace(base, **updates)


def run_tuning(
    instances: Sequence[InstanceSpec],
    base_params: Optional[MmasParams] = None,
    grid: Optional[List[Dict[str, float]]] = None,
    repeats: int = DEFAULT_TUNING_REPEATS,
    verbose: bool = True,
) -> TuningReport:
    """Mean cost of every permutation on every instance, then rank by ``tuning_rank``."""

    if not instances:
        raise ValueError("run_tuning needs at least one instance")
    if repeats < 1:
        raise ValueError("repeats must be a positive integer")

    base_params = base_params or MmasParams()
    grid = grid if grid is not None else parameter_grid()
    start_time = time.time()
    if verbose:
        print(f"🔄 Tuning: {len(grid)} permutation(s) x {len(instances)} instance(s) x {repeats} run(s)")

    matrix = np.zeros((len(instances), len(grid)))
    for i, spec in enumerate(instances):
        x, y = generate_instance(spec)
        for j, permutation in enumerate(grid):
            params = _apply(base_params, permutation)
            costs = [
                solve(x, y, replace(params, seed=derive_seed(base_params.seed, i, j, r), n_runs=1), verbose=False).cost
                for r in range(repeats)
            ]
            matrix[i, j] = float(np.mean(costs))
        if verbose:
            print(f"   ✅ {spec.id}: {len(grid)} permutation(s) in {time.time() - start_time:.2f}s")

    rank = tuning_rank(matrix)
    costs = pd.DataFrame(
        matrix,
        index=[spec.id for spec in instances],
        columns=[permutation_label(p) for p in grid],
    )
    report = TuningReport(grid=grid, costs=costs, rank=rank)
    if verbose:
        print(f"   🏆 Best permutation: {permutation_label(report.best_params)}")
    return report


__all__ = [
    "TUNING_VALUES",
    "DEFAULT_TUNING_REPEATS",
    "TuningReport",
    "parameter_grid",
    "permutation_label",
    "run_tuning",
]
