"""MAX-MIN Ant System for minimum common string partition.

Each ant walks the common substring graph from its start vertex, picking an
out-edge with probability proportional to ``tau**alpha * eta**beta`` and then
mapping it onto the free occurrence in Y with the smallest free span.  After
every iteration the trail evaporates, one solution deposits (iteration best
or global best, following a fixed schedule) and the trail is clamped into
``[tau_min, tau_max]``.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Dict, List, Literal, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from mcsp.blocks import Block, CommonPartition, ensure_related
from mcsp.csgraph import (
    CommonSubstringGraph,
    OccupancyState,
    available_edges,
    build_graph,
    free_matches,
    free_span,
    occupy,
)
from mcsp.heuristics import HeuristicWeights, edge_heuristics


DepositSource = Literal["local", "global"]

DEFAULT_MMAS_PARAMS: Dict[str, float] = {
    "alpha": 2.0,
    "beta": 10.0,
    "epsilon": 0.05,
    "n_ants": 100,
    "p_best": 0.05,
    "init_pheromone": 10.0,
    "max_time_secs": 60.0,
    "max_stale_iterations": 500,
    "n_runs": 1,
    "seed": 0,
}

# (upper iteration bound, modulus selecting the iteration best); None = always.
DEPOSIT_SCHEDULE: Tuple[Tuple[int, Optional[int]], ...] = (
    (50, None),
    (100, 5),
    (200, 4),
    (400, 3),
    (800, 2),
)

# Used when the graph offers no branching at all (every vertex has one out-edge).
FALLBACK_AVG_CHOICES = 2.0

TELEMETRY_COLUMNS = [
    "run",
    "iteration",
    "best_cost_iter",
    "best_cost_global",
    "elapsed_ms",
    "tau_min",
    "tau_max",
]


@dataclass
class MmasParams:
    """Solver parameters; defaults are the tuned values with desk-scale budgets."""

    alpha: float = DEFAULT_MMAS_PARAMS["alpha"]
    beta: float = DEFAULT_MMAS_PARAMS["beta"]
    epsilon: float = DEFAULT_MMAS_PARAMS["epsilon"]
    n_ants: int = int(DEFAULT_MMAS_PARAMS["n_ants"])
    p_best: float = DEFAULT_MMAS_PARAMS["p_best"]
    init_pheromone: float = DEFAULT_MMAS_PARAMS["init_pheromone"]
    max_time_secs: Optional[float] = DEFAULT_MMAS_PARAMS["max_time_secs"]
    max_stale_iterations: int = int(DEFAULT_MMAS_PARAMS["max_stale_iterations"])
    n_runs: int = int(DEFAULT_MMAS_PARAMS["n_runs"])
    weights: HeuristicWeights = field(default_factory=HeuristicWeights)
    seed: int = int(DEFAULT_MMAS_PARAMS["seed"])

    max_iterations: Optional[int] = None
    target_cost: Optional[int] = None
    avg_choices: Optional[float] = None
    random_start: bool = False
    workers: int = 1

    def __post_init__(self) -> None:
        if self.alpha < 0 or self.beta < 0:
            raise ValueError("alpha and beta must be non-negative")
        if not 0 < self.epsilon <= 1:
            raise ValueError(f"epsilon must lie in (0, 1], got {self.epsilon}")
        if self.n_ants < 1:
            raise ValueError("n_ants must be a positive integer")
        if not 0 < self.p_best < 1:
            raise ValueError(f"p_best must lie in (0, 1), got {self.p_best}")
        if self.init_pheromone <= 0:
            raise ValueError("init_pheromone must be positive")
        if self.max_time_secs is not None and self.max_time_secs <= 0:
            raise ValueError("max_time_secs must be positive when set")
        if self.max_stale_iterations < 1:
            raise ValueError("max_stale_iterations must be a positive integer")
        if self.n_runs < 1:
            raise ValueError("n_runs must be a positive integer")
        if self.seed < 0:
            raise ValueError("seed must be a non-negative integer")
        if self.max_iterations is not None and self.max_iterations < 1:
            raise ValueError("max_iterations must be positive when set")
        if self.target_cost is not None and self.target_cost < 1:
            raise ValueError("target_cost must be positive when set")
        if self.avg_choices is not None and self.avg_choices <= 1:
            raise ValueError("avg_choices must exceed 1")
        if self.workers < 1:
            raise ValueError("workers must be a positive integer")


@dataclass(eq=False)
class PheromoneTable:
    """Trail values indexed ``tau[i, length - 1]``; cells outside ``mask`` are not edges."""

    tau: np.ndarray
    mask: np.ndarray
    tau_max: Optional[float] = None
    tau_min: Optional[float] = None

    def __len__(self) -> int:
        return int(self.mask.sum())

    def value(self, block: Block) -> float:
        return float(self.tau[block.i, block.length - 1])

    def edge_values(self) -> np.ndarray:
        return self.tau[self.mask]

    def clamp(self) -> None:
        if self.tau_min is None or self.tau_max is None:
            return
        self.tau[self.mask] = np.clip(self.tau[self.mask], self.tau_min, self.tau_max)


@dataclass(frozen=True)
class Solution:
    common_partition: CommonPartition

    @classmethod
    def from_pairs(cls, pairs: Sequence[Tuple[Block, Block]]) -> "Solution":
        ordered = sorted(pairs, key=lambda pair: pair[0].i)
        return cls(
            CommonPartition(
                partition_list=tuple(x_block for x_block, _ in ordered),
                mapped_list=tuple(y_block for _, y_block in ordered),
            )
        )

    @property
    def cost(self) -> int:
        return self.common_partition.cost

    @property
    def fitness(self) -> float:
        return 1.0 / self.cost


@dataclass
class SearchState:
    local_best: Optional[Solution] = None
    global_best: Optional[Solution] = None
    iteration: int = 0
    stale_iterations: int = 0
    started_at: float = field(default_factory=time.perf_counter)
    best_iteration: int = 0
    best_elapsed_secs: float = 0.0

    @property
    def elapsed_secs(self) -> float:
        return time.perf_counter() - self.started_at


@dataclass(frozen=True)
class RunSummary:
    run: int
    best_cost: int
    time_to_best_secs: float
    iterations_to_best: int
    iterations: int
    elapsed_secs: float


@dataclass
class SolveResult:
    best: Solution
    runs: List[RunSummary]
    telemetry: pd.DataFrame

    @property
    def cost(self) -> int:
        return self.best.cost

    def write_telemetry(self, path: Union[str, Path], include_timing: bool = True) -> Path:
        target = Path(path)
        frame = self.telemetry
        if not include_timing:
            frame = frame.drop(columns=["elapsed_ms"])
        frame.to_csv(target, index=False)
        return target


IterationCallback = Callable[[int, SearchState, PheromoneTable], None]


def initialize(g: CommonSubstringGraph, params: MmasParams) -> Tuple[PheromoneTable, SearchState]:
    lengths = np.arange(1, g.max_edge_length + 1)
    mask = lengths[np.newaxis, :] <= g.max_len_x[:, np.newaxis]
    tau = np.where(mask, float(params.init_pheromone), 0.0)
    return PheromoneTable(tau=tau, mask=mask), SearchState()


def start_position(ant_index: int, n: int, n_ants: int) -> int:
    if not 0 <= ant_index < n_ants:
        raise ValueError(f"ant index {ant_index} outside [0, {n_ants})")
    return (n // n_ants) * ant_index % n


def edge_probabilities(
    tau_values: np.ndarray, eta_values: np.ndarray, alpha: float, beta: float
) -> np.ndarray:
    """Normalised ``tau**alpha * eta**beta``, evaluated in log space."""

    log_weights = alpha * np.log(tau_values) + beta * np.log(eta_values)
    weights = np.exp(log_weights - log_weights.max())
    return weights / weights.sum()


def edge_distribution(
    g: CommonSubstringGraph,
    occ: OccupancyState,
    v: int,
    v_start: int,
    tau: PheromoneTable,
    params: MmasParams,
) -> Tuple[List[Block], np.ndarray]:
    edges = available_edges(g, occ, v, v_start)
    eta = edge_heuristics(g, occ, edges, params.weights)
    tau_values = tau.tau[v, : len(edges)]
    return edges, edge_probabilities(tau_values, eta, params.alpha, params.beta)


def choose_edge(
    g: CommonSubstringGraph,
    occ: OccupancyState,
    v: int,
    v_start: int,
    tau: PheromoneTable,
    params: MmasParams,
    rng: np.random.Generator,
) -> Block:
    edges, probabilities = edge_distribution(g, occ, v, v_start, tau, params)
    if len(edges) == 1:
        return edges[0]
    return edges[int(rng.choice(len(edges), p=probabilities))]


def choose_match(
    g: CommonSubstringGraph, occ: OccupancyState, block: Block, rng: np.random.Generator
) -> Block:
    """Free occurrence of ``block`` in Y with the smallest free span, ties at random."""

    matches = free_matches(g, occ, block)
    if not matches:
        raise RuntimeError(f"{block!r} was offered without a free match")
    if len(matches) == 1:
        return matches[0]
    spans = np.array([free_span(g, occ, match) for match in matches])
    tightest = np.flatnonzero(spans == spans.min())
    if tightest.size == 1:
        return matches[int(tightest[0])]
    return matches[int(rng.choice(tightest))]


def construct_solution(
    g: CommonSubstringGraph,
    tau: PheromoneTable,
    params: MmasParams,
    ant_index: int,
    rng: np.random.Generator,
) -> Solution:
    if params.random_start:
        v_start = int(rng.integers(g.n))
    else:
        v_start = start_position(ant_index, g.n, params.n_ants)

    occ = OccupancyState.fresh(g.n)
    pairs: List[Tuple[Block, Block]] = []
    v = v_start
    while True:
        edge = choose_edge(g, occ, v, v_start, tau, params, rng)
        match = choose_match(g, occ, edge, rng)
        occupy(occ, match)
        pairs.append((edge, match))
        v = (edge.j + 1) % g.n
        if v == v_start:
            break

    if occ.consumed_count != g.n:
        raise RuntimeError(f"Construction closed with {occ.consumed_count}/{g.n} positions of Y")
    return Solution.from_pairs(pairs)


def evaporate(tau: PheromoneTable, epsilon: float) -> PheromoneTable:
    tau.tau *= 1.0 - epsilon
    return tau


def deposit(tau: PheromoneTable, sol: Solution, epsilon: float) -> PheromoneTable:
    amount = epsilon / sol.cost
    for block in sol.common_partition.partition_list:
        tau.tau[block.i, block.length - 1] += amount
    return tau


def select_deposit_source(iteration: int) -> DepositSource:
    for upper, modulus in DEPOSIT_SCHEDULE:
        if iteration <= upper:
            if modulus is None or iteration % modulus == 0:
                return "local"
            return "global"
    return "local"


def compute_bounds(
    cost_gb: int, epsilon: float, p_best: float, n: int, avg: float
) -> Tuple[float, float]:
    """Return ``(tau_max, tau_min)`` for the current global best cost.

    ``tau_min`` is capped at ``tau_max`` so the clamp interval is never empty.
    """

    if cost_gb < 1:
        raise ValueError(f"cost of the global best must be positive, got {cost_gb}")
    if avg <= 1:
        raise ValueError(f"average number of choices must exceed 1, got {avg}")

    tau_max = 1.0 / (epsilon * cost_gb)
    root = p_best ** (1.0 / n)
    tau_min = tau_max * (1.0 - root) / ((avg - 1.0) * root)
    return tau_max, min(tau_min, tau_max)


def average_choices(g: CommonSubstringGraph, params: MmasParams) -> float:
    if params.avg_choices is not None:
        return params.avg_choices
    avg = g.edge_count / g.n
    if avg <= 1:
        return FALLBACK_AVG_CHOICES
    return avg


def scheduled_update(
    state: SearchState, g: CommonSubstringGraph, tau: PheromoneTable, params: MmasParams
) -> PheromoneTable:
    if state.local_best is None or state.global_best is None:
        raise ValueError("scheduled_update needs both the iteration best and the global best")

    evaporate(tau, params.epsilon)
    source = select_deposit_source(state.iteration)
    deposit(tau, state.local_best if source == "local" else state.global_best, params.epsilon)

    tau.tau_max, tau.tau_min = compute_bounds(
        state.global_best.cost,
        params.epsilon,
        params.p_best,
        g.n,
        average_choices(g, params),
    )
    tau.clamp()
    return tau


class MmasSolver:
    """Multi-run driver; one instance per concurrent solve."""

    def __init__(self, graph: CommonSubstringGraph, params: Optional[MmasParams] = None, verbose: bool = True):
        self.graph = graph
        self.params = params or MmasParams()
        self.verbose = verbose
        if verbose and params is None:
            print("   ℹ️ No MMAS parameters supplied, using defaults")
        if verbose and self.params.avg_choices is None and graph.edge_count <= graph.n:
            print(
                f"⚠️ WARNING: graph offers a single choice per vertex, "
                f"using avg={FALLBACK_AVG_CHOICES} for tau_min"
            )

    def _ant_rng(self, run: int, iteration: int, ant: int) -> np.random.Generator:
        return np.random.default_rng([self.params.seed, run, iteration, ant])

    def _construct_iteration(
        self, run: int, iteration: int, tau: PheromoneTable, pool: Optional[ThreadPoolExecutor]
    ) -> List[Solution]:
        def build(ant: int) -> Solution:
            return construct_solution(
                self.graph, tau, self.params, ant, self._ant_rng(run, iteration, ant)
            )

        ants = range(self.params.n_ants)
        if pool is None:
            return [build(ant) for ant in ants]
        return list(pool.map(build, ants))

    def _should_stop(self, state: SearchState) -> bool:
        params = self.params
        if params.target_cost is not None and state.global_best is not None:
            if state.global_best.cost <= params.target_cost:
                return True
        if params.max_iterations is not None and state.iteration >= params.max_iterations:
            return True
        if state.stale_iterations >= params.max_stale_iterations:
            return True
        if params.max_time_secs is not None and state.elapsed_secs >= params.max_time_secs:
            return True
        return False

    def _run_once(
        self,
        run: int,
        telemetry_rows: List[Dict[str, float]],
        on_iteration: Optional[IterationCallback],
    ) -> Tuple[Solution, RunSummary]:
        tau, state = initialize(self.graph, self.params)
        pool = ThreadPoolExecutor(max_workers=self.params.workers) if self.params.workers > 1 else None

        try:
            while True:
                state.iteration += 1
                solutions = self._construct_iteration(run, state.iteration, tau, pool)
                # min() keeps the lowest ant index on ties.
                state.local_best = min(solutions, key=lambda sol: sol.cost)

                if state.global_best is None or state.local_best.cost < state.global_best.cost:
                    state.global_best = state.local_best
                    state.stale_iterations = 0
                    state.best_iteration = state.iteration
                    state.best_elapsed_secs = state.elapsed_secs
                else:
                    state.stale_iterations += 1

                scheduled_update(state, self.graph, tau, self.params)
                if on_iteration is not None:
                    on_iteration(run, state, tau)

                telemetry_rows.append(
                    {
                        "run": run,
                        "iteration": state.iteration,
                        "best_cost_iter": state.local_best.cost,
                        "best_cost_global": state.global_best.cost,
                        "elapsed_ms": round(state.elapsed_secs * 1000.0, 3),
                        "tau_min": tau.tau_min,
                        "tau_max": tau.tau_max,
                    }
                )

                if self._should_stop(state):
                    break
        finally:
            if pool is not None:
                pool.shutdown(wait=True)

        assert state.global_best is not None
        summary = RunSummary(
            run=run,
            best_cost=state.global_best.cost,
            time_to_best_secs=state.best_elapsed_secs,
            iterations_to_best=state.best_iteration,
            iterations=state.iteration,
            elapsed_secs=state.elapsed_secs,
        )
        return state.global_best, summary

    def run(self, on_iteration: Optional[IterationCallback] = None) -> SolveResult:
        started = time.perf_counter()
        params = self.params
        if self.verbose:
            print(
                f"🔄 MMAS: n={self.graph.n}, |E|={self.graph.edge_count}, "
                f"{params.n_ants} ants, {params.n_runs} run(s)"
            )

        telemetry_rows: List[Dict[str, float]] = []
        summaries: List[RunSummary] = []
        best: Optional[Solution] = None
        for run in range(params.n_runs):
            solution, summary = self._run_once(run, telemetry_rows, on_iteration)
            summaries.append(summary)
            if best is None or solution.cost < best.cost:
                best = solution
            if self.verbose:
                print(
                    f"   📊 Run {run + 1}/{params.n_runs}: cost {summary.best_cost} "
                    f"after {summary.iterations} iterations "
                    f"(best at iteration {summary.iterations_to_best}, {summary.time_to_best_secs:.2f}s)"
                )

        assert best is not None
        if self.verbose:
            print(f"   ✅ MMAS complete: best cost {best.cost} in {time.perf_counter() - started:.2f}s")

        telemetry = pd.DataFrame(telemetry_rows, columns=TELEMETRY_COLUMNS)
        return SolveResult(best=best, runs=summaries, telemetry=telemetry)


def solve(
    x: str,
    y: str,
    params: Optional[MmasParams] = None,
    verbose: bool = True,
    on_iteration: Optional[IterationCallback] = None,
) -> SolveResult:
    ensure_related(x, y)
    graph = build_graph(x, y)
    return MmasSolver(graph, params, verbose=verbose).run(on_iteration)


__all__ = [
    "DepositSource",
    "DEFAULT_MMAS_PARAMS",
    "DEPOSIT_SCHEDULE",
    "FALLBACK_AVG_CHOICES",
    "TELEMETRY_COLUMNS",
    "MmasParams",
    "PheromoneTable",
    "Solution",
    "SearchState",
    "RunSummary",
    "SolveResult",
    "IterationCallback",
    "initialize",
    "start_position",
    "edge_probabilities",
    "edge_distribution",
    "choose_edge",
    "choose_match",
    "construct_solution",
    "evaporate",
    "deposit",
    "select_deposit_source",
    "compute_bounds",
    "average_choices",
    "scheduled_update",
    "MmasSolver",
    "solve",
]
