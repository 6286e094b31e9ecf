import sys
from pathlib import Path

import numpy as np
import pandas as pd
import pytest

sys.path.append(str(Path(__file__).resolve().parents[2]))

from mcsp.blocks import Block, CommonPartition, validate_common_partition
from mcsp.csgraph import OccupancyState, build_graph
from mcsp.heuristics import HeuristicWeights
from mcsp.mmas import (
    MmasParams,
    MmasSolver,
    SearchState,
    Solution,
    TELEMETRY_COLUMNS,
    choose_edge,
    choose_match,
    compute_bounds,
    construct_solution,
    deposit,
    edge_distribution,
    edge_probabilities,
    evaporate,
    initialize,
    scheduled_update,
    select_deposit_source,
    solve,
    start_position,
)
from conftest import random_related_pairs


def X(i, j):
    return Block(0, i, j)


def Y(i, j):
    return Block(1, i, j)


def quick_params(**overrides):
    values = dict(n_ants=10, max_iterations=20, max_time_secs=None, seed=7)
    values.update(overrides)
    return MmasParams(**values)


def test_default_params_follow_tuned_values():
    params = MmasParams()
    assert (params.alpha, params.beta, params.epsilon) == (2.0, 10.0, 0.05)
    assert (params.n_ants, params.p_best, params.init_pheromone) == (100, 0.05, 10.0)
    assert params.weights == HeuristicWeights(1.0, 1.0)


@pytest.mark.parametrize(
    "overrides",
    [
        {"epsilon": 0.0},
        {"epsilon": 1.5},
        {"n_ants": 0},
        {"p_best": 1.0},
        {"init_pheromone": 0.0},
        {"seed": -1},
        {"avg_choices": 1.0},
        {"workers": 0},
    ],
)
def test_params_validation(overrides):
    with pytest.raises(ValueError):
        MmasParams(**overrides)


def test_initialize_sets_uniform_trail(abad_pair):
    g = build_graph(*abad_pair)
    tau, state = initialize(g, MmasParams())
    assert len(tau) == 6
    assert np.allclose(tau.edge_values(), 10.0)
    assert tau.tau_min is None and tau.tau_max is None
    assert state.iteration == 0 and state.global_best is None


def test_start_position_examples():
    assert start_position(7, 100, 100) == 7
    assert start_position(0, 100, 100) == 0
    assert start_position(3, 10, 4) == 6
    assert start_position(5, 4, 10) == 0
    with pytest.raises(ValueError):
        start_position(4, 10, 4)


def test_edge_probabilities_examples():
    probabilities = edge_probabilities(np.array([5.0, 5.0]), np.array([1.0, 1 / 3]), alpha=2.0, beta=1.0)
    np.testing.assert_allclose(probabilities, [0.75, 0.25])
    uniform = edge_probabilities(np.array([1.0, 7.0, 3.0]), np.array([0.2, 0.5, 1.0]), alpha=0.0, beta=0.0)
    np.testing.assert_allclose(uniform, [1 / 3, 1 / 3, 1 / 3])
    assert abs(uniform.sum() - 1.0) < 1e-9


def test_edge_distribution_three_edges():
    g = build_graph("abc", "abc")
    occ = OccupancyState.fresh(g.n)
    tau, _ = initialize(g, MmasParams())
    params = MmasParams(alpha=1.0, beta=1.0, weights=HeuristicWeights(1.0, 0.0))
    edges, probabilities = edge_distribution(g, occ, 0, 0, tau, params)
    assert edges == [X(0, 0), X(0, 1), X(0, 2)]
    np.testing.assert_allclose(probabilities, [1 / 6, 2 / 6, 3 / 6])

    rng = np.random.default_rng(2024)
    draws = rng.choice(len(edges), size=100_000, p=probabilities)
    frequencies = np.bincount(draws, minlength=3) / draws.size
    np.testing.assert_allclose(frequencies, probabilities, atol=0.02)


def test_choose_edge_sampling_law():
    g = build_graph("abc", "abc")
    occ = OccupancyState.fresh(g.n)
    tau, _ = initialize(g, MmasParams())
    params = MmasParams(alpha=1.0, beta=1.0, weights=HeuristicWeights(1.0, 0.0))
    rng = np.random.default_rng(99)
    trials = 100_000
    counts = {1: 0, 2: 0, 3: 0}
    for _ in range(trials):
        counts[choose_edge(g, occ, 0, 0, tau, params, rng).length] += 1
    assert counts[1] / trials == pytest.approx(1 / 6, abs=0.02)
    assert counts[2] / trials == pytest.approx(2 / 6, abs=0.02)
    assert counts[3] / trials == pytest.approx(3 / 6, abs=0.02)


def test_choose_edge_single_option(abad_pair):
    g = build_graph(*abad_pair)
    occ = OccupancyState.fresh(g.n)
    tau, _ = initialize(g, MmasParams())
    rng = np.random.default_rng(0)
    assert choose_edge(g, occ, 1, 0, tau, MmasParams(), rng) == X(1, 1)


def test_choose_match_prefers_smallest_span(positioning_pair):
    g = build_graph(*positioning_pair)
    occ = OccupancyState.fresh(g.n)
    rng = np.random.default_rng(1)
    for _ in range(20):
        assert choose_match(g, occ, X(0, 1), rng) == Y(3, 4)


def test_choose_match_breaks_ties_uniformly():
    g = build_graph("aa", "aa")
    occ = OccupancyState.fresh(g.n)
    rng = np.random.default_rng(5)
    trials = 100_000
    first = sum(choose_match(g, occ, X(0, 0), rng) == Y(0, 0) for _ in range(trials))
    assert first / trials == pytest.approx(0.5, abs=0.02)


def test_construct_solution_identity_instance():
    g = build_graph("abcd", "abcd")
    tau, _ = initialize(g, MmasParams())
    params = MmasParams(n_ants=4)
    for ant in range(4):
        solution = construct_solution(g, tau, params, ant, np.random.default_rng(ant))
        assert 1 <= solution.cost <= 4
        assert validate_common_partition(solution.common_partition, "abcd", "abcd")


def test_constructions_are_always_valid():
    for index, (x, y) in enumerate(random_related_pairs(50, 14, seed=23, alphabet="acgt")):
        g = build_graph(x, y)
        params = MmasParams(n_ants=5, random_start=index % 2 == 1)
        tau, _ = initialize(g, params)
        for ant in range(20):
            solution = construct_solution(g, tau, params, ant % 5, np.random.default_rng([index, ant]))
            assert validate_common_partition(solution.common_partition, x, y)
            assert solution.cost <= len(x)
            assert solution.fitness == pytest.approx(1.0 / solution.cost)


def test_evaporate_and_deposit(abad_pair):
    g = build_graph(*abad_pair)
    tau, _ = initialize(g, MmasParams())
    evaporate(tau, 0.05)
    assert np.allclose(tau.edge_values(), 9.5)

    sol = Solution(
        CommonPartition((X(0, 0), X(1, 1), X(2, 2), X(3, 3)), (Y(0, 0), Y(3, 3), Y(2, 2), Y(1, 1)))
    )
    deposit(tau, sol, 0.05)
    assert tau.value(X(0, 0)) == pytest.approx(9.5125)
    assert tau.value(X(0, 1)) == pytest.approx(9.5)


@pytest.mark.parametrize(
    "iteration, source",
    [
        (1, "local"),
        (30, "local"),
        (50, "local"),
        (51, "global"),
        (55, "local"),
        (104, "local"),
        (105, "global"),
        (201, "local"),
        (202, "global"),
        (401, "global"),
        (402, "local"),
        (801, "local"),
        (5000, "local"),
    ],
)
def test_select_deposit_source_schedule(iteration, source):
    assert select_deposit_source(iteration) == source


def test_compute_bounds_examples():
    tau_max, tau_min = compute_bounds(4, 0.05, 0.05, 100, 10.0)
    assert tau_max == pytest.approx(5.0)
    root = 0.05 ** (1 / 100)
    assert tau_min == pytest.approx(5.0 * (1 - root) / (9 * root))
    assert tau_min == pytest.approx(0.0169, abs=2e-4)

    _, near_one = compute_bounds(4, 0.05, 0.999999, 100, 10.0)
    assert near_one < 1e-6


def test_compute_bounds_rejects_degenerate_avg():
    with pytest.raises(ValueError):
        compute_bounds(4, 0.05, 0.05, 100, 1.0)


def test_compute_bounds_caps_tau_min_at_tau_max():
    tau_max, tau_min = compute_bounds(2, 0.05, 0.05, 1, 1.01)
    assert tau_min == tau_max


def test_scheduled_update_clamps_into_bounds(abad_pair):
    g = build_graph(*abad_pair)
    params = MmasParams()
    tau, state = initialize(g, params)
    sol = construct_solution(g, tau, params, 0, np.random.default_rng(0))
    state.iteration = 1
    state.local_best = state.global_best = sol
    scheduled_update(state, g, tau, params)
    values = tau.edge_values()
    assert tau.tau_max == pytest.approx(1 / (params.epsilon * sol.cost))
    assert (values <= tau.tau_max + 1e-12).all()
    assert (values >= tau.tau_min - 1e-12).all()


def test_scheduled_update_requires_solutions(abad_pair):
    g = build_graph(*abad_pair)
    tau, _ = initialize(g, MmasParams())
    with pytest.raises(ValueError):
        scheduled_update(SearchState(), g, tau, MmasParams())


def test_pheromone_invariants_over_full_solve():
    rng = np.random.default_rng(100)
    x = "".join(rng.choice(list("ACGT"), size=100))
    y = "".join(rng.permutation(list(x)))
    costs = []

    def check(run, state, tau):
        values = tau.edge_values()
        assert tau.tau_min <= tau.tau_max
        assert values.min() >= tau.tau_min - 1e-12
        assert values.max() <= tau.tau_max + 1e-12
        assert state.global_best.cost <= state.local_best.cost
        costs.append(state.global_best.cost)

    result = solve(x, y, quick_params(n_ants=8, max_iterations=25), verbose=False, on_iteration=check)
    assert len(costs) == 25
    assert all(later <= earlier for earlier, later in zip(costs, costs[1:]))
    assert validate_common_partition(result.best.common_partition, x, y)


def test_solve_identity_finds_single_block():
    x = "ACGTTGCAAC"
    result = solve(x, x, quick_params(n_ants=20, max_iterations=5), verbose=False)
    assert result.cost == 1


def test_solve_reaches_small_optimum(ababcab_pair, abad_pair):
    result = solve(*abad_pair, quick_params(n_ants=20, max_iterations=50, target_cost=2), verbose=False)
    assert result.cost == 2
    params = MmasParams(max_iterations=1000, max_time_secs=None, target_cost=2, seed=0)
    assert solve(*ababcab_pair, params, verbose=False).cost == 2


def test_solve_is_deterministic_for_fixed_seed():
    rng = np.random.default_rng(8)
    x = "".join(rng.choice(list("ACGT"), size=40))
    y = "".join(rng.permutation(list(x)))
    first = solve(x, y, quick_params(max_iterations=10), verbose=False)
    second = solve(x, y, quick_params(max_iterations=10, workers=3), verbose=False)
    assert first.best == second.best
    columns = ["run", "iteration", "best_cost_iter", "best_cost_global", "tau_min", "tau_max"]
    pd.testing.assert_frame_equal(first.telemetry[columns], second.telemetry[columns])


def test_multiple_runs_and_telemetry(tmp_path, abad_pair):
    result = solve(*abad_pair, quick_params(n_runs=3, max_iterations=4), verbose=False)
    assert len(result.runs) == 3
    assert list(result.telemetry.columns) == TELEMETRY_COLUMNS
    assert len(result.telemetry) == 12
    assert result.cost == min(run.best_cost for run in result.runs)

    path = result.write_telemetry(tmp_path / "telemetry.csv", include_timing=False)
    written = pd.read_csv(path)
    assert "elapsed_ms" not in written.columns
    assert written["iteration"].tolist() == [1, 2, 3, 4] * 3


def test_stale_budget_stops_run(abad_pair):
    g = build_graph(*abad_pair)
    params = MmasParams(n_ants=5, max_time_secs=None, max_stale_iterations=3, seed=1)
    result = MmasSolver(g, params, verbose=False).run()
    summary = result.runs[0]
    assert summary.iterations == summary.iterations_to_best + 3
