import math
import sys
from pathlib import Path

sys.path.append(str(Path(__file__).resolve().parents[2]))

import numpy as np
import pytest

from mcsp.bench.stats import (
    MARK_BETTER,
    MARK_SAME,
    MARK_WORSE,
    significance_mark,
    t_test,
    t_test_from_summary,
    tuning_rank,
)


@pytest.mark.parametrize(
    "baseline, mean, stddev, low, high",
    [
        (46, 42.8667, 0.3519, 34.48, 34.50),
        (56, 51.8667, 0.5164, 30.99, 31.01),
    ],
)
def test_t_test_reproduces_published_rows(baseline, mean, stddev, low, high):
    result = t_test_from_summary(baseline, mean, stddev, 15)
    assert low <= result.t <= high
    assert result.p < 1e-10
    assert result.mark == MARK_BETTER


def test_t_test_matches_closed_form():
    sample = [42, 43, 43, 42, 44, 43]
    result = t_test(46, sample)
    costs = np.array(sample, dtype=float)
    expected = (46 - costs.mean()) * math.sqrt(costs.size) / costs.std(ddof=1)
    assert result.t == pytest.approx(expected)
    assert result.mark == MARK_BETTER


def test_t_test_worse_sample():
    result = t_test(10, [12, 13, 12, 14])
    assert result.t < 0
    assert result.mark == MARK_WORSE


def test_t_test_degenerate_samples():
    assert t_test(7, [7, 7, 7]) == (0.0, 1.0, MARK_SAME)
    better = t_test(9, [7, 7])
    assert better.t == math.inf and better.p == 0.0 and better.mark == MARK_BETTER
    worse = t_test_from_summary(5, 6.0, 0.0, 4)
    assert worse.t == -math.inf and worse.mark == MARK_WORSE


def test_t_test_needs_two_runs():
    with pytest.raises(ValueError):
        t_test(5, [4])


def test_significance_mark_threshold():
    assert significance_mark(2.5, 0.04) == MARK_BETTER
    assert significance_mark(2.5, 0.06) == MARK_SAME
    assert significance_mark(2.5, 0.06, significance=0.1) == MARK_BETTER
    assert significance_mark(-2.5, 0.01) == MARK_WORSE


def test_tuning_rank_examples():
    rank = tuning_rank([[10, 20]])
    np.testing.assert_allclose(rank.scores, [0.5, 1.0])
    assert rank.winner == 0

    tied = tuning_rank([[4, 4, 4]] * 8)
    np.testing.assert_allclose(tied.scores, [8.0, 8.0, 8.0])
    assert list(tied.order) == [0, 1, 2]


def test_tuning_rank_normalises_per_instance():
    rank = tuning_rank([[10, 20, 15], [100, 50, 80]])
    np.testing.assert_allclose(rank.scores, [1.5, 1.5, 1.55])
    assert list(rank.order) == [0, 1, 2]
    frame = rank.to_frame(labels=["a", "b", "c"])
    assert frame["permutation"].tolist() == ["a", "b", "c"]
    assert frame["rank"].tolist() == [1, 2, 3]


def test_tuning_rank_rejects_empty_or_non_positive():
    with pytest.raises(ValueError):
        tuning_rank([])
    with pytest.raises(ValueError):
        tuning_rank([[1, 0]])
