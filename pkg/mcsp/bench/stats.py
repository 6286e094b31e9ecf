"""Significance testing against the greedy baseline and parameter tuning ranks."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, NamedTuple, Optional, Sequence

import numpy as np
import pandas as pd
import scipy.stats as st


DEFAULT_SIGNIFICANCE = 0.05

MARK_BETTER = "+"
MARK_WORSE = "−"
MARK_SAME = "≈"


class TTestResult(NamedTuple):
    t: float
    p: float
    mark: str


def significance_mark(t: float, p: float, significance: float = DEFAULT_SIGNIFICANCE) -> str:
    if p < significance and t > 0:
        return MARK_BETTER
    if p < significance and t < 0:
        return MARK_WORSE
    return MARK_SAME


def _degenerate(diff: float) -> TTestResult:
    # Zero spread on both sides: identical means are a tie, anything else is certain.
    if diff == 0:
        return TTestResult(0.0, 1.0, MARK_SAME)
    t = math.copysign(math.inf, diff)
    return TTestResult(t, 0.0, MARK_BETTER if t > 0 else MARK_WORSE)


def t_test(
    baseline_cost: float, sample: Sequence[float], significance: float = DEFAULT_SIGNIFICANCE
) -> TTestResult:
    """Pooled two-sample t-test of ``sample`` against a constant baseline sample of equal size.

    Positive ``t`` means the sample beats (is below) the baseline.
    """

    costs = np.asarray(sample, dtype=float)
    n = costs.size
    if n < 2:
        raise ValueError(f"t-test needs at least two runs, got {n}")

    if np.std(costs) == 0:
        return _degenerate(baseline_cost - float(costs.mean()))

    t, p = st.ttest_ind(np.full(n, float(baseline_cost)), costs, equal_var=True)
    t, p = float(t), float(p)
    return TTestResult(t, p, significance_mark(t, p, significance))


def t_test_from_summary(
    baseline_cost: float,
    mean: float,
    stddev: float,
    n: int,
    significance: float = DEFAULT_SIGNIFICANCE,
) -> TTestResult:
    """Same test when only the published mean / sample stddev / run count are known."""

    if n < 2:
        raise ValueError(f"t-test needs at least two runs, got {n}")
    if stddev < 0:
        raise ValueError("stddev must be non-negative")
    if stddev == 0:
        return _degenerate(baseline_cost - mean)

    t, p = st.ttest_ind_from_stats(
        mean1=float(baseline_cost),
        std1=0.0,
        nobs1=n,
        mean2=float(mean),
        std2=float(stddev),
        nobs2=n,
        equal_var=True,
    )
    t, p = float(t), float(p)
    return TTestResult(t, p, significance_mark(t, p, significance))


@dataclass(frozen=True)
class TuningRank:
    """``scores[j]`` sums each instance's cost for permutation ``j`` over that instance's worst cost."""

    scores: np.ndarray
    order: np.ndarray

    @property
    def winner(self) -> int:
        return int(self.order[0])

    def to_frame(self, labels: Optional[Sequence[str]] = None) -> pd.DataFrame:
        names: List[str] = list(labels) if labels is not None else [str(j) for j in range(self.scores.size)]
        return pd.DataFrame(
            {
                "rank": np.arange(1, self.order.size + 1),
                "permutation": [names[j] for j in self.order],
                "index": self.order,
                "score": self.scores[self.order],
            }
        )


def tuning_rank(results: Sequence[Sequence[float]]) -> TuningRank:
    matrix = np.asarray(results, dtype=float)
    if matrix.ndim != 2 or matrix.size == 0:
        raise ValueError("tuning_rank needs a non-empty instances x permutations matrix")
    if (matrix <= 0).any():
        raise ValueError("tuning_rank needs strictly positive costs")

    scores = (matrix / matrix.max(axis=1, keepdims=True)).sum(axis=0)
    order = np.argsort(scores, kind="stable")
    return TuningRank(scores=scores, order=order)


__all__ = [
    "DEFAULT_SIGNIFICANCE",
    "MARK_BETTER",
    "MARK_WORSE",
    "MARK_SAME",
    "TTestResult",
    "significance_mark",
    "t_test",
    "t_test_from_summary",
    "TuningRank",
    "tuning_rank",
]
