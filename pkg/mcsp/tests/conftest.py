import sys
from pathlib import Path

import pytest

sys.path.append(str(Path(__file__).resolve().parents[2]))


@pytest.fixture
def abad_pair():
    return "abad", "adab"


@pytest.fixture
def ababcab_pair():
    return "ababcab", "abcabab"


@pytest.fixture
def span_pair():
    return "bceabcd", "abcdbec"


@pytest.fixture
def positioning_pair():
    return "ababc", "abcab"


def random_related_pairs(count, max_length, seed, alphabet="ab"):
    """Seeded related pairs over a small alphabet, lengths 1..max_length."""
    import numpy as np

    rng = np.random.default_rng(seed)
    pairs = []
    for _ in range(count):
        n = int(rng.integers(1, max_length + 1))
        x = "".join(rng.choice(list(alphabet), size=n))
        y = "".join(rng.permutation(list(x)))
        pairs.append((x, y))
    return pairs
