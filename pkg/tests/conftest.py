"""Shared oracles: brute-force partition enumeration, independent of the
package's generating-function arithmetic."""
from functools import lru_cache

import pytest

from mockmod import Tau


@lru_cache(maxsize=None)
def brute_rank_counts(n: int) -> dict:
    """Histogram {rank: count} over all partitions of n, by recursion on
    the largest part.  rank = largest part - number of parts."""
    counts: dict[int, int] = {}

    def rec(remaining: int, max_part: int, first: int, parts: int) -> None:
        if remaining == 0:
            counts[first - parts] = counts.get(first - parts, 0) + 1
            return
        for p in range(min(remaining, max_part), 0, -1):
            rec(remaining - p, p, first if parts else p, parts + 1)

    rec(n, n, 0, 0)
    return counts


def brute_partition_count(n: int) -> int:
    if n == 0:
        return 1
    return sum(brute_rank_counts(n).values())


@pytest.fixture
def tau_a() -> Tau:
    return Tau(0.19, 0.87)


@pytest.fixture
def tau_b() -> Tau:
    return Tau(-0.31, 1.42)
