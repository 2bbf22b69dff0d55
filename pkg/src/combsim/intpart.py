"""Integer partitions, the partition function, and discrete similarity classes."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .errors import CapExceededError
from .pmetric import discrete_from_equivalence
from .relcore import equivalence_from_partition, set_partitions
from .simdec import decide_comb_similar

MAX_CLASS_COUNT_N = 8
SLOW_PATH_MAX_N = 5


@dataclass(frozen=True)
class IntegerPartition:
    parts: tuple[int, ...]

    def __post_init__(self):
        if not self.parts or any(p < 1 for p in self.parts):
            raise ValueError("parts must be positive")
        if any(a < b for a, b in zip(self.parts, self.parts[1:])):
            raise ValueError("parts must be weakly decreasing")

    @property
    def n(self) -> int:
        return sum(self.parts)


def enumerate_partitions(n: int) -> list[IntegerPartition]:
    """All partitions of ``n``, largest first part first (reverse lexicographic)."""
    if n < 1:
        raise ValueError("n must be positive")
    out: list[IntegerPartition] = []

    def rec(remaining, cap, prefix):
        if remaining == 0:
            out.append(IntegerPartition(tuple(prefix)))
            return
        for part in range(min(remaining, cap), 0, -1):
            prefix.append(part)
            rec(remaining - part, part, prefix)
            prefix.pop()

    rec(n, n, [])
    return out


def partition_count(n: int) -> int:
    """``p(n)`` by the pentagonal number recurrence; ``p(0) = 1``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    p = [1] + [0] * n
    for m in range(1, n + 1):
        total, k = 0, 1
        while True:
            g1 = k * (3 * k - 1) // 2
            if g1 > m:
                break
            sign = 1 if k % 2 else -1
            total += sign * p[m - g1]
            g2 = k * (3 * k + 1) // 2
            if g2 <= m:
                total += sign * p[m - g2]
            k += 1
        p[m] = total
    return p[n]


def partition_count_dp(n: int) -> int:
    """``p(n)`` by the coin-change table over part sizes; an independent cross-check."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    ways = [1] + [0] * n
    for part in range(1, n + 1):
        for total in range(part, n + 1):
            ways[total] += ways[total - part]
    return ways[n]


@lru_cache(maxsize=None)
def _class_representatives(n: int):
    return tuple(set_partitions(n))


def discrete_classes_count(n: int, cross_check: bool | None = None) -> int:
    """Number of combinatorial similarity classes of discrete pseudometrics on ``n`` points.

    Classes are keyed by the multiset of zero-class sizes. With
    ``cross_check`` (default on for ``n <= 5``) the count is checked
    against a pairwise similarity search over one pseudometric per set
    partition.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if n > MAX_CLASS_COUNT_N:
        raise CapExceededError(f"n={n} exceeds the cap of {MAX_CLASS_COUNT_N}", MAX_CLASS_COUNT_N)
    partitions = _class_representatives(n)
    fast = len({p.sizes() for p in partitions})
    if cross_check is None:
        cross_check = n <= SLOW_PATH_MAX_N
    if cross_check:
        slow = _count_by_search(partitions)
        if slow != fast:
            raise AssertionError(f"class counts disagree: sizes={fast}, search={slow}")
    return fast


def _count_by_search(partitions) -> int:
    reps = []
    for p in partitions:
        phi = discrete_from_equivalence(equivalence_from_partition(p)).as_mapping()
        if not any(decide_comb_similar(phi, r) for r in reps):
            reps.append(phi)
    return len(reps)


def hr_ratio(n: int) -> float:
    """``p(n)`` over its leading asymptotic estimate; a floating diagnostic."""
    if n < 1:
        raise ValueError("n must be positive")
    exponent = math.pi * math.sqrt(2 * n / 3)
    # ratio = p(n) * 4n*sqrt(3) / e^exponent, kept in log space for large n
    log_ratio = math.log(partition_count(n)) + math.log(4 * n * math.sqrt(3)) - exponent
    return math.exp(log_ratio)
