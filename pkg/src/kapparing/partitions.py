"""Integer partitions P(d), bounded-length partitions P(d, k) and set partitions.

A partition is a plain tuple of positive ints in weakly decreasing order; the
empty tuple is the unique partition of 0.  A set partition of {1..m} is a
tuple of blocks, each block a sorted tuple, blocks ordered by least element.

Canonical partition order (used to label every matrix row and column): by
length ascending, then reverse-lexicographic.  For d = 4 that is

    (4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)
"""
from __future__ import annotations

from functools import lru_cache
from typing import Iterator, Optional

__all__ = [
    "Partition",
    "SetPartition",
    "normalize",
    "partitions",
    "partition_count",
    "set_partitions",
    "restricted_growth_strings",
    "canonical_key",
]

Partition = tuple[int, ...]
SetPartition = tuple[tuple[int, ...], ...]


def normalize(parts) -> Partition:
    """Sort descending and drop zeros."""
    out = tuple(sorted((int(p) for p in parts if p), reverse=True))
    if any(p < 0 for p in out):
        raise ValueError(f"negative part in {parts!r}")
    return out


def canonical_key(p: Partition) -> tuple:
    return (len(p), tuple(-x for x in p))


def _gen(d: int, largest: int) -> Iterator[Partition]:
    if d == 0:
        yield ()
        return
    for first in range(min(d, largest), 0, -1):
        for rest in _gen(d - first, first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def _all_partitions(d: int) -> tuple[Partition, ...]:
    return tuple(sorted(_gen(d, d), key=canonical_key))


def partitions(d: int, max_len: Optional[int] = None) -> list[Partition]:
    """All partitions of d with at most max_len parts, in canonical order."""
    if d < 0:
        raise ValueError("d must be >= 0")
    out = _all_partitions(d)
    if max_len is None:
        return list(out)
    return [p for p in out if len(p) <= max_len]


@lru_cache(maxsize=None)
def partition_count(d: int, k: int) -> int:
    """|P(d, k)| by the recurrence p(d, k) = p(d, k-1) + p(d-k, k).

    Partitions of d into at most k parts are equinumerous with partitions of
    d into parts of size at most k (conjugation).
    """
    if d < 0 or k < 0:
        raise ValueError("d and k must be >= 0")
    if d == 0:
        return 1
    if k == 0:
        return 0
    return partition_count(d, k - 1) + (partition_count(d - k, k) if d >= k else 0)


def restricted_growth_strings(m: int) -> Iterator[tuple[int, ...]]:
    """Block labels a_1..a_m with a_1 = 0 and a_i <= 1 + max(a_1..a_{i-1})."""
    if m == 0:
        yield ()
        return
    a = [0] * m

    def rec(i: int, top: int) -> Iterator[tuple[int, ...]]:
        if i == m:
            yield tuple(a)
            return
        for v in range(top + 2):
            a[i] = v
            yield from rec(i + 1, max(top, v))

    a[0] = 0
    yield from rec(1, 0)


def set_partitions(m: int) -> list[SetPartition]:
    """All Bell(m) set partitions of {1..m}, ordered by restricted growth string."""
    if m < 0:
        raise ValueError("m must be >= 0")
    out = []
    for rgs in restricted_growth_strings(m):
        nblocks = max(rgs, default=-1) + 1
        blocks: list[list[int]] = [[] for _ in range(nblocks)]
        for mark, b in enumerate(rgs, start=1):
            blocks[b].append(mark)
        out.append(tuple(tuple(b) for b in blocks))
    return out
