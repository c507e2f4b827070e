"""Shared test utilities."""

from __future__ import annotations

import random

from bitweave.cachesim import CacheLevelSpec, HierarchySpec
from bitweave.layout import Layout, Shape


def random_layout(rng: random.Random, shape: Shape) -> Layout:
    """A uniformly random bijective layout for the shape (Fisher-Yates)."""
    seq: list[int] = []
    for d, b in enumerate(shape.bits):
        seq.extend([d] * b)
    rng.shuffle(seq)
    return Layout(tuple(seq), shape)


def naive_interleave(ranks: tuple[int, ...], coord: tuple[int, ...]) -> int:
    """Independent string-based oracle for the coordinate-to-index map.

    Consumes the bits of each coordinate least significant first by walking
    the rank sequence, assembling the output as a binary string.
    """
    queues = [list(reversed(format(x, "b"))) for x in coord]
    out = ""
    for d in ranks:
        q = queues[d]
        out = (q.pop(0) if q else "0") + out
    return int(out, 2)


class RecencyListLRU:
    """Brute-force single-level LRU reference.

    Keeps an explicit recency list per set (most recent last) and answers
    hit/miss per access.  Deliberately structured differently from the
    simulator under test.
    """

    def __init__(self, sets: int, ways: int, line: int) -> None:
        self.nsets = sets
        self.ways = ways
        self.line = line
        self.lists: list[list[int]] = [[] for _ in range(sets)]

    def access(self, address: int) -> bool:
        line = address // self.line
        recency = self.lists[line % self.nsets]
        if line in recency:
            recency.remove(line)
            recency.append(line)
            return True
        if len(recency) >= self.ways:
            recency.pop(0)
        recency.append(line)
        return False


def single_level(
    sets: int, ways: int, line: int, latency: int = 4, memory_latency: int = 100
) -> HierarchySpec:
    """A minimal one-level hierarchy used across the tests."""
    return HierarchySpec(
        levels=(
            CacheLevelSpec(name="L1", sets=sets, ways=ways, line=line, latency=latency),
        ),
        memory_latency=memory_latency,
        first="L1",
        last="L1",
    )
