"""Shared test helpers."""

from __future__ import annotations

import random

from partlat import FuzzyPartition, MembershipMatrix, Partition, canonicalize

BELL = [1, 1, 2, 5, 15, 52, 203, 877, 4140, 21147, 115975, 678570, 4213597]


def part(compact: str) -> Partition:
    """Parse 1-based single-digit block notation like "135|27|46".

    Every element from 1 to the total count must appear exactly once; the
    result is the canonical 0-based partition.
    """
    blocks = compact.split("|")
    n = sum(len(b) for b in blocks)
    labels = [None] * n
    for which, block in enumerate(blocks):
        for ch in block:
            idx = int(ch) - 1
            assert 0 <= idx < n and labels[idx] is None, f"bad block notation {compact!r}"
            labels[idx] = which
    assert all(l is not None for l in labels), f"bad block notation {compact!r}"
    return canonicalize(labels)


def random_membership(rng: random.Random, n: int, m: int) -> MembershipMatrix:
    rows = []
    for _ in range(n):
        weights = [rng.random() for _ in range(m)]
        total = sum(weights)
        rows.append([w / total for w in weights])
    return MembershipMatrix(rows)


def random_fuzzy(rng: random.Random, n: int) -> FuzzyPartition:
    from partlat import embed

    return embed(random_membership(rng, n, rng.randint(1, n)))
