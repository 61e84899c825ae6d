"""Central-partition solving for collections of partitions.

Meet-collinear measures (``HD``, ``VI``, ``DELTA_LOGICAL``) aggregate an
instance by the meet of its elements, join-collinear ones (``DELTA_RANK``,
``DELTA_COSIZE``) by the join.  For a pair of partitions that aggregate
provably minimises the summed distance (collinearity plus the triangle
inequality); for three or more it can be beaten, already by the instance
{top, top, bottom} on two elements.  ``brute_force_consensus`` is the exact
solver at desk scale and the only route for ``MMD``, which has no
meet/join shortcut at all.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import NamedTuple

from .partition import (
    GroundSetMismatchError,
    Partition,
    _check_cap,
    atom_pairs,
    bottom,
    canonicalize,
    enumerate_partitions,
    join,
    meet,
)
from .metrics import DistanceKind, hd

BRUTE_FORCE_MAX_N = 7

MEET_BASED = frozenset(
    {DistanceKind.HD, DistanceKind.VI, DistanceKind.DELTA_LOGICAL}
)
JOIN_BASED = frozenset({DistanceKind.DELTA_RANK, DistanceKind.DELTA_COSIZE})


class UnsupportedMetricError(ValueError):
    """The metric admits no meet/join closed-form consensus."""


@dataclass(frozen=True)
class Instance:
    """A collection of partitions over one ground set."""

    partitions: tuple[Partition, ...]

    def __post_init__(self) -> None:
        parts = tuple(self.partitions)
        object.__setattr__(self, "partitions", parts)
        if not parts:
            raise ValueError("an instance needs at least one partition")
        n = parts[0].n
        if any(p.n != n for p in parts):
            raise GroundSetMismatchError("instance partitions span different ground sets")

    @property
    def n(self) -> int:
        return self.partitions[0].n

    @property
    def m(self) -> int:
        return len(self.partitions)


def _require_m2(inst: Instance) -> None:
    if inst.m < 2:
        raise ValueError(f"need at least 2 partitions, got {inst.m}")


class ConsensusResult(NamedTuple):
    partition: Partition
    objective: float


def consensus(inst: Instance, metric: DistanceKind) -> ConsensusResult:
    """Meet/join aggregate of the instance with its summed distance.

    Guaranteed to minimise the objective for two-element instances; for
    larger ones it is the canonical aggregation candidate but not always
    the minimiser, so compare against ``brute_force_consensus`` when an
    exact certificate matters.
    """
    _require_m2(inst)
    if metric in MEET_BASED:
        center = reduce(meet, inst.partitions)
    elif metric in JOIN_BASED:
        center = reduce(join, inst.partitions)
    else:
        raise UnsupportedMetricError(
            f"{metric.value} has no meet/join consensus; use brute_force_consensus"
        )
    objective = sum(metric.evaluate(center, p) for p in inst.partitions)
    return ConsensusResult(center, objective)


class BruteForceResult(NamedTuple):
    partitions: tuple[Partition, ...]
    objective: float


def brute_force_consensus(inst: Instance, metric: DistanceKind) -> BruteForceResult:
    """Exhaustive central-partition scan; returns every minimiser, in label order."""
    _require_m2(inst)
    _check_cap(inst.n, BRUTE_FORCE_MAX_N, "exhaustive consensus")
    tol = 0.0 if metric.is_integral else 1e-9
    best = float("inf")
    argmin: list[Partition] = []
    for q in enumerate_partitions(inst.n):
        objective = sum(metric.evaluate(q, p) for p in inst.partitions)
        if objective < best - tol:
            best = objective
            argmin = [q]
        elif objective <= best + tol:
            argmin.append(q)
    return BruteForceResult(tuple(argmin), best)


def dispersion(q: Partition, inst: Instance) -> float:
    """Summed triangle slack of ``q`` against all instance pairs.

    (1/(m-1)) * sum over pairs of HD(P_k, q) + HD(q, P_k') - HD(P_k, P_k');
    nonnegative, zero exactly for two-element instances evaluated at their
    meet, where every term collapses to twice the gap between the pair
    meet's size and ``q``'s size.  Up to an instance constant this equals
    the summed HD objective, so its minimisers are the HD central
    partitions; the instance meet is one of them only when it is.
    """
    _require_m2(inst)
    if q.n != inst.n:
        raise GroundSetMismatchError(f"ground sets differ: {q.n} vs {inst.n}")
    parts = inst.partitions
    total = 0
    for a in range(len(parts)):
        for b in range(a + 1, len(parts)):
            total += hd(parts[a], q) + hd(q, parts[b]) - hd(parts[a], parts[b])
    return total / (inst.m - 1)


@dataclass(frozen=True)
class FuzzyConsensus:
    """Atom-indexed agreement frequencies of an instance.

    ``counts[k]`` is the number of instance partitions co-blocking atom k;
    coordinates are ``counts / m``.  Keeping the integer counts makes the
    full-agreement test exact.
    """

    n: int
    m: int
    counts: tuple[int, ...]

    @property
    def coords(self) -> tuple[float, ...]:
        return tuple(c / self.m for c in self.counts)


def fuzzy_consensus(inst: Instance) -> FuzzyConsensus:
    """Coordinate mean of the instance indicator vectors."""
    n = inst.n
    k = n * (n - 1) // 2
    counts = [0] * k
    for p in inst.partitions:
        bits = p.indicator_bits
        for i in range(k):
            counts[i] += bits >> i & 1
    return FuzzyConsensus(n, inst.m, tuple(counts))


def strong_patterns(t: FuzzyConsensus) -> Partition:
    """Join of the atoms on which the consensus frequency is exactly 1.

    With no fully-agreed atom the join is empty and the result is the
    all-singletons partition.
    """
    n = t.n
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for (i, j), count in zip(atom_pairs(n), t.counts):
        if count == t.m:
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[max(ri, rj)] = min(ri, rj)
    return canonicalize([find(i) for i in range(n)])
