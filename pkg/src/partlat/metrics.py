"""Pairwise distance measures between partitions.

All measures take two partitions over the same ground set.  The integral
ones (``hd``, ``mmd``, ``delta_rank``, ``delta_cosize``,
``relation_matrix_distance``) return exact ints; ``vi`` and
``delta_logical`` return floats computed in double precision.
"""

from __future__ import annotations

import enum
import math
from typing import NamedTuple

import numpy as np
from scipy.optimize import linear_sum_assignment

from .partition import (
    GroundSetMismatchError,
    Partition,
    _check_cap,
    _same_n,
    induced,
    join,
    meet,
)

MMD_ORACLE_MAX_N = 20


class DistanceKind(enum.Enum):
    """Tags for the bundled distance measures, with one evaluator each."""

    HD = "hd"
    VI = "vi"
    MMD = "mmd"
    DELTA_RANK = "delta_rank"
    DELTA_LOGICAL = "delta_logical"
    DELTA_COSIZE = "delta_cosize"
    RELATION_MATRIX = "relation_matrix"

    def evaluate(self, p: Partition, q: Partition) -> float:
        return _EVALUATORS[self](p, q)

    @property
    def is_integral(self) -> bool:
        return self not in (DistanceKind.VI, DistanceKind.DELTA_LOGICAL)

    @classmethod
    def parse(cls, name: str) -> "DistanceKind":
        key = name.strip().lower()
        if key in _KIND_ALIASES:
            return _KIND_ALIASES[key]
        raise ValueError(
            f"unknown metric {name!r}; choose from {sorted(_KIND_ALIASES)}"
        )


def hd(p: Partition, q: Partition) -> int:
    """Atoms finer than exactly one of the two partitions.

    Equals size(p) + size(q) - 2*size(meet(p, q)); computed here as the
    Hamming weight of the XOR of the indicator vectors, which is the same
    count because the meet's indicator is the pointwise product.
    """
    _same_n(p, q)
    return (p.indicator_bits ^ q.indicator_bits).bit_count()


def vi(p: Partition, q: Partition) -> float:
    """Variation of information: 2*e(meet) - e(p) - e(q) with base-2 entropy."""
    _same_n(p, q)
    return 2.0 * meet(p, q).entropy - p.entropy - q.entropy


def mmd(p: Partition, q: Partition) -> int:
    """Minimum number of elements to delete so the induced partitions agree.

    Solved as a maximum-weight assignment between blocks with weights
    |A o B| on a square matrix padded with zeros; the distance is n minus
    the assignment value.
    """
    n = _same_n(p, q)
    b = max(p.num_blocks, q.num_blocks)
    weights = np.zeros((b, b), dtype=np.int64)
    for pl, ql in zip(p.labels, q.labels):
        weights[pl, ql] += 1
    rows, cols = linear_sum_assignment(weights, maximize=True)
    return n - int(weights[rows, cols].sum())


def mmd_oracle(p: Partition, q: Partition) -> int:
    """Reference matching distance by direct scan over all non-empty subsets.

    Minimises the number of deleted elements over every subset on which the
    induced partitions coincide.  Exponential in n; capped accordingly.
    """
    n = _same_n(p, q)
    _check_cap(n, MMD_ORACLE_MAX_N, "subset-scan matching distance")
    best = n - 1  # singleton subsets always agree
    for mask in range(1, 1 << n):
        elems = [i for i in range(n) if mask >> i & 1]
        removed = n - len(elems)
        if removed >= best:
            continue
        if induced(p, elems) == induced(q, elems):
            best = removed
    return best


def delta_rank(p: Partition, q: Partition) -> int:
    """Rank-weighted path distance: |p| + |q| - 2|join(p, q)| block counts."""
    _same_n(p, q)
    return p.num_blocks + q.num_blocks - 2 * join(p, q).num_blocks


def delta_logical(p: Partition, q: Partition) -> float:
    """Logical-entropy-weighted path distance: 2*h(meet) - h(p) - h(q)."""
    _same_n(p, q)
    return 2.0 * meet(p, q).logical_entropy - p.logical_entropy - q.logical_entropy


def delta_cosize(p: Partition, q: Partition) -> int:
    """Coatom-count-weighted path distance: cs(p) + cs(q) - 2*cs(join(p, q))."""
    _same_n(p, q)
    return p.cosize + q.cosize - 2 * join(p, q).cosize


def relation_matrix_distance(p: Partition, q: Partition) -> int:
    """Symmetric difference of the equivalence relations as ordered-pair sets.

    Counted over all ordered pairs including the diagonal, this is
    sum |A|^2 + sum |B|^2 - 2 sum |C|^2 over the blocks of p, q and their
    meet, and always equals twice ``hd``.
    """
    _same_n(p, q)
    sq = lambda part: sum(s * s for s in part.block_sizes)
    return sq(p) + sq(q) - 2 * sq(meet(p, q))


_EVALUATORS = {
    DistanceKind.HD: hd,
    DistanceKind.VI: vi,
    DistanceKind.MMD: mmd,
    DistanceKind.DELTA_RANK: delta_rank,
    DistanceKind.DELTA_LOGICAL: delta_logical,
    DistanceKind.DELTA_COSIZE: delta_cosize,
    DistanceKind.RELATION_MATRIX: relation_matrix_distance,
}

_KIND_ALIASES = {
    "hd": DistanceKind.HD,
    "vi": DistanceKind.VI,
    "mmd": DistanceKind.MMD,
    "rank": DistanceKind.DELTA_RANK,
    "delta_rank": DistanceKind.DELTA_RANK,
    "logical": DistanceKind.DELTA_LOGICAL,
    "delta_logical": DistanceKind.DELTA_LOGICAL,
    "cosize": DistanceKind.DELTA_COSIZE,
    "delta_cosize": DistanceKind.DELTA_COSIZE,
    "relation": DistanceKind.RELATION_MATRIX,
    "relation_matrix": DistanceKind.RELATION_MATRIX,
}


def max_distance(kind: DistanceKind, n: int) -> float:
    """Largest value the measure takes over partitions of an ``n``-set.

    Closed forms; each is attained by the bottom/top pair, which the tests
    cross-check against exhaustive enumeration at small n.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if kind is DistanceKind.HD:
        return n * (n - 1) // 2
    if kind is DistanceKind.VI:
        return math.log2(n)
    if kind in (DistanceKind.MMD, DistanceKind.DELTA_RANK):
        return n - 1
    if kind is DistanceKind.DELTA_LOGICAL:
        return (n - 1) / n
    if kind is DistanceKind.DELTA_COSIZE:
        return 2 ** (n - 1) - 1
    if kind is DistanceKind.RELATION_MATRIX:
        return n * n - n
    raise ValueError(f"unknown kind {kind}")


class ComplementBounds(NamedTuple):
    lower: int
    upper: int
    lower_tight: bool


def complement_hd_bounds(p: Partition) -> ComplementBounds:
    """Bounds on ``hd(p, q)`` over minimal complements ``q`` of ``p``.

    ``lower`` is size(p) + |p| - 1, ``upper`` is size(p) + C(|p|, 2).
    ``lower_tight`` flags whether the lower bound is attained: exactly when
    c1 <= 2 + sum (k-2)*c_k, i.e. the singletons of ``p`` can be matched
    into pairwise-disjoint cross-block pairs.

    The upper value is always attained (by the modular complement with one
    transversal block).  As bounds these hold over the complements that are
    joins of |p| - 1 atoms; complements with redundant cross-links can
    exceed ``upper``.
    """
    b = p.num_blocks
    c = p.class_vector
    lower = p.size + b - 1
    upper = p.size + b * (b - 1) // 2
    slack = 2 + sum((k - 2) * c[k - 1] for k in range(2, p.n + 1))
    return ComplementBounds(lower, upper, c[0] <= slack)


class BalancedComplementError(ValueError):
    """The balanced-complement size formula does not apply to this partition.

    Raised when c1 <= 2 + sum (k-2)*c_k, in which case the generic lower
    bound size(p) + |p| - 1 on complement distances applies instead.
    """


def min_complement_size(p: Partition) -> int:
    """Smallest ``size`` among complements, for singleton-heavy partitions.

    Applies only when 2 + sum (k-2)*c_k < c1: the complements then have at
    most theta = 1 + sum c_k*(k-1) blocks, and the minimum is the size of a
    theta-block partition with block cardinalities floor(n/theta) and
    ceil(n/theta).
    """
    c = p.class_vector
    n = p.n
    slack = 2 + sum((k - 2) * c[k - 1] for k in range(2, n + 1))
    if c[0] <= slack:
        raise BalancedComplementError(
            "formula needs more singletons than matchable elements; "
            f"the generic lower bound size + blocks - 1 = {p.size + p.num_blocks - 1} "
            "applies instead"
        )
    theta = 1 + sum(c[k - 1] * (k - 1) for k in range(2, n + 1))
    lo, hi = n // theta, -(-n // theta)
    n_lo = theta * (lo + 1) - n
    n_hi = n - theta * lo
    return n_lo * (lo * (lo - 1) // 2) + n_hi * (hi * (hi - 1) // 2)
