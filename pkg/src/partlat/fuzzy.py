"""Fuzzy partitions: membership-matrix embedding and vertex decomposition.

A membership matrix assigns each element a distribution over clusters.  Its
embedding is a point of ``[0,1]^C(n,2)`` indexed by atoms: the coordinate
of pair ``{i, j}`` is the probability that i and j land in the same
cluster, summed over clusters whose support contains both.  Hard matrices
embed onto indicator vectors; row-stochastic ones land inside the convex
hull of the indicator vectors, certified here by an explicit convex
decomposition over partitions.

Order, meet and join extend from indicator vectors to the whole hull:
order is coordinate dominance, the meet is the coordinate product, and the
join is a max-product closure (a single update step is also exposed, but
one step does not reach the hard join once a chain of length two is needed
to connect a pair).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import nnls

from .partition import (
    GroundSetMismatchError,
    IndicatorVector,
    Partition,
    atom_pairs,
    bottom,
    canonicalize,
    enumerate_partitions,
    top,
)

ROW_SUM_TOL = 1e-9
RESIDUAL_TOL = 1e-9
DECOMPOSE_FALLBACK_MAX_N = 7

_ZERO = 1e-12


class MembershipMatrix:
    """Row-stochastic n-by-m matrix with optional per-cluster supports.

    ``entries[i][l]`` is the membership of element ``i`` in cluster ``l``;
    each row must sum to 1 within ``row_sum_tol`` and an element may only
    have positive membership in clusters whose support contains it.
    Cluster supports default to the full ground set.
    """

    def __init__(self, entries, supports=None, *, row_sum_tol: float = ROW_SUM_TOL):
        rows = tuple(tuple(float(x) for x in row) for row in entries)
        if not rows or not rows[0]:
            raise ValueError("membership matrix needs at least one row and one column")
        m = len(rows[0])
        if any(len(row) != m for row in rows):
            raise ValueError("ragged membership matrix")
        n = len(rows)
        if not 1 <= m <= 2**n - 1:
            raise ValueError(f"cluster count {m} outside 1..2^n-1 for n = {n}")
        if supports is None:
            supp = tuple(frozenset(range(n)) for _ in range(m))
        else:
            supp = tuple(frozenset(int(e) for e in s) for s in supports)
            if len(supp) != m:
                raise ValueError(f"expected {m} supports, got {len(supp)}")
            for s in supp:
                if s and (min(s) < 0 or max(s) >= n):
                    raise ValueError(f"support {sorted(s)} outside range(0, {n})")
        for i, row in enumerate(rows):
            if any(x < 0.0 or x > 1.0 for x in row):
                raise ValueError(f"memberships of element {i} outside [0, 1]")
            if abs(sum(row) - 1.0) > row_sum_tol:
                raise ValueError(
                    f"memberships of element {i} sum to {sum(row)!r}, not 1"
                )
            for l, x in enumerate(row):
                if x > 0.0 and i not in supp[l]:
                    raise ValueError(
                        f"element {i} has positive membership in cluster {l} "
                        "outside its support"
                    )
        self.entries = rows
        self.supports = supp

    @property
    def n(self) -> int:
        return len(self.entries)

    @property
    def m(self) -> int:
        return len(self.entries[0])


@dataclass(frozen=True)
class FuzzyPartition:
    """A point of ``[0,1]^C(n,2)`` indexed by atoms in lexicographic pair order.

    Hull membership is certified by ``decompose``, not assumed here.
    """

    n: int
    coords: tuple[float, ...]

    def __post_init__(self) -> None:
        coords = tuple(float(c) for c in self.coords)
        object.__setattr__(self, "coords", coords)
        k = self.n * (self.n - 1) // 2
        if len(coords) != k:
            raise ValueError(f"expected {k} coordinates for n = {self.n}, got {len(coords)}")
        if any(c < 0.0 or c > 1.0 for c in coords):
            raise ValueError("coordinates must lie in [0, 1]")

    @classmethod
    def from_indicator(cls, iv: IndicatorVector) -> "FuzzyPartition":
        return cls(iv.n, tuple(float(b) for b in iv.bits))

    @classmethod
    def from_partition(cls, p: Partition) -> "FuzzyPartition":
        bits = p.indicator_bits
        k = p.n * (p.n - 1) // 2
        return cls(p.n, tuple(float(bits >> i & 1) for i in range(k)))


@dataclass(frozen=True)
class ConvexCombination:
    """Weighted partitions reconstructing a target point, with the leftover error.

    ``residual_norm`` is the largest absolute reconstruction error across
    coordinates and the coefficient total; 0 (within tolerance) certifies
    hull membership.
    """

    terms: tuple[tuple[Partition, float], ...]
    residual_norm: float

    @property
    def ok(self) -> bool:
        return self.residual_norm <= RESIDUAL_TOL

    def coefficient_total(self) -> float:
        return sum(a for _, a in self.terms)


def combination_residual(
    terms, target: FuzzyPartition
) -> float:
    """Reconstruction error of weighted partitions against a target point.

    Returns the max over coordinates of |sum a_P * I_P - target| together
    with |sum a_P - 1|, whichever is larger.  Negative coefficients are
    rejected outright.
    """
    k = len(target.coords)
    recon = [0.0] * k
    total = 0.0
    for p, a in terms:
        if p.n != target.n:
            raise GroundSetMismatchError(f"term over n = {p.n}, target over n = {target.n}")
        if a < 0:
            raise ValueError(f"negative coefficient {a} for {p}")
        total += a
        bits = p.indicator_bits
        for i in range(k):
            if bits >> i & 1:
                recon[i] += a
    err = max((abs(r - t) for r, t in zip(recon, target.coords)), default=0.0)
    return max(err, abs(total - 1.0))


def embed(matrix: MembershipMatrix) -> FuzzyPartition:
    """Map a membership matrix to its atom-indexed co-clustering probabilities.

    Coordinate ``{i, j}`` is the sum over clusters containing both i and j
    of the product of their memberships.  Hard matrices land exactly on the
    indicator vector of the partition their columns describe.
    """
    rows, supports = matrix.entries, matrix.supports
    coords = []
    for i, j in atom_pairs(matrix.n):
        coords.append(
            sum(
                rows[i][l] * rows[j][l]
                for l in range(matrix.m)
                if i in supports[l] and j in supports[l]
            )
        )
    return FuzzyPartition(matrix.n, tuple(coords))


def _coarsest_avoiding(n: int, seed: tuple[int, int], forbidden: set[tuple[int, int]]) -> Partition:
    # Start from the seed pair's block and greedily merge blocks in
    # lexicographic order, refusing any merge that would co-block a
    # forbidden pair.  Deterministic; maximal rather than maximum.
    labels = list(range(n))
    labels[seed[1]] = labels[seed[0]]
    while True:
        blocks: dict[int, list[int]] = {}
        for e, lab in enumerate(labels):
            blocks.setdefault(lab, []).append(e)
        keys = sorted(blocks, key=lambda k: min(blocks[k]))
        merged = False
        for a in range(len(keys)):
            for b in range(a + 1, len(keys)):
                ba, bb = blocks[keys[a]], blocks[keys[b]]
                if any(
                    (min(x, y), max(x, y)) in forbidden for x in ba for y in bb
                ):
                    continue
                for e in bb:
                    labels[e] = keys[a]
                merged = True
                break
            if merged:
                break
        if not merged:
            return canonicalize(labels)


def _greedy_decompose(y: FuzzyPartition) -> tuple[list[tuple[Partition, float]], float]:
    n = y.n
    pairs = atom_pairs(n)
    k = len(pairs)
    residual = list(y.coords)
    terms: list[tuple[Partition, float]] = []
    total = 0.0
    if k:
        alpha = min(residual)
        if alpha > _ZERO:
            terms.append((top(n), alpha))
            residual = [r - alpha for r in residual]
            total += alpha
    while True:
        active = [i for i in range(k) if residual[i] > _ZERO]
        if not active:
            break
        target = min(active, key=lambda i: (residual[i], i))
        forbidden = {pairs[i] for i in range(k) if residual[i] <= _ZERO}
        part = _coarsest_avoiding(n, pairs[target], forbidden)
        bits = part.indicator_bits
        support = [i for i in range(k) if bits >> i & 1]
        alpha = min(residual[i] for i in support)
        for i in support:
            residual[i] -= alpha
        total += alpha
        terms.append((part, alpha))
    slack = 1.0 - total
    if slack > _ZERO:
        terms.append((bottom(n), slack))
    return terms, combination_residual(terms, y)


def _nnls_decompose(y: FuzzyPartition) -> tuple[list[tuple[Partition, float]], float]:
    n = y.n
    k = len(y.coords)
    parts = enumerate_partitions(n)
    cols = np.zeros((k + 1, len(parts)))
    for col, p in enumerate(parts):
        bits = p.indicator_bits
        for i in range(k):
            cols[i, col] = bits >> i & 1
        cols[k, col] = 1.0
    rhs = np.concatenate([np.asarray(y.coords, dtype=float), [1.0]])
    weights, _ = nnls(cols, rhs)
    terms = [
        (parts[i], float(weights[i])) for i in np.nonzero(weights > _ZERO)[0]
    ]
    return terms, combination_residual(terms, y)


def decompose(y: FuzzyPartition, *, tol: float = RESIDUAL_TOL) -> ConvexCombination:
    """Express a point as a convex combination of partition indicator vectors.

    The primary route is greedy: peel off the top partition at the smallest
    coordinate, then repeatedly pick the smallest remaining coordinate's
    atom, take the coarsest partition coarser than it that co-blocks no
    exhausted atom, and assign the largest coefficient keeping every
    residual coordinate nonnegative; the bottom partition absorbs the final
    slack.  When the greedy residual exceeds ``tol`` a nonnegative
    least-squares solve over all vertices takes over (desk scale only).  A
    combination with ``residual_norm`` above ``tol`` certifies nothing; for
    points inside the hull the returned residual is zero up to rounding.
    """
    if y.n == 1:
        return ConvexCombination(((top(1), 1.0),), 0.0)
    terms, err = _greedy_decompose(y)
    if err > tol and y.n <= DECOMPOSE_FALLBACK_MAX_N:
        fb_terms, fb_err = _nnls_decompose(y)
        if fb_err < err:
            terms, err = fb_terms, fb_err
    return ConvexCombination(tuple(terms), err)


def _same_fuzzy_n(a: FuzzyPartition, b: FuzzyPartition) -> int:
    if a.n != b.n:
        raise GroundSetMismatchError(f"ground sets differ: {a.n} vs {b.n}")
    return a.n


def fuzzy_distance(a: FuzzyPartition, b: FuzzyPartition, norm: str = "l1") -> float:
    """Coordinate-wise l1 or l2 distance between two points."""
    _same_fuzzy_n(a, b)
    if norm == "l1":
        return sum(abs(x - y) for x, y in zip(a.coords, b.coords))
    if norm == "l2":
        return math.sqrt(sum((x - y) ** 2 for x, y in zip(a.coords, b.coords)))
    raise ValueError(f"norm must be 'l1' or 'l2', got {norm!r}")


def fuzzy_leq(a: FuzzyPartition, b: FuzzyPartition) -> bool:
    """Coordinate dominance: a <= b everywhere (b is the coarser point)."""
    _same_fuzzy_n(a, b)
    return all(x <= y for x, y in zip(a.coords, b.coords))


def fuzzy_meet(a: FuzzyPartition, b: FuzzyPartition) -> FuzzyPartition:
    """Coordinate product; on indicator vectors this is the meet's indicator."""
    _same_fuzzy_n(a, b)
    return FuzzyPartition(a.n, tuple(x * y for x, y in zip(a.coords, b.coords)))


def fuzzy_join(
    a: FuzzyPartition, b: FuzzyPartition, mode: str = "closure"
) -> FuzzyPartition:
    """Max-product join of two points.

    ``onestep`` applies the one-shot rule literally: the pair coordinate is
    the max of the two direct values and of products a[{i,i'}] * b[{j,i'}]
    over third elements i'.  ``closure`` first merges both points by
    coordinate max and then iterates the symmetric max-product update to a
    fixpoint; restricted to indicator vectors the closure reproduces the
    hard join, which one step alone does not once n >= 4.
    """
    n = _same_fuzzy_n(a, b)
    pairs = atom_pairs(n)
    pos = {pr: idx for idx, pr in enumerate(pairs)}

    def at(coords, x, y):
        return coords[pos[(x, y) if x < y else (y, x)]]

    if mode == "onestep":
        out = []
        for i, j in pairs:
            best = max(at(a.coords, i, j), at(b.coords, i, j))
            for other in range(n):
                if other == i or other == j:
                    continue
                best = max(best, at(a.coords, i, other) * at(b.coords, j, other))
            out.append(best)
        return FuzzyPartition(n, tuple(out))
    if mode != "closure":
        raise ValueError(f"mode must be 'onestep' or 'closure', got {mode!r}")

    current = [max(x, y) for x, y in zip(a.coords, b.coords)]
    while True:
        delta = 0.0
        for idx, (i, j) in enumerate(pairs):
            best = current[idx]
            for other in range(n):
                if other == i or other == j:
                    continue
                cand = at(current, i, other) * at(current, j, other)
                if cand > best:
                    best = cand
            if best > current[idx]:
                delta = max(delta, best - current[idx])
                current[idx] = best
        if delta < 1e-12:
            return FuzzyPartition(n, tuple(current))
