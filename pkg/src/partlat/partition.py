"""Canonical set partitions and the lattice primitives built on them.

A partition of ``{0, ..., n-1}`` is stored as its restricted-growth label
string: ``labels[0] == 0`` and every later label exceeds the maximum of the
earlier ones by at most one.  The form is unique per set partition, so
equality and hashing reduce to tuple comparison.

The order used throughout is refinement: ``leq(p, q)`` holds when every
block of ``p`` lies inside a block of ``q`` (``q`` is the coarser one).
Under this order the meet is the coarsest common refinement and the join
is the finest common coarsening; the bottom element is the all-singletons
partition and the top element is the single-block partition.

Atoms are the partitions with exactly one two-element block.  They are
indexed by the lexicographic order of their pairs ``(i, j)``, ``i < j``,
which fixes the coordinate order of indicator vectors and of everything
the fuzzy layer builds on top of them.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import combinations
from typing import Callable, Iterator, NamedTuple, Sequence

DEFAULT_MAX_N = 12
MAX_N_ENV = "PARTLAT_MAX_N"


class GroundSetMismatchError(ValueError):
    """Two partitions over different ground sets were combined."""


class EnumerationCapError(ValueError):
    """A request would enumerate more partitions than the configured cap allows."""


def enumeration_cap(default: int = DEFAULT_MAX_N) -> int:
    """Effective cap on ground-set size for enumeration-backed operations.

    The environment variable ``PARTLAT_MAX_N``, when set, overrides every
    default cap in the package.
    """
    raw = os.environ.get(MAX_N_ENV)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError as exc:
        raise EnumerationCapError(f"{MAX_N_ENV} must be an integer, got {raw!r}") from exc


def _check_cap(n: int, default: int, what: str) -> None:
    cap = enumeration_cap(default)
    if n > cap:
        raise EnumerationCapError(
            f"{what} supports n <= {cap}, got n = {n} (set {MAX_N_ENV} to override)"
        )


@dataclass(frozen=True)
class Partition:
    """A set partition of ``{0, ..., n-1}`` in canonical restricted-growth form."""

    labels: tuple[int, ...]

    def __post_init__(self) -> None:
        labels = tuple(self.labels)
        object.__setattr__(self, "labels", labels)
        if not labels:
            raise ValueError("a partition needs at least one element")
        top = -1
        for pos, lab in enumerate(labels):
            if not isinstance(lab, int) or lab < 0 or lab > top + 1:
                raise ValueError(
                    f"labels are not in restricted-growth form at position {pos}: {labels}"
                )
            if lab == top + 1:
                top = lab

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def num_blocks(self) -> int:
        return max(self.labels) + 1

    @cached_property
    def blocks(self) -> tuple[frozenset[int], ...]:
        """Blocks ordered by their smallest element."""
        acc: list[list[int]] = [[] for _ in range(self.num_blocks)]
        for i, lab in enumerate(self.labels):
            acc[lab].append(i)
        return tuple(frozenset(b) for b in acc)

    @cached_property
    def block_sizes(self) -> tuple[int, ...]:
        sizes = [0] * self.num_blocks
        for lab in self.labels:
            sizes[lab] += 1
        return tuple(sizes)

    @cached_property
    def class_vector(self) -> tuple[int, ...]:
        """Entry ``k-1`` counts the blocks of cardinality ``k``."""
        counts = [0] * self.n
        for s in self.block_sizes:
            counts[s - 1] += 1
        return tuple(counts)

    @cached_property
    def size(self) -> int:
        """Number of atoms finer than the partition: sum of C(|block|, 2)."""
        return sum(s * (s - 1) // 2 for s in self.block_sizes)

    @property
    def rank(self) -> int:
        return self.n - self.num_blocks

    @cached_property
    def entropy(self) -> float:
        """Base-2 entropy of the block proportions."""
        n = self.n
        return -sum((s / n) * math.log2(s / n) for s in self.block_sizes)

    @property
    def logical_entropy(self) -> float:
        """Normalised count of pairs split apart: (n(n-1) - 2*size) / n^2."""
        n = self.n
        return (n * (n - 1) - 2 * self.size) / (n * n)

    @property
    def cosize(self) -> int:
        """Number of two-block partitions coarser than this one: 2^(b-1) - 1."""
        return 2 ** (self.num_blocks - 1) - 1

    @cached_property
    def indicator_bits(self) -> int:
        """Indicator vector packed into an int; bit k is atom k in pair order."""
        bits = 0
        labels = self.labels
        for k, (i, j) in enumerate(atom_pairs(self.n)):
            if labels[i] == labels[j]:
                bits |= 1 << k
        return bits

    def __str__(self) -> str:
        return "|".join(
            " ".join(str(i) for i in sorted(b)) for b in self.blocks
        )


class AtomIndex(NamedTuple):
    """An atom's pair ``(i, j)`` with its position in lexicographic pair order."""

    i: int
    j: int
    k: int


@lru_cache(maxsize=64)
def atom_pairs(n: int) -> tuple[tuple[int, int], ...]:
    """All pairs ``(i, j)`` with ``i < j < n`` in lexicographic order."""
    return tuple(combinations(range(n), 2))


@lru_cache(maxsize=64)
def atoms(n: int) -> tuple[AtomIndex, ...]:
    return tuple(AtomIndex(i, j, k) for k, (i, j) in enumerate(atom_pairs(n)))


def atom_index(n: int, i: int, j: int) -> int:
    """Linear position of the atom with pair ``{i, j}`` among C(n, 2) atoms."""
    if not 0 <= i < j < n:
        raise ValueError(f"need 0 <= i < j < n, got i={i}, j={j}, n={n}")
    # pairs starting with i', i' < i, come first; then (i, i+1) .. (i, j)
    return i * n - i * (i + 1) // 2 + (j - i - 1)


def atom(n: int, i: int, j: int) -> Partition:
    """The partition whose only non-singleton block is the pair ``{i, j}``."""
    if not 0 <= i < j < n:
        raise ValueError(f"need 0 <= i < j < n, got i={i}, j={j}, n={n}")
    raw = list(range(n))
    raw[j] = raw[i]
    return canonicalize(raw)


@dataclass(frozen=True)
class IndicatorVector:
    """Boolean vector over atoms; entry k is 1 iff atom k is finer than P.

    Construction enforces the closure law making the vector realisable by a
    partition: whenever ``{i,j}`` and ``{j,k}`` are co-blocked, so is ``{i,k}``.
    """

    n: int
    bits: tuple[int, ...]

    def __post_init__(self) -> None:
        k = self.n * (self.n - 1) // 2
        bits = tuple(int(b) for b in self.bits)
        object.__setattr__(self, "bits", bits)
        if len(bits) != k:
            raise ValueError(f"expected {k} entries for n = {self.n}, got {len(bits)}")
        if any(b not in (0, 1) for b in bits):
            raise ValueError("indicator entries must be 0 or 1")
        for i, j, l in combinations(range(self.n), 3):
            ij = bits[atom_index(self.n, i, j)]
            jl = bits[atom_index(self.n, j, l)]
            il = bits[atom_index(self.n, i, l)]
            if ij + jl + il == 2:
                raise ValueError(
                    f"co-blocking is not transitively closed on elements {i}, {j}, {l}"
                )

    def as_int(self) -> int:
        out = 0
        for k, b in enumerate(self.bits):
            if b:
                out |= 1 << k
        return out


class PartitionFunctionals(NamedTuple):
    rank: int
    size: int
    entropy: float
    logical_entropy: float
    cosize: int
    class_vector: tuple[int, ...]


@dataclass(frozen=True)
class FunctionalDescriptor:
    """A symmetric partition functional with its declared order behaviour.

    ``order_direction`` is ``"preserving"`` (coarser means larger) or
    ``"inverting"``; ``modularity`` is ``"supermodular"`` or ``"submodular"``.
    The declarations drive the closed-form distance dispatch and the choice
    of meet versus join as the canonical waypoint of minimum-weight paths.
    """

    name: str
    order_direction: str
    modularity: str
    evaluate: Callable[[Partition], float]

    def __post_init__(self) -> None:
        if self.order_direction not in ("preserving", "inverting"):
            raise ValueError(f"bad order_direction {self.order_direction!r}")
        if self.modularity not in ("supermodular", "submodular"):
            raise ValueError(f"bad modularity {self.modularity!r}")


FUNCTIONALS: dict[str, FunctionalDescriptor] = {
    "size": FunctionalDescriptor(
        "size", "preserving", "supermodular", lambda p: p.size
    ),
    "rank": FunctionalDescriptor(
        "rank", "preserving", "submodular", lambda p: p.rank
    ),
    "entropy": FunctionalDescriptor(
        "entropy", "inverting", "submodular", lambda p: p.entropy
    ),
    "logical_entropy": FunctionalDescriptor(
        "logical_entropy", "inverting", "submodular", lambda p: p.logical_entropy
    ),
    "cosize": FunctionalDescriptor(
        "cosize", "inverting", "supermodular", lambda p: p.cosize
    ),
}


def canonicalize(raw_labels: Sequence) -> Partition:
    """Relabel an arbitrary label sequence in first-occurrence order.

    Any two sequences inducing the same grouping of positions produce the
    same canonical partition; labels may be any hashable values.
    """
    if len(raw_labels) == 0:
        raise ValueError("cannot canonicalize an empty label sequence")
    seen: dict = {}
    out = []
    for lab in raw_labels:
        if lab not in seen:
            seen[lab] = len(seen)
        out.append(seen[lab])
    return Partition(tuple(out))


def bottom(n: int) -> Partition:
    """All-singletons partition."""
    return Partition(tuple(range(n)))


def top(n: int) -> Partition:
    """Single-block partition."""
    return Partition((0,) * n)


def _same_n(p: Partition, q: Partition) -> int:
    if p.n != q.n:
        raise GroundSetMismatchError(f"ground sets differ: {p.n} vs {q.n}")
    return p.n


def leq(p: Partition, q: Partition) -> bool:
    """True iff ``q`` coarsens ``p``: every block of ``p`` sits inside one of ``q``."""
    _same_n(p, q)
    image: dict[int, int] = {}
    for pl, ql in zip(p.labels, q.labels):
        if image.setdefault(pl, ql) != ql:
            return False
    return True


def meet(p: Partition, q: Partition) -> Partition:
    """Coarsest common refinement: blocks are the non-empty block intersections."""
    _same_n(p, q)
    return canonicalize(tuple(zip(p.labels, q.labels)))


def join(p: Partition, q: Partition) -> Partition:
    """Finest common coarsening: connected components of the union of co-blockings."""
    n = _same_n(p, q)
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for labels in (p.labels, q.labels):
        first: dict[int, int] = {}
        for i, lab in enumerate(labels):
            if lab in first:
                ri, rj = find(first[lab]), find(i)
                if ri != rj:
                    parent[max(ri, rj)] = min(ri, rj)
            else:
                first[lab] = i
    return canonicalize([find(i) for i in range(n)])


def indicator(p: Partition) -> IndicatorVector:
    """Indicator vector of ``p`` over atoms in lexicographic pair order."""
    labels = p.labels
    bits = tuple(1 if labels[i] == labels[j] else 0 for i, j in atom_pairs(p.n))
    return IndicatorVector(p.n, bits)


def functionals(p: Partition) -> PartitionFunctionals:
    """All bundled functionals of ``p`` in one record."""
    return PartitionFunctionals(
        rank=p.rank,
        size=p.size,
        entropy=p.entropy,
        logical_entropy=p.logical_entropy,
        cosize=p.cosize,
        class_vector=p.class_vector,
    )


def iter_partitions(n: int) -> Iterator[Partition]:
    """Yield all partitions of ``n`` elements in restricted-growth lexicographic order."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    labels = [0] * n
    maxes = [0] * n
    while True:
        yield Partition(tuple(labels))
        i = n - 1
        while i > 0 and labels[i] == maxes[i - 1] + 1:
            i -= 1
        if i == 0:
            return
        labels[i] += 1
        maxes[i] = max(maxes[i - 1], labels[i])
        for j in range(i + 1, n):
            labels[j] = 0
            maxes[j] = maxes[i]


def enumerate_partitions(n: int) -> list[Partition]:
    """All B_n partitions of ``n`` elements, lexicographic in label strings."""
    _check_cap(n, DEFAULT_MAX_N, "partition enumeration")
    if n <= _CACHED_ENUM_MAX_N:
        return list(_cached_enumeration(n))
    return list(iter_partitions(n))


_CACHED_ENUM_MAX_N = 8


@lru_cache(maxsize=_CACHED_ENUM_MAX_N)
def _cached_enumeration(n: int) -> tuple[Partition, ...]:
    return tuple(iter_partitions(n))


@lru_cache(maxsize=64)
def bell_number(n: int) -> int:
    """Number of partitions of an ``n``-set, by the binomial recursion."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return 1
    return sum(math.comb(n - 1, k) * bell_number(k) for k in range(n))


class CoveringNeighbors(NamedTuple):
    coarsenings: tuple[Partition, ...]
    refinements: tuple[Partition, ...]


def covering_neighbors(p: Partition) -> CoveringNeighbors:
    """Partitions covering ``p`` (block merges) and covered by it (block splits).

    There are C(b, 2) coarsenings for b blocks and, for each block A,
    2^(|A|-1) - 1 ways to split it into two non-empty parts.
    """
    labels = p.labels
    blocks = [sorted(b) for b in p.blocks]
    coarser = []
    for a in range(len(blocks)):
        for b in range(a + 1, len(blocks)):
            merged = list(labels)
            for e in blocks[b]:
                merged[e] = labels[blocks[a][0]]
            coarser.append(canonicalize(merged))
    finer = []
    fresh = p.num_blocks
    for block in blocks:
        if len(block) < 2:
            continue
        head, rest = block[0], block[1:]
        # head stays put; every non-empty subset of the rest moves out
        for mask in range(1, 1 << len(rest)):
            split = list(labels)
            for t, e in enumerate(rest):
                if mask >> t & 1:
                    split[e] = fresh
            finer.append(canonicalize(split))
    return CoveringNeighbors(tuple(coarser), tuple(finer))


def complements(p: Partition) -> list[Partition]:
    """All partitions meeting ``p`` at bottom and joining it at top.

    Filtered enumeration in label order.  The meet test uses the fact that
    the meet is bottom exactly when the two partitions co-block no common
    pair, i.e. their indicator bit masks are disjoint.
    """
    _check_cap(p.n, DEFAULT_MAX_N, "complement enumeration")
    mask = p.indicator_bits
    out = []
    for q in enumerate_partitions(p.n):
        if mask & q.indicator_bits:
            continue
        if join(p, q).num_blocks == 1:
            out.append(q)
    return out


def is_modular(p: Partition) -> bool:
    """True iff at most one block is a non-singleton."""
    return sum(1 for s in p.block_sizes if s > 1) <= 1


def induced(p: Partition, elements: Sequence[int]) -> Partition:
    """Partition induced on a subset: non-empty block traces, re-indexed.

    ``elements`` are positions in ``{0, ..., n-1}``; the result is a
    partition of ``len(elements)`` items in the sorted order of the subset.
    """
    elems = sorted(set(elements))
    if not elems:
        raise ValueError("cannot induce a partition on an empty subset")
    if elems[0] < 0 or elems[-1] >= p.n:
        raise ValueError(f"subset {elems} is not within range(0, {p.n})")
    return canonicalize([p.labels[i] for i in elems])


def available_sizes(n: int) -> list[int]:
    """Sorted set of values taken by ``size`` over all partitions of ``n`` elements."""
    _check_cap(n, DEFAULT_MAX_N, "size enumeration")
    return sorted({q.size for q in enumerate_partitions(n)})
