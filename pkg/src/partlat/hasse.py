"""Covering graph of the partition lattice and minimum-weight path machinery.

The graph has one vertex per partition and one undirected edge per covering
pair.  Given a strictly order-preserving or order-inverting symmetric
functional f, each edge carries weight |f difference| across the covering
pair, and the induced path metric admits a closed form that depends only on
whether f is supermodular or submodular and on its order direction:

    preserving, supermodular:  f(P) + f(Q) - 2 f(P meet Q)
    preserving, submodular:    2 f(P join Q) - f(P) - f(Q)
    inverting,  supermodular:  f(P) + f(Q) - 2 f(P join Q)
    inverting,  submodular:    2 f(P meet Q) - f(P) - f(Q)

The meet (first and last rows) or join (middle rows) appearing in the
closed form is the canonical waypoint: a minimum-weight path routed through
it always exists, and ``min_weight_path`` returns that path.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Callable, NamedTuple

from .partition import (
    FUNCTIONALS,
    FunctionalDescriptor,
    Partition,
    _check_cap,
    _same_n,
    covering_neighbors,
    enumerate_partitions,
    join,
    leq,
    meet,
)

HASSE_MAX_N = 9
CLASSIFY_MAX_N = 6

_FLOAT_TOL = 1e-9


class ZeroWeightEdgeError(ValueError):
    """The weighting functional is not strictly monotone across some covering pair."""


@dataclass(frozen=True)
class HasseGraph:
    """Covering graph at fixed n: dense vertex indexing in enumeration order."""

    n: int
    vertices: tuple[Partition, ...]
    adjacency: tuple[tuple[int, ...], ...]
    index: dict[Partition, int] = field(repr=False)

    @property
    def edge_count(self) -> int:
        return sum(len(nbrs) for nbrs in self.adjacency) // 2

    def vertex_index(self, p: Partition) -> int:
        try:
            return self.index[p]
        except KeyError:
            raise ValueError(f"{p} is not a vertex of this graph (n = {self.n})") from None


@dataclass(frozen=True)
class WeightedPath:
    """A walk along covering pairs with its total weight."""

    vertices: tuple[Partition, ...]
    weight: float


def build_hasse(n: int) -> HasseGraph:
    """Build the covering graph on all partitions of ``n`` elements.

    Edges are collected once from the finer side via block merges, so the
    edge count equals the sum of C(|P|, 2) over all vertices.
    """
    _check_cap(n, HASSE_MAX_N, "covering-graph construction")
    vertices = tuple(enumerate_partitions(n))
    index = {v: i for i, v in enumerate(vertices)}
    neighbors: list[list[int]] = [[] for _ in vertices]
    for i, v in enumerate(vertices):
        for coarser in covering_neighbors(v).coarsenings:
            j = index[coarser]
            neighbors[i].append(j)
            neighbors[j].append(i)
    return HasseGraph(
        n=n,
        vertices=vertices,
        adjacency=tuple(tuple(sorted(nbrs)) for nbrs in neighbors),
        index=index,
    )


def _resolve(f: FunctionalDescriptor | str) -> FunctionalDescriptor:
    if isinstance(f, str):
        try:
            return FUNCTIONALS[f]
        except KeyError:
            raise ValueError(
                f"unknown functional {f!r}; bundled ones are {sorted(FUNCTIONALS)}"
            ) from None
    return f


def _edge_values(g: HasseGraph, f: FunctionalDescriptor) -> list[float]:
    values = [f.evaluate(v) for v in g.vertices]
    for i, nbrs in enumerate(g.adjacency):
        for j in nbrs:
            if j > i and values[i] == values[j]:
                raise ZeroWeightEdgeError(
                    f"{f.name} takes equal values on the covering pair "
                    f"{g.vertices[i]} / {g.vertices[j]}"
                )
    return values


def _dijkstra(
    g: HasseGraph, values: list[float], source: int, avoid: int | None = None
) -> tuple[list[float], list[int]]:
    """Single-source shortest paths; deterministic tie-break by vertex index."""
    inf = float("inf")
    dist = [inf] * len(g.vertices)
    pred = [-1] * len(g.vertices)
    dist[source] = 0.0
    heap = [(0.0, source)]
    while heap:
        d, u = heapq.heappop(heap)
        if d > dist[u]:
            continue
        base = values[u]
        for v in g.adjacency[u]:
            if v == avoid:
                continue
            nd = d + abs(base - values[v])
            if nd < dist[v]:
                dist[v] = nd
                pred[v] = u
                heapq.heappush(heap, (nd, v))
    return dist, pred


def _walk_back(pred: list[int], target: int) -> list[int]:
    out = []
    t = target
    while t != -1:
        out.append(t)
        t = pred[t]
    out.reverse()
    return out


def predicted_waypoint(f: FunctionalDescriptor, p: Partition, q: Partition) -> Partition:
    """Meet or join of the pair, per the functional's closed-form row."""
    if (f.order_direction == "preserving") == (f.modularity == "supermodular"):
        return meet(p, q)
    return join(p, q)


def min_weight_path(
    g: HasseGraph,
    f: FunctionalDescriptor | str,
    p: Partition,
    q: Partition,
    *,
    avoid: Partition | None = None,
) -> WeightedPath:
    """Minimum-weight walk from ``p`` to ``q`` under |f difference| edge weights.

    The weight is computed by Dijkstra with a binary heap and is the path
    distance delta_f.  Among equal-weight minima the returned vertex
    sequence is routed through the functional's canonical waypoint (meet or
    join) whenever that routing is minimum, which the closed forms
    guarantee for the bundled functionals; otherwise the raw Dijkstra path
    is returned.  ``avoid`` excludes one vertex from consideration and
    disables the canonical routing.
    """
    f = _resolve(f)
    si, ti = g.vertex_index(p), g.vertex_index(q)
    values = _edge_values(g, f)
    avoid_i = g.vertex_index(avoid) if avoid is not None else None
    dist, pred = _dijkstra(g, values, si, avoid_i)
    best = dist[ti]
    if best == float("inf"):
        raise ValueError(f"no path from {p} to {q} under the given constraints")
    raw = [g.vertices[k] for k in _walk_back(pred, ti)]
    if avoid is None and p != q:
        w = predicted_waypoint(f, p, q)
        wi = g.vertex_index(w)
        dist_w, pred_w = _dijkstra(g, values, wi)
        if dist[wi] + dist_w[ti] <= best + _FLOAT_TOL:
            head = [g.vertices[k] for k in _walk_back(pred, wi)]
            tail = [g.vertices[k] for k in _walk_back(pred_w, ti)]
            return WeightedPath(tuple(head + tail[1:]), best)
    return WeightedPath(tuple(raw), best)


def closed_form_delta(
    f: FunctionalDescriptor | str, p: Partition, q: Partition
) -> float:
    """Closed-form value of the minimum-f-weight distance (table in module docs)."""
    f = _resolve(f)
    _same_n(p, q)
    fp, fq = f.evaluate(p), f.evaluate(q)
    if f.order_direction == "preserving":
        if f.modularity == "supermodular":
            return fp + fq - 2 * f.evaluate(meet(p, q))
        return 2 * f.evaluate(join(p, q)) - fp - fq
    if f.modularity == "supermodular":
        return fp + fq - 2 * f.evaluate(join(p, q))
    return 2 * f.evaluate(meet(p, q)) - fp - fq


class Classification(NamedTuple):
    symmetric: bool
    order_direction: str | None
    supermodular: bool
    submodular: bool
    totally_positive: bool


def classify(n: int, f: Callable[[Partition], float]) -> Classification:
    """Empirical classification of a partition functional by exhaustive checks.

    Symmetry is checked across class vectors, strict monotonicity across all
    covering pairs, the modular inequalities across all pairs, and total
    positivity through the bottom-up inversion of f over the lattice order.
    A functional that is both supermodular and submodular is modular.
    """
    _check_cap(n, CLASSIFY_MAX_N, "functional classification")
    parts = enumerate_partitions(n)
    values = {p: f(p) for p in parts}

    by_class: dict[tuple[int, ...], list[float]] = {}
    for p in parts:
        by_class.setdefault(p.class_vector, []).append(values[p])
    symmetric = all(
        max(vs) - min(vs) <= _FLOAT_TOL for vs in by_class.values()
    )

    up_gaps = []
    for p in parts:
        for coarser in covering_neighbors(p).coarsenings:
            up_gaps.append(values[coarser] - values[p])
    if up_gaps and all(gap > _FLOAT_TOL for gap in up_gaps):
        direction: str | None = "preserving"
    elif up_gaps and all(gap < -_FLOAT_TOL for gap in up_gaps):
        direction = "inverting"
    else:
        direction = None

    supermodular = True
    submodular = True
    for i, p in enumerate(parts):
        for q in parts[i + 1 :]:
            gap = values[join(p, q)] + values[meet(p, q)] - values[p] - values[q]
            if gap < -_FLOAT_TOL:
                supermodular = False
            if gap > _FLOAT_TOL:
                submodular = False
            if not (supermodular or submodular):
                break
        else:
            continue
        break

    inversion = moebius_inversion(n, f, "from_below")
    totally_positive = all(v >= -_FLOAT_TOL for v in inversion.values())

    return Classification(symmetric, direction, supermodular, submodular, totally_positive)


def moebius_inversion(
    n: int,
    f: Callable[[Partition], float],
    direction: str = "from_below",
) -> dict[Partition, float]:
    """Invert f over the lattice order so that summation recovers it.

    ``from_below`` returns mu with f(P) = sum of mu(Q) over Q <= P;
    ``from_above`` returns the dual with summation over Q >= P.  The result
    is re-summed against f before returning.
    """
    if direction not in ("from_below", "from_above"):
        raise ValueError(f"direction must be from_below or from_above, got {direction!r}")
    _check_cap(n, CLASSIFY_MAX_N, "lattice inversion")
    parts = enumerate_partitions(n)
    below = direction == "from_below"
    order = sorted(range(len(parts)), key=lambda i: parts[i].rank, reverse=not below)
    related = [
        [j for j in range(len(parts)) if j != i and _comparable(parts, i, j, below)]
        for i in range(len(parts))
    ]
    mu: list[float] = [0.0] * len(parts)
    for i in order:
        mu[i] = f(parts[i]) - sum(mu[j] for j in related[i])
    scale = max(1.0, max(abs(f(p)) for p in parts))
    for i, p in enumerate(parts):
        resum = mu[i] + sum(mu[j] for j in related[i])
        if abs(resum - f(p)) > 1e-6 * scale:
            raise ArithmeticError(
                f"inversion failed to re-sum at {p}: {resum} != {f(p)}"
            )
    return {parts[i]: mu[i] for i in range(len(parts))}


def _comparable(parts: list[Partition], i: int, j: int, below: bool) -> bool:
    return leq(parts[j], parts[i]) if below else leq(parts[i], parts[j])
