"""Graphic and partition matroids, matroid intersection, and the split polymatroid.

The intersection solver is the plain shortest-augmenting-path algorithm on
the exchange graph, with independence tested by rebuilt union-find oracles;
ground sets here are a few hundred elements at most, so nothing incremental
is attempted. When the maximum common independent set falls short of a
target rank, the reachability side of the final exchange graph is returned
as the covering certificate (max |I| = rank1(U) + rank2(ground - U)).

On top of the intersection sit the two polymatroid routines: optimizing the
per-vertex clique-edge counts of spanning trees containing the matching
(greedy over the contracted graphic matroid), and its box dual, which
maximizes nonnegative objectives over feasible split vectors.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .auxgraph import AuxGraph, AuxTree, spanning_tree
from .errors import UsageError
from .multigraph import MultiGraph


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[ra] = rb
        return True


@dataclass(frozen=True)
class GraphicMatroid:
    """Graphic matroid of a multigraph with some edges contracted away.

    The ground set is the remaining edge ids; a subset is independent iff it
    is acyclic after the contraction. The contracted set must be a forest.
    """

    graph: MultiGraph
    contracted: frozenset[int]
    ground: tuple[int, ...]

    def __post_init__(self):
        uf = _UnionFind(self.graph.n)
        for e in self.contracted:
            u, v = self.graph.edges[e]
            if not uf.union(u, v):
                raise UsageError("contracted edge set must be acyclic")

    def _seeded(self) -> _UnionFind:
        uf = _UnionFind(self.graph.n)
        for e in self.contracted:
            u, v = self.graph.edges[e]
            uf.union(u, v)
        return uf

    def is_independent(self, subset: Iterable[int]) -> bool:
        uf = self._seeded()
        for e in subset:
            u, v = self.graph.edges[e]
            if not uf.union(u, v):
                return False
        return True

    def rank(self, subset: Iterable[int]) -> int:
        uf = self._seeded()
        return sum(1 for e in subset if uf.union(*self.graph.edges[e]))

    def full_rank(self) -> int:
        return self.rank(self.ground)


@dataclass(frozen=True)
class PartitionMatroid:
    """Independence = at most capacity[i] elements from part i."""

    parts: tuple[tuple[int, ...], ...]
    capacities: tuple[int, ...]

    def __post_init__(self):
        if len(self.parts) != len(self.capacities):
            raise UsageError("one capacity per part required")
        if any(c < 0 for c in self.capacities):
            raise UsageError("capacities must be nonnegative")
        seen: set[int] = set()
        for part in self.parts:
            for x in part:
                if x in seen:
                    raise UsageError(f"element {x} appears in two parts")
                seen.add(x)
        object.__setattr__(
            self,
            "_part_of",
            {x: i for i, part in enumerate(self.parts) for x in part},
        )

    @property
    def ground(self) -> tuple[int, ...]:
        return tuple(x for part in self.parts for x in part)

    def part_of(self, x: int) -> int:
        return self._part_of[x]

    def is_independent(self, subset: Iterable[int]) -> bool:
        counts = [0] * len(self.parts)
        for x in subset:
            i = self._part_of[x]
            counts[i] += 1
            if counts[i] > self.capacities[i]:
                return False
        return True

    def rank(self, subset: Iterable[int]) -> int:
        counts = [0] * len(self.parts)
        for x in subset:
            counts[self._part_of[x]] += 1
        return sum(min(c, cap) for c, cap in zip(counts, self.capacities))


@dataclass(frozen=True)
class IntersectionResult:
    common: frozenset[int]
    # Elements from which the final exchange graph reaches an M2-addable
    # element; rank1(cut) + rank2(ground - cut) equals |common|.
    certificate_cut: frozenset[int]


def matroid_intersection(
    m1: GraphicMatroid, m2: PartitionMatroid
) -> IntersectionResult:
    """Maximum common independent set via shortest augmenting paths.

    Exchange tests are answered from precomputed component labelings (one
    forest per removable element) and partition counts, so building the
    exchange graph costs O(|I| * (|I| + |ground|)) oracle work per round.
    """
    ground = tuple(m1.ground)
    if set(ground) != set(m2.ground):
        raise UsageError("matroids must share one ground set")
    graph = m1.graph

    def component_labels(edge_ids: Iterable[int]) -> list[int]:
        uf = _UnionFind(graph.n)
        for e in m1.contracted:
            uf.union(*graph.edges[e])
        for e in edge_ids:
            uf.union(*graph.edges[e])
        return [uf.find(v) for v in range(graph.n)]

    current: set[int] = set()
    while True:
        inside = sorted(current)
        outside = [x for x in ground if x not in current]
        full = component_labels(current)
        labels_without = {
            y: component_labels(current - {y}) for y in inside
        }
        counts = [0] * len(m2.parts)
        for x in current:
            counts[m2.part_of(x)] += 1
        add1 = {
            z for z in outside if full[graph.edges[z][0]] != full[graph.edges[z][1]]
        }
        add2 = {
            z
            for z in outside
            if counts[m2.part_of(z)] < m2.capacities[m2.part_of(z)]
        }
        # Arcs y->z (y in I, z out) when I - y + z stays independent in m1:
        # z's endpoints lie in different components once y is removed. Arcs
        # z->y when I - y + z stays independent in m2: same partition part.
        arcs: dict[int, list[int]] = {x: [] for x in ground}
        by_part: dict[int, list[int]] = {}
        for y in inside:
            by_part.setdefault(m2.part_of(y), []).append(y)
        for y in inside:
            lab = labels_without[y]
            for z in outside:
                if z not in add1:
                    a, b = graph.edges[z]
                    if lab[a] != lab[b]:
                        arcs[y].append(z)
        for z in outside:
            if z not in add2:
                arcs[z].extend(by_part.get(m2.part_of(z), ()))
        prev: dict[int, int | None] = {}
        queue: deque[int] = deque()
        for z in sorted(add1):
            prev[z] = None
            queue.append(z)
        target = None
        while queue:
            node = queue.popleft()
            if node in add2:
                target = node
                break
            for nxt in sorted(arcs[node]):
                if nxt not in prev:
                    prev[nxt] = node
                    queue.append(nxt)
        if target is None:
            reach_x2 = set()
            back: dict[int, list[int]] = {x: [] for x in ground}
            for src, dsts in arcs.items():
                for dst in dsts:
                    back[dst].append(src)
            queue = deque(sorted(add2))
            reach_x2.update(add2)
            while queue:
                node = queue.popleft()
                for pred in back[node]:
                    if pred not in reach_x2:
                        reach_x2.add(pred)
                        queue.append(pred)
            return IntersectionResult(frozenset(current), frozenset(reach_x2))
        path = [target]
        while prev[path[-1]] is not None:
            path.append(prev[path[-1]])
        current ^= set(path)


def max_weight_basis_alpha(
    aux: AuxGraph, weights: Mapping[int, Fraction | int]
) -> tuple[tuple[int, ...], AuxTree]:
    """Maximize sum_v weights[v] * |T ∩ K_v| over spanning trees T containing
    every matching edge.

    Greedy over the contracted graphic matroid: every clique edge of vertex v
    gets element weight weights[v]; heavier elements first, ties by edge id.
    Returns the per-vertex counts and the realizing tree.
    """
    order = sorted(
        (
            (e, aux.kvertex(e))
            for e in range(aux.base.m, aux.gprime.m)
        ),
        key=lambda pair: (-Fraction(weights.get(pair[1], 0)), pair[0]),
    )
    uf = _UnionFind(aux.gprime.n)
    for e in range(aux.base.m):
        uf.union(*aux.gprime.edges[e])
    chosen = set(range(aux.base.m))
    alpha = [0] * aux.base.n
    for e, v in order:
        a, b = aux.gprime.edges[e]
        if uf.union(a, b):
            chosen.add(e)
            alpha[v] += 1
    return tuple(alpha), spanning_tree(aux, chosen)


def max_weight_split(
    aux: AuxGraph, objective: Mapping[int, Fraction | int]
) -> tuple[int, ...]:
    """Maximize a nonnegative objective over feasible split vectors.

    By box duality the optimum is deg - 1 - alpha for the minimum-weight
    basis alpha under the same per-vertex weights. Negative objectives are
    rejected: only for nonnegative ones do maximal split vectors dominate.
    """
    for v, c in objective.items():
        if c < 0:
            raise UsageError(f"objective must be nonnegative, got {c} at vertex {v}")
    negated = {v: -Fraction(c) for v, c in objective.items()}
    alpha, _tree = max_weight_basis_alpha(aux, negated)
    deg = aux.base.degrees()
    return tuple(deg[v] - 1 - alpha[v] for v in range(aux.base.n))
