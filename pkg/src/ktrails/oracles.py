"""Exponential-time ground truth, kept independent of the matroid and LP code.

Everything here shares only the graph and slot-graph data types with the
polynomial algorithms it cross-checks. Spanning trees are enumerated by
contraction/deletion, and trail questions are answered by scanning those
trees directly, so agreement with the matroid pipeline is meaningful.
"""

from __future__ import annotations

from typing import Iterator, Sequence

from .auxgraph import AuxGraph, build_aux
from .errors import SizeGuardError, UsageError
from .multigraph import MultiGraph

MAX_ENUM_VERTICES = 16


def spanning_trees(
    g: MultiGraph, max_vertices: int = MAX_ENUM_VERTICES
) -> Iterator[frozenset[int]]:
    """All spanning trees of a multigraph, each exactly once.

    Contraction/deletion on the smallest live edge: loops are discarded, the
    deletion branch is pruned when it would disconnect the rest.
    """
    if g.n > max_vertices:
        raise SizeGuardError(
            f"spanning tree enumeration guarded at {max_vertices} vertices, got {g.n}"
        )

    def components(live: list[int], merged: dict[int, int]) -> int:
        roots = set(merged.values())
        parent = {r: r for r in roots}

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        count = len(roots)
        for e in live:
            a, b = g.edges[e]
            ra, rb = find(merged[a]), find(merged[b])
            if ra != rb:
                parent[ra] = rb
                count -= 1
        return count

    def recurse(
        live: list[int], merged: dict[int, int], chosen: list[int]
    ) -> Iterator[frozenset[int]]:
        if len(set(merged.values())) == 1:
            yield frozenset(chosen)
            return
        live = [e for e in live if merged[g.edges[e][0]] != merged[g.edges[e][1]]]
        if not live:
            return
        e = live[0]
        rest = live[1:]
        # contract e
        a, b = merged[g.edges[e][0]], merged[g.edges[e][1]]
        contracted = {v: (a if r == b else r) for v, r in merged.items()}
        chosen.append(e)
        yield from recurse(rest, contracted, chosen)
        chosen.pop()
        # delete e, if the remainder still connects everything
        if components(rest, merged) == 1:
            yield from recurse(rest, merged, chosen)

    if not g.is_connected():
        return
    yield from recurse(list(range(g.m)), {v: v for v in range(g.n)}, [])


def _contracted_aux(aux: AuxGraph) -> tuple[MultiGraph, list[int]]:
    """The slot graph with every matching edge contracted.

    Vertex i of the result is the contraction class of base edge i's two
    slots; result edge j is clique edge (base.m + j) of the slot graph.
    Only valid when the base has at least two edges.
    """
    kmap = []
    edges = []
    for e in range(aux.base.m, aux.gprime.m):
        a, b = aux.gprime.edges[e]
        edges.append((a // 2, b // 2))
        kmap.append(e)
    return MultiGraph(aux.base.m, tuple(edges)), kmap


def trees_containing_matching(
    aux: AuxGraph, max_vertices: int = MAX_ENUM_VERTICES
) -> Iterator[frozenset[int]]:
    """All spanning trees of the slot graph that contain every matching edge."""
    if aux.base.m == 1:
        yield frozenset({0})
        return
    contracted, kmap = _contracted_aux(aux)
    base_ids = frozenset(range(aux.base.m))
    for tree in spanning_trees(contracted, max_vertices):
        yield base_ids | frozenset(kmap[j] for j in tree)


def _fiber_component_sizes(aux: AuxGraph, tree: frozenset[int]) -> list[list[int]]:
    """Per base vertex, sizes of the slot components under the tree's clique edges."""
    sizes = []
    for v in range(aux.base.n):
        parent = {s: s for s in aux.parts[v]}

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for ke in aux.kedges_of[v]:
            if ke in tree:
                a, b = aux.gprime.edges[ke]
                ra, rb = find(a), find(b)
                if ra != rb:
                    parent[ra] = rb
        counts: dict[int, int] = {}
        for s in aux.parts[v]:
            r = find(s)
            counts[r] = counts.get(r, 0) + 1
        sizes.append(sorted(counts.values()))
    return sizes


def oracle_min_k(g: MultiGraph, max_vertices: int = MAX_ENUM_VERTICES) -> int:
    """Smallest k for which g is a k-trail, by scanning all candidate trees."""
    if not g.is_connected():
        raise UsageError("trail questions require a connected graph")
    aux = build_aux(g)
    best = None
    for tree in trees_containing_matching(aux, max_vertices):
        worst = max(max(sizes) for sizes in _fiber_component_sizes(aux, tree))
        if best is None or worst < best:
            best = worst
            if best == 1:
                break
    assert best is not None
    return best


def oracle_feasible_split(
    g: MultiGraph, mu: Sequence[int], max_vertices: int = MAX_ENUM_VERTICES
) -> bool:
    """Whether some tree splits every vertex v into at least mu[v] + 1 nodes."""
    if not g.is_connected():
        raise UsageError("trail questions require a connected graph")
    mu = tuple(int(x) for x in mu)
    if len(mu) != g.n or any(x < 0 for x in mu):
        raise UsageError("split vector must be nonnegative with one entry per vertex")
    deg = g.degrees()
    if any(mu[v] > deg[v] - 1 for v in range(g.n)):
        return False
    aux = build_aux(g)
    for tree in trees_containing_matching(aux, max_vertices):
        sizes = _fiber_component_sizes(aux, tree)
        if all(len(sizes[v]) >= mu[v] + 1 for v in range(g.n)):
            return True
    return False


def has_hamiltonian_path(g: MultiGraph) -> bool:
    """Bitmask DP over vertices; parallel edges and loops are irrelevant."""
    if g.n > 20:
        raise SizeGuardError(f"hamiltonian path check guarded at 20 vertices, got {g.n}")
    adj = [0] * g.n
    for u, v in g.edges:
        if u != v:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
    full = (1 << g.n) - 1
    reach = [0] * (1 << g.n)  # mask -> bitset of feasible path endpoints
    for v in range(g.n):
        reach[1 << v] = 1 << v
    for mask in range(1, full + 1):
        ends = reach[mask]
        if not ends:
            continue
        if mask == full:
            return True
        for v in range(g.n):
            if ends >> v & 1:
                nxt = adj[v] & ~mask
                while nxt:
                    w = (nxt & -nxt).bit_length() - 1
                    reach[mask | 1 << w] |= 1 << w
                    nxt &= nxt - 1
    return False
