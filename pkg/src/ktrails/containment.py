"""Growing a contained k-trail into a (k+1)-trail witness for the whole graph.

Two constructive moves, applied to a witness of a spanning connected
subgraph (V, U):

* ``absorb_cycle``: the leftover edges of a cycle of g - U can be folded in
  without raising the degree bound (k >= 2); one fresh node per cycle vertex
  is attached and the fibers are rebalanced, which works out because a fiber
  of total degree at most k * t + 2 split over t + 1 nodes balances to at
  most k.
* leaf attachment: once g - U is a forest, remaining edges are absorbed
  leaf by leaf, raising a single node per step to degree k + 1.

Searching for a contained k-trail from scratch is NP-complete, so this
module only transforms a given one; the exhaustive reference search is
explicitly size-guarded.
"""

from __future__ import annotations

from collections import deque
from itertools import combinations
from typing import Iterable, Sequence

from .errors import SizeGuardError, UsageError
from .multigraph import MultiGraph
from .preimage import (
    PreimageWitness,
    balance_degrees,
    split_into_tree,
    verify_witness,
    witness_violations,
)
from .recognition import eulerian_witness, is_k_trail


def _subgraph_and_map(g: MultiGraph, u_ids: Sequence[int]) -> tuple[MultiGraph, dict[int, int]]:
    ids = sorted(set(u_ids))
    sub = g.subgraph_spanning(ids)
    return sub, {orig: dense for dense, orig in enumerate(ids)}


def shortest_leftover_cycle(g: MultiGraph, u_ids: Iterable[int]) -> list[int] | None:
    """Edge ids of a shortest cycle using only edges outside u_ids, or None.

    Loops come first, then parallel pairs, then a BFS girth cycle; ties go to
    smaller edge ids.
    """
    used = set(u_ids)
    free = [e for e in range(g.m) if e not in used]
    for e in free:
        if g.is_loop(e):
            return [e]
    pair_seen: dict[tuple[int, int], int] = {}
    best_pair = None
    for e in free:
        key = tuple(sorted(g.edges[e]))
        if key in pair_seen:
            cand = [pair_seen[key], e]
            if best_pair is None or cand < best_pair:
                best_pair = cand
        else:
            pair_seen[key] = e
    if best_pair is not None:
        return best_pair
    adj: list[list[tuple[int, int]]] = [[] for _ in range(g.n)]
    for e in free:
        u, v = g.edges[e]
        adj[u].append((v, e))
        adj[v].append((u, e))
    best: list[int] | None = None
    for root in range(g.n):
        dist = {root: 0}
        via = {root: -1}
        parent_edge: dict[int, int] = {}
        queue = deque([root])
        while queue:
            node = queue.popleft()
            for nbr, eid in adj[node]:
                if eid == via.get(node):
                    continue
                if nbr not in dist:
                    dist[nbr] = dist[node] + 1
                    via[nbr] = eid
                    parent_edge[nbr] = eid
                    queue.append(nbr)
                elif dist[nbr] >= dist[node]:
                    # cycle through root only counts if both walks start there
                    cycle_edges = [eid]
                    x = node
                    while x != root:
                        cycle_edges.append(parent_edge[x])
                        x = g.edges[parent_edge[x]][0] if g.edges[parent_edge[x]][1] == x else g.edges[parent_edge[x]][1]
                    x = nbr
                    while x != root:
                        cycle_edges.append(parent_edge[x])
                        x = g.edges[parent_edge[x]][0] if g.edges[parent_edge[x]][1] == x else g.edges[parent_edge[x]][1]
                    if len(set(cycle_edges)) == len(cycle_edges):
                        if best is None or (len(cycle_edges), sorted(cycle_edges)) < (
                            len(best),
                            sorted(best),
                        ):
                            best = cycle_edges
        if best is not None and len(best) == 3:
            break
    return best


def _orient_cycle(
    g: MultiGraph, cycle_edges: Sequence[int]
) -> tuple[list[int], list[int]]:
    """Walk a cycle edge set: vertices v_1..v_r and edges reordered so that
    the i-th edge joins v_i and v_{i+1} (cyclically)."""
    if len(cycle_edges) == 1:
        e = cycle_edges[0]
        if not g.is_loop(e):
            raise UsageError("single-edge cycle must be a loop")
        return [g.edges[e][0]], [e]
    incid: dict[int, list[int]] = {}
    for e in cycle_edges:
        for v in g.edges[e]:
            incid.setdefault(v, []).append(e)
    if any(len(es) != 2 for es in incid.values()):
        raise UsageError("edge set is not a single simple cycle")
    e0 = cycle_edges[0]
    verts = [g.edges[e0][0]]
    ordered = [e0]
    nxt = g.edges[e0][1]
    while nxt != verts[0]:
        verts.append(nxt)
        e1, e2 = incid[nxt]
        step = e2 if e1 == ordered[-1] else e1
        ordered.append(step)
        a, b = g.edges[step]
        nxt = b if a == nxt else a
    if len(verts) != len(cycle_edges):
        raise UsageError("edge set is not a single simple cycle")
    return verts, ordered


def absorb_cycle(
    g: MultiGraph,
    u_ids: Sequence[int],
    wit: PreimageWitness,
    cycle_edges: Sequence[int],
    k: int,
) -> tuple[tuple[int, ...], PreimageWitness]:
    """Fold a cycle of g - U into a k-trail witness of (V, U); needs k >= 2.

    Attaches one fresh node per cycle vertex (each fresh node mapping to the
    next vertex around the cycle) and rebalances. Returns the grown edge set
    and a witness for it, again with bound k.
    """
    if k < 2:
        raise UsageError("cycle absorption needs k >= 2")
    u_sorted = sorted(set(u_ids))
    sub, dense_of = _subgraph_and_map(g, u_sorted)
    problems = witness_violations(sub, wit, k)
    if problems:
        raise UsageError(f"input witness invalid for (V, U): {problems[0]}")
    cyc = list(cycle_edges)
    if any(e in dense_of for e in cyc):
        raise UsageError("cycle edges must be disjoint from U")
    verts, cyc = _orient_cycle(g, cyc)
    if wit.h.m != wit.h.n - 1:
        wit = split_into_tree(sub, wit)
    node_image = list(wit.node_image)
    h_edges = list(wit.h.edges)
    new_u = sorted(set(u_sorted) | set(cyc))
    remap = {dense_of[orig]: new for new, orig in enumerate(new_u) if orig in dense_of}
    edge_image = [remap[e] for e in wit.edge_image]
    deg = [0] * len(node_image)
    for a, b in h_edges:
        deg[a] += 1
        deg[b] += 1
    fibers: dict[int, list[int]] = {}
    for w, v in enumerate(node_image):
        fibers.setdefault(v, []).append(w)
    r = len(verts)
    fresh = []
    for v in verts:
        w = len(node_image)
        node_image.append(v)
        fresh.append(w)
    new_dense = {orig: new for new, orig in enumerate(new_u)}
    for i in range(r):
        anchors = sorted(fibers[verts[i]], key=lambda w: (deg[w], w))
        w_i = anchors[0]
        target = fresh[(i + 1) % r]
        h_edges.append((w_i, target))
        edge_image.append(new_dense[cyc[i]])
        deg[w_i] += 1
    grown = PreimageWitness(
        MultiGraph(len(node_image), tuple(h_edges)),
        tuple(node_image),
        tuple(edge_image),
    )
    new_sub = g.subgraph_spanning(new_u)
    balanced = balance_degrees(new_sub, grown)
    if not verify_witness(new_sub, balanced, k):
        raise AssertionError("absorbed witness failed its degree bound")
    return tuple(new_u), balanced


def extend_to_full_trail(
    g: MultiGraph, u_ids: Sequence[int], wit: PreimageWitness, k: int
) -> PreimageWitness:
    """From a k-trail witness of a spanning connected (V, U), build a
    (k+1)-trail witness for all of g.

    Cycles of g - U are absorbed first (keeping bound k), then the remaining
    forest is folded in one leaf edge at a time; each such step raises one
    node to degree k + 1, and only over vertices with no remaining edges.
    For k = 1 the graph has two vertices and the Eulerian trail is returned
    directly.
    """
    if k < 1:
        raise UsageError(f"k must be at least 1, got {k}")
    u_now = sorted(set(u_ids))
    sub, _ = _subgraph_and_map(g, u_now)
    if not sub.is_connected():
        raise UsageError("(V, U) must be connected and spanning")
    problems = witness_violations(sub, wit, k)
    if problems:
        raise UsageError(f"input witness invalid for (V, U): {problems[0]}")
    if k == 1:
        # A contained 1-trail forces n = 2, where an Eulerian trail always
        # exists and is exactly a 2-trail of the full graph.
        full = eulerian_witness(g)
        if full is None:
            raise AssertionError("two-vertex multigraphs always carry an Eulerian trail")
        return full
    while True:
        cyc = shortest_leftover_cycle(g, u_now)
        if cyc is None:
            break
        u_now, wit = absorb_cycle(g, list(u_now), wit, cyc, k)
        u_now = list(u_now)
    # Leaf phase on the leftover forest.
    u_set = set(u_now)
    node_image = list(wit.node_image)
    h_edges = list(wit.h.edges)
    orig_image = [sorted(u_set)[e] for e in wit.edge_image]
    deg = [0] * len(node_image)
    for a, b in h_edges:
        deg[a] += 1
        deg[b] += 1
    while len(u_set) < g.m:
        rem_deg = [0] * g.n
        free = [e for e in range(g.m) if e not in u_set]
        for e in free:
            a, b = g.edges[e]
            rem_deg[a] += 1
            rem_deg[b] += 1
        pick = None
        for e in free:
            a, b = g.edges[e]
            if rem_deg[a] == 1 or rem_deg[b] == 1:
                pick = e
                break
        if pick is None:
            raise AssertionError("leftover edges must form a forest after absorption")
        a, b = g.edges[pick]
        if rem_deg[a] == 1 and rem_deg[b] == 1:
            leaf = min(a, b)
        else:
            leaf = a if rem_deg[a] == 1 else b
        other = b if leaf == a else a
        anchors = sorted(
            (w for w, v in enumerate(node_image) if v == leaf),
            key=lambda w: (deg[w], w),
        )
        u_node = anchors[0]
        if deg[u_node] > k:
            raise AssertionError("leaf anchor already above bound k")
        w_new = len(node_image)
        node_image.append(other)
        deg.append(1)
        h_edges.append((u_node, w_new))
        orig_image.append(pick)
        deg[u_node] += 1
        u_set.add(pick)
    order = sorted(u_set)
    assert order == list(range(g.m))
    final = PreimageWitness(
        MultiGraph(len(node_image), tuple(h_edges)),
        tuple(node_image),
        tuple(orig_image),
    )
    if not verify_witness(g, final, k + 1):
        raise AssertionError("extended witness failed the k+1 bound")
    return final


def _forced_edges(g: MultiGraph) -> set[int]:
    """Bridges of g; every spanning connected subgraph must keep them."""
    forced = set()
    for e in range(g.m):
        if g.is_loop(e):
            continue
        rest = [f for f in range(g.m) if f != e]
        if not g.subgraph_spanning(rest).is_connected():
            forced.add(e)
    return forced


def oracle_contains_k_trail(
    g: MultiGraph, k: int, max_free_edges: int = 16
) -> tuple[bool, tuple[int, ...] | None]:
    """Exhaustive reference: does some spanning connected (V, U) form a k-trail?

    Scans subsets by ascending size (bridges are always kept), so the first
    hit is a minimum-edge witness set. Guarded on the number of free
    (non-bridge) edges.
    """
    if k < 1:
        raise UsageError(f"k must be at least 1, got {k}")
    if not g.is_connected():
        return False, None
    forced = _forced_edges(g)
    free = [e for e in range(g.m) if e not in forced]
    if len(free) > max_free_edges:
        raise SizeGuardError(
            f"containment oracle guarded at {max_free_edges} free edges, got {len(free)}"
        )
    base = sorted(forced)
    min_extra = max(0, (g.n - 1) - len(base))
    for extra in range(min_extra, len(free) + 1):
        for combo in combinations(free, extra):
            u = sorted(base + list(combo))
            if len(u) < g.n - 1:
                continue
            sub = g.subgraph_spanning(u)
            if not sub.is_connected():
                continue
            if is_k_trail(sub, k).is_trail:
                return True, tuple(u)
    return False, None
