"""Homomorphic-preimage witnesses and their constructive transformations.

A witness certifies that a graph g is the homomorphic image of a connected
graph h: a vertex map that is onto plus an explicit edge bijection whose
endpoint images match. The edge bijection matters because the vertex map
alone does not pin down which parallel h-edge covers which parallel g-edge.

The three rewrite operations implemented here:

* ``split_into_tree``   -- open cycles in h one back-edge at a time until h
  is a tree; never raises the maximum degree, never lowers a multiplicity.
* ``merge_to_multiplicity`` -- fuse fiber nodes pairwise until the per-vertex
  node counts hit a requested target (down-monotonicity of multiplicities).
* ``balance_degrees``   -- for tree witnesses, shuffle edges between nodes of
  the same fiber until every fiber's degrees differ by at most one, i.e.
  every node over v ends at floor or ceil of deg(v) / multiplicity(v).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import UsageError
from .multigraph import MultiGraph


@dataclass(frozen=True)
class PreimageWitness:
    """h plus the vertex map and edge bijection onto the image graph.

    ``node_image[w]`` is the image vertex of h-node w; ``edge_image[f]`` is
    the image edge id of h-edge f. Both index into the image graph the
    witness is verified against.
    """

    h: MultiGraph
    node_image: tuple[int, ...]
    edge_image: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "node_image", tuple(int(x) for x in self.node_image))
        object.__setattr__(self, "edge_image", tuple(int(x) for x in self.edge_image))
        if len(self.node_image) != self.h.n:
            raise UsageError("node_image length must equal number of h-nodes")
        if len(self.edge_image) != self.h.m:
            raise UsageError("edge_image length must equal number of h-edges")

    def multiplicities(self, n: int) -> tuple[int, ...]:
        """Fiber sizes per image vertex 0..n-1."""
        mult = [0] * n
        for v in self.node_image:
            mult[v] += 1
        return tuple(mult)

    def max_degree(self) -> int:
        return self.h.max_degree()


def identity_witness(g: MultiGraph) -> PreimageWitness:
    """g as the image of itself under the identity maps."""
    return PreimageWitness(g, tuple(range(g.n)), tuple(range(g.m)))


def witness_violations(
    g: MultiGraph, wit: PreimageWitness, k: int | None = None
) -> list[str]:
    """All reasons wit fails to certify g as a k-trail; empty means valid.

    Checks: vertex map onto, edge bijection, endpoint-multiset compatibility
    of every edge, h connected, and (when k is given) max degree of h <= k.
    """
    problems: list[str] = []
    seen = [False] * g.n
    for w, v in enumerate(wit.node_image):
        if not (0 <= v < g.n):
            problems.append(f"node {w} maps to out-of-range vertex {v}")
            return problems
        seen[v] = True
    if not all(seen):
        missing = [v for v, s in enumerate(seen) if not s]
        problems.append(f"vertex map not onto, missing {missing}")
    if wit.h.m != g.m:
        problems.append(f"edge counts differ: h has {wit.h.m}, image has {g.m}")
    used = set()
    for f, e in enumerate(wit.edge_image):
        if not (0 <= e < g.m):
            problems.append(f"h-edge {f} maps to out-of-range edge {e}")
            continue
        if e in used:
            problems.append(f"edge map not injective at image edge {e}")
            continue
        used.add(e)
        hu, hv = wit.h.edges[f]
        want = tuple(sorted(g.edges[e]))
        got = tuple(sorted((wit.node_image[hu], wit.node_image[hv])))
        if want != got:
            problems.append(
                f"h-edge {f} endpoints map to {got} but image edge {e} joins {want}"
            )
    if not wit.h.is_connected():
        problems.append("h is not connected")
    if k is not None and wit.h.max_degree() > k:
        problems.append(f"max degree {wit.h.max_degree()} exceeds bound {k}")
    return problems


def verify_witness(g: MultiGraph, wit: PreimageWitness, k: int | None = None) -> bool:
    """True iff wit certifies g as the image of a connected graph of max degree <= k."""
    return not witness_violations(g, wit, k)


def _first_back_edge(h: MultiGraph) -> tuple[int, int, int] | None:
    """First non-tree edge met by a DFS from node 0 in edge-id order.

    Returns (edge id, current node, earlier-visited node) or None if h is
    acyclic. A loop or a second parallel edge to the DFS parent counts.
    """
    adj = h.adjacency()
    visited = [False] * h.n
    for root in range(h.n):
        if visited[root]:
            continue
        stack: list[tuple[int, int, int]] = [(root, -1, 0)]
        visited[root] = True
        while stack:
            node, via_edge, idx = stack[-1]
            if idx >= len(adj[node]):
                stack.pop()
                continue
            stack[-1] = (node, via_edge, idx + 1)
            nbr, eid = adj[node][idx]
            if eid == via_edge:
                continue
            if visited[nbr]:
                return (eid, node, nbr)
            visited[nbr] = True
            stack.append((nbr, eid, 0))
    return None


def split_into_tree(g: MultiGraph, wit: PreimageWitness) -> PreimageWitness:
    """Split nodes of a valid witness until h is a tree (Lemma-style cycle opening).

    Each step removes the first DFS back-edge {w1, w2}, adds a fresh node x
    adjacent to w1 with the same image edge, and maps x to the image of w2.
    Tree witnesses are returned unchanged. Multiplicities never decrease and
    the node count of the result is exactly m + 1.
    """
    problems = witness_violations(g, wit)
    if problems:
        raise UsageError(f"invalid input witness: {problems[0]}")
    h, node_image, edge_image = wit.h, list(wit.node_image), list(wit.edge_image)
    edges = list(h.edges)
    while True:
        back = _first_back_edge(MultiGraph(max(2, len(node_image)), edges)) if edges else None
        if back is None:
            break
        eid, w1, w2 = back
        x = len(node_image)
        node_image.append(node_image[w2])
        edges[eid] = (min(w1, x), max(w1, x))
    out = PreimageWitness(
        MultiGraph(max(2, len(node_image)), tuple(edges)),
        tuple(node_image),
        tuple(edge_image),
    )
    return out


def merge_to_multiplicity(
    g: MultiGraph, wit: PreimageWitness, target: Sequence[int]
) -> PreimageWitness:
    """Merge fiber nodes pairwise until multiplicities equal target.

    target must satisfy 1 <= target <= current multiplicities componentwise;
    the edge count never changes and connectivity is preserved.
    """
    problems = witness_violations(g, wit)
    if problems:
        raise UsageError(f"invalid input witness: {problems[0]}")
    target = tuple(int(t) for t in target)
    if len(target) != g.n:
        raise UsageError("target length must equal vertex count")
    current = wit.multiplicities(g.n)
    for v in range(g.n):
        if not (1 <= target[v] <= current[v]):
            raise UsageError(
                f"target multiplicity {target[v]} at vertex {v} outside 1..{current[v]}"
            )
    node_image = list(wit.node_image)
    edges = list(wit.h.edges)
    alive = list(range(len(node_image)))
    fibers: dict[int, list[int]] = {v: [] for v in range(g.n)}
    for w, v in enumerate(node_image):
        fibers[v].append(w)
    for v in range(g.n):
        while len(fibers[v]) > target[v]:
            w1, w2 = fibers[v][0], fibers[v][1]
            edges = [
                (w1 if a == w2 else a, w1 if b == w2 else b) for a, b in edges
            ]
            fibers[v].remove(w2)
            alive.remove(w2)
    relabel = {w: i for i, w in enumerate(alive)}
    new_edges = tuple((relabel[a], relabel[b]) for a, b in edges)
    new_images = tuple(node_image[w] for w in alive)
    return PreimageWitness(
        MultiGraph(max(2, len(alive)), new_edges), new_images, wit.edge_image
    )


def _tree_path(h: MultiGraph, src: int, dst: int) -> list[int]:
    """Vertices on the unique src-dst path of a tree (inclusive)."""
    adj = h.adjacency()
    prev = {src: -1}
    stack = [src]
    while stack:
        node = stack.pop()
        if node == dst:
            break
        for nbr, _ in adj[node]:
            if nbr not in prev:
                prev[nbr] = node
                stack.append(nbr)
    path = [dst]
    while path[-1] != src:
        path.append(prev[path[-1]])
    return path


def balance_degrees(g: MultiGraph, wit: PreimageWitness) -> PreimageWitness:
    """Equalize degrees within every fiber of a tree witness.

    While some fiber holds nodes w, w' with deg(w) >= deg(w') + 2, move one
    edge {u, w} with u off the w-w' tree path over to w'. The result is a
    tree witness in which every node over v has degree floor or ceil of
    deg_g(v) / multiplicity(v). Multiplicities are unchanged.
    """
    problems = witness_violations(g, wit)
    if problems:
        raise UsageError(f"invalid input witness: {problems[0]}")
    edges = list(wit.h.edges)
    nnodes = wit.h.n
    if len(edges) != nnodes - 1 or _first_back_edge(wit.h) is not None:
        raise UsageError("balance_degrees requires a tree witness")
    node_image = wit.node_image
    fibers: dict[int, list[int]] = {}
    for w, v in enumerate(node_image):
        fibers.setdefault(v, []).append(w)
    budget = sum(d * d for d in wit.h.degrees())  # potential strictly decreases
    steps = 0
    while True:
        h_now = MultiGraph(nnodes, tuple(edges))
        deg = h_now.degrees()
        move = None
        for v in sorted(fibers):
            group = sorted(fibers[v])
            for w in group:
                for w2 in group:
                    if deg[w] >= deg[w2] + 2:
                        path = set(_tree_path(h_now, w, w2))
                        nbrs = sorted(
                            (nbr, eid)
                            for nbr, eid in h_now.adjacency()[w]
                            if nbr not in path
                        )
                        if not nbrs:
                            raise AssertionError(
                                "no off-path neighbor despite degree gap >= 2"
                            )
                        u, eid = nbrs[0]
                        move = (w, w2, u, eid)
                        break
                if move:
                    break
            if move:
                break
        if move is None:
            break
        w, w2, u, eid = move
        a, b = edges[eid]
        edges[eid] = (w2, u) if a == w else (u, w2)
        steps += 1
        if steps > budget:
            raise AssertionError("balancing exceeded its potential bound")
    return PreimageWitness(
        MultiGraph(nnodes, tuple(edges)), wit.node_image, wit.edge_image
    )


def witness_to_json(wit: PreimageWitness) -> str:
    doc = {
        "nodes": [
            {"id": w, "image": v} for w, v in enumerate(wit.node_image)
        ],
        "edges": [
            {"id": f, "u": u, "v": v, "image_edge": wit.edge_image[f]}
            for f, (u, v) in enumerate(wit.h.edges)
        ],
    }
    return json.dumps(doc, indent=2) + "\n"


def witness_from_json(text: str) -> PreimageWitness:
    try:
        doc = json.loads(text)
        nodes = sorted(doc["nodes"], key=lambda d: d["id"])
        if [d["id"] for d in nodes] != list(range(len(nodes))):
            raise UsageError("witness node ids must be dense 0..n-1")
        edge_docs = sorted(doc["edges"], key=lambda d: d["id"])
        if [d["id"] for d in edge_docs] != list(range(len(edge_docs))):
            raise UsageError("witness edge ids must be dense 0..m-1")
        h = MultiGraph(
            max(2, len(nodes)), tuple((d["u"], d["v"]) for d in edge_docs)
        )
        return PreimageWitness(
            h,
            tuple(d["image"] for d in nodes),
            tuple(d["image_edge"] for d in edge_docs),
        )
    except (KeyError, TypeError, json.JSONDecodeError) as exc:
        raise UsageError(f"malformed witness JSON: {exc}") from exc
