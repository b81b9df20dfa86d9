"""The slot graph derived from a multigraph, and tree <-> witness conversion.

For each vertex v of the base graph we create one slot per edge-endpoint
incidence at v (two slots for a loop), so v owns exactly deg(v) slots. The
derived graph joins the two slots of every base edge by a matching edge
("ebar") and adds a clique on each vertex's slot set. Spanning trees of the
derived graph that contain the whole matching correspond to tree preimage
witnesses of the base graph: contracting, per vertex, the connected
components induced by the chosen clique edges yields the witness nodes.

Slot numbering: base edge e = (u, v) owns slots 2e (the u side) and 2e + 1
(the v side). Matching edge ids coincide with base edge ids; clique edges
are numbered afterwards, grouped by vertex in slot-pair order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import UsageError
from .multigraph import MultiGraph
from .preimage import PreimageWitness, witness_violations


@dataclass(frozen=True)
class AuxGraph:
    """The derived slot graph plus all index structure linking it to the base."""

    base: MultiGraph
    gprime: MultiGraph
    slot_vertex: tuple[int, ...]  # slot -> base vertex
    slot_edge: tuple[int, ...]  # slot -> base edge the slot came from
    parts: tuple[tuple[int, ...], ...]  # base vertex -> its slots
    kedges_of: tuple[tuple[int, ...], ...]  # base vertex -> clique edge ids
    kedge_id: dict[tuple[int, int], int] = field(repr=False)  # slot pair -> id

    @property
    def num_ebar(self) -> int:
        return self.base.m

    def ebar_id(self, base_edge: int) -> int:
        """Derived edge id of the matching edge for a base edge (identical)."""
        return base_edge

    def is_ebar(self, aux_edge: int) -> bool:
        return aux_edge < self.base.m

    def kvertex(self, aux_edge: int) -> int:
        """Base vertex owning a clique edge."""
        if self.is_ebar(aux_edge):
            raise UsageError(f"aux edge {aux_edge} is a matching edge, not a clique edge")
        return self.slot_vertex[self.gprime.edges[aux_edge][0]]

    def ebar_endpoints_at(self, base_edge: int, v: int) -> int:
        """How many endpoints of a base edge land in vertex v's slot set (0, 1, 2)."""
        u, w = self.base.edges[base_edge]
        return (u == v) + (w == v)


@dataclass(frozen=True)
class AuxTree:
    """A spanning tree of the derived graph, as a set of derived edge ids."""

    edge_ids: frozenset[int]
    contains_ebar: bool


def build_aux(g: MultiGraph) -> AuxGraph:
    """Construct the slot graph; requires a connected base graph."""
    if not g.is_connected():
        raise UsageError("slot graph construction requires a connected graph")
    nslots = 2 * g.m
    slot_vertex = []
    slot_edge = []
    for eid, (u, v) in enumerate(g.edges):
        slot_vertex.extend((u, v))
        slot_edge.extend((eid, eid))
    parts: list[list[int]] = [[] for _ in range(g.n)]
    for s, v in enumerate(slot_vertex):
        parts[v].append(s)
    edges: list[tuple[int, int]] = [(2 * e, 2 * e + 1) for e in range(g.m)]
    kedges_of: list[list[int]] = [[] for _ in range(g.n)]
    kedge_id: dict[tuple[int, int], int] = {}
    for v in range(g.n):
        slots = parts[v]
        for i in range(len(slots)):
            for j in range(i + 1, len(slots)):
                eid = len(edges)
                edges.append((slots[i], slots[j]))
                kedges_of[v].append(eid)
                kedge_id[(slots[i], slots[j])] = eid
    return AuxGraph(
        base=g,
        gprime=MultiGraph(nslots, tuple(edges)),
        slot_vertex=tuple(slot_vertex),
        slot_edge=tuple(slot_edge),
        parts=tuple(tuple(p) for p in parts),
        kedges_of=tuple(tuple(k) for k in kedges_of),
        kedge_id=kedge_id,
    )


def _check_spanning_tree(aux: AuxGraph, edge_ids: Iterable[int]) -> frozenset[int]:
    ids = frozenset(edge_ids)
    gp = aux.gprime
    if len(ids) != gp.n - 1:
        raise UsageError(f"spanning tree needs {gp.n - 1} edges, got {len(ids)}")
    parent = list(range(gp.n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in ids:
        u, v = gp.edges[e]
        ru, rv = find(u), find(v)
        if ru == rv:
            raise UsageError("edge set contains a cycle, not a spanning tree")
        parent[ru] = rv
    return ids


def spanning_tree(aux: AuxGraph, edge_ids: Iterable[int]) -> AuxTree:
    """Validate an edge set as a spanning tree of the derived graph."""
    ids = _check_spanning_tree(aux, edge_ids)
    contains = all(e in ids for e in range(aux.base.m))
    return AuxTree(ids, contains)


def _components_per_vertex(
    aux: AuxGraph, tree: frozenset[int]
) -> list[list[list[int]]]:
    """Per base vertex, the slot components under the tree's clique edges.

    Components are sorted by their smallest slot, slots ascending inside.
    """
    out = []
    for v in range(aux.base.n):
        slots = aux.parts[v]
        parent = {s: s for s in slots}

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
        groups: dict[int, list[int]] = {}
        for s in slots:
            groups.setdefault(find(s), []).append(s)
        comps = sorted((sorted(grp) for grp in groups.values()), key=lambda c: c[0])
        out.append(comps)
    return out


def tree_to_subgraph_witness(
    aux: AuxGraph, tree: AuxTree
) -> tuple[tuple[int, ...], PreimageWitness]:
    """Contract slot components of a spanning tree into a preimage witness.

    Returns the covered base edges U (those whose matching edge is in the
    tree, ascending) and a witness for the spanning subgraph (V, U); the
    witness's edge images index into the dense re-numbering of U.
    """
    ids = _check_spanning_tree(aux, tree.edge_ids)
    comps = _components_per_vertex(aux, ids)
    node_of_slot: dict[int, int] = {}
    node_image: list[int] = []
    for v in range(aux.base.n):
        for comp in comps[v]:
            w = len(node_image)
            node_image.append(v)
            for s in comp:
                node_of_slot[s] = w
    covered = tuple(e for e in range(aux.base.m) if e in ids)
    dense = {e: i for i, e in enumerate(covered)}
    h_edges = []
    edge_image = []
    for e in covered:
        h_edges.append((node_of_slot[2 * e], node_of_slot[2 * e + 1]))
        edge_image.append(dense[e])
    wit = PreimageWitness(
        MultiGraph(max(2, len(node_image)), tuple(h_edges)),
        tuple(node_image),
        tuple(edge_image),
    )
    return covered, wit


def tree_to_witness(aux: AuxGraph, tree: AuxTree) -> PreimageWitness:
    """Witness for the full base graph; the tree must contain every matching edge."""
    if not tree.contains_ebar or any(
        e not in tree.edge_ids for e in range(aux.base.m)
    ):
        raise UsageError("tree must contain all matching edges to cover the base graph")
    covered, wit = tree_to_subgraph_witness(aux, tree)
    assert covered == tuple(range(aux.base.m))
    return wit


def witness_to_tree(aux: AuxGraph, wit: PreimageWitness) -> AuxTree:
    """Spanning tree (containing all matching edges) realizing a tree witness.

    Per witness node, the slots of its incident edges are wired into a path
    in slot order; for a loop's two slots the smaller-id node takes the
    earlier slot.
    """
    g = aux.base
    problems = witness_violations(g, wit)
    if problems:
        raise UsageError(f"invalid witness: {problems[0]}")
    if wit.h.m != wit.h.n - 1:
        raise UsageError("witness_to_tree requires a tree witness")
    slots_of_node: list[list[int]] = [[] for _ in range(wit.h.n)]
    for f, e in enumerate(wit.edge_image):
        a, b = wit.h.edges[f]
        u, v = g.edges[e]
        if u == v:
            first, second = min(a, b), max(a, b)
        elif wit.node_image[a] == u:
            first, second = a, b
        else:
            first, second = b, a
        slots_of_node[first].append(2 * e)
        slots_of_node[second].append(2 * e + 1)
    edge_ids = set(range(g.m))
    for w in range(wit.h.n):
        slots = sorted(slots_of_node[w])
        for a, b in zip(slots, slots[1:]):
            edge_ids.add(aux.kedge_id[(a, b)])
    return spanning_tree(aux, edge_ids)


def aux_dump(aux: AuxGraph) -> str:
    """Derived graph in the text format plus a slot comment block."""
    from .multigraph import render_graph

    lines = [render_graph(aux.gprime).rstrip("\n")]
    for s in range(aux.gprime.n):
        lines.append(f"# slot {s} -> vertex {aux.slot_vertex[s]} (edge {aux.slot_edge[s]})")
    return "\n".join(lines) + "\n"


def aux_to_dot(aux: AuxGraph, name: str = "Gprime") -> str:
    """DOT export clustering slots by owning base vertex."""
    lines = [f"graph {name} {{"]
    for v in range(aux.base.n):
        lines.append(f"  subgraph cluster_v{v} {{")
        lines.append(f'    label="v{v}";')
        for s in aux.parts[v]:
            lines.append(f"    {s};")
        lines.append("  }")
    for eid, (a, b) in enumerate(aux.gprime.edges):
        style = "" if aux.is_ebar(eid) else ' [style=dashed]'
        lines.append(f"  {a} -- {b}{style};")
    lines.append("}")
    return "\n".join(lines) + "\n"
