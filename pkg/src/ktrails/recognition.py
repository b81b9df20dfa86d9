"""Deciding whether a graph is a k-trail, with constructed tree witnesses.

The pipeline: the question "is g a k-trail" reduces to feasibility of the
split vector ceil(deg/k) - 1, which in turn is a matroid intersection on the
slot graph (spanning trees containing the matching, with at most
deg(v) - 1 - mu(v) clique edges per vertex). A feasible tree is contracted
into a tree witness and its fibers are balanced, which lands every node at
degree at most k.
"""

from __future__ import annotations

from dataclasses import dataclass

from .auxgraph import AuxGraph, AuxTree, build_aux, spanning_tree, tree_to_witness
from .errors import UsageError
from .matroids import GraphicMatroid, PartitionMatroid, matroid_intersection
from .multigraph import MultiGraph
from .preimage import (
    PreimageWitness,
    balance_degrees,
    verify_witness,
)


@dataclass(frozen=True)
class SplitFeasibility:
    """Outcome of a split-vector feasibility check.

    On success ``tree`` is a spanning tree of the slot graph containing all
    matching edges whose per-vertex clique counts respect the capacities.
    On failure ``deficiency_cut`` is the matroid-intersection certificate:
    ground elements from which the exchange graph still reaches an addable
    element.
    """

    feasible: bool
    mu: tuple[int, ...]
    capacities: tuple[int, ...]
    tree: AuxTree | None = None
    deficiency_cut: frozenset[int] | None = None


@dataclass(frozen=True)
class RecognitionResult:
    is_trail: bool
    k: int
    witness: PreimageWitness | None
    split: SplitFeasibility


def feasible_split(g: MultiGraph, mu) -> SplitFeasibility:
    """Is mu a feasible split vector for g (can every v be split mu[v] times)?"""
    if not g.is_connected():
        raise UsageError("split feasibility requires a connected graph")
    mu = tuple(int(x) for x in mu)
    if len(mu) != g.n or any(x < 0 for x in mu):
        raise UsageError("split vector must be nonnegative with one entry per vertex")
    deg = g.degrees()
    capacities = tuple(deg[v] - 1 - mu[v] for v in range(g.n))
    if any(c < 0 for c in capacities):
        return SplitFeasibility(False, mu, capacities)
    aux = build_aux(g)
    graphic = GraphicMatroid(
        aux.gprime,
        frozenset(range(aux.base.m)),
        tuple(range(aux.base.m, aux.gprime.m)),
    )
    partition = PartitionMatroid(aux.kedges_of, capacities)
    result = matroid_intersection(graphic, partition)
    if len(result.common) == g.m - 1:
        tree = spanning_tree(aux, set(range(g.m)) | result.common)
        return SplitFeasibility(True, mu, capacities, tree=tree)
    return SplitFeasibility(
        False, mu, capacities, deficiency_cut=result.certificate_cut
    )


def is_k_trail(g: MultiGraph, k: int) -> RecognitionResult:
    """Decide whether g is a k-trail; on yes, attach a balanced tree witness."""
    if k < 1:
        raise UsageError(f"k must be at least 1, got {k}")
    if not g.is_connected():
        raise UsageError("trail recognition requires a connected graph")
    deg = g.degrees()
    mu = tuple((deg[v] + k - 1) // k - 1 for v in range(g.n))
    split = feasible_split(g, mu)
    if not split.feasible:
        return RecognitionResult(False, k, None, split)
    aux = build_aux(g)
    wit = tree_to_witness(aux, split.tree)
    wit = balance_degrees(g, wit)
    assert verify_witness(g, wit, k), "balanced witness must meet the degree bound"
    return RecognitionResult(True, k, wit, split)


def min_trail_k(g: MultiGraph) -> int:
    """Smallest k for which g is a k-trail.

    A 1-trail is exactly a single edge; past that we scan upward, which is
    cheap since feasibility is monotone in k and max degree always works
    (split vector zero).
    """
    if not g.is_connected():
        raise UsageError("trail recognition requires a connected graph")
    if g.m == 1:
        return 1
    for k in range(2, g.max_degree() + 1):
        if is_k_trail(g, k).is_trail:
            return k
    return g.max_degree()


def eulerian_witness(g: MultiGraph) -> PreimageWitness | None:
    """A 2-trail witness built from an Eulerian trail, or None if none exists.

    Exists iff g is connected with 0 or 2 odd-degree vertices; the witness
    graph is the trail itself (a path, or a cycle for closed trails).
    """
    if not g.is_connected():
        return None
    odd = [v for v in range(g.n) if g.degree(v) % 2 == 1]
    if len(odd) not in (0, 2):
        return None
    start = min(odd) if odd else 0
    # Hierholzer; a loop appears once per adjacency list and is walked once.
    incid = g.adjacency()
    used = [False] * g.m
    ptr = [0] * g.n
    stack: list[tuple[int, int]] = [(start, -1)]
    walk: list[tuple[int, int]] = []  # (vertex, edge arrived by)
    while stack:
        v, via = stack[-1]
        while ptr[v] < len(incid[v]) and used[incid[v][ptr[v]][1]]:
            ptr[v] += 1
        if ptr[v] == len(incid[v]):
            walk.append(stack.pop())
        else:
            nbr, eid = incid[v][ptr[v]]
            used[eid] = True
            stack.append((nbr, eid))
    walk.reverse()
    if len(walk) != g.m + 1:
        return None  # edges unreachable; cannot happen for connected inputs
    closed = walk[0][0] == walk[-1][0]
    if closed and g.m >= 2:
        nodes = [v for v, _ in walk[:-1]]
        h_edges = [(i, (i + 1) % len(nodes)) for i in range(len(nodes))]
        images = [walk[i + 1][1] for i in range(len(nodes))]
    else:
        nodes = [v for v, _ in walk]
        h_edges = [(i, i + 1) for i in range(len(nodes) - 1)]
        images = [walk[i + 1][1] for i in range(len(nodes) - 1)]
    wit = PreimageWitness(
        MultiGraph(max(2, len(nodes)), tuple(h_edges)),
        tuple(nodes),
        tuple(images),
    )
    return wit if verify_witness(g, wit, 2) else None
