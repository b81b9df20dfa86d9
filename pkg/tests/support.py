"""Shared fixtures-in-code: named graphs, random corpora, small-graph utilities."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from ktrails import MultiGraph, PreimageWitness, WeightedMultiGraph
from ktrails.instances import gen_random_multigraph

# --- named graphs -----------------------------------------------------------

def triangle() -> MultiGraph:
    return MultiGraph(3, [(0, 1), (1, 2), (2, 0)])


def cycle(n: int) -> MultiGraph:
    return MultiGraph(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> MultiGraph:
    return MultiGraph(n, [(i, i + 1) for i in range(n - 1)])


def star13() -> MultiGraph:
    return MultiGraph(4, [(0, 1), (0, 2), (0, 3)])


def k4() -> MultiGraph:
    return MultiGraph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])


def k33() -> MultiGraph:
    return MultiGraph(6, [(u, v + 3) for u in range(3) for v in range(3)])


def paw() -> MultiGraph:
    return MultiGraph(4, [(0, 1), (1, 2), (2, 0), (0, 3)])


def parallel_pair() -> MultiGraph:
    return MultiGraph(2, [(0, 1), (0, 1)])


def edge_plus_loop() -> MultiGraph:
    return MultiGraph(2, [(0, 1), (1, 1)])


def worked_example() -> MultiGraph:
    """The 7-vertex, 11-edge multigraph with two parallel pairs and a loop;
    degrees (3, 4, 4, 3, 4, 1, 3) and smallest trail bound 3."""
    return MultiGraph(
        7,
        [
            (0, 1),
            (0, 2),
            (0, 2),
            (1, 2),
            (1, 3),
            (1, 3),
            (2, 4),
            (3, 4),
            (4, 5),
            (4, 6),
            (6, 6),
        ],
    )


def worked_example_witness() -> PreimageWitness:
    """A max-degree-3 tree-ish preimage of ``worked_example`` with
    multiplicities (1, 2, 2, 1, 2, 1, 2): the second preimage of the
    figure, nodes 0,1a,1b,2a,2b,3,4a,4b,5,6a,6b."""
    #            0  1a 1b 2a 2b 3  4a 4b 5  6a 6b
    node_image = (0, 1, 1, 2, 2, 3, 4, 4, 5, 6, 6)
    h_edges = (
        (0, 1),   # 0-1a        -> (0,1)
        (0, 3),   # 0-2a        -> (0,2)
        (0, 4),   # 0-2b        -> (0,2)
        (1, 3),   # 1a-2a       -> (1,2)
        (1, 5),   # 1a-3        -> (1,3)
        (2, 5),   # 1b-3        -> (1,3)
        (4, 7),   # 2b-4b       -> (2,4)
        (5, 6),   # 3-4a        -> (3,4)
        (7, 8),   # 4b-5        -> (4,5)
        (6, 9),   # 4a-6a       -> (4,6)
        (9, 10),  # 6a-6b       -> loop at 6
    )
    edge_image = (0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10)
    return PreimageWitness(MultiGraph(11, h_edges), node_image, edge_image)


# --- corpora ----------------------------------------------------------------

def random_graph(trial: int, max_n: int = 5, max_m: int = 7) -> MultiGraph:
    rng = random.Random(9000 + trial)
    n = rng.randint(2, max_n)
    m = rng.randint(n - 1, max_m)
    return gen_random_multigraph(
        n, m, loop_p=rng.choice([0.0, 0.2, 0.35]),
        parallel_p=rng.choice([0.0, 0.25, 0.4]), seed=trial,
    )


def random_weighted(trial: int, max_n: int = 5, max_m: int = 9) -> WeightedMultiGraph:
    rng = random.Random(5000 + trial)
    n = rng.randint(2, max_n)
    m = rng.randint(n - 1, max_m)
    g = gen_random_multigraph(
        n, m, loop_p=rng.choice([0.0, 0.2]),
        parallel_p=rng.choice([0.0, 0.3]), seed=13 * trial + 1,
    )
    return WeightedMultiGraph(g, tuple(rng.randint(-3, 3) for _ in range(g.m)))


def connected_simple_graphs_up_to_iso(max_n: int):
    """Connected simple graphs on 2..max_n vertices, one per isomorphism class."""
    out = []
    for n in range(2, max_n + 1):
        pairs = list(itertools.combinations(range(n), 2))
        seen: set[tuple] = set()
        for bits in range(1 << len(pairs)):
            edges = tuple(pairs[i] for i in range(len(pairs)) if bits >> i & 1)
            if len(edges) < n - 1:
                continue
            g = MultiGraph(n, edges)
            if not g.is_connected():
                continue
            cert = _canonical_cert(n, edges)
            if cert not in seen:
                seen.add(cert)
                out.append(g)
    return out


def _canonical_cert(n: int, edges) -> tuple:
    best = None
    for perm in itertools.permutations(range(n)):
        mapped = tuple(
            sorted(tuple(sorted((perm[u], perm[v]))) for u, v in edges)
        )
        if best is None or mapped < best:
            best = mapped
    return best


# --- isomorphism tools for cubic-graph dedup --------------------------------

def _wl_hash(n: int, adj: list[set[int]], rounds: int = 3) -> tuple:
    colors = [len(adj[v]) for v in range(n)]
    for _ in range(rounds):
        colors = [
            hash((colors[v], tuple(sorted(colors[u] for u in adj[v]))))
            for v in range(n)
        ]
    return tuple(sorted(colors))


def _is_isomorphic(n: int, adj1: list[set[int]], adj2: list[set[int]]) -> bool:
    if sorted(map(len, adj1)) != sorted(map(len, adj2)):
        return False
    mapping = [-1] * n
    used = [False] * n

    def extend(v: int) -> bool:
        if v == n:
            return True
        for t in range(n):
            if used[t] or len(adj2[t]) != len(adj1[v]):
                continue
            ok = True
            for u in range(v):
                if (u in adj1[v]) != (mapping[u] in adj2[t]):
                    ok = False
                    break
            if ok:
                mapping[v] = t
                used[t] = True
                if extend(v + 1):
                    return True
                used[t] = False
                mapping[v] = -1
        return False

    return extend(0)


def connected_cubic_graphs_up_to_iso(n: int) -> list[MultiGraph]:
    """All connected simple 3-regular graphs on n vertices, one per class."""
    assert n % 2 == 0 and n >= 4
    found: list[tuple[tuple, list[set[int]], MultiGraph]] = []

    deg = [0] * n
    adj: list[set[int]] = [set() for _ in range(n)]
    edges: list[tuple[int, int]] = []

    def record():
        g = MultiGraph(n, tuple(sorted(edges)))
        if not g.is_connected():
            return
        h = _wl_hash(n, adj)
        for h2, adj2, _ in found:
            if h == h2 and _is_isomorphic(n, adj, adj2):
                return
        found.append((h, [set(a) for a in adj], g))

    def rec():
        v = next((i for i in range(n) if deg[i] < 3), None)
        if v is None:
            record()
            return
        need = 3 - deg[v]
        cands = [u for u in range(v + 1, n) if deg[u] < 3 and u not in adj[v]]
        for combo in itertools.combinations(cands, need):
            for u in combo:
                deg[v] += 1
                deg[u] += 1
                adj[v].add(u)
                adj[u].add(v)
                edges.append((v, u))
            rec()
            for u in combo:
                deg[v] -= 1
                deg[u] -= 1
                adj[v].remove(u)
                adj[u].remove(v)
                edges.pop()

    rec()
    return [g for _, _, g in found]


# --- witness comparison ------------------------------------------------------

def witness_fingerprint(wit: PreimageWitness):
    """Renaming-invariant form: node keys are (image, incident edge images)."""
    keys = []
    incident: list[list[int]] = [[] for _ in range(wit.h.n)]
    for f, (a, b) in enumerate(wit.h.edges):
        incident[a].append(wit.edge_image[f])
        incident[b].append(wit.edge_image[f])
    for w in range(wit.h.n):
        keys.append((wit.node_image[w], tuple(sorted(incident[w]))))
    edge_keys = sorted(
        (tuple(sorted((keys[a], keys[b]))), wit.edge_image[f])
        for f, (a, b) in enumerate(wit.h.edges)
    )
    return (tuple(sorted(keys)), tuple(edge_keys))
