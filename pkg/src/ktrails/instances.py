"""Instance generators: hardness gadgets, the tight-gap family, random graphs."""

from __future__ import annotations

import random

from .errors import UsageError
from .multigraph import MultiGraph, WeightedMultiGraph


def gen_hardness_gadget(cubic: MultiGraph, k: int) -> MultiGraph:
    """Pendant-vertex gadget tying contained k-trails to Hamiltonian paths.

    For k = 2 the input (simple, 3-regular) is returned unchanged; for
    k >= 3 every original vertex gets k - 2 fresh degree-one neighbors. The
    output contains a k-trail iff the input has a Hamiltonian path.
    """
    if k < 2:
        raise UsageError(f"gadget defined for k >= 2, got {k}")
    degs = cubic.degrees()
    if any(d != 3 for d in degs):
        raise UsageError("gadget input must be 3-regular")
    seen = set()
    for u, v in cubic.edges:
        if u == v:
            raise UsageError("gadget input must be simple (no loops)")
        if (u, v) in seen or (v, u) in seen:
            raise UsageError("gadget input must be simple (no parallel edges)")
        seen.add((u, v))
    if k == 2:
        return MultiGraph(cubic.n, cubic.edges)
    edges = list(cubic.edges)
    n = cubic.n
    for v in range(cubic.n):
        for _ in range(k - 2):
            edges.append((v, n))
            n += 1
    return MultiGraph(n, tuple(edges))


def gen_gap_instance(k: int, n: int, weight: int = -1) -> WeightedMultiGraph:
    """Ring-with-pendants family on which the 2k-1 guarantee is tight.

    Ring v_0..v_{n-1}: single edges v_0v_1 and v_{n-1}v_0, doubled edges
    elsewhere; each ring vertex is padded with pendant neighbors up to
    degree exactly 2k - 1 (so 2k-3 at v_0, 2k-4 at v_1 and v_{n-1}, 2k-5
    elsewhere). All edges carry the given weight (normally -1 or 1).
    """
    if k < 3:
        raise UsageError(f"gap family defined for k >= 3, got {k}")
    if n < k:
        raise UsageError(f"gap family needs n >= k, got n={n} < k={k}")
    edges: list[tuple[int, int]] = [(0, 1)]
    for i in range(1, n - 1):
        edges.append((i, i + 1))
        edges.append((i, i + 1))
    edges.append((n - 1, 0))
    ring_deg = [0] * n
    for u, v in edges:
        ring_deg[u] += 1
        ring_deg[v] += 1
    expected = {0: 2 * k - 3, 1: 2 * k - 4, n - 1: 2 * k - 4}
    nxt = n
    for v in range(n):
        pendants = (2 * k - 1) - ring_deg[v]
        assert pendants == expected.get(v, 2 * k - 5)
        for _ in range(pendants):
            edges.append((v, nxt))
            nxt += 1
    g = MultiGraph(nxt, tuple(edges))
    return WeightedMultiGraph(g, tuple(weight for _ in edges))


def gen_random_multigraph(
    n: int,
    m: int,
    loop_p: float = 0.0,
    parallel_p: float = 0.0,
    seed: int = 0,
) -> MultiGraph:
    """Seed-deterministic connected multigraph: a random spanning tree plus
    m - n + 1 extra edges, each a loop / parallel copy / fresh pair by the
    given probabilities."""
    if n < 2:
        raise UsageError(f"graphs need at least 2 vertices, got n={n}")
    if m < n - 1:
        raise UsageError(f"connectivity needs m >= n - 1, got m={m}")
    rng = random.Random(seed)
    edges: list[tuple[int, int]] = []
    for v in range(1, n):
        edges.append((rng.randrange(v), v))
    for _ in range(m - (n - 1)):
        roll = rng.random()
        if roll < loop_p:
            v = rng.randrange(n)
            edges.append((v, v))
        elif roll < loop_p + parallel_p:
            edges.append(edges[rng.randrange(len(edges))])
        else:
            u = rng.randrange(n)
            v = rng.randrange(n - 1)
            if v >= u:
                v += 1
            edges.append((u, v))
    rng.shuffle(edges)
    return MultiGraph(n, tuple(edges))


def gen_random_weights(m: int, low: int, high: int, seed: int = 0) -> tuple[int, ...]:
    rng = random.Random(seed)
    return tuple(rng.randint(low, high) for _ in range(m))
