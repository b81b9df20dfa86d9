"""Undirected multigraphs with loops and parallel edges, plus serialization.

Vertices and edges carry dense integer ids (0..n-1 and 0..m-1). Parallel
edges keep distinct ids, a loop is a single edge with both endpoints equal,
and a loop contributes 2 to the degree of its vertex. Graphs are immutable
after construction and safe to share across threads.

Text format: header ``p ktrail <n> <m>`` followed by exactly m lines
``e <u> <v>`` (or ``e <u> <v> <w>`` for weighted graphs, all-or-none).
``#`` starts a comment; vertices are 0-based.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import ParseError, UsageError


@dataclass(frozen=True)
class MultiGraph:
    """Multigraph on vertices 0..n-1; ``edges[i]`` are the endpoints of edge i."""

    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(
            self, "edges", tuple((int(u), int(v)) for u, v in self.edges)
        )
        if self.n < 2:
            raise UsageError(f"graphs need at least 2 vertices, got n={self.n}")
        for eid, (u, v) in enumerate(self.edges):
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise UsageError(f"edge {eid} endpoint out of range: ({u}, {v})")

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        """Degree of v; a loop at v counts twice."""
        if not (0 <= v < self.n):
            raise UsageError(f"vertex {v} out of range (n={self.n})")
        return self.degrees()[v]

    def degrees(self) -> tuple[int, ...]:
        deg = [0] * self.n
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return tuple(deg)

    def max_degree(self) -> int:
        return max(self.degrees())

    def adjacency(self) -> list[list[tuple[int, int]]]:
        """Per-vertex list of (neighbor, edge id), in edge-id order.

        A loop appears once in its vertex's list.
        """
        adj: list[list[tuple[int, int]]] = [[] for _ in range(self.n)]
        for eid, (u, v) in enumerate(self.edges):
            if u == v:
                adj[u].append((u, eid))
            else:
                adj[u].append((v, eid))
                adj[v].append((u, eid))
        return adj

    def is_connected(self) -> bool:
        """True iff a single component spans all n vertices (loops irrelevant)."""
        parent = list(range(self.n))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        comps = self.n
        for u, v in self.edges:
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
                comps -= 1
        return comps == 1

    def is_loop(self, eid: int) -> bool:
        u, v = self.edges[eid]
        return u == v

    def subgraph_spanning(self, edge_ids: Iterable[int]) -> "MultiGraph":
        """Spanning subgraph keeping all vertices; edges re-indexed densely.

        Edge ids are taken in ascending original order, so the new edge j
        corresponds to ``sorted(edge_ids)[j]``.
        """
        ids = sorted(set(edge_ids))
        for e in ids:
            if not (0 <= e < self.m):
                raise UsageError(f"edge id {e} out of range (m={self.m})")
        return MultiGraph(self.n, tuple(self.edges[e] for e in ids))


@dataclass(frozen=True)
class WeightedMultiGraph:
    """A multigraph plus one integer weight per edge id (negatives allowed)."""

    graph: MultiGraph
    weights: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))
        if len(self.weights) != self.graph.m:
            raise UsageError(
                f"{len(self.weights)} weights for {self.graph.m} edges"
            )

    def weight_of(self, edge_ids: Iterable[int]) -> int:
        return sum(self.weights[e] for e in edge_ids)


def parse_graph(text: str) -> MultiGraph | WeightedMultiGraph:
    """Parse the text format; returns a WeightedMultiGraph iff weights appear."""
    header: tuple[int, int] | None = None
    header_line = 0
    edges: list[tuple[int, int]] = []
    weights: list[int] = []
    edge_lines: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if header is None:
            if fields[0] != "p" or len(fields) != 4 or fields[1] != "ktrail":
                raise ParseError(f"expected header 'p ktrail <n> <m>', got {raw!r}", lineno)
            try:
                n, m = int(fields[2]), int(fields[3])
            except ValueError:
                raise ParseError(f"non-integer header counts in {raw!r}", lineno) from None
            if n < 2:
                raise ParseError(f"graphs need at least 2 vertices, got n={n}", lineno)
            if m < 0:
                raise ParseError(f"negative edge count {m}", lineno)
            header = (n, m)
            header_line = lineno
            continue
        if fields[0] != "e" or len(fields) not in (3, 4):
            raise ParseError(f"expected 'e <u> <v> [<w>]', got {raw!r}", lineno)
        try:
            parsed = [int(f) for f in fields[1:]]
        except ValueError:
            raise ParseError(f"non-integer field in {raw!r}", lineno) from None
        u, v = parsed[0], parsed[1]
        n = header[0]
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"vertex index out of range 0..{n - 1} in {raw!r}", lineno)
        if len(parsed) == 3:
            weights.append(parsed[2])
        elif weights:
            raise ParseError("mixed weighted and unweighted edge lines", lineno)
        edges.append((u, v))
        edge_lines.append(lineno)
    if header is None:
        raise ParseError("missing 'p ktrail' header", 1)
    n, m = header
    if len(edges) != m:
        raise ParseError(
            f"header declares {m} edges but {len(edges)} edge lines found",
            edge_lines[-1] if edge_lines else header_line,
        )
    if weights and len(weights) != m:
        raise ParseError("mixed weighted and unweighted edge lines", edge_lines[-1])
    g = MultiGraph(n, tuple(edges))
    if weights:
        return WeightedMultiGraph(g, tuple(weights))
    return g


def render_graph(g: MultiGraph | WeightedMultiGraph) -> str:
    """Canonical text form; parse(render(g)) == g."""
    if isinstance(g, WeightedMultiGraph):
        base, weights = g.graph, g.weights
    else:
        base, weights = g, None
    lines = [f"p ktrail {base.n} {base.m}"]
    for eid, (u, v) in enumerate(base.edges):
        if weights is None:
            lines.append(f"e {u} {v}")
        else:
            lines.append(f"e {u} {v} {weights[eid]}")
    return "\n".join(lines) + "\n"


def to_dot(g: MultiGraph | WeightedMultiGraph, name: str = "G") -> str:
    """DOT export; parallel edges become parallel DOT edges, loops self-edges."""
    if isinstance(g, WeightedMultiGraph):
        base, weights = g.graph, g.weights
    else:
        base, weights = g, None
    lines = [f"graph {name} {{"]
    for v in range(base.n):
        lines.append(f"  {v};")
    for eid, (u, v) in enumerate(base.edges):
        label = f' [label="{weights[eid]}"]' if weights is not None else ""
        lines.append(f"  {u} -- {v}{label};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def weight_map(g: WeightedMultiGraph) -> Mapping[int, int]:
    return {eid: w for eid, w in enumerate(g.weights)}
