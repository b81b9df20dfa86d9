"""Minimum-weight contained trails by iterative LP relaxation.

For a weight function (negatives allowed) and k >= 2, the relaxation puts
one variable per live slot-graph edge: spanning-tree rows over the slot
graph, plus one degree row per still-constrained vertex v bounding the
matching-edge incidences at v's slots plus k times the clique edges inside.
Matching edges inherit the base weights, clique edges cost nothing.

Each round solves an exact extreme point, then either deletes one zero
variable (the restricted solution stays an optimal extreme point, so no
re-solve is needed) or drops one safe degree row and re-solves. A counting
argument guarantees one of the two moves is always available at a vertex
solution; running out is treated as a hard failure. Once no degree rows
remain the LP is a spanning-tree polytope, the solution is integral, and
contracting the tree yields a trail witness with node degrees at most
2k - 1 after fiber balancing. Its weight is bounded by the first round's
optimum, which in turn lower-bounds every k-trail contained in the graph;
first-round infeasibility certifies that no contained k-trail exists.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .auxgraph import AuxGraph, build_aux, spanning_tree, tree_to_subgraph_witness
from .containment import _forced_edges
from .errors import SizeGuardError, UsageError
from .lp import (
    LinearRow,
    LpBasicSolution,
    LpInfeasible,
    LpProblem,
    solve_with_cuts,
)
from .multigraph import MultiGraph, WeightedMultiGraph
from .preimage import PreimageWitness, balance_degrees, verify_witness
from .recognition import is_k_trail


@dataclass(frozen=True)
class NoKTrailCertificate:
    """Round-0 infeasibility: no k-trail is contained in the graph."""

    k: int
    farkas: tuple[Fraction, ...]


@dataclass(frozen=True)
class IterationRecord:
    index: int
    lp_value: Fraction
    live_edges: int
    q_size: int
    action: str


@dataclass(frozen=True)
class ApproxResult:
    u_edges: tuple[int, ...]
    witness: PreimageWitness
    lp_value: Fraction  # first-round optimum; lower bound on any contained k-trail
    final_weight: int
    iterations: tuple[IterationRecord, ...]


def _ebar_incidences(aux: AuxGraph, v: int, live: set[int]) -> int:
    """Endpoint incidences of live matching edges at v's slots (a loop counts 2)."""
    total = 0
    for e in range(aux.base.m):
        if e in live:
            total += aux.ebar_endpoints_at(e, v)
    return total


def _degree_row(aux: AuxGraph, v: int, k: int, live: set[int]) -> LinearRow:
    coeffs: dict[int, Fraction] = {}
    for e in range(aux.base.m):
        if e in live:
            inc = aux.ebar_endpoints_at(e, v)
            if inc:
                coeffs[e] = Fraction(inc)
    for ke in aux.kedges_of[v]:
        if ke in live:
            coeffs[ke] = Fraction(k)
    return LinearRow.make(coeffs, "<=", k * aux.base.degree(v), ("degree", v))


def _build_problem(
    aux: AuxGraph, weights: Sequence[int], live: set[int], q: set[int], k: int
) -> LpProblem:
    total = LinearRow.make(
        {e: 1 for e in live}, "==", aux.gprime.n - 1, ("tree_total",)
    )
    rows = [total] + [_degree_row(aux, v, k, live) for v in sorted(q)]
    objective = {
        e: Fraction(weights[e]) if aux.is_ebar(e) else Fraction(0) for e in live
    }
    return LpProblem.make(live, objective, rows)


def approx_min_weight_trail(
    gw: WeightedMultiGraph, k: int
) -> ApproxResult | NoKTrailCertificate:
    """A (2k-1)-trail contained in the graph costing at most any contained
    k-trail, or a certificate that no k-trail is contained."""
    if k < 2:
        raise UsageError(f"the weighted algorithm needs k >= 2, got {k}")
    g = gw.graph
    if not g.is_connected():
        raise UsageError("the weighted algorithm requires a connected graph")
    aux = build_aux(g)
    weights = gw.weights
    live: set[int] = set(range(aux.gprime.m))
    q: set[int] = set(range(g.n))
    pool: list[frozenset[int]] = []
    records: list[IterationRecord] = []
    drop_reasons: dict[int, str] = {}

    def resolve() -> LpBasicSolution | LpInfeasible:
        problem = _build_problem(aux, weights, live, q, k)
        edges = {e: aux.gprime.edges[e] for e in live}
        return solve_with_cuts(problem, edges, aux.gprime.n, pool)

    sol = resolve()
    if isinstance(sol, LpInfeasible):
        return NoKTrailCertificate(k, sol.farkas)
    lp_bound = sol.objective
    values = dict(sol.values)
    current_value = sol.objective

    limit = aux.gprime.m + g.n
    iteration = 0
    while q:
        iteration += 1
        if iteration > limit:
            raise AssertionError(
                "relaxation exceeded its progress bound; no safe move was found"
            )
        zero = next((e for e in sorted(live) if values[e] == 0), None)
        if zero is not None:
            # Restricting an optimal extreme point to the surviving
            # variables keeps it one, so the next solve can be skipped.
            live.remove(zero)
            del values[zero]
            records.append(
                IterationRecord(
                    iteration, current_value, len(live), len(q), f"delete_edge {zero}"
                )
            )
            continue
        drop = None
        for v in sorted(q):
            inc = _ebar_incidences(aux, v, live)
            kcount = sum(1 for ke in aux.kedges_of[v] if ke in live)
            if inc <= 2 * k - 1:
                drop = (v, "support")
                break
            if inc + (2 * k - 1) * kcount <= (2 * k - 1) * aux.base.degree(v):
                drop = (v, "mixed")
                break
        if drop is None:
            raise AssertionError(
                "no zero edge and no droppable degree row at a vertex solution"
            )
        v, reason = drop
        q.remove(v)
        drop_reasons[v] = reason
        sol = resolve()
        if isinstance(sol, LpInfeasible):
            raise AssertionError("relaxing the LP cannot make it infeasible")
        assert sol.objective <= current_value, "objective rose across a relaxation"
        values = dict(sol.values)
        current_value = sol.objective
        records.append(
            IterationRecord(
                iteration, current_value, len(live), len(q), f"drop_vertex {v}"
            )
        )

    for e, x in values.items():
        if x not in (Fraction(0), Fraction(1)):
            raise AssertionError("spanning-tree system returned a fractional vertex")
    tree_ids = {e for e, x in values.items() if x == 1}
    tree = spanning_tree(aux, tree_ids)
    covered, wit = tree_to_subgraph_witness(aux, tree)
    sub = g.subgraph_spanning(covered)
    wit = balance_degrees(sub, wit)
    if not verify_witness(sub, wit, 2 * k - 1):
        raise AssertionError("final witness missed the 2k-1 bound")

    sub_deg = sub.degrees()
    for v, reason in drop_reasons.items():
        kcount_t = sum(1 for ke in aux.kedges_of[v] if ke in tree_ids)
        if reason == "support":
            assert sub_deg[v] <= 2 * k - 1
        else:
            assert sub_deg[v] + (2 * k - 1) * kcount_t <= (2 * k - 1) * g.degree(v)

    final_weight = gw.weight_of(covered)
    assert Fraction(final_weight) == current_value
    assert current_value <= lp_bound
    return ApproxResult(covered, wit, lp_bound, final_weight, tuple(records))


def oracle_min_weight_k_trail(
    gw: WeightedMultiGraph, k: int, max_free_edges: int = 16
) -> tuple[int, tuple[int, ...]] | None:
    """Exhaustive reference: cheapest spanning connected (V, U) that is a k-trail.

    Scans every bridge-containing edge subset (weights may be negative, so
    no early exit); returns (weight, U) or None when nothing qualifies.
    """
    g = gw.graph
    if k < 1:
        raise UsageError(f"k must be at least 1, got {k}")
    if not g.is_connected():
        return None
    forced = _forced_edges(g)
    free = [e for e in range(g.m) if e not in forced]
    if len(free) > max_free_edges:
        raise SizeGuardError(
            f"weighted oracle guarded at {max_free_edges} free edges, got {len(free)}"
        )
    base = sorted(forced)
    best: tuple[int, tuple[int, ...]] | None = None
    for extra in range(0, len(free) + 1):
        for combo in combinations(free, extra):
            u = sorted(base + list(combo))
            if len(u) < g.n - 1:
                continue
            sub = g.subgraph_spanning(u)
            if not sub.is_connected():
                continue
            if not is_k_trail(sub, k).is_trail:
                continue
            weight = gw.weight_of(u)
            if best is None or weight < best[0]:
                best = (weight, tuple(u))
    return best
