"""Exact-rational LP solving for the relaxation with forest constraints.

A small two-phase primal simplex over ``fractions.Fraction``: no tolerances
anywhere, so tests like "x_e equals zero" and the extreme-point bookkeeping
of the iterative relaxation are exact. Pivoting is most-negative-reduced-
cost with smallest-index tie-breaks, falling back to Bland's rule after a
stretch of degenerate pivots, which keeps runs finite. Infeasibility comes
with a Farkas row combination and unboundedness with an improving ray.

The exponentially many forest constraints x(E(S)) <= |S| - 1 are handled by
cutting planes: solve, separate exactly, add the violated row, repeat. For
small slot graphs separation enumerates connected candidate sets of the
support; beyond that an exact min-cut (project-selection) formulation is
used per root. A returned optimum is a vertex of the full polytope since
every generated row is a row of the full system.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import UsageError

EXHAUSTIVE_SEPARATION_LIMIT = 20  # max slot count for connected-set enumeration
_DEGENERATE_STALL = 12  # consecutive degenerate pivots before Bland mode


@dataclass(frozen=True)
class LinearRow:
    """coeffs . x (sense) rhs, with sense "<=" or "==".

    The tag names the row in the full system, e.g. ("tree_total",),
    ("subtour", frozenset(S)) or ("degree", v).
    """

    coeffs: tuple[tuple[int, Fraction], ...]
    sense: str
    rhs: Fraction
    tag: tuple = ()

    @staticmethod
    def make(coeffs: Mapping[int, Fraction | int], sense: str, rhs, tag: tuple = ()) -> "LinearRow":
        if sense not in ("<=", "=="):
            raise UsageError(f"unsupported row sense {sense!r}")
        items = tuple(
            (var, Fraction(c)) for var, c in sorted(coeffs.items()) if c != 0
        )
        return LinearRow(items, sense, Fraction(rhs), tag)

    def value_at(self, x: Mapping[int, Fraction]) -> Fraction:
        return sum((c * x.get(v, Fraction(0)) for v, c in self.coeffs), Fraction(0))


@dataclass(frozen=True)
class LpProblem:
    """min objective . x subject to rows and x >= 0, over the given variables."""

    variables: tuple[int, ...]
    objective: tuple[tuple[int, Fraction], ...]
    rows: tuple[LinearRow, ...]

    @staticmethod
    def make(
        variables: Iterable[int],
        objective: Mapping[int, Fraction | int],
        rows: Sequence[LinearRow],
    ) -> "LpProblem":
        vs = tuple(sorted(set(variables)))
        vset = set(vs)
        for row in rows:
            for var, _ in row.coeffs:
                if var not in vset:
                    raise UsageError(f"row references unknown variable {var}")
        obj = tuple((v, Fraction(objective.get(v, 0))) for v in vs)
        return LpProblem(vs, obj, tuple(rows))


@dataclass(frozen=True)
class LpBasicSolution:
    status: str
    values: dict[int, Fraction]
    objective: Fraction
    tight_rows: tuple[int, ...]


@dataclass(frozen=True)
class LpInfeasible:
    status: str
    # Row multipliers y (<= rows get y <= 0) with y . rhs > 0 and
    # y . A <= 0 componentwise: no nonnegative x can satisfy the rows.
    farkas: tuple[Fraction, ...]


@dataclass(frozen=True)
class LpUnbounded:
    status: str
    ray: dict[int, Fraction]


def _rank_of_tight_system(
    problem: LpProblem, values: dict[int, Fraction], tight: Sequence[int]
) -> bool:
    """True iff active constraints pin the solution (vertex of the polytope).

    Zero bounds contribute unit normals, so it suffices that the tight rows
    restricted to the strictly positive variables have full column rank.
    """
    free = [v for v in problem.variables if values[v] != 0]
    if not free:
        return True
    col = {v: i for i, v in enumerate(free)}
    mat = []
    for ri in tight:
        row = [Fraction(0)] * len(free)
        any_nonzero = False
        for var, c in problem.rows[ri].coeffs:
            if var in col:
                row[col[var]] = c
                any_nonzero = True
        if any_nonzero:
            mat.append(row)
    rank = 0
    ncols = len(free)
    for c in range(ncols):
        pivot_row = None
        for r in range(rank, len(mat)):
            if mat[r][c] != 0:
                pivot_row = r
                break
        if pivot_row is None:
            continue
        mat[rank], mat[pivot_row] = mat[pivot_row], mat[rank]
        prow = mat[rank]
        inv = Fraction(1) / prow[c]
        for r in range(len(mat)):
            if r != rank and mat[r][c] != 0:
                f = mat[r][c] * inv
                mat[r] = [a - f * b for a, b in zip(mat[r], prow)]
        rank += 1
        if rank == ncols:
            return True
    return rank == ncols


def simplex_solve(problem: LpProblem) -> LpBasicSolution | LpInfeasible | LpUnbounded:
    """Exact optimal basic solution, or a certified infeasible/unbounded status."""
    nv = len(problem.variables)
    nrows = len(problem.rows)
    col_of = {v: j for j, v in enumerate(problem.variables)}

    slack_col: dict[int, int] = {}
    ncols = nv
    for i, row in enumerate(problem.rows):
        if row.sense == "<=":
            slack_col[i] = ncols
            ncols += 1
    art_col = {i: ncols + i for i in range(nrows)}
    total = ncols + nrows

    tableau: list[list[Fraction]] = []
    b: list[Fraction] = []
    row_sign: list[int] = []
    for i, row in enumerate(problem.rows):
        dense = [Fraction(0)] * total
        for var, c in row.coeffs:
            dense[col_of[var]] = c
        if i in slack_col:
            dense[slack_col[i]] = Fraction(1)
        sign = 1
        if row.rhs < 0:
            dense = [-c for c in dense]
            sign = -1
        dense[art_col[i]] = Fraction(1)
        tableau.append(dense)
        b.append(abs(row.rhs))
        row_sign.append(sign)
    basis = [art_col[i] for i in range(nrows)]

    def pivot(r: int, c: int, cost: list[Fraction], zval: list[Fraction]) -> None:
        prow = tableau[r]
        inv = Fraction(1) / prow[c]
        if inv != 1:
            tableau[r] = prow = [a * inv for a in prow]
            b[r] *= inv
        for rr in range(nrows):
            if rr != r and tableau[rr][c] != 0:
                f = tableau[rr][c]
                src = tableau[rr]
                tableau[rr] = [a - f * p for a, p in zip(src, prow)]
                b[rr] -= f * b[r]
        if cost[c] != 0:
            f = cost[c]
            cost[:] = [a - f * p for a, p in zip(cost, prow)]
            zval[0] -= f * b[r]
        basis[r] = c

    def run(cost: list[Fraction], zval: list[Fraction], allowed: int) -> str:
        bland = False
        stall = 0
        guard = 2000 + 50 * (nrows + total)
        for _ in range(guard):
            entering = -1
            if bland:
                for j in range(allowed):
                    if cost[j] < 0:
                        entering = j
                        break
            else:
                best = Fraction(0)
                for j in range(allowed):
                    if cost[j] < best:
                        best = cost[j]
                        entering = j
            if entering < 0:
                return "optimal"
            leave = -1
            best_ratio: Fraction | None = None
            for r in range(nrows):
                a = tableau[r][entering]
                if a > 0:
                    ratio = b[r] / a
                    if (
                        best_ratio is None
                        or ratio < best_ratio
                        or (ratio == best_ratio and basis[r] < basis[leave])
                    ):
                        best_ratio = ratio
                        leave = r
            if leave < 0:
                return "unbounded:" + str(entering)
            degenerate = best_ratio == 0
            pivot(leave, entering, cost, zval)
            if degenerate:
                stall += 1
                if stall >= _DEGENERATE_STALL:
                    bland = True
            else:
                stall = 0
                bland = False
        raise AssertionError("simplex pivot guard exceeded")

    # Phase 1: drive out the artificial basis.
    cost1 = [Fraction(0)] * total
    z1 = [Fraction(0)]
    for i in range(nrows):
        cost1[art_col[i]] = Fraction(1)
    for r in range(nrows):
        f = cost1[basis[r]]
        if f != 0:
            cost1 = [a - f * p for a, p in zip(cost1, tableau[r])]
            z1[0] -= f * b[r]
    outcome = run(cost1, z1, total)
    assert outcome == "optimal", "phase 1 is bounded below by zero"
    if -z1[0] > 0:
        # -z1 holds the attained sum of artificials; positive means infeasible.
        farkas = []
        for i in range(nrows):
            reduced = cost1[art_col[i]]
            farkas.append(row_sign[i] * (Fraction(1) - reduced))
        return LpInfeasible("infeasible", tuple(farkas))

    # Pivot lingering artificials out of the basis (or drop redundant rows).
    drop_rows: list[int] = []
    for r in range(nrows):
        if basis[r] >= ncols:
            target = next(
                (j for j in range(ncols) if tableau[r][j] != 0), None
            )
            if target is None:
                drop_rows.append(r)
            else:
                pivot(r, target, cost1, z1)
    if drop_rows:
        keep = [r for r in range(nrows) if r not in set(drop_rows)]
        tableau[:] = [tableau[r] for r in keep]
        b[:] = [b[r] for r in keep]
        basis[:] = [basis[r] for r in keep]
        nrows = len(keep)

    # Phase 2 over the original objective, artificial columns frozen.
    obj = dict(problem.objective)
    cost2 = [Fraction(0)] * total
    for j, v in enumerate(problem.variables):
        cost2[j] = Fraction(obj.get(v, 0))
    z2 = [Fraction(0)]
    for r in range(nrows):
        f = cost2[basis[r]]
        if f != 0:
            cost2 = [a - f * p for a, p in zip(cost2, tableau[r])]
            z2[0] -= f * b[r]
    outcome = run(cost2, z2, ncols)
    if outcome.startswith("unbounded"):
        entering = int(outcome.split(":")[1])
        ray = {v: Fraction(0) for v in problem.variables}
        if entering < nv:
            ray[problem.variables[entering]] = Fraction(1)
        for r in range(nrows):
            if basis[r] < nv:
                ray[problem.variables[basis[r]]] = -tableau[r][entering]
        return LpUnbounded("unbounded", ray)

    values = {v: Fraction(0) for v in problem.variables}
    for r in range(nrows):
        if basis[r] < nv:
            values[problem.variables[basis[r]]] = b[r]
    objective = sum(
        (Fraction(c) * values[v] for v, c in problem.objective), Fraction(0)
    )
    tight = tuple(
        i
        for i, row in enumerate(problem.rows)
        if row.value_at(values) == row.rhs
    )
    solution = LpBasicSolution("optimal", values, objective, tight)
    assert _rank_of_tight_system(problem, values, tight), (
        "returned solution is not a vertex of the current polytope"
    )
    return solution


def _connected_candidate_sets(
    support_adj: dict[int, set[int]]
) -> Iterable[frozenset[int]]:
    """All vertex sets (size >= 2) connected in the support graph."""
    verts = sorted(support_adj)
    for root in verts:
        seen: set[frozenset[int]] = set()
        stack = [frozenset([root])]
        while stack:
            cur = stack.pop()
            for v in sorted(cur):
                for w in support_adj[v]:
                    if w > root and w not in cur:
                        nxt = cur | {w}
                        if nxt not in seen:
                            seen.add(nxt)
                            stack.append(nxt)
                            yield nxt


def _max_flow(
    n: int, arcs: list[tuple[int, int, Fraction]], source: int, sink: int
) -> tuple[Fraction, set[int]]:
    """Edmonds-Karp with exact capacities; returns flow value and source side."""
    cap: dict[tuple[int, int], Fraction] = {}
    adj: list[set[int]] = [set() for _ in range(n)]
    for u, v, c in arcs:
        cap[(u, v)] = cap.get((u, v), Fraction(0)) + c
        cap.setdefault((v, u), Fraction(0))
        adj[u].add(v)
        adj[v].add(u)
    flow = Fraction(0)
    while True:
        prev = {source: source}
        queue = deque([source])
        while queue and sink not in prev:
            u = queue.popleft()
            for v in sorted(adj[u]):
                if v not in prev and cap[(u, v)] > 0:
                    prev[v] = u
                    queue.append(v)
        if sink not in prev:
            break
        path = [sink]
        while path[-1] != source:
            path.append(prev[path[-1]])
        path.reverse()
        bottleneck = min(
            cap[(path[i], path[i + 1])] for i in range(len(path) - 1)
        )
        for i in range(len(path) - 1):
            cap[(path[i], path[i + 1])] -= bottleneck
            cap[(path[i + 1], path[i])] += bottleneck
        flow += bottleneck
    reach = {source}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if v not in reach and cap[(u, v)] > 0:
                reach.add(v)
                queue.append(v)
    return flow, reach


def separate_forest(
    values: Mapping[int, Fraction],
    edges: Mapping[int, tuple[int, int]],
    nverts: int,
) -> frozenset[int] | None:
    """Most violated x(E(S)) <= |S| - 1 over S, or None if none is violated.

    Exact: connected-set enumeration over the support for small slot counts,
    otherwise a per-root min-cut (project selection: edges are profits,
    vertices unit costs, the root's cost is sunk).
    """
    support = [
        (e, u, v)
        for e, (u, v) in sorted(edges.items())
        if values.get(e, Fraction(0)) > 0 and u != v
    ]
    if not support:
        return None

    def violation(S: frozenset[int]) -> Fraction:
        inside = sum(
            (values[e] for e, u, v in support if u in S and v in S), Fraction(0)
        )
        return inside - (len(S) - 1)

    best: tuple[Fraction, int, tuple[int, ...]] | None = None
    if nverts <= EXHAUSTIVE_SEPARATION_LIMIT:
        adj: dict[int, set[int]] = {}
        for _, u, v in support:
            adj.setdefault(u, set()).add(v)
            adj.setdefault(v, set()).add(u)
        for S in _connected_candidate_sets(adj):
            gain = violation(S)
            if gain > 0:
                key = (gain, -len(S), tuple(sorted(S)))
                if best is None or key > (best[0], best[1], best[2]):
                    best = key
    else:
        touched = sorted({u for _, u, v in support} | {v for _, u, v in support})
        index = {v: i for i, v in enumerate(touched)}
        nedge = len(support)
        nnodes = 2 + nedge + len(touched)
        source, sink = 0, 1
        big = sum((values[e] for e, _, _ in support), Fraction(1))
        for root in touched:
            arcs: list[tuple[int, int, Fraction]] = []
            for j, (e, u, v) in enumerate(support):
                enode = 2 + j
                arcs.append((source, enode, values[e]))
                arcs.append((enode, 2 + nedge + index[u], big))
                arcs.append((enode, 2 + nedge + index[v], big))
            for v in touched:
                if v != root:
                    arcs.append((2 + nedge + index[v], sink, Fraction(1)))
            flow, reach = _max_flow(nnodes, arcs, source, sink)
            gain = sum((values[e] for e, _, _ in support), Fraction(0)) - flow
            if gain > 0:
                S = frozenset(
                    v for v in touched if 2 + nedge + index[v] in reach
                ) | {root}
                true_gain = violation(frozenset(S))
                key = (true_gain, -len(S), tuple(sorted(S)))
                if true_gain > 0 and (best is None or key > (best[0], best[1], best[2])):
                    best = key
    if best is None:
        return None
    return frozenset(best[2])


def subtour_row(
    S: frozenset[int], edges: Mapping[int, tuple[int, int]], variables: Iterable[int]
) -> LinearRow:
    """x(E(S)) <= |S| - 1 restricted to the given live variables."""
    coeffs = {
        e: Fraction(1)
        for e in variables
        if edges[e][0] in S and edges[e][1] in S
    }
    return LinearRow.make(coeffs, "<=", len(S) - 1, ("subtour", S))


def solve_with_cuts(
    problem: LpProblem,
    edges: Mapping[int, tuple[int, int]],
    nverts: int,
    pool: list[frozenset[int]],
) -> LpBasicSolution | LpInfeasible:
    """Cutting-plane loop for the forest constraints.

    ``pool`` carries the vertex sets of all generated rows and is extended
    in place, so later solves over shrunken variable sets reuse them (with
    deleted variables projected out).
    """
    known = set(pool)
    while True:
        rows = list(problem.rows) + [
            subtour_row(S, edges, problem.variables) for S in pool
        ]
        outcome = simplex_solve(
            LpProblem.make(problem.variables, dict(problem.objective), rows)
        )
        if isinstance(outcome, LpInfeasible):
            return outcome
        if isinstance(outcome, LpUnbounded):
            raise AssertionError("forest systems are bounded")
        S = separate_forest(outcome.values, edges, nverts)
        if S is None:
            return outcome
        if S in known:
            raise AssertionError("separation returned an already generated row")
        known.add(S)
        pool.append(S)


def lp_dump(problem: LpProblem, pool: Sequence[frozenset[int]] = ()) -> str:
    """Human-readable LP text form for external cross-checks."""

    def term(var: int, c: Fraction) -> str:
        return f"{'+' if c >= 0 else '-'} {abs(c)} x{var}"

    lines = ["minimize"]
    lines.append("  " + " ".join(term(v, c) for v, c in problem.objective if c != 0))
    lines.append("subject to")
    for i, row in enumerate(problem.rows):
        body = " ".join(term(v, c) for v, c in row.coeffs)
        op = "<=" if row.sense == "<=" else "="
        lines.append(f"  r{i}: {body} {op} {row.rhs}  # {row.tag}")
    for S in pool:
        lines.append(f"  # pooled subtour over {sorted(S)}")
    lines.append("bounds")
    for v in problem.variables:
        lines.append(f"  x{v} >= 0")
    lines.append("end")
    return "\n".join(lines) + "\n"
