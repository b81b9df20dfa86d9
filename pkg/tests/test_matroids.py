import itertools
import random
from fractions import Fraction

import pytest

from ktrails import (
    GraphicMatroid,
    MultiGraph,
    PartitionMatroid,
    build_aux,
    matroid_intersection,
    max_weight_basis_alpha,
    max_weight_split,
)
from ktrails.errors import UsageError
from ktrails.recognition import feasible_split

from support import random_graph, triangle


def _aux_matroids(g, capacities):
    aux = build_aux(g)
    graphic = GraphicMatroid(
        aux.gprime,
        frozenset(range(aux.base.m)),
        tuple(range(aux.base.m, aux.gprime.m)),
    )
    return aux, graphic, PartitionMatroid(aux.kedges_of, tuple(capacities))


def _exhaustive_max_common(graphic, partition):
    ground = graphic.ground
    for r in range(len(ground), -1, -1):
        for sub in itertools.combinations(ground, r):
            if partition.is_independent(sub) and graphic.is_independent(sub):
                return r
    return 0


def test_graphic_matroid_contraction_must_be_forest():
    g = triangle()
    with pytest.raises(UsageError):
        GraphicMatroid(g, frozenset({0, 1, 2}), ())


def test_partition_matroid_basics():
    m = PartitionMatroid(((0, 1), (2,)), (1, 0))
    assert m.is_independent([0])
    assert not m.is_independent([0, 1])
    assert not m.is_independent([2])
    assert m.rank([0, 1, 2]) == 1
    with pytest.raises(UsageError):
        PartitionMatroid(((0,), (0,)), (1, 1))
    with pytest.raises(UsageError):
        PartitionMatroid(((0,),), (-1,))


def test_intersection_zero_capacities():
    g = triangle()
    _, graphic, partition = _aux_matroids(g, (0, 0, 0))
    assert matroid_intersection(graphic, partition).common == frozenset()


def test_intersection_vacuous_capacities_gives_spanning_forest():
    for trial in range(25):
        g = random_graph(trial)
        deg = g.degrees()
        _, graphic, partition = _aux_matroids(
            g, tuple(len(k) for k in build_aux(g).kedges_of)
        )
        res = matroid_intersection(graphic, partition)
        assert len(res.common) == g.m - 1  # rank of the contracted slot graph
        assert graphic.is_independent(res.common)


def test_triangle_capacities_011():
    g = triangle()
    _, graphic, partition = _aux_matroids(g, (0, 1, 1))
    res = matroid_intersection(graphic, partition)
    assert len(res.common) == 2


def test_intersection_matches_exhaustive_and_certificate():
    rng = random.Random(21)
    checked = 0
    trial = 0
    while checked < 60:
        g = random_graph(trial)
        trial += 1
        aux = build_aux(g)
        if aux.gprime.m - g.m > 14:
            continue
        caps = tuple(rng.randint(0, max(0, g.degree(v) - 1)) for v in range(g.n))
        _, graphic, partition = _aux_matroids(g, caps)
        res = matroid_intersection(graphic, partition)
        assert len(res.common) == _exhaustive_max_common(graphic, partition)
        assert graphic.is_independent(res.common)
        assert partition.is_independent(res.common)
        cut = res.certificate_cut
        rest = set(graphic.ground) - cut
        assert graphic.rank(cut) + partition.rank(rest) == len(res.common)
        checked += 1


def test_alpha_sum_constant_over_random_weights():
    rng = random.Random(3)
    for trial in range(30):
        g = random_graph(trial)
        aux = build_aux(g)
        for _ in range(3):
            weights = {v: Fraction(rng.randint(-5, 5)) for v in range(g.n)}
            alpha, tree = max_weight_basis_alpha(aux, weights)
            assert sum(alpha) == g.m - 1
            assert tree.contains_ebar
            for v in range(g.n):
                assert alpha[v] == sum(
                    1 for e in aux.kedges_of[v] if e in tree.edge_ids
                )


def test_alpha_optimal_against_tree_enumeration():
    from itertools import islice

    from ktrails.oracles import trees_containing_matching

    rng = random.Random(5)
    for trial in range(20):
        g = random_graph(trial, max_m=6)
        aux = build_aux(g)
        weights = {v: Fraction(rng.randint(-4, 4)) for v in range(g.n)}
        alpha, _ = max_weight_basis_alpha(aux, weights)
        got = sum(weights[v] * alpha[v] for v in range(g.n))
        best = None
        for tree_ids in trees_containing_matching(aux):
            val = sum(
                weights[aux.kvertex(e)] for e in tree_ids if not aux.is_ebar(e)
            )
            best = val if best is None else max(best, val)
        assert got == best


def test_triangle_directional_weight():
    aux = build_aux(triangle())
    alpha, _ = max_weight_basis_alpha(aux, {0: 1, 1: 0, 2: 0})
    assert alpha[0] == 1  # the single clique edge at vertex 0 is taken
    assert sum(alpha) == 2


def test_max_weight_split_cyclomatic_identity():
    for trial in range(200):
        g = random_graph(trial)
        aux = build_aux(g)
        mu = max_weight_split(aux, {v: 1 for v in range(g.n)})
        assert sum(mu) == g.m - g.n + 1


def test_max_weight_split_tree_graph_gives_zero():
    from ktrails.instances import gen_random_multigraph

    for trial in range(20):
        g = gen_random_multigraph(5, 4, seed=trial)
        aux = build_aux(g)
        assert sum(max_weight_split(aux, {v: 1 for v in range(5)})) == 0


def test_max_weight_split_rejects_negative_objective():
    aux = build_aux(triangle())
    with pytest.raises(UsageError):
        max_weight_split(aux, {0: -1})


def test_max_weight_split_output_is_feasible_and_optimal():
    rng = random.Random(17)
    for trial in range(25):
        g = random_graph(trial, max_m=6)
        aux = build_aux(g)
        c = {v: Fraction(rng.randint(0, 4)) for v in range(g.n)}
        mu = max_weight_split(aux, c)
        assert feasible_split(g, mu).feasible
        # optimal against brute force over all feasible split vectors
        from ktrails.oracles import oracle_feasible_split

        deg = g.degrees()
        best = None
        for cand in itertools.product(*(range(deg[v]) for v in range(g.n))):
            if sum(cand[v] * 1 for v in range(g.n)) >= 0 and oracle_feasible_split(
                g, cand
            ):
                val = sum(c[v] * cand[v] for v in range(g.n))
                best = val if best is None else max(best, val)
        assert sum(c[v] * mu[v] for v in range(g.n)) == best


def test_down_monotonicity_of_feasible_splits():
    rng = random.Random(33)
    for trial in range(40):
        g = random_graph(trial)
        aux = build_aux(g)
        mu = max_weight_split(aux, {v: Fraction(rng.randint(0, 3)) for v in range(g.n)})
        smaller = tuple(rng.randint(0, x) for x in mu)
        assert feasible_split(g, smaller).feasible
