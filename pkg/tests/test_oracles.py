import pytest

from ktrails import (
    MultiGraph,
    build_aux,
    has_hamiltonian_path,
    oracle_feasible_split,
    oracle_min_k,
    spanning_trees,
    trees_containing_matching,
)
from ktrails.errors import SizeGuardError, UsageError

from support import cycle, k4, parallel_pair, path, random_graph, star13, triangle


def test_spanning_tree_counts_on_named_graphs():
    assert len(list(spanning_trees(triangle()))) == 3
    assert len(list(spanning_trees(path(4)))) == 1
    assert len(list(spanning_trees(parallel_pair()))) == 2
    assert len(list(spanning_trees(k4()))) == 16  # Cayley: 4^2
    loopy = MultiGraph(2, [(0, 1), (1, 1)])
    assert len(list(spanning_trees(loopy))) == 1  # loops never enter trees


def test_spanning_trees_are_distinct_and_valid():
    for trial in range(40):
        g = random_graph(trial)
        seen = set()
        for tree in spanning_trees(g):
            assert tree not in seen
            seen.add(tree)
            assert len(tree) == g.n - 1
            assert g.subgraph_spanning(tree).is_connected()


def test_spanning_tree_guard():
    with pytest.raises(SizeGuardError):
        list(spanning_trees(MultiGraph(20, [(i, i + 1) for i in range(19)])))


def test_trees_containing_matching_single_edge():
    aux = build_aux(MultiGraph(2, [(0, 1)]))
    assert list(trees_containing_matching(aux)) == [frozenset({0})]


def test_trees_containing_matching_triangle():
    aux = build_aux(triangle())
    trees = list(trees_containing_matching(aux))
    assert len(trees) == 3
    for t in trees:
        assert frozenset(range(3)) <= t
        assert len(t) == 5


def test_oracle_min_k_named():
    assert oracle_min_k(cycle(3)) == 2
    assert oracle_min_k(cycle(6)) == 2
    assert oracle_min_k(star13()) == 3
    assert oracle_min_k(k4()) == 3
    assert oracle_min_k(MultiGraph(2, [(0, 1)])) == 1
    assert oracle_min_k(parallel_pair()) == 2


def test_oracle_feasible_split_triangle():
    assert oracle_feasible_split(triangle(), (1, 0, 0))
    assert oracle_feasible_split(triangle(), (0, 0, 0))
    assert not oracle_feasible_split(triangle(), (1, 1, 1))
    assert not oracle_feasible_split(triangle(), (2, 0, 0))


def test_oracle_rejects_disconnected_and_bad_mu():
    with pytest.raises(UsageError):
        oracle_min_k(MultiGraph(4, [(0, 1), (2, 3)]))
    with pytest.raises(UsageError):
        oracle_feasible_split(triangle(), (0, 0))
    with pytest.raises(UsageError):
        oracle_feasible_split(triangle(), (-1, 0, 0))


def test_hamiltonian_path_basics():
    assert has_hamiltonian_path(path(5))
    assert has_hamiltonian_path(k4())
    assert has_hamiltonian_path(cycle(5))
    assert not has_hamiltonian_path(star13())
    # parallel edges and loops do not matter
    assert has_hamiltonian_path(MultiGraph(3, [(0, 1), (0, 1), (1, 2), (2, 2)]))
    spider = MultiGraph(7, [(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)])
    assert not has_hamiltonian_path(spider)
