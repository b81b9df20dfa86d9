import json

import pytest

from ktrails import (
    MultiGraph,
    balance_degrees,
    identity_witness,
    merge_to_multiplicity,
    split_into_tree,
    verify_witness,
    witness_from_json,
    witness_to_json,
    witness_violations,
)
from ktrails.errors import UsageError
from ktrails.oracles import trees_containing_matching
from ktrails import build_aux, tree_to_witness, PreimageWitness

from support import (
    random_graph,
    triangle,
    worked_example,
    worked_example_witness,
)


def test_identity_witness_verifies_at_max_degree():
    for g in (triangle(), worked_example()):
        wit = identity_witness(g)
        assert verify_witness(g, wit, g.max_degree())
        assert not verify_witness(g, wit, g.max_degree() - 1)


def test_worked_example_witness_is_a_3_bound_witness():
    g = worked_example()
    wit = worked_example_witness()
    assert witness_violations(g, wit, 3) == []
    assert wit.multiplicities(7) == (1, 2, 2, 1, 2, 1, 2)


def test_verify_rejects_bad_edge_maps():
    g = MultiGraph(2, [(0, 1), (0, 1)])
    h = MultiGraph(2, [(0, 1), (0, 1)])
    dup = PreimageWitness(h, (0, 1), (0, 0))
    assert any("injective" in p for p in witness_violations(g, dup))
    wrong = PreimageWitness(MultiGraph(2, [(0, 0), (0, 1)]), (0, 1), (0, 1))
    assert any("endpoints" in p for p in witness_violations(g, wrong))


def test_verify_requires_onto_and_connected():
    g = triangle()
    h = MultiGraph(3, [(0, 1), (1, 2), (2, 0)])
    not_onto = PreimageWitness(h, (0, 1, 1), (0, 1, 2))
    assert any("onto" in p for p in witness_violations(g, not_onto))
    g2 = MultiGraph(4, [(0, 1), (2, 3), (0, 1)])
    h2 = MultiGraph(4, [(0, 1), (2, 3), (0, 1)])
    disconnected = PreimageWitness(h2, (0, 1, 2, 3), (0, 1, 2))
    assert any("connected" in p for p in witness_violations(g2, disconnected))


def test_split_tree_fixpoint():
    g = MultiGraph(3, [(0, 1), (1, 2)])
    wit = identity_witness(g)
    assert split_into_tree(g, wit) == wit


def test_split_triangle_gives_path_with_multiplicity_bump():
    g = triangle()
    out = split_into_tree(g, identity_witness(g))
    assert out.h.n == g.m + 1
    assert out.h.m == g.m
    assert sorted(out.multiplicities(3)) == [1, 1, 2]
    assert verify_witness(g, out, 2)
    # a 4-node tree with max degree 2 is a path
    assert sorted(out.h.degrees()) == [1, 1, 2, 2]


def test_split_node_count_and_multiplicity_monotone():
    for trial in range(60):
        g = random_graph(trial)
        wit = identity_witness(g)
        out = split_into_tree(g, wit)
        assert out.h.n == g.m + 1
        assert out.h.m == g.m
        assert verify_witness(g, out, g.max_degree())
        before = wit.multiplicities(g.n)
        after = out.multiplicities(g.n)
        assert all(a >= b for a, b in zip(after, before))


def test_split_worked_example_first_preimage():
    # an 11-edge witness splits to a 12-node tree
    g = worked_example()
    out = split_into_tree(g, worked_example_witness())
    assert out.h.n == 12
    assert verify_witness(g, out, 3)


def test_merge_identity_target():
    g = triangle()
    wit = identity_witness(g)
    assert merge_to_multiplicity(g, wit, (1, 1, 1)) == wit


def test_merge_path_witness_back_to_triangle():
    g = triangle()
    spread = split_into_tree(g, identity_witness(g))
    merged = merge_to_multiplicity(g, spread, (1, 1, 1))
    assert merged.multiplicities(3) == (1, 1, 1)
    assert merged.h.m == g.m
    assert verify_witness(g, merged)
    # with every fiber a single node the witness graph is g itself
    relabeled = {
        tuple(sorted((merged.node_image[a], merged.node_image[b])))
        for a, b in merged.h.edges
    }
    assert relabeled == {tuple(sorted(e)) for e in g.edges}


def test_merge_worked_example_to_first_preimage_multiplicities():
    g = worked_example()
    wit = worked_example_witness()
    target = (1, 1, 2, 1, 2, 1, 2)  # the sparser preimage of the figure
    merged = merge_to_multiplicity(g, wit, target)
    assert merged.multiplicities(7) == target
    assert merged.h.m == 11
    assert verify_witness(g, merged)


def test_merge_rejects_bad_targets():
    g = triangle()
    wit = identity_witness(g)
    with pytest.raises(UsageError):
        merge_to_multiplicity(g, wit, (2, 1, 1))
    with pytest.raises(UsageError):
        merge_to_multiplicity(g, wit, (0, 1, 1))


def test_balance_noop_when_balanced():
    g = MultiGraph(3, [(0, 1), (1, 2)])
    wit = identity_witness(g)
    assert balance_degrees(g, wit) == wit


def test_balance_splits_4_into_2_2():
    # doubled parallel pairs: vertex 0 has degree 4, its fiber starts (3, 1)
    g = MultiGraph(3, [(0, 1), (0, 1), (0, 2), (0, 2)])
    h = MultiGraph(5, [(0, 2), (0, 3), (0, 4), (1, 4)])
    wit = PreimageWitness(h, (0, 0, 1, 1, 2), (0, 1, 2, 3))
    assert witness_violations(g, wit) == []
    assert sorted(h.degrees()[w] for w in (0, 1)) == [1, 3]
    out = balance_degrees(g, wit)
    fiber = [w for w, v in enumerate(out.node_image) if v == 0]
    assert sorted(out.h.degrees()[w] for w in fiber) == [2, 2]
    assert verify_witness(g, out)


def test_balance_respects_floor_ceil_everywhere():
    for trial in range(80):
        g = random_graph(trial)
        aux = build_aux(g)
        tree = next(iter(trees_containing_matching(aux)))
        from ktrails import spanning_tree

        wit = tree_to_witness(aux, spanning_tree(aux, tree))
        out = balance_degrees(g, wit)
        mult = out.multiplicities(g.n)
        assert mult == wit.multiplicities(g.n)
        degs = out.h.degrees()
        for w in range(out.h.n):
            v = out.node_image[w]
            lo = g.degree(v) // mult[v]
            hi = -(-g.degree(v) // mult[v])
            assert degs[w] in (lo, hi)
        assert verify_witness(g, out)


def test_balance_rejects_non_tree():
    g = triangle()
    with pytest.raises(UsageError):
        balance_degrees(g, identity_witness(g))


def test_witness_json_round_trip():
    wit = worked_example_witness()
    doc = witness_to_json(wit)
    parsed = json.loads(doc)
    assert {"id", "image"} <= set(parsed["nodes"][0])
    assert {"id", "u", "v", "image_edge"} <= set(parsed["edges"][0])
    assert witness_from_json(doc) == wit


def test_witness_json_rejects_garbage():
    with pytest.raises(UsageError):
        witness_from_json("{not json")
    with pytest.raises(UsageError):
        witness_from_json('{"nodes": [], "edges": 3}')
