import random
from fractions import Fraction

import pytest

from tlc import canon, stabset
from tlc.errors import DimensionTooLarge, IsolatedNode, NotBipartite, ParseError
from tlc.stabset import (
    BipartiteGraph,
    census,
    graph_from_mask,
    graph_from_text,
    graph_to_text,
    simple_vertices,
    stab_basic_slack,
    stab_maximal_slack,
    stable_sets,
    zero_vertex_neighbors,
)

F = Fraction

# hand-derived labeled counts: bipartite graphs, then minimum-degree-2 ones,
# then their isomorphism classes (n = 1..6; the 41 comes from
# inclusion-exclusion over the four triangles on 4 nodes, the 355 from the
# 3+3 and 2+4 bipartition case split)
BIPARTITE_COUNTS = {1: 1, 2: 2, 3: 7, 4: 41}
MIN_DEG2_COUNTS = {1: 0, 2: 0, 3: 0, 4: 3, 5: 10, 6: 355}
ISO_CLASS_COUNTS = {4: 1, 5: 1, 6: 5}


def K2():
    return BipartiteGraph.from_edges(2, [(0, 1)])


def C4():
    return BipartiteGraph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)])


def P3():
    return BipartiteGraph.from_edges(3, [(0, 1), (1, 2)])


def test_graph_construction_rejects_odd_cycle():
    with pytest.raises(NotBipartite):
        BipartiteGraph.from_edges(3, [(0, 1), (1, 2), (2, 0)])


def test_graph_rejects_loops():
    with pytest.raises(ParseError):
        BipartiteGraph.from_edges(2, [(0, 0)])


def test_graph_text_roundtrip():
    g = C4()
    assert graph_from_text(graph_to_text(g)).edges == g.edges


def test_stable_sets_c4():
    sets = stable_sets(C4())
    assert len(sets) == 7
    assert () in sets and (0, 2) in sets and (1, 3) in sets


def test_basic_slack_k2():
    s = stab_basic_slack(K2())
    assert (s.matrix.rows, s.matrix.cols) == (3, 3)
    rows = sorted(s.matrix.row_tuples())
    assert rows == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]


def test_basic_slack_c4():
    s = stab_basic_slack(C4())
    assert (s.matrix.rows, s.matrix.cols) == (8, 7)


def test_basic_slack_rejects_isolated():
    g = BipartiteGraph.from_edges(3, [(0, 1)])
    with pytest.raises(IsolatedNode):
        stab_basic_slack(g)


def test_basic_slack_entries_binary_random_graphs():
    rng = random.Random(17)
    built = 0
    while built < 500:
        n = rng.randint(2, 8)
        side = [rng.randint(0, 1) for _ in range(n)]
        edges = [
            (u, v)
            for u in range(n)
            for v in range(u + 1, n)
            if side[u] != side[v] and rng.random() < 0.6
        ]
        g = BipartiteGraph(n, tuple(edges), tuple(side))
        if any(g.degree(v) == 0 for v in range(n)):
            continue
        built += 1
        s = stab_basic_slack(g)
        assert set(s.matrix.bits) <= {0, 1}


def test_maximal_slack_k2_is_triangle():
    s = stab_maximal_slack(K2())
    assert (s.matrix.rows, s.matrix.cols) == (8, 4)
    basic = stab_basic_slack(K2())
    # maximal rows strictly contain the basic rows
    assert set(basic.row_labels) < set(s.row_labels)


def test_maximal_slack_empty_graph_is_segment():
    g = BipartiteGraph.from_edges(1, [])
    s = stab_maximal_slack(g)
    assert (s.matrix.rows, s.matrix.cols) == (4, 3)


def test_maximal_slack_invariant_under_relabeling():
    g = C4()
    relabeled = BipartiteGraph.from_edges(4, [(2, 3), (3, 1), (1, 0), (0, 2)])
    s1 = stab_maximal_slack(g).matrix
    s2 = stab_maximal_slack(relabeled).matrix
    assert canon.equivalent(s1, s2)


def test_simple_vertices():
    assert simple_vertices(C4()) == [()]
    assert simple_vertices(K2()) == [(), (0,), (1,)]
    assert simple_vertices(P3()) == [(), (0,), (0, 2), (2,)]


def test_zero_vertex_neighbors():
    assert zero_vertex_neighbors(C4()) == [(0,), (1,), (2,), (3,)]
    assert zero_vertex_neighbors(K2()) == [(0,), (1,)]
    g = BipartiteGraph.from_edges(2, [])
    assert zero_vertex_neighbors(g) == [(0,), (1,)]


def test_census_small_counts():
    for n in (1, 2, 3, 4):
        rep = census(n)
        assert rep.labeled_bipartite == BIPARTITE_COUNTS[n]
        assert rep.labeled_bipartite_min_degree2 == MIN_DEG2_COUNTS[n]
        if n >= 4:
            assert rep.isomorphism_classes_min_degree2 == ISO_CLASS_COUNTS[n]
            assert rep.maximal_slack_forms_min_degree2 == ISO_CLASS_COUNTS[n]


def test_census_n5():
    rep = census(5)
    assert rep.labeled_bipartite == 376
    assert rep.labeled_bipartite_min_degree2 == MIN_DEG2_COUNTS[5]
    assert rep.isomorphism_classes_min_degree2 == 1  # K_{2,3} only
    assert rep.maximal_slack_forms_min_degree2 == 1
    assert rep.within_lower and rep.within_upper


def test_census_limit():
    with pytest.raises(DimensionTooLarge):
        census(8)
    with pytest.raises(DimensionTooLarge):
        census(7, include_classes=True)


def test_census_report_json_shape():
    import json

    rep = census(3)
    payload = json.loads(rep.to_json())
    assert payload["nodes"] == 3
    assert payload["labeled_bipartite"] == 7
    assert payload["within_lower"] and payload["within_upper"]


def test_graph_from_mask_roundtrip():
    g = graph_from_mask(4, 0b000011)
    assert g.n == 4 and len(g.edges) == 2
