from collections import Counter
from importlib import resources

import pytest
from support import brute_force_closed_walks, numpy_trace_power

from motifmoments.canon import build_atlas, canonical_key
from motifmoments.errors import ConfigurationError, ParameterError
from motifmoments.graph import Graph, complete, erdos_renyi, path, ring, star
from motifmoments.motifs import enumerate_subgraphs
from motifmoments.walks import (
    CoefficientTable,
    build_coefficient_table,
    enumerate_closed_walks,
    load_coefficient_table,
    omega,
)

PAW = Graph(4, [(0, 1), (1, 2), (0, 2), (2, 3)])


def key(g):
    return canonical_key(g)


def is_bipartite(g: Graph) -> bool:
    colour = [None] * g.node_count
    for s in range(g.node_count):
        if colour[s] is not None:
            continue
        colour[s] = 0
        stack = [s]
        while stack:
            v = stack.pop()
            for w in g.adjacency[v]:
                if colour[w] is None:
                    colour[w] = 1 - colour[v]
                    stack.append(w)
                elif colour[w] == colour[v]:
                    return False
    return True


class TestEnumerateClosedWalks:
    def test_single_edge(self):
        walks = [w.nodes for w in enumerate_closed_walks(complete(2), 2, 0)]
        assert walks == [(0, 1, 0)]

    def test_triangle_trace(self):
        total = sum(1 for v in range(3) for _ in enumerate_closed_walks(complete(3), 3, v))
        assert total == 6

    def test_path_has_no_odd_walks(self):
        assert list(enumerate_closed_walks(path(3), 3, 1)) == []

    def test_record_properties(self):
        (w,) = [w for w in enumerate_closed_walks(complete(3), 3, 0) if w.nodes[1] == 1]
        assert w.length == 3
        assert w.node_set == {0, 1, 2}
        assert w.edge_set == {(0, 1), (1, 2), (0, 2)}
        sub, labels = w.underlying_graph()
        assert sub == complete(3) and labels == (0, 1, 2)

    @pytest.mark.parametrize("seed", range(5))
    def test_matches_brute_force(self, seed):
        g = erdos_renyi(6, 0.5, seed)
        for k in range(1, 6):
            got = sorted(w.nodes for v in range(6) for w in enumerate_closed_walks(g, k, v))
            assert got == sorted(brute_force_closed_walks(g, k))

    def test_bad_arguments(self):
        with pytest.raises(ParameterError):
            list(enumerate_closed_walks(ring(4), 0, 0))
        with pytest.raises(IndexError):
            list(enumerate_closed_walks(ring(4), 2, 4))


class TestOmega:
    @pytest.mark.parametrize(
        "g, k, expected",
        [
            (complete(2), 2, 2),
            (complete(3), 3, 6),
            (complete(2), 4, 2),
            (path(3), 4, 4),
            (ring(4), 4, 8),
            (complete(3), 5, 30),
            (PAW, 5, 10),
            (ring(5), 5, 10),
            (ring(4), 5, 0),
            (path(3), 3, 0),
        ],
    )
    def test_examples(self, g, k, expected):
        assert omega(g, k) == expected

    def test_rejects_disconnected(self):
        with pytest.raises(ParameterError):
            omega(Graph(4, [(0, 1), (2, 3)]), 4)

    def test_rejects_oversized(self):
        with pytest.raises(ParameterError):
            omega(ring(5), 4)

    @pytest.mark.parametrize("k", range(2, 7))
    def test_matches_covering_filter(self, k):
        # oracle: every closed node sequence in g that uses all edges of g
        for m in build_atlas(k):
            g = m.graph
            covering = [w for w in brute_force_closed_walks(g, k)
                        if {tuple(sorted(p)) for p in zip(w, w[1:])} == g.edges]
            assert omega(g, k) == len(covering)

    @pytest.mark.parametrize("k", range(2, 8))
    def test_even_and_parity(self, k):
        for m in build_atlas(k):
            w = omega(m.graph, k)
            assert w % 2 == 0
            if k % 2 == 1 and is_bipartite(m.graph):
                assert w == 0
            if m.graph.edge_count == 1 and k % 2 == 0:
                assert w == 2


class TestCoefficientTable:
    def test_low_orders(self):
        table = build_coefficient_table(5)
        assert table.motifs(2) == {key(complete(2)): 2}
        assert table.motifs(3) == {key(complete(3)): 6}
        assert table.motifs(4) == {key(complete(2)): 2, key(path(3)): 4, key(ring(4)): 8}
        assert table.motifs(5) == {key(complete(3)): 30, key(PAW): 10, key(ring(5)): 10}

    def test_order_six_and_seven_entries(self):
        table = load_coefficient_table()
        assert table.omega(6, key(ring(6))) == 12
        assert table.omega(6, key(star(3))) == 12
        assert table.omega(6, key(ring(4))) == 48
        assert table.omega(7, key(complete(3))) == 126
        assert table.omega(7, key(ring(7))) == 14
        assert table.omega(6, key(complete(4))) == 0

    def test_golden_file(self):
        shipped = resources.files("motifmoments.data").joinpath("coefficients.txt").read_text()
        assert shipped == build_coefficient_table(7).to_text()

    def test_text_round_trip(self):
        table = build_coefficient_table(6)
        again = CoefficientTable.from_text(table.to_text())
        assert again == table and again.k_max == 6

    def test_uncovered_order(self):
        table = build_coefficient_table(4)
        assert not table.covers(5)
        with pytest.raises(ConfigurationError):
            table.motifs(5)

    @pytest.mark.parametrize("k_max", [1, 8])
    def test_range(self, k_max):
        with pytest.raises(ParameterError):
            build_coefficient_table(k_max)


@pytest.mark.parametrize("seed", range(6))
def test_walk_count_conservation(seed):
    # sum over connected edge subsets of w(shape) equals tr(A^k)
    g = erdos_renyi(9, 0.35, seed)
    table = load_coefficient_table()
    for k in range(2, 7):
        shapes = Counter(
            key(Graph(len(labels), [(labels.index(a), labels.index(b)) for a, b in s]))
            for s in enumerate_subgraphs(g, k, k)
            for labels in [sorted({x for e in s for x in e})]
        )
        weights = table.motifs(k)
        assert sum(weights.get(h, 0) * c for h, c in shapes.items()) == numpy_trace_power(g, k)
