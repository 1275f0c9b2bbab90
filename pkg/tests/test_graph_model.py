import json

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from orthotest.errors import GraphFormatError, GraphValidationError
from orthotest.graph_model import (NOT_PARTIAL_2TREE, PARTIAL_2TREE,
                                   SIMPLE_CYCLE, SP_BLOCK, Graph, block_graph,
                                   build_bc_tree, graph_to_json,
                                   is_series_parallel_block, parse_graph,
                                   relabel, validate_partial2tree)
from orthotest.generators import KIND_PARTIAL2TREE, KIND_SP, gen_random
from tests import graphs

PROPERTY_SETTINGS = settings(
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)


class TestParse:
    def test_json_cycle(self):
        g = parse_graph('{"n":4,"edges":[[0,1],[1,2],[2,3],[3,0]]}')
        assert g.n == 4
        assert g.edges == ((0, 1), (0, 3), (1, 2), (2, 3))
        assert all(g.degree(v) == 2 for v in range(4))

    def test_edge_list_triangle_parses(self):
        g = parse_graph("0 1\n1 2\n2 0")
        assert (g.n, g.m) == (3, 3)

    def test_edge_list_comments_and_blank_lines(self):
        g = parse_graph("# a path\n0 1\n\n1 2  # tail\n")
        assert g.edges == ((0, 1), (1, 2))

    def test_duplicate_edge(self):
        with pytest.raises(GraphValidationError, match="Duplicate"):
            parse_graph("0 1\n1 0\n1 2")

    def test_self_loop(self):
        with pytest.raises(GraphValidationError, match="Self-loop"):
            parse_graph("0 0\n0 1")

    def test_id_out_of_range(self):
        with pytest.raises(GraphValidationError):
            parse_graph('{"n": 2, "edges": [[0, 2]]}')

    def test_degree_above_four(self):
        text = "\n".join(f"0 {i}" for i in range(1, 6))
        with pytest.raises(GraphValidationError, match="degree 5"):
            parse_graph(text)

    def test_disconnected(self):
        with pytest.raises(GraphValidationError, match="disconnected"):
            parse_graph("0 1\n2 3")

    @pytest.mark.parametrize("text", ['{"n": 3', '{"edges": []}',
                                      '{"n": 2, "edges": [[0]]}', "0 1 2", "a b"])
    def test_malformed(self, text):
        with pytest.raises(GraphFormatError):
            parse_graph(text)

    def test_canonical_json_reparses(self, theta333):
        doc = graph_to_json(theta333)
        assert parse_graph(doc) == theta333
        assert json.loads(doc)['edges'] == [list(e) for e in theta333.edges]


class TestClassification:
    def test_cycle(self, c4):
        assert validate_partial2tree(c4) == SIMPLE_CYCLE

    def test_theta(self, theta333):
        assert validate_partial2tree(theta333) == SP_BLOCK

    def test_k23_is_series_parallel(self, k23):
        assert validate_partial2tree(k23) == SP_BLOCK

    def test_k4(self, k4):
        assert validate_partial2tree(k4) == NOT_PARTIAL_2TREE

    def test_two_blocks(self, two_c4):
        assert validate_partial2tree(two_c4) == PARTIAL_2TREE

    def test_tree_is_partial2tree(self, star4):
        assert validate_partial2tree(star4) == PARTIAL_2TREE

    def test_series_parallel_reduction(self):
        assert is_series_parallel_block(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)])
        assert not is_series_parallel_block(4, graphs.k4().edges)

    def test_relabeling_keeps_the_class(self, two_c4):
        permutation = [6, 5, 4, 3, 2, 1, 0]
        assert validate_partial2tree(relabel(two_c4, permutation)) == PARTIAL_2TREE


class TestBcTree:
    def test_two_cycles(self, two_c4):
        bc = build_bc_tree(two_c4)
        assert len(bc.blocks) == 2
        assert bc.cutvertices == (0,)
        assert bc.blocks_at(0) == (0, 1)
        assert all(bc.degree_in_block(0, b) == 2 for b in (0, 1))
        assert bc.is_cycle_block(0) and bc.is_cycle_block(1)
        assert bc.neighbors(('C', 0)) == [('B', 0), ('B', 1)]

    def test_every_edge_in_one_block(self, two_c4):
        bc = build_bc_tree(two_c4)
        assert sorted(e for b in bc.blocks for e in b.edges) == list(range(two_c4.m))
        assert None not in bc.block_of_edge

    def test_star_has_trivial_blocks(self, star4):
        bc = build_bc_tree(star4)
        assert len(bc.blocks) == 4
        assert all(b.trivial for b in bc.blocks)
        assert bc.cutvertices == (0,)

    def test_blocks_sorted_by_min_edge(self):
        g = graphs.c4_with_pendant()
        bc = build_bc_tree(g)
        assert [g.edges[b.edges[0]] for b in bc.blocks] == [(0, 1), (0, 4)]

    def test_block_graph(self, two_c4):
        bc = build_bc_tree(two_c4)
        block, vmap = block_graph(two_c4, bc, 1)
        assert vmap == (0, 4, 5, 6)
        assert block == graphs.cycle(4)

    def test_single_vertex(self):
        bc = build_bc_tree(Graph(1, []))
        assert bc.blocks == ()
        assert bc.cutvertices == ()

    @PROPERTY_SETTINGS
    @given(st.data())
    def test_relabeling_maps_blocks(self, data):
        kind = data.draw(st.sampled_from([KIND_SP, KIND_PARTIAL2TREE]))
        g = gen_random(kind, data.draw(st.integers(6, 30)), data.draw(st.integers(0, 999)))
        permutation = data.draw(st.permutations(range(g.n)))
        h = relabel(g, permutation)
        bc, relabeled = build_bc_tree(g), build_bc_tree(h)

        def mapped(block):
            return frozenset(h.edge_id(permutation[u], permutation[v])
                             for u, v in (g.edges[e] for e in block.edges))

        assert ({mapped(b) for b in bc.blocks}
                == {frozenset(b.edges) for b in relabeled.blocks})
        assert relabeled.cutvertices == tuple(sorted(permutation[c] for c in bc.cutvertices))
        for c in bc.cutvertices:
            assert len(bc.blocks_at(c)) == len(relabeled.blocks_at(permutation[c]))
