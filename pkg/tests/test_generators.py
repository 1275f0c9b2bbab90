import pytest

from orthotest import block_composer
from orthotest.block_composer import realize_graph
from orthotest.errors import GeneratorError
from orthotest.generators import (KIND_IP, KIND_PARTIAL2TREE, KIND_SP,
                                  LowerBoundParams, gen_lower_bound,
                                  gen_random, lower_bound_sizes)
from orthotest.graph_model import PARTIAL_2TREE, SP_BLOCK, validate_partial2tree
from orthotest.sp_tester import DpTable
from orthotest.spirality_core import SpiralitySet, turn_value
from orthotest.spq_decomposition import (P_NODE, RootedView, build_spq_star,
                                         is_independent_parallel)


class TestLowerBound:
    def test_sizes(self):
        assert lower_bound_sizes(LowerBoundParams(2)) == ([6, 14, 44], 92)
        sizes, total = lower_bound_sizes(LowerBoundParams(4))
        assert sizes == [8, 20, 62, 188]
        assert total == 380

    def test_graph(self):
        g = gen_lower_bound(4)
        assert g.n == 380
        assert validate_partial2tree(g) == SP_BLOCK
        assert is_independent_parallel(build_spq_star(g))

    @pytest.mark.parametrize("N", [0, 3, -2])
    def test_bad_parameter(self, N):
        with pytest.raises(GeneratorError):
            gen_lower_bound(N)

    @pytest.mark.parametrize("N", [2, 4])
    def test_deep_chain_spirality(self, N):
        p = LowerBoundParams(N)
        g = gen_lower_bound(p)
        verdict = block_composer.test_graph(g)
        assert verdict.ok
        rep = realize_graph(g, verdict)
        tree = build_spq_star(g)
        spiralities = []
        for q in tree.q_nodes():
            path = tree.nodes[q].chain.vertices
            if len(path) - 1 != p.N + 3:
                continue
            spiralities.append(abs(sum(
                turn_value(rep.direction(path[i - 1], path[i]),
                           rep.direction(path[i], path[i + 1]))
                for i in range(1, len(path) - 1))))
        assert len(spiralities) == 2 * 3 ** p.L
        assert max(spiralities) == p.N + 2

    @pytest.mark.parametrize("N", [2, 4])
    def test_outer_components_are_straight(self, N):
        # vertices 0..3 are the corners a, b, c, d; the chain a-b closes the cycle
        g = gen_lower_bound(N)
        tree = build_spq_star(g)
        root = next(q for q in tree.q_nodes()
                    if {tree.nodes[q].chain.vertices[0],
                        tree.nodes[q].chain.vertices[-1]} == {0, 1})
        view = RootedView(tree, root)
        outer = [node for node in view.order if view.kind(node) == P_NODE
                 and set(view.poles(node)) in ({1, 2}, {0, 3})]
        assert len(outer) == 2
        table = DpTable(tree)
        for node in outer:
            assert table.rooted_set(view, node) == SpiralitySet.from_values([0])


class TestRandom:
    @pytest.mark.parametrize("kind, expected", [(KIND_SP, SP_BLOCK),
                                                (KIND_IP, SP_BLOCK),
                                                (KIND_PARTIAL2TREE, PARTIAL_2TREE)])
    @pytest.mark.parametrize("n", [6, 25, 80])
    def test_kind_and_size(self, kind, expected, n):
        for seed in range(3):
            g = gen_random(kind, n, seed)
            assert g.n == n
            assert validate_partial2tree(g) == expected

    def test_independent_parallel(self):
        for seed in range(5):
            assert is_independent_parallel(build_spq_star(gen_random(KIND_IP, 40, seed)))

    def test_deterministic(self):
        assert gen_random(KIND_SP, 30, 7) == gen_random(KIND_SP, 30, 7)
        assert gen_random(KIND_PARTIAL2TREE, 30, 7) == gen_random(KIND_PARTIAL2TREE, 30, 7)

    @pytest.mark.parametrize("kind, n", [('tree', 10), (KIND_SP, 3)])
    def test_errors(self, kind, n):
        with pytest.raises(GeneratorError):
            gen_random(kind, n, 0)
