"""Verdicts, spirality sets and drawings checked against brute force and
against each other over generated corpora. The full-size corpora and the
timing checks run with --runslow."""
import time

import networkx as nx
import numpy as np
import pytest

from orthotest import block_composer, ip_fastpath, sp_tester
from orthotest.block_composer import realize_graph
from orthotest.config import Config
from orthotest.generators import KIND_IP, KIND_PARTIAL2TREE, KIND_SP, gen_random
from orthotest.graph_model import NOT_PARTIAL_2TREE, Graph, validate_partial2tree
from orthotest.ip_fastpath import Interval, IpTable, construct_ip
from orthotest.oracle import oracle_spirality_set, oracle_test
from orthotest.realizer import layout, synthesize, validate_rep
from orthotest.sp_tester import DpTable, construct
from orthotest.spirality_core import compose_parallel2, measure_spirality
from orthotest.spq_decomposition import P_NODE, RootedView, build_spq_star

ORACLE_CONFIG = Config(MAX_ORACLE_N=10, MAX_ORACLE_M=16)


################################################################################
## CORPORA
################################################################################

def _usable(g):
    return validate_partial2tree(g) != NOT_PARTIAL_2TREE


def atlas_corpus(min_n, max_n):
    """Connected partial 2-trees of maximum degree four, one per
    isomorphism class, on min_n..max_n <= 7 vertices."""
    corpus = []
    for nxg in nx.graph_atlas_g():
        n = nxg.number_of_nodes()
        if n < max(min_n, 2) or n > max_n or not nx.is_connected(nxg):
            continue
        if max(d for _, d in nxg.degree()) > 4:
            continue
        g = Graph(n, nxg.edges())
        if _usable(g):
            corpus.append(g)
    return corpus


def _one_more_vertex(nxg):
    """Graphs with one extra vertex: pendant, degree-two or subdividing."""
    v = nxg.number_of_nodes()
    free = [x for x in nxg if nxg.degree(x) < 4]
    for x in free:
        h = nxg.copy()
        h.add_edge(x, v)
        yield h
    for i, x in enumerate(free):
        for y in free[i + 1:]:
            h = nxg.copy()
            h.add_edges_from([(x, v), (y, v)])
            yield h
    for x, y in nxg.edges():
        h = nxg.copy()
        h.remove_edge(x, y)
        h.add_edges_from([(x, v), (v, y)])
        yield h


def eight_vertex_corpus():
    """Every connected partial 2-tree of maximum degree four on 8 vertices.

    Each has a vertex of degree at most two whose removal (or, when that
    disconnects, whose contraction) leaves a 7-vertex member of the atlas
    corpus, so extending those covers all of them."""
    classes = {}
    corpus = []
    for g in atlas_corpus(7, 7):
        for h in _one_more_vertex(g.to_networkx()):
            key = nx.weisfeiler_lehman_graph_hash(h)
            bucket = classes.setdefault(key, [])
            if any(nx.is_isomorphic(h, other) for other in bucket):
                continue
            bucket.append(h)
            candidate = Graph(8, h.edges())
            if _usable(candidate):
                corpus.append(candidate)
    return corpus


def sp_blocks(sizes, seeds):
    return [gen_random(KIND_SP, n, seed) for n in sizes for seed in seeds]


def ip_blocks(sizes, seeds):
    return [gen_random(KIND_IP, n, seed) for n in sizes for seed in seeds]


def every_node(tree):
    """(root, view, node) over every Q*-root and every non-root node."""
    for root in tree.q_nodes():
        view = RootedView(tree, root)
        for node in view.postorder():
            if node != root:
                yield root, view, node


def support_violations(s):
    """Integer spiralities s admits without the smaller values that
    independent-parallel components always carry along."""
    bad = []
    for d in s.doubled_values():
        if d <= 2 or d % 2:
            continue
        if d == 4 and not (s.has(0) or s.has(2)):
            bad.append(d)
        if d > 4 and not s.has(d - 4):
            bad.append(d)
        if d == 8 and not s.has(0):
            bad.append(d)
        if d > 4 and not all(s.has(x) for x in range(d % 4, d + 1, 4)):
            bad.append(d)
    return bad


################################################################################
## VERDICTS
################################################################################

def _disagreements(corpus):
    return [g for g in corpus
            if block_composer.test_graph(g).ok != oracle_test(g, config=ORACLE_CONFIG)]


class TestExhaustiveVerdicts:
    def test_up_to_six_vertices(self):
        corpus = atlas_corpus(2, 6)
        assert len(corpus) > 30
        assert _disagreements(corpus) == []

    @pytest.mark.slow
    def test_seven_vertices(self):
        assert _disagreements(atlas_corpus(7, 7)) == []

    @pytest.mark.slow
    def test_eight_vertices(self):
        corpus = eight_vertex_corpus()
        assert all(g.n == 8 for g in corpus)
        assert _disagreements(corpus) == []

    @pytest.mark.parametrize("kind", [KIND_SP, KIND_IP, KIND_PARTIAL2TREE])
    def test_seeded_instances(self, kind):
        corpus = [gen_random(kind, n, seed) for n in (6, 7, 8) for seed in range(6)]
        assert _disagreements(corpus) == []

    @pytest.mark.slow
    @pytest.mark.parametrize("kind", [KIND_SP, KIND_IP, KIND_PARTIAL2TREE])
    def test_more_seeded_instances(self, kind):
        corpus = [gen_random(kind, n, seed) for n in (8, 9) for seed in range(6, 60)]
        assert _disagreements(corpus) == []


################################################################################
## SPIRALITY SETS
################################################################################

def _set_mismatches(g):
    tree = build_spq_star(g)
    table = DpTable(tree)
    return [(root, node) for root, view, node in every_node(tree)
            if oracle_spirality_set(g, root, node, ORACLE_CONFIG)
            != table.rooted_set(view, node)]


class TestSetsAgainstBruteForce:
    @pytest.mark.parametrize("g", sp_blocks((6, 7), range(3)))
    def test_every_root_every_node(self, g):
        assert _set_mismatches(g) == []

    @pytest.mark.slow
    @pytest.mark.parametrize("g", sp_blocks((8, 9), range(8)))
    def test_larger_blocks(self, g):
        assert _set_mismatches(g) == []

    @pytest.mark.parametrize("g", ip_blocks((6, 8, 9), range(3)))
    def test_support_of_enumerated_sets(self, g):
        tree = build_spq_star(g)
        for root, _, node in every_node(tree):
            s = oracle_spirality_set(g, root, node, ORACLE_CONFIG)
            assert support_violations(s) == [], (root, node)


class TestIndependentParallelSets:
    @pytest.mark.parametrize("g", ip_blocks((12, 24, 48), range(4)))
    def test_sets_have_interval_shapes(self, g):
        tree = build_spq_star(g)
        sets, intervals = DpTable(tree), IpTable(tree)
        for _, view, node in every_node(tree):
            s = sets.rooted_set(view, node)
            interval = Interval.from_set(s)
            assert interval is not None, s
            assert intervals.interval_of(node, view.parent(node)) == interval
            assert support_violations(s) == []

    @pytest.mark.slow
    @pytest.mark.parametrize("g", ip_blocks((100, 250), range(10)))
    def test_larger_corpus(self, g):
        tree = build_spq_star(g)
        sets, intervals = DpTable(tree), IpTable(tree)
        for _, view, node in every_node(tree):
            interval = Interval.from_set(sets.rooted_set(view, node))
            assert interval is not None
            assert intervals.interval_of(node, view.parent(node)) == interval

    @pytest.mark.parametrize("g", ip_blocks((12, 24, 48), range(4)))
    def test_two_child_difference(self, g):
        # a feasible value always has a realization whose children differ by 2 or 3
        tree = build_spq_star(g)
        table = DpTable(tree)
        for _, view, node in every_node(tree):
            parent = view.parent(node)
            frame = tree.frame(node, parent)
            if view.kind(node) != P_NODE or len(frame.children) != 2:
                continue
            sets = [table.set_of(c, node) for c, _, _ in frame.children]
            coefficients = table.coefficients(node, parent)
            alphas = table.alpha_choices(node, parent)
            for d in table.set_of(node, parent).doubled_values():
                if d < 0:
                    continue
                choices = compose_parallel2(sets, coefficients, d, alphas)
                assert any(lv - rv in (4, 6) for lv, rv in (c.values for c in choices))


################################################################################
## DRAWINGS
################################################################################

def _sp_drawing(g):
    witness = sp_tester.test_block(g)
    if witness is None:
        return None
    assignment = construct(g, witness)
    return witness.view, assignment, synthesize(assignment, witness.view)


def _ip_drawing(g):
    witness = ip_fastpath.test_ip(g)
    if witness is None:
        return None
    assignment = construct_ip(g, witness)
    return witness.view, assignment, synthesize(assignment, witness.view)


class TestDrawings:
    @pytest.mark.parametrize("g, draw", [(g, _sp_drawing) for g in sp_blocks((10, 16, 30), range(5))]
                             + [(g, _ip_drawing) for g in ip_blocks((12, 30, 60), range(5))])
    def test_measured_spirality_is_assigned(self, g, draw):
        drawn = draw(g)
        if drawn is None:
            return
        view, assignment, rep = drawn
        assert validate_rep(layout(rep)).ok
        for node, doubled in assignment.sigma.items():
            assert measure_spirality(rep, node, view).doubled == doubled

    @pytest.mark.parametrize("g", [gen_random(KIND_PARTIAL2TREE, n, seed)
                                   for n in (10, 25, 60) for seed in range(5)])
    def test_whole_graphs_validate(self, g):
        verdict = block_composer.test_graph(g)
        if not verdict.ok:
            return
        rep = realize_graph(g, verdict)
        assert rep.edges == g.edges
        assert validate_rep(rep).ok

    @pytest.mark.parametrize("g", sp_blocks((8, 12), range(4)))
    def test_any_pole_path_gives_the_same_spirality(self, g):
        drawn = _sp_drawing(g)
        if drawn is None:
            return
        view, assignment, rep = drawn
        for node in assignment.sigma:
            u, v = view.poles(node)
            inside = nx.Graph()
            inside.add_edges_from(g.edges[e] for e in view.pertinent_edges(node))
            measured = {measure_spirality(rep, node, view, path).doubled
                        for path in nx.all_simple_paths(inside, u, v)}
            assert measured == {assignment.sigma[node]}


################################################################################
## RUNNING TIME
################################################################################

def _best_time(fn, repeat=3):
    best = None
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        elapsed = time.perf_counter() - start
        best = elapsed if best is None else min(best, elapsed)
    return best


@pytest.mark.slow
class TestScaling:
    def test_fast_path_large_instance(self):
        g = gen_random(KIND_IP, 100000, 1)
        assert _best_time(lambda: ip_fastpath.test_ip(g), repeat=1) < 2.0

    def test_general_tester(self):
        g = gen_random(KIND_SP, 2000, 1)
        config = Config(FAST_PATH='off')
        assert _best_time(lambda: block_composer.test_graph(g, config), repeat=1) < 60.0

    def test_fast_path_is_near_linear(self):
        sizes = [4000, 8000, 16000, 32000]
        graphs = [gen_random(KIND_IP, n, 2) for n in sizes]
        times = [_best_time(lambda g=g: ip_fastpath.test_ip(g)) for g in graphs]
        slope = np.polyfit(np.log(sizes), np.log(times), 1)[0]
        assert slope <= 1.2
