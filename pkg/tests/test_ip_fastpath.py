import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from orthotest import ip_fastpath, sp_tester
from orthotest.config import Config
from orthotest.errors import ConstraintError
from orthotest.generators import KIND_IP, gen_random
from orthotest.ip_fastpath import (EMPTY, JUMP1, JUMP2, TRIVIAL, Interval,
                                   IpTable, SeriesCounters, construct_ip,
                                   interval_p2, interval_p3, interval_q,
                                   interval_series, reduce_series,
                                   reroot_counters, root_pair, root_window,
                                   use_fast_path)
from orthotest.realizer import layout, synthesize, validate_rep
from orthotest.sp_tester import DpTable
from orthotest.spirality_core import SpiralitySet, compose_series
from orthotest.spq_decomposition import RootedView, build_spq_star
from tests import graphs

PROPERTY_SETTINGS = settings(
    max_examples=150,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)

# the shapes series compositions of independent-parallel blocks produce
interval_shapes = st.one_of(
    st.sampled_from([Interval.make(TRIVIAL, 0, 0), Interval.make(TRIVIAL, 1, 1),
                     Interval.make(JUMP1, 1, 2)]),
    st.integers(1, 9).map(lambda M: Interval.make(JUMP1, 0, M)),
    st.integers(2, 9).map(lambda M: Interval.make(JUMP2, M % 2, M)),
)


class TestIntervals:
    @pytest.mark.parametrize("values, expected", [
        ([-2, -1, 0, 1, 2], Interval(JUMP1, 0, 2)),
        ([-3, -1, 1, 3], Interval(JUMP2, 1, 3)),
        ([-2, -1, 1, 2], Interval(JUMP1, 1, 2)),
        ([-4, -2, 0, 2, 4], Interval(JUMP2, 0, 4)),
        ([-2, 2], Interval(TRIVIAL, 2, 2)),
        ([0], Interval(TRIVIAL, 0, 0)),
    ])
    def test_from_set(self, values, expected):
        assert Interval.from_set(SpiralitySet.from_values(values)) == expected

    @pytest.mark.parametrize("values", [[0, 1], [-3, -2, -1, 1, 2, 3], [-0.5, 0.5]])
    def test_no_shape(self, values):
        assert Interval.from_set(SpiralitySet.from_values(values)) is None

    def test_empty(self):
        assert Interval.from_set(SpiralitySet()) == EMPTY
        assert not EMPTY.admits(0)

    def test_admits_either_sign(self):
        interval = Interval.make(JUMP2, 1, 5)
        assert interval.admits(-3) and interval.admits(5)
        assert not interval.admits(2) and not interval.admits(7)

    def test_chain(self):
        assert interval_q(3) == Interval(JUMP1, 0, 2)
        assert interval_q(1) == Interval(TRIVIAL, 0, 0)
        with pytest.raises(ValueError):
            interval_q(0)

    def test_label(self):
        assert Interval.make(JUMP2, 0, 4).label == '[0,4]^2'
        assert str(Interval.make(TRIVIAL, 1, 1)) == '[1]'

    @PROPERTY_SETTINGS
    @given(interval_shapes)
    def test_set_round_trip(self, interval):
        assert Interval.from_set(interval.to_set()) == interval


class TestNodeRules:
    @PROPERTY_SETTINGS
    @given(st.lists(interval_shapes, min_size=2, max_size=5))
    def test_series_matches_sets(self, intervals):
        exact = compose_series([i.to_set() for i in intervals])
        assert interval_series(SeriesCounters.of(intervals)) == Interval.from_set(exact)

    @PROPERTY_SETTINGS
    @given(st.lists(interval_shapes, min_size=3, max_size=5), st.data())
    def test_reroot_counters(self, intervals, data):
        j = data.draw(st.integers(0, len(intervals) - 1))
        added = data.draw(interval_shapes)
        rerooted = reroot_counters(SeriesCounters.of(intervals), intervals[j], added)
        assert rerooted == SeriesCounters.of(intervals[:j] + intervals[j + 1:] + [added])

    def test_special_series(self):
        counters = SeriesCounters.of([Interval.make(JUMP1, 1, 2), Interval.make(TRIVIAL, 0, 0)])
        assert interval_series(counters) == Interval(JUMP1, 1, 2)

    def test_three_chains(self):
        chains = [interval_q(4)] * 3
        assert interval_p3(*chains) == Interval(JUMP1, 0, 1)
        assert interval_p3(*[interval_q(2)] * 3) == EMPTY

    def test_two_chains(self):
        assert interval_p2(interval_q(3), interval_q(3)) == Interval(JUMP1, 0, 2)

    def test_root_pair(self):
        assert root_window(3) == (2, 6)
        assert root_pair(Interval(JUMP1, 0, 2), 3) == 2
        assert root_pair(Interval(TRIVIAL, 0, 0), 3) is None

    def test_reduce_series(self):
        intervals = [interval_q(3), Interval.make(JUMP2, 1, 3)]
        for target in (3, -1, 5, -5):
            values = reduce_series(intervals, target)
            assert sum(values) == target
            assert all(i.admits(x) for i, x in zip(intervals, values))
        assert reduce_series(intervals, 6) is None

    @PROPERTY_SETTINGS
    @given(st.lists(interval_shapes, min_size=1, max_size=6), st.integers(-40, 40))
    def test_reduce_series_is_complete(self, intervals, target):
        exact = compose_series([i.to_set() for i in intervals])
        values = reduce_series(intervals, target)
        if not exact.admits(target):
            assert values is None
            return
        assert values is not None
        assert sum(values) == target
        assert all(i.admits(x) for i, x in zip(intervals, values))

    def test_reduce_series_special_shape(self):
        # [1,2]^1 next to zeros must give up 1, never reach 0
        intervals = [Interval.make(JUMP1, 1, 2), interval_q(1), interval_q(1)]
        assert reduce_series(intervals, -1) == [-1, 0, 0]
        assert reduce_series(intervals, 0) is None

    def test_reduce_series_prefers_small_values(self):
        intervals = [Interval.make(JUMP2, 0, 2), Interval.make(JUMP2, 0, 2),
                     Interval.make(TRIVIAL, 1, 1)]
        assert reduce_series(intervals, 3) == [0, 2, 1]


def ip_graphs():
    return [gen_random(KIND_IP, n, seed) for n in (12, 18) for seed in range(4)]


class TestFastPath:
    def test_selection(self, theta333):
        assert use_fast_path(theta333, Config(FAST_PATH='auto'))
        assert not use_fast_path(theta333, Config(FAST_PATH='off'))
        assert not use_fast_path(graphs.two_diamonds(), Config(FAST_PATH='on'))

    def test_rejects_shared_poles(self):
        with pytest.raises(ConstraintError):
            ip_fastpath.test_ip(graphs.two_diamonds())

    @pytest.mark.parametrize("g", ip_graphs())
    def test_intervals_match_sets(self, g):
        tree = build_spq_star(g)
        view = RootedView(tree, tree.chain_roots()[0])
        sets, intervals = DpTable(tree), IpTable(tree)
        for node in view.postorder():
            if node == view.root:
                continue
            parent = view.parent(node)
            expected = Interval.from_set(sets.set_of(node, parent))
            assert intervals.interval_of(node, parent) == expected

    @pytest.mark.parametrize("g", ip_graphs())
    def test_verdicts_match(self, g):
        assert (ip_fastpath.test_ip(g) is None) == (sp_tester.test_block(g) is None)

    @pytest.mark.parametrize("g", ip_graphs() + [graphs.theta(3, 3, 3)])
    def test_construction(self, g):
        witness = ip_fastpath.test_ip(g)
        if witness is None:
            return
        assert witness.sigma_child - witness.sigma_root == 4
        assignment = construct_ip(g, witness)
        rep = layout(synthesize(assignment, witness.view))
        assert validate_rep(rep).ok

    @pytest.mark.parametrize("g", ip_graphs() + [graphs.theta(3, 3, 3)])
    def test_construction_stays_on_intervals(self, g, monkeypatch):
        witness = ip_fastpath.test_ip(g)
        if witness is None:
            return

        def no_sets(*args, **kwargs):
            raise AssertionError("construction fell back to spirality sets")

        monkeypatch.setattr(Interval, 'to_set', no_sets)
        monkeypatch.setattr(sp_tester, 'split_series', no_sets)
        monkeypatch.setattr(DpTable, 'set_of', no_sets)
        assignment = construct_ip(g, witness)
        assert assignment.sigma[witness.view.root_child()] == 2 * witness.sigma_child
