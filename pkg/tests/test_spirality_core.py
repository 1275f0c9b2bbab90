import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from orthotest.config import Config
from orthotest.errors import RepresentationError
from orthotest.spirality_core import (EMPTY, ZERO, SpiralitySet, SupportTree,
                                      alpha_assignments, cartesian_sum,
                                      compose_parallel2_set, compose_parallel3,
                                      compose_parallel3_set, compose_series,
                                      join_coefficients, q_star_set,
                                      reroot_series, turn_value)

PROPERTY_SETTINGS = settings(
    max_examples=120,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)


@st.composite
def spirality_sets(draw, max_width=40):
    values = draw(st.lists(st.integers(-max_width, max_width), min_size=1, max_size=12))
    return SpiralitySet.from_doubled(values)


class TestSets:
    def test_from_values_doubles(self):
        s = SpiralitySet.from_values([-1, 0.5, 2])
        assert s.doubled_values() == [-2, 1, 4]
        assert s.to_halves() == [-1, 0.5, 2]

    def test_normalized_equality(self):
        assert SpiralitySet(0, 0b100) == SpiralitySet(2, 1)
        assert SpiralitySet(5, 0) == EMPTY

    def test_semi_integer_rejected(self):
        with pytest.raises(ValueError):
            SpiralitySet.from_values([0.3])

    def test_admits(self):
        s = q_star_set(3)
        assert s.values() == [-2, -1, 0, 1, 2]
        assert s.admits(2) and not s.admits(3) and not s.admits(0.5)

    def test_negate(self):
        s = SpiralitySet.from_values([-1, 3, 4])
        assert s.negate().values() == [-4, -3, 1]
        assert not s.is_symmetric()
        assert q_star_set(4).is_symmetric()

    def test_nonnegative(self):
        assert q_star_set(3).nonnegative().values() == [0, 1, 2]
        assert SpiralitySet.from_values([-3]).nonnegative() == EMPTY

    def test_union_and_intersection(self):
        a = SpiralitySet.from_values([0, 1])
        b = SpiralitySet.from_values([1, 5])
        assert a.union(b).values() == [0, 1, 5]
        assert a.intersect(b).values() == [1]

    @PROPERTY_SETTINGS
    @given(spirality_sets())
    def test_double_negation(self, s):
        assert s.negate().negate() == s


class TestSums:
    def test_cartesian_sum(self):
        a = SpiralitySet.from_values([0, 1])
        b = SpiralitySet.from_values([-1, 2])
        assert cartesian_sum(a, b).values() == [-1, 0, 2, 3]

    def test_empty_operand(self):
        assert cartesian_sum(EMPTY, q_star_set(2)) == EMPTY

    def test_series_of_chains(self):
        # two chains of length 2 in series reach [-2, 2]
        assert compose_series([q_star_set(2), q_star_set(2)]).values() == [-2, -1, 0, 1, 2]
        assert compose_series([]) == ZERO

    @PROPERTY_SETTINGS
    @given(spirality_sets(300), spirality_sets(300))
    def test_fft_matches_shift_or(self, a, b):
        fft = Config(USE_FFT=True, FFT_MIN_BITS=1)
        plain = Config(USE_FFT=False)
        assert cartesian_sum(a, b, fft) == cartesian_sum(a, b, plain)

    @PROPERTY_SETTINGS
    @given(spirality_sets(), spirality_sets())
    def test_sum_is_commutative(self, a, b):
        assert cartesian_sum(a, b) == cartesian_sum(b, a)


class TestParallel:
    def test_three_children_shift_by_two(self):
        sets = [q_star_set(4)] * 3
        # the outer children take target +2 and -2 (doubled: +-4)
        assert compose_parallel3_set(sets).values() == [-1, 0, 1]
        choices = compose_parallel3(sets, 2)
        assert len(choices) == 6
        assert choices[0].values == (6, 2, -2)

    def test_three_children_infeasible(self):
        assert compose_parallel3_set([q_star_set(2)] * 3) == EMPTY

    def test_alpha_assignments(self):
        alphas = alpha_assignments()
        assert len(alphas) == 9
        assert all(a['ul'] + a['ur'] >= 1 and a['vl'] + a['vr'] >= 1 for a in alphas)
        pinned = alpha_assignments({'ul': (1,), 'ur': (1,)})
        assert len(pinned) == 3

    def test_join_coefficients(self):
        assert join_coefficients([(1, 1), (2, 1)], (1, 1)) == ((2, 2), (1, 2))
        assert join_coefficients([(1, 1)], (2, 1)) == ((1, 2),)

    def test_two_chains(self):
        coefficients = join_coefficients([(1, 1), (1, 1)], (1, 1))
        s = compose_parallel2_set([q_star_set(3), q_star_set(3)], coefficients)
        assert s.is_symmetric()
        # unit coefficients keep the set integral; the chains reach +-2 apart
        assert s.values() == [-2, -1, 0, 1, 2]


class TestSupportTree:
    @PROPERTY_SETTINGS
    @given(st.lists(spirality_sets(8), min_size=2, max_size=7), st.data())
    def test_delta_without(self, sets, data):
        tree = SupportTree(sets)
        j = data.draw(st.integers(0, len(sets) - 1))
        others = sets[:j] + sets[j + 1:]
        assert tree.delta_without(j) == compose_series(others)
        assert tree.root == compose_series(sets)

    def test_reroot(self):
        sets = [q_star_set(2), q_star_set(3), SpiralitySet.from_values([2])]
        tree = SupportTree(sets)
        parent = SpiralitySet.from_values([-1])
        expected = compose_series([sets[0], sets[2], parent])
        assert reroot_series(tree, 1, parent) == expected

    def test_needs_two_children(self):
        with pytest.raises(ValueError):
            SupportTree([ZERO])


class TestTurns:
    def test_turn_values(self):
        # east then south is a right turn with directions counterclockwise
        assert turn_value(0, 3) == 1
        assert turn_value(0, 1) == -1
        assert turn_value(2, 2) == 0

    def test_u_turn(self):
        with pytest.raises(RepresentationError):
            turn_value(0, 2)
