import pytest

from orthotest import block_composer
from orthotest.block_composer import realize_graph
from orthotest.errors import RepresentationError
from orthotest.generators import gen_lower_bound
from orthotest.oracle import oracle_test
from orthotest.realizer import (E, N, S, W, OrthoRep, check_segments, compact,
                                from_json, layout, synthesize,
                                synthesize_cycle, to_json, to_svg, validate_rep)
from orthotest import sp_tester
from orthotest.sp_tester import construct
from orthotest.spirality_core import measure_spirality
from tests import graphs


@pytest.fixture
def square():
    return OrthoRep.from_directions(4, graphs.cycle(4).edges,
                                    {(0, 1): E, (1, 2): N, (2, 3): W, (3, 0): S})


def realized(block):
    witness = sp_tester.test_block(block)
    assignment = construct(block, witness)
    return witness, assignment, synthesize(assignment, witness.view)


class TestOrthoRep:
    def test_square_faces(self, square):
        assert sorted(square.face_turns()) == [-4, 4]
        assert square.face_turns()[square.external_face()] == -4
        assert square.angles[(0, 1)] == 1
        assert square.angles[(0, 3)] == 3

    def test_directions_follow_angles(self, square):
        assert square.direction(1, 0) == W
        assert square.direction(0, 3) == N

    def test_inconsistent_directions(self):
        with pytest.raises(RepresentationError):
            OrthoRep.from_directions(2, [(0, 1)], {(0, 1): E, (1, 0): N})


class TestValidation:
    def test_square(self, square):
        assert validate_rep(square).ok

    def test_bad_angle_sum(self, square):
        angles = dict(square.angles)
        angles[(0, 1)] = 2
        report = validate_rep(OrthoRep(4, square.edges, square.rotation, angles))
        assert not report.ok
        assert any("vertex 0" in v for v in report.violations)

    def test_coordinates(self, square):
        assert validate_rep(square.with_coordinates([(0, 0), (1, 0), (1, 1), (0, 1)])).ok
        report = validate_rep(square.with_coordinates([(0, 0), (1, 0), (0, 1), (1, 1)]))
        assert not report.ok

    def test_crossing_segments(self):
        rep = OrthoRep.from_directions(4, [(0, 1), (2, 3)], {(0, 1): E, (2, 3): N},
                                       coords=[(0, 1), (2, 1), (1, 0), (1, 2)])
        assert check_segments(rep) == [((0, 1), (2, 3))]


class TestSynthesis:
    def test_cycle(self, c6):
        witness = sp_tester.test_block(c6)
        rep = synthesize_cycle(6, witness.cycle, witness.turns)
        assert validate_rep(rep).ok
        assert validate_rep(layout(rep)).ok

    def test_theta(self, theta333):
        _, _, rep = realized(theta333)
        assert validate_rep(rep).ok
        assert validate_rep(layout(rep)).ok

    def test_reference_chain_heads_south(self, theta333):
        witness, _, rep = realized(theta333)
        chain = witness.view.oriented_chain(witness.root)
        assert rep.direction(chain[0], chain[1]) == S

    def test_measured_spirality(self, theta333):
        witness, assignment, rep = realized(theta333)
        for node, doubled in assignment.sigma.items():
            assert measure_spirality(rep, node, witness.view).doubled == doubled

    @pytest.mark.parametrize("g", [graphs.theta(2, 3, 4), graphs.two_diamonds(),
                                   graphs.theta(3, 3, 3, 3)])
    def test_other_blocks(self, g):
        witness = sp_tester.test_block(g)
        assert (witness is not None) == oracle_test(g)
        if witness is None:
            return
        rep = layout(synthesize(construct(g, witness), witness.view))
        assert validate_rep(rep).ok


def comb(teeth):
    """A cycle drawn as a comb with `teeth` notches along its top side."""
    k = 4 * teeth + 4
    directions = {(0, 1): E, (1, 2): N}
    v = 2
    for _ in range(teeth):
        for d in (W, S, W, N):
            directions[(v, v + 1)] = d
            v += 1
    directions[(v, v + 1)] = W
    directions[(v + 1, 0)] = S
    return OrthoRep.from_directions(k, graphs.cycle(k).edges, directions)


def drawn(g):
    return realize_graph(g, block_composer.test_graph(g))


class TestCompaction:
    @pytest.mark.parametrize("teeth", [1, 2, 5])
    def test_face_with_several_reflex_corners(self, teeth):
        rep = layout(comb(teeth))
        assert validate_rep(rep).ok
        assert len(set(rep.coords)) == rep.n

    def test_split_faces_are_split_again(self):
        rep = drawn(gen_lower_bound(2))
        assert validate_rep(rep).ok
        assert len(set(rep.coords)) == rep.n

    @pytest.mark.parametrize("g", [graphs.cycle(6), graphs.theta(3, 3, 3),
                                   graphs.two_c4(), gen_lower_bound(2)])
    def test_layout_is_idempotent(self, g):
        once = drawn(g)
        assert layout(once) == once
        assert compact(once) == once.coords

    def test_comb_is_idempotent(self):
        once = layout(comb(3))
        assert layout(once) == once


class TestOutput:
    def test_json_round_trip(self, theta333):
        rep = layout(realized(theta333)[2])
        assert from_json(to_json(rep)) == rep

    def test_malformed_json(self):
        with pytest.raises(RepresentationError):
            from_json('{"n": 2}')

    def test_svg(self, square):
        svg = to_svg(square.with_coordinates([(0, 0), (1, 0), (1, 1), (0, 1)]))
        assert svg.startswith('<?xml')
        assert svg.count('<line') == 4
        assert svg.count('<circle') == 4
        assert svg.rstrip().endswith('</svg>')

    def test_svg_needs_coordinates(self, square):
        with pytest.raises(RepresentationError):
            to_svg(square)
