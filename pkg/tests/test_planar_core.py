import numpy as np
import pytest

from planar_stats.errors import (
    CrossingWalk, DisconnectedGraph, DuplicateDart, EulerViolation, InvalidLength, ValidationError,
)
from planar_stats.generators import grid, random_triangulation
from planar_stats.planar_core import (
    NEG_INF, DualWalk, ExactLength, boundary_walks, build_embedded_graph, embed_subgraph,
    enclosed_vertices, euler_characteristic, is_non_crossing, trace_faces, tree_cotree,
)


def k4():
    return random_triangulation(4, seed=0, flips=0)


class TestBuild:
    def test_c4_has_two_faces(self, c4):
        assert c4.num_faces == 2
        assert euler_characteristic(c4) == 2

    def test_g33_counts(self, g33):
        assert (g33.n, g33.num_edges, g33.num_faces) == (9, 12, 5)

    def test_missing_dart_in_rotation(self):
        darts = [(0, 1), (1, 0), (1, 2), (2, 1)]
        with pytest.raises(ValidationError):
            build_embedded_graph(3, darts, [[0], [1], [3]], [1, 1, 1, 1])

    def test_dart_listed_twice(self):
        darts = [(0, 1), (1, 0)]
        with pytest.raises(DuplicateDart):
            build_embedded_graph(2, darts, [[0, 0], [1]], [1, 1])

    def test_disconnected(self):
        darts = [(0, 1), (1, 0), (2, 3), (3, 2)]
        with pytest.raises(DisconnectedGraph):
            build_embedded_graph(4, darts, [[0], [1], [2], [3]], [1] * 4)

    def test_nonplanar_rotation_fails_euler(self):
        # K4 with one rotation reversed has genus 1
        g = k4()
        rot = [list(r) for r in g.rotation]
        rot[0] = rot[0][::-1]
        with pytest.raises(EulerViolation):
            build_embedded_graph(4, list(zip(g.tail.tolist(), g.head.tolist())), rot,
                                 g.base.tolist())

    def test_float_length_rejected(self):
        with pytest.raises(InvalidLength):
            build_embedded_graph(2, [(0, 1), (1, 0)], [[0], [1]], [1.5, 1])


class TestExactLength:
    def test_lexicographic(self):
        assert ExactLength(1, 5) < ExactLength(2, -9)
        assert ExactLength(1, 2) < ExactLength(1, 3)

    def test_addition(self):
        assert ExactLength(1, 2) + ExactLength(3, -4) == ExactLength(4, -2)

    def test_overflow_is_checked(self):
        with pytest.raises(OverflowError):
            ExactLength(2 ** 62) + ExactLength(2 ** 62)

    def test_sentinel_is_minimal(self):
        assert NEG_INF < ExactLength(-(2 ** 62))


class TestFaces:
    def test_c4_dual_edges_join_inner_and_outer(self, c4):
        dual = trace_faces(c4)
        assert dual.face_count == 2
        for d in range(c4.num_darts):
            assert {int(dual.dual_tail[d]), int(dual.dual_head[d])} == {0, 1}

    def test_k4_has_four_faces(self):
        assert k4().num_faces == 4

    def test_g33_inner_faces_are_unit_squares(self, g33):
        lengths = sorted(len(o) for o in g33.orbits)
        assert lengths == [4, 4, 4, 4, 8]
        assert len(g33.orbits[g33.outer_face]) == 8

    def test_bounded_faces_run_counterclockwise(self, g33):
        # dart 0 is (0,0) -> (0,1) along the bottom row; the unit square lies on its left
        face = g33.orbits[g33.face_of[0]]
        assert [int(g33.tail[d]) for d in face] == [0, 1, 4, 3]


class TestEnclosure:
    def test_c4_walk_around_a(self, c4):
        walk = boundary_walks(c4, {0})[0]
        assert len(walk) == 2
        assert enclosed_vertices(c4, walk) == {0}

    def test_complement_under_reversal(self, c4):
        walk = boundary_walks(c4, {0})[0]
        assert enclosed_vertices(c4, walk.reversed()) == {1, 2, 3}

    def test_empty_walk_orientation(self, c4):
        assert enclosed_vertices(c4, DualWalk((), True)) == frozenset()
        assert enclosed_vertices(c4, DualWalk((), False)) == {0, 1, 2, 3}

    def test_g33_center(self, g33):
        walk = DualWalk(tuple(g33.rotation[4]))
        assert enclosed_vertices(g33, walk) == {4}

    def test_double_winding_is_crossing(self, g33):
        walk = DualWalk(tuple(g33.rotation[4]) * 2)
        with pytest.raises(CrossingWalk):
            enclosed_vertices(g33, walk)

    def test_interleaved_passages_detected(self, g33):
        # walk around {0, 4}: both diagonal corners of one square, touching at a face
        walks = boundary_walks(g33, {0, 4})
        assert all(is_non_crossing(g33, w) for w in walks)


class TestTreeCotree:
    @pytest.mark.parametrize("make, faces", [("c4", 2), ("g33", 5)])
    def test_cotree_spans_dual(self, make, faces, request):
        g = request.getfixturevalue(make)
        tc = tree_cotree(g, 0)
        assert len(tc.tree) == g.n - 1
        assert len(tc.cotree) == faces - 1
        assert tc.tree | tc.cotree == frozenset(range(g.num_edges))
        assert not tc.tree & tc.cotree

    def test_k4(self):
        tc = tree_cotree(k4(), 0)
        assert len(tc.cotree) == 3


class TestSubgraph:
    def test_hole_detected(self):
        g = grid(5, 5)
        center = 12
        removed = {d >> 1 for d in g.rotation[center]}
        sub = embed_subgraph(g, [e for e in range(g.num_edges) if e not in removed])
        assert len(sub.holes) == 1
        hole = sub.holes[0]
        assert hole != sub.graph.outer_face
        # four unit squares merge into the hole
        assert np.count_nonzero(sub.region == hole) == 4

    def test_whole_graph_has_no_holes(self, g33):
        sub = embed_subgraph(g33, range(g33.num_edges))
        assert sub.holes == ()
        assert sub.graph.same_as(g33)
