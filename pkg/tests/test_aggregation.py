import numpy as np
import pytest

from conftest import holed_piece
from planar_stats.aggregation import (
    WalkRef, build_chi, build_count, build_max, build_walk_family, is_star_shaped, query_count,
    query_max, query_sum,
)
from planar_stats.errors import IndexOutOfRange, InvalidWalk
from planar_stats.planar_core import DualWalk, boundary_walks, enclosed_vertices
from planar_stats.rmq import NEG
from planar_stats.shortest_paths import initial_potential, sssp
from walkcases import KINDS, random_case

ONES4 = np.ones(4, dtype=np.int64)


def whole(arcs):
    return [WalkRef(0, 0, len(arcs) - 1)]


class TestChi:
    def test_c4_walk_around_a_sums_exterior(self, c4):
        walk = boundary_walks(c4, {0})[0]
        chi = build_chi(c4, 0, ONES4)
        assert sum(int(chi.chi[d]) for d in walk.arcs) == 3

    def test_g33_center(self, g33):
        walk = DualWalk(tuple(g33.rotation[4]))
        chi = build_chi(g33, 4, np.ones(9, dtype=np.int64))
        assert sum(int(chi.chi[d]) for d in walk.arcs) == 8

    def test_antisymmetric(self, g33):
        chi = build_chi(g33, 0, np.arange(9)).chi
        assert np.all(chi[0::2] + chi[1::2] == 0)


class TestSum:
    def test_c4_interior_is_a(self, c4):
        walk = boundary_walks(c4, {0})[0]
        fam = build_walk_family(c4, build_chi(c4, 0, ONES4), [walk.arcs])
        assert query_sum(fam, whole(walk.arcs)) == 1

    def test_prefix_layout(self, g33):
        walk = DualWalk(tuple(g33.rotation[4]))
        chi = build_chi(g33, 4, np.ones(9, dtype=np.int64))
        fam = build_walk_family(g33, chi, [walk.arcs])
        assert fam.S(0, 4) == sum(chi.chi[list(walk.arcs)])
        assert fam.S(0, 0) == 0

    def test_split_is_invariant(self, g33):
        walk = DualWalk(tuple(g33.rotation[4]))
        fam = build_walk_family(g33, build_chi(g33, 4, np.arange(1, 10)), [walk.arcs])
        one = query_sum(fam, whole(walk.arcs))
        two = query_sum(fam, [WalkRef(0, 0, 1), WalkRef(0, 2, 3)])
        assert one == two == 5

    def test_empty_family(self, c4):
        fam = build_walk_family(c4, build_chi(c4, 0, ONES4), [])
        with pytest.raises(IndexOutOfRange):
            query_sum(fam, [WalkRef(0, 0, 0)])

    def test_gap_rejected(self, g33):
        chi = build_chi(g33, 4, np.ones(9, dtype=np.int64))
        b = next(d for d in range(g33.num_darts) if g33.face_of[1] != g33.face_of[d])
        with pytest.raises(InvalidWalk):
            build_walk_family(g33, chi, [[0, b]])

    def test_index_out_of_range(self, c4):
        walk = boundary_walks(c4, {0})[0]
        fam = build_walk_family(c4, build_chi(c4, 0, ONES4), [walk.arcs])
        with pytest.raises(IndexOutOfRange):
            query_sum(fam, [WalkRef(0, 0, 5)])


class TestCount:
    W = np.array([0, 1, 2, 1])

    def test_thresholds(self, c4):
        assert build_count(c4, 0, self.W, []).thresholds.tolist() == [0, 1, 2]
        assert len(build_count(c4, 0, ONES4, []).thresholds) == 1
        assert len(build_count(c4, 0, np.arange(4), []).thresholds) == 4

    def test_c4_enclosing_b_c(self, c4):
        walk = boundary_walks(c4, {1, 2})[0]
        cnt = build_count(c4, 1, self.W, [walk.arcs])
        refs = whole(walk.arcs)
        assert query_count(cnt, refs, 1) == 1
        assert query_count(cnt, refs, 10 ** 9) == 2
        assert query_count(cnt, refs, -1) == 0


class TestMax:
    W = np.array([5, 1, 7, 2])

    def test_c4_enclosing_a_b(self, c4):
        sp = sssp(c4, initial_potential(c4), 0)
        walk = boundary_walks(c4, {0, 1})[0]
        mx = build_max(c4, None, sp, self.W, [walk.arcs])
        assert query_max(mx, whole(walk.arcs)) == 5

    def test_single_vertex(self, g33):
        sp = sssp(g33, initial_potential(g33), 4)
        walk = DualWalk(tuple(g33.rotation[4]))
        mx = build_max(g33, None, sp, np.arange(9) * 3, [walk.arcs])
        assert query_max(mx, whole(walk.arcs)) == 12

    def test_whole_graph(self, g33):
        sp = sssp(g33, initial_potential(g33), 4)
        w = np.array([3, 9, 1, 4, 0, 2, 8, 6, 5])
        mx = build_max(g33, None, sp, w, [])
        assert query_max(mx, []) == 9

    def test_sentinel_below_every_weight(self):
        assert NEG < -(2 ** 62)


class TestStarShaped:
    def test_root_only(self, g33):
        sp = sssp(g33, initial_potential(g33), 4)
        assert is_star_shaped(g33, sp, DualWalk(tuple(g33.rotation[4])))

    def test_missing_parent(self, g33):
        # from root 0 the tree parent of 5 is 4
        sp = sssp(g33, initial_potential(g33), 0)
        assert int(g33.tail[sp.parent_dart[5]]) == 4
        (walk,) = boundary_walks(g33, {0, 1, 2, 5})
        assert not is_star_shaped(g33, sp, walk)
        (walk,) = boundary_walks(g33, {0, 1, 3, 4})
        assert is_star_shaped(g33, sp, walk)

    def test_everything(self, g33):
        sp = sssp(g33, initial_potential(g33), 4)
        assert is_star_shaped(g33, sp, DualWalk((), False))


@pytest.mark.parametrize("kind", KINDS)
def test_random_walks_match_enclosure(kind):
    rng = np.random.default_rng(KINDS.index(kind))
    for _ in range(25):
        case = random_case(rng, kind)
        g = case.g
        assert enclosed_vertices(g, DualWalk(case.arcs)) == case.inside
        w = rng.integers(-5, 20, size=g.n)
        arcs, refs = case.split(rng)
        fam = build_walk_family(g, build_chi(g, case.root, w), [arcs])
        assert query_sum(fam, refs) == sum(int(w[v]) for v in case.inside)
        delta = int(rng.integers(-6, 22))
        cnt = build_count(g, case.root, w, [arcs])
        assert query_count(cnt, refs, delta) == sum(1 for v in case.inside if w[v] <= delta)
        if is_star_shaped(g, case.tree, DualWalk(case.arcs)):
            mx = build_max(g, None, case.tree, w, [arcs])
            assert query_max(mx, refs) == max(int(w[v]) for v in case.inside)


def test_upward_sets_are_star_shaped():
    rng = np.random.default_rng(3)
    for _ in range(20):
        case = random_case(rng, "upward")
        assert is_star_shaped(case.g, case.tree, DualWalk(case.arcs))


def test_max_in_holed_pieces():
    rng = np.random.default_rng(1)
    checked = chords = 0
    for trial in range(150):
        made = holed_piece(int(rng.integers(6, 10)), trial)
        if made is None:
            continue
        g, sub = made
        root = int(rng.choice(sub.vert))
        sp = sssp(g, initial_potential(g), root)
        w = rng.integers(-5, 30, size=sub.graph.n)
        S = {root}
        for v in rng.permutation(g.n)[: int(rng.integers(1, g.n + 1))].tolist():
            while v not in S:
                S.add(v)
                v = int(g.tail[sp.parent_dart[v]])
        walks = boundary_walks(g, S)
        if len(walks) != 1:
            continue
        arcs = [int(sub.dloc[a]) for a in walks[0].arcs if sub.dloc[a] >= 0]
        inside = [int(sub.vloc[v]) for v in S if sub.vloc[v] >= 0]
        if not arcs:
            continue
        assert enclosed_vertices(sub.graph, DualWalk(tuple(arcs))) == frozenset(inside)
        mx = build_max(g, sub, sp, w, [arcs])
        assert query_max(mx, whole(arcs)) == max(int(w[v]) for v in inside)
        checked += 1
        chords += any(sub.graph.face_of[a] in mx.tour.chords for a in arcs)
    assert checked > 50
    assert chords > 0
