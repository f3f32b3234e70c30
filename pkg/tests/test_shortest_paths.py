import numpy as np
import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from planar_stats.errors import AlreadyPerturbed, NegativeCycle
from planar_stats.generators import cycle, grid, negative_lengths, random_lengths, random_triangulation
from planar_stats.shortest_paths import (
    DistanceEngine, initial_potential, perturb, reduced_lengths, reversed_graph, sssp,
)


def floyd(g):
    """Dense all-pairs on base lengths; independent of the Dijkstra code."""
    W = np.full((g.n, g.n), np.inf)
    np.fill_diagonal(W, 0)
    np.minimum.at(W, (g.tail, g.head), g.base.astype(float))
    for k in range(g.n):
        W = np.minimum(W, W[:, [k]] + W[[k], :])
    return W


def with_base(g, base):
    return g.with_lengths(np.asarray(base, dtype=np.int64), np.zeros(g.num_darts, dtype=np.int64))


class TestPotential:
    def test_c4_unit(self, c4):
        p = initial_potential(c4, 0)
        assert p.base.tolist() == [0, 1, 2, 1]

    def test_c4_negative_arc(self, c4):
        # dart 0 is a -> b
        base = c4.base.copy()
        base[0] = -1
        p = initial_potential(with_base(c4, base), 0)
        assert p.base[1] == -1

    def test_negative_triangle(self):
        g = cycle(3)
        base = np.ones(g.num_darts, dtype=np.int64)
        base[0::2] = -1
        with pytest.raises(NegativeCycle):
            initial_potential(with_base(g, base))

    def test_reduced_lengths_nonnegative(self):
        g = negative_lengths(random_lengths(random_triangulation(40, 3), 1, 9, 3), 3)
        assert g.base.min() < 0
        rb, _ = reduced_lengths(g, initial_potential(g))
        assert rb.min() >= 0


class TestDistances:
    def test_g33_manhattan(self, g33):
        sp = sssp(g33, initial_potential(g33), 0)
        expect = [r + c for r in range(3) for c in range(3)]
        assert sp.dist_base.tolist() == expect

    def test_parents_form_tree(self, g33):
        sp = sssp(perturb(g33, 1), initial_potential(g33), 4)
        for v in range(g33.n):
            if v == 4:
                assert sp.parent_dart[v] < 0
            else:
                assert g33.head[sp.parent_dart[v]] == v

    def test_to_target_matches_reverse(self):
        g = perturb(random_lengths(grid(5, 5), 1, 9, 2), 2)
        eng = DistanceEngine(g, initial_potential(g))
        db, de, _ = eng.to_target(7)
        for s in range(g.n):
            fb, fe, _ = eng.from_source(s)
            assert (fb[7], fe[7]) == (db[s], de[s])


class TestPerturb:
    def test_distinct_and_deterministic(self, g33):
        a, b = perturb(g33, 5), perturb(g33, 5)
        assert np.array_equal(a.eps, b.eps)
        assert len(set(a.eps.tolist())) == g33.num_darts
        assert not np.array_equal(a.eps, perturb(g33, 6).eps)

    def test_twice_rejected(self, g33):
        with pytest.raises(AlreadyPerturbed):
            perturb(perturb(g33, 0), 1)

    def test_unique_shortest_paths(self):
        # with eps drawn, distances from every source are pairwise distinct per target
        g = perturb(grid(4, 4), 0)
        sp = sssp(g, initial_potential(g), 0)
        pairs = set(zip(sp.dist_base.tolist(), sp.dist_eps.tolist()))
        assert len(pairs) == g.n


class TestReversed:
    def test_involution(self):
        g = perturb(random_lengths(grid(3, 4), 1, 9, 0), 0)
        assert reversed_graph(reversed_graph(g)).same_as(g)

    def test_transposes_distances(self):
        g = random_lengths(grid(4, 4), 1, 9, 1)
        assert np.array_equal(floyd(reversed_graph(g)), floyd(g).T)


@st.composite
def instances(draw):
    n = draw(st.integers(4, 30))
    seed = draw(st.integers(0, 10_000))
    g = random_lengths(random_triangulation(n, seed), 0, 12, seed)
    if draw(st.booleans()):
        g = negative_lengths(g, seed)
    return g


@settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(instances(), st.data())
def test_dijkstra_matches_floyd(g, data):
    src = data.draw(st.integers(0, g.n - 1))
    sp = sssp(g, initial_potential(g), src)
    assert np.array_equal(sp.dist_base.astype(float), floyd(g)[src])
