import json
import math

import numpy as np
import pytest

from planar_stats.division import (
    Limits, assign_owners, check_contract, dump, is_triangulated, measure, r_division,
)
from planar_stats.errors import NotTriangulated
from planar_stats.generators import grid, random_triangulation
from planar_stats.solver import triangulate


@pytest.fixture(scope="module")
def t16():
    return triangulate(grid(16, 16))


def test_grid_16_r_64(t16):
    div = r_division(t16, 64)
    assert check_contract(div, t16) == []
    lim = div.limits
    assert len(div.pieces) <= lim.c1 * 4
    for p in div.pieces:
        assert len(p.vertices) <= lim.c2 * 64
        assert len(p.boundary) <= lim.c3 * 8
        assert p.hole_count <= lim.c4


def test_r_at_least_n_is_one_piece(t16):
    div = r_division(t16, t16.n)
    assert len(div.pieces) == 1
    (p,) = div.pieces
    assert len(p.boundary) == 0 and p.hole_count == 0
    assert (div.owner == 0).all()


def test_rejects_untriangulated():
    with pytest.raises(NotTriangulated):
        r_division(grid(4, 4), 4)


def test_is_triangulated():
    assert is_triangulated(random_triangulation(30, 1))
    assert not is_triangulated(grid(3, 3))


@pytest.mark.parametrize("r", [3, 7, 20])
def test_contract_on_triangulations(r):
    g = random_triangulation(300, r)
    div = r_division(g, r)
    assert check_contract(div, g) == []


def test_boundary_means_outside_edge(t16):
    div = r_division(t16, 16)
    deg = np.array([len(rot) for rot in t16.rotation])
    for p in div.pieces:
        darts = np.concatenate([2 * p.edges, 2 * p.edges + 1])
        verts, pdeg = np.unique(t16.tail[darts], return_counts=True)
        assert np.array_equal(np.sort(p.boundary), verts[pdeg != deg[verts]])
        # every boundary vertex touches a hole
        sub = p.sub
        on_hole = {int(sub.vert[sub.graph.tail[d]]) for h in sub.holes for d in sub.graph.orbits[h]}
        assert set(p.boundary.tolist()) <= on_hole
        assert len(sub.holes) == p.hole_count


def test_edges_covered_and_owners_partition(t16):
    div = r_division(t16, 16)
    covered = np.zeros(t16.num_edges, dtype=bool)
    for p in div.pieces:
        covered[p.edges] = True
    assert covered.all()
    assert sum(len(div.owned(j)) for j in range(len(div.pieces))) == t16.n
    for v in range(t16.n):
        containing = [p.index for p in div.pieces if v in set(p.vertices.tolist())]
        assert div.owner[v] == min(containing)


def test_assign_owners_lowest_index(t16):
    div = r_division(t16, 16)
    counts = np.zeros(t16.n, dtype=int)
    for p in div.pieces:
        counts[p.vertices] += 1
    shared = int(np.argmax(counts))
    assert counts[shared] >= 3
    owners = assign_owners(div, t16.n)
    assert owners[shared] == min(p.index for p in div.pieces if shared in p.vertices)


def test_limits_are_configurable(t16):
    tight = Limits(c3=2.0, c4=2)
    div = r_division(t16, 36, tight)
    m = measure(div, t16)
    assert m["c3"] <= 2.0 and m["c4"] <= 2
    # fewer boundary vertices per piece costs more pieces
    assert m["pieces"] > len(r_division(t16, 36).pieces)


def test_measure_and_dump(t16):
    div = r_division(t16, 32)
    m = measure(div, t16)
    assert m["pieces"] == len(div.pieces)
    assert math.isclose(m["c1"], len(div.pieces) * 32 / t16.n)
    data = json.loads(dump(div))
    assert len(data["pieces"]) == len(div.pieces)
    assert data["owner"] == div.owner.tolist()
