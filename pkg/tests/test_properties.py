"""Hypothesis properties for the structural invariants."""
import os
import subprocess
import sys

import numpy as np
from hypothesis import HealthCheck, assume, given, settings, strategies as st

from planar_stats.aggregation import build_chi
from planar_stats.division import check_contract, r_division
from planar_stats.generators import fan, grid, random_lengths, random_triangulation
from planar_stats.oracle import apsp_oracle
from planar_stats.planar_core import ExactLength, boundary_walks, enclosed_vertices, euler_characteristic
from planar_stats.rmq import SparseTable
from planar_stats.solver import solve, triangulate

SLOW = settings(max_examples=25, deadline=None, suppress_health_check=[HealthCheck.too_slow])

ints = st.integers(-(2 ** 40), 2 ** 40)
lengths = st.builds(ExactLength, ints, ints)


@st.composite
def plane_graphs(draw, max_n=60):
    seed = draw(st.integers(0, 10 ** 6))
    if draw(st.booleans()):
        g = grid(draw(st.integers(2, 7)), draw(st.integers(2, 7)))
    else:
        g = random_triangulation(draw(st.integers(4, max_n)), seed)
    return random_lengths(g, 1, 9, seed)


@given(lengths, lengths, lengths)
def test_length_order_is_translation_invariant(a, b, c):
    assert (a < b) == (a + c < b + c)
    assert (a + b) - b == a


@given(plane_graphs())
@settings(deadline=None)
def test_euler_formula(g):
    assert euler_characteristic(g) == 2
    # every dart lies on exactly one face
    assert sorted(d for o in g.orbits for d in o) == list(range(g.num_darts))


@given(plane_graphs(), st.data())
@settings(deadline=None)
def test_walk_and_reverse_partition_vertices(g, data):
    S = set(data.draw(st.sets(st.integers(0, g.n - 1), min_size=1)))
    walks = boundary_walks(g, S)
    assume(len(walks) == 1)
    inside = enclosed_vertices(g, walks[0])
    outside = enclosed_vertices(g, walks[0].reversed())
    assert inside == S
    assert inside | outside == set(range(g.n)) and not inside & outside


@given(plane_graphs(), st.data())
@settings(deadline=None)
def test_chi_antisymmetry(g, data):
    w = np.array(data.draw(st.lists(st.integers(-50, 50), min_size=g.n, max_size=g.n)))
    chi = build_chi(g, data.draw(st.integers(0, g.n - 1)), w).chi
    assert np.all(chi[0::2] == -chi[1::2])


@given(st.lists(st.integers(-10 ** 9, 10 ** 9), min_size=1, max_size=80), st.data())
def test_sparse_table(values, data):
    t = SparseTable(values)
    lo = data.draw(st.integers(0, len(values) - 1))
    hi = data.draw(st.integers(lo, len(values) - 1))
    assert t.query(lo, hi) == max(values[lo:hi + 1])
    a = data.draw(st.integers(0, len(values) - 1))
    b = data.draw(st.integers(0, len(values) - 1))
    span = values[a:b + 1] if a <= b else values[a:] + values[:b + 1]
    assert t.query_circular(a, b) == max(span)


@given(st.integers(20, 300), st.integers(0, 10 ** 6), st.sampled_from(["cbrt", "sqrt"]))
@SLOW
def test_division_contract(n, seed, policy):
    g = random_triangulation(n, seed)
    r = max(3, int(np.ceil(n ** (1 / 3 if policy == "cbrt" else 1 / 2))))
    assert check_contract(r_division(g, r), g) == []


@given(plane_graphs(max_n=40), st.integers(0, 30))
@SLOW
def test_solve_matches_oracle(g, delta):
    o = apsp_oracle(g, delta=delta)
    res = solve(g, delta=delta)
    assert np.array_equal(res.stats.ecc, o.ecc)
    assert np.array_equal(res.stats.sum, o.sum)
    assert np.array_equal(res.stats.count, o.count)


@given(st.integers(4, 30), st.integers(0, 10 ** 6))
@SLOW
def test_diameter_two_identity(k, seed):
    g = fan(k, seed)
    res = solve(g)
    n, m = g.n, g.num_edges
    assert res.diameter == 2
    assert res.wiener == 2 * n * (n - 1) - 2 * m


@given(plane_graphs(max_n=30))
@SLOW
def test_triangulation_keeps_distances(g):
    T = triangulate(g)
    assert max(len(o) for o in T.orbits) == 3
    assert np.array_equal(apsp_oracle(T).sum, apsp_oracle(g).sum)


def test_pure_python_fallback_agrees():
    code = (
        "import numpy as np;"
        "from planar_stats import ACCELERATED, solve, apsp_oracle;"
        "from planar_stats.generators import grid, random_lengths;"
        "g = random_lengths(grid(5, 5), 1, 9, 3);"
        "r = solve(g, delta=8); o = apsp_oracle(g, delta=8);"
        "assert not ACCELERATED;"
        "assert (r.stats.sum == o.sum).all() and (r.stats.count == o.count).all();"
        "print('ok')"
    )
    env = dict(os.environ, PLANAR_STATS_NO_NUMBA="1")
    proc = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    assert proc.stdout.strip() == "ok"
