import sys

import numpy as np
import pytest

from planar_stats.generators import cycle, grid, path, random_lengths
from planar_stats.planar_core import embed_subgraph
from planar_stats.shortest_paths import perturb


@pytest.fixture
def p3():
    return path(3)


@pytest.fixture
def c4():
    return cycle(4)


@pytest.fixture
def g33():
    return grid(3, 3)


def holed_piece(side, seed, max_holes=2):
    """Perturbed random-length grid and a piece with 0..max_holes square holes cut out.

    Returns (g, sub) or None when the carving disconnects the piece.
    """
    rng = np.random.default_rng(seed)
    g = perturb(random_lengths(grid(side, side), 1, 9, seed), seed)
    removed = set()
    for _ in range(int(rng.integers(0, max_holes + 1))):
        r0 = int(rng.integers(1, side - 3))
        c0 = int(rng.integers(1, side - 3))
        hs = int(rng.integers(1, 3))
        for r in range(r0, r0 + hs):
            for c in range(c0, c0 + hs):
                for d in g.rotation[r * side + c]:
                    removed.add(d >> 1)
    keep = [e for e in range(g.num_edges) if e not in removed]
    try:
        return g, embed_subgraph(g, keep)
    except Exception:
        return None


def outer_vertices(sub):
    P = sub.graph
    return sorted({int(sub.vert[P.tail[d]]) for d in P.orbits[P.outer_face]})


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
