"""Wall-time ladder for solve and the oracle, with a log-log slope fit."""
from __future__ import annotations

import os
import subprocess
import sys
import time

import numpy as np

from .generators import grid, random_lengths
from .oracle import apsp_oracle
from .solver import solve

ORACLE_CUTOFF = 100_000


def slope(ns, secs) -> float | None:
    if len(ns) < 2:
        return None
    return float(np.polyfit(np.log(ns), np.log(secs), 1)[0])


def run(sides, r_policy="cbrt", oracle_cutoff: int = ORACLE_CUTOFF, seed: int = 0) -> dict:
    rows = []
    for side in sides:
        g = random_lengths(grid(side, side), 1, 9, seed)
        t = time.perf_counter()
        res = solve(g, r=r_policy, seed=seed)
        solve_s = time.perf_counter() - t
        row = {"n": g.n, "r": res.r, "solve_s": solve_s, "stages": res.timings,
               "division": res.division}
        if g.n <= oracle_cutoff:
            t = time.perf_counter()
            o = apsp_oracle(g)
            row["oracle_s"] = time.perf_counter() - t
            row["agree"] = bool(o.wiener == res.wiener and o.diameter == res.diameter)
        rows.append(row)
    ns = [r["n"] for r in rows]
    report = {"rows": rows, "solve_slope": slope(ns, [r["solve_s"] for r in rows])}
    timed = [r for r in rows if "oracle_s" in r]
    report["oracle_slope"] = slope([r["n"] for r in timed], [r["oracle_s"] for r in timed])
    return report


_SNIPPET = (
    "import time;from planar_stats.generators import grid,random_lengths;"
    "from planar_stats.solver import solve;g=random_lengths(grid({s},{s}),1,9,0);"
    "solve(g);t=time.perf_counter();solve(g);print(time.perf_counter()-t)"
)


def compare_fallback(side: int = 8) -> dict:
    """Same solve with compiled kernels and with the pure-Python fallback."""
    out = {}
    for label, flag in (("numba", "0"), ("python", "1")):
        env = dict(os.environ, PLANAR_STATS_NO_NUMBA=flag)
        proc = subprocess.run([sys.executable, "-c", _SNIPPET.format(s=side)], env=env,
                              capture_output=True, text=True, check=True)
        out[label] = float(proc.stdout.strip().splitlines()[-1])
    out["speedup"] = out["python"] / out["numba"] if out["numba"] > 0 else None
    out["n"] = side * side
    return out
