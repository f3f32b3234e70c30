"""Command line: gen, solve, oracle, bench, viz, check.

Exit codes: 0 ok, 2 invalid input, 3 negative cycle.
"""
from __future__ import annotations

import json
import sys

import click
import numpy as np

from .errors import NegativeCycle, PlanarStatsError, ValidationError


def _fail(exc: Exception) -> None:
    click.echo(f"error: {exc}", err=True)
    sys.exit(3 if isinstance(exc, NegativeCycle) else 2)


class _Group(click.Group):
    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except (PlanarStatsError, ValueError, OSError) as exc:
            if isinstance(exc, click.ClickException):
                raise
            _fail(exc)


@click.group(cls=_Group)
def main():
    """Eccentricities, Wiener index and distance counts of plane graphs."""


@main.command()
@click.argument("kind", type=click.Choice(["grid", "triangulation", "fan", "path", "cycle"]))
@click.option("--n", type=int, default=None, help="vertex count (triangulation, fan, path, cycle)")
@click.option("--rows", type=int, default=None)
@click.option("--cols", type=int, default=None)
@click.option("--lo", type=int, default=None, help="lowest random length")
@click.option("--hi", type=int, default=None, help="highest random length")
@click.option("--undirected", is_flag=True, help="same length in both directions")
@click.option("--negative", is_flag=True, help="make 10% of arcs negative without negative cycles")
@click.option("--seed", type=int, default=0)
@click.option("-o", "--out", type=click.Path(dir_okay=False), default=None)
def gen(kind, n, rows, cols, lo, hi, undirected, negative, seed, out):
    """Generate a graph file."""
    from .generators import gen as make
    from .graph_io import to_text, write_graph

    params = {k: v for k, v in dict(n=n, rows=rows, cols=cols, lo=lo, hi=hi).items() if v is not None}
    params["directed"] = not undirected
    params["negative"] = negative
    g = make(kind, seed, **params)
    if out:
        write_graph(g, out)
    else:
        click.echo(to_text(g), nl=False)


@main.command()
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.option("--diameter", "want_diam", is_flag=True, help="report the diameter")
@click.option("--wiener", "want_wiener", is_flag=True, help="report the Wiener sum")
@click.option("--count", "delta", type=int, default=None, help="count ordered pairs within DELTA")
@click.option("--r-policy", default="auto", show_default=True,
              help="auto, cbrt, sqrt, n, n^EXP or an integer")
@click.option("--seed", type=int, default=0)
@click.option("--threads", type=int, default=1, show_default=True)
@click.option("--reverse", is_flag=True, help="distances towards each vertex instead of from it")
@click.option("--tsv", type=click.Path(dir_okay=False), default=None, help="per-vertex table")
@click.option("--json", "json_out", type=click.Path(dir_okay=False), default=None,
              help="summary file")
def solve(path, want_diam, want_wiener, delta, r_policy, seed, threads, reverse, tsv, json_out):
    """Per-vertex eccentricity and distance sum through an r-division."""
    from .graph_io import read_graph
    from .solver import solve as run

    if threads != 1:
        click.echo("note: pieces are processed sequentially; --threads is ignored", err=True)
    g = read_graph(path)
    res = run(g, delta=delta, r=r_policy, seed=seed, reverse=reverse)
    if tsv:
        with open(tsv, "w") as fh:
            fh.write(res.to_tsv())
    if json_out:
        with open(json_out, "w") as fh:
            fh.write(res.to_json())
    show_all = not (want_diam or want_wiener or delta is not None)
    if want_diam or show_all:
        click.echo(f"diameter\t{res.diameter}")
    if want_wiener or show_all:
        click.echo(f"wiener\t{res.wiener}")
    if delta is not None:
        click.echo(f"count\t{res.count}")


@main.command()
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.option("--count", "delta", type=int, default=None)
@click.option("--tsv", type=click.Path(dir_okay=False), default=None)
def oracle(path, delta, tsv):
    """Brute-force reference by one Dijkstra per vertex."""
    from .graph_io import read_graph
    from .oracle import apsp_oracle

    o = apsp_oracle(read_graph(path), delta=delta)
    if tsv:
        with open(tsv, "w") as fh:
            fh.write("vertex\tecc\tsum" + ("\tcount" if delta is not None else "") + "\n")
            for v in range(len(o.ecc)):
                row = [v, int(o.ecc[v]), int(o.sum[v])] + ([int(o.count[v])] if delta is not None else [])
                fh.write("\t".join(map(str, row)) + "\n")
    click.echo(f"diameter\t{o.diameter}")
    click.echo(f"wiener\t{o.wiener}")
    if delta is not None:
        click.echo(f"count\t{o.total_count}")


@main.command()
@click.option("--sides", default="10,20,40", show_default=True, help="grid side lengths")
@click.option("--r-policy", default="cbrt", show_default=True)
@click.option("--oracle-cutoff", type=int, default=100_000, show_default=True)
@click.option("--compare-fallback", is_flag=True, help="also time the pure-Python kernels")
@click.option("--seed", type=int, default=0)
@click.option("-o", "--out", type=click.Path(dir_okay=False), default=None)
def bench(sides, r_policy, oracle_cutoff, compare_fallback, seed, out):
    """Time solve and the oracle over a ladder of grids."""
    from . import bench as b

    report = b.run([int(s) for s in sides.split(",")], r_policy, oracle_cutoff, seed)
    if compare_fallback:
        report["fallback"] = b.compare_fallback()
    for row in report["rows"]:
        extra = f"\toracle {row['oracle_s']:.3f}s" if "oracle_s" in row else ""
        click.echo(f"n={row['n']}\tr={row['r']}\tsolve {row['solve_s']:.3f}s{extra}")
    for key in ("solve_slope", "oracle_slope"):
        if report[key] is not None:
            click.echo(f"{key}\t{report[key]:.3f}")
    if "fallback" in report:
        fb = report["fallback"]
        click.echo(f"fallback n={fb['n']}\tnumba {fb['numba']:.3f}s\tpython {fb['python']:.3f}s")
    if out:
        with open(out, "w") as fh:
            json.dump(report, fh, indent=2, default=float)


@main.command()
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.option("--svg", "svg_out", type=click.Path(dir_okay=False), required=True)
@click.option("--sites", type=int, default=4, show_default=True)
@click.option("--seed", type=int, default=0)
def viz(path, svg_out, sites, seed):
    """Draw the Voronoi cells of random outer-face sites."""
    from .graph_io import read_graph
    from .planar_core import ExactLength
    from .shortest_paths import perturb
    from .voronoi import Site, VoronoiPrep, avd_svg, build_avd

    rng = np.random.default_rng(seed)
    g = read_graph(path)
    if not np.any(g.eps):
        g = perturb(g, seed)
    ring = sorted({int(g.tail[d]) for d in g.orbits[g.outer_face]})
    chosen = rng.choice(ring, size=min(sites, len(ring)), replace=False).tolist()
    prep = VoronoiPrep(g, None, chosen)
    avd = build_avd(prep, [Site(int(v), ExactLength(0)) for v in chosen], rng)
    with open(svg_out, "w") as fh:
        fh.write(avd_svg(avd))
    click.echo(f"wrote {svg_out}")


@main.command()
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.option("--r-policy", default="cbrt", show_default=True)
@click.option("--samples", type=int, default=20, show_default=True, help="random 3-site axiom checks")
@click.option("--seed", type=int, default=0)
def check(path, r_policy, samples, seed):
    """Division contract and Voronoi axioms on one input."""
    from .division import check_contract, measure, r_division
    from .errors import EmptyCell, TieDetected
    from .graph_io import read_graph
    from .planar_core import ExactLength
    from .shortest_paths import perturb
    from .solver import pick_r, triangulate
    from .voronoi import Site, VoronoiPrep, axiom_violations

    g = read_graph(path)
    T = triangulate(g)
    div = r_division(T, pick_r(g.n, r_policy, False))
    problems = check_contract(div, T)
    m = measure(div, T)
    click.echo("division\t" + " ".join(f"{k}={v:.2f}" if isinstance(v, float) else f"{k}={v}"
                                        for k, v in m.items()))
    rng = np.random.default_rng(seed)
    pg = perturb(g.with_lengths(g.base, np.zeros_like(g.eps)), seed)
    ring = sorted({int(pg.tail[d]) for d in pg.orbits[pg.outer_face]})
    checked = 0
    if len(ring) >= 3:
        prep = VoronoiPrep(pg, None, ring)
        for _ in range(samples):
            vs = rng.choice(ring, size=3, replace=False).tolist()
            sites = [Site(int(v), ExactLength(int(rng.integers(-3, 4)), int(rng.integers(-9, 10))))
                     for v in vs]
            try:
                bad = axiom_violations(prep, sites)
            except (EmptyCell, TieDetected):
                continue
            checked += 1
            problems += [f"axiom {a} fails for sites {vs}" for a in bad]
    click.echo(f"axioms\t{checked} site triples checked")
    for p in problems:
        click.echo(f"FAIL\t{p}")
    if problems:
        raise ValidationError(f"{len(problems)} check(s) failed")
    click.echo("ok")


if __name__ == "__main__":
    main()
