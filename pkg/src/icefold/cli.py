"""Command line interface.

Every command reads an ice quiver file (or a bundled fixture name given with
--fixture), prints text or JSON, and exits 0 on success, 1 on a domain error
(bad mathematical input) and 2 on a parse or usage error.
"""

from __future__ import annotations

import json
import random
import sys
from fractions import Fraction
from pathlib import Path

import click

from .characters import QuiverRepresentation, cluster_character, index_vector
from .cluster import Seed, enumerate_exchange_graph, seed_from_folded, seed_from_quiver
from .errors import IcefoldError, ParseError
from .fileformat import QuiverFile, fixture_names, load_fixture, parse_iq
from .folding import fold_potential, fold_quiver, verify_gamma
from .ginzburg import boundary_dg_quiver, ginzburg_functor, relative_ginzburg
from .groups import potential_invariant, require_admissible
from .mutation import (
    check_fold_commutes,
    fold_matrix,
    fz_mutate,
    orbit_mutation_sequence,
)
from .quiver import exchange_matrix, potential_commutator_residual


def _load(path: str | None, fixture: str | None) -> QuiverFile:
    if (path is None) == (fixture is None):
        raise click.UsageError("give exactly one of FILE or --fixture")
    if fixture is not None:
        return load_fixture(fixture)
    return parse_iq(Path(path).read_text())


def _emit(data: dict, fmt: str, text_lines) -> None:
    if fmt == "json":
        click.echo(json.dumps(data, indent=2, default=str))
    else:
        for line in text_lines:
            click.echo(line)


def _matrix_json(m) -> dict:
    return {
        "rows": list(m.row_index),
        "cols": list(m.col_index),
        "entries": [
            [
                int(x)
                if isinstance(x, Fraction) and x.denominator == 1
                else (str(x) if isinstance(x, Fraction) else x)
                for x in row
            ]
            for row in m.entries
        ],
    }


class _Group(click.Group):
    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except ParseError as exc:
            click.echo(f"parse error: {exc}", err=True)
            sys.exit(2)
        except IcefoldError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(1)


@click.group(cls=_Group)
def main():
    """Fold, mutate and inspect ice quivers with potential."""


def _common(fn):
    fn = click.argument("file", required=False)(fn)
    fn = click.option("--fixture", type=click.Choice(fixture_names()), help="bundled example")(fn)
    fn = click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text")(fn)
    return fn


def _figdir(fn):
    return click.option(
        "--figure-dir",
        type=click.Path(file_okay=False),
        help="also render figures into this directory",
    )(fn)


@main.command("fold-matrix")
@_common
@_figdir
def cmd_fold_matrix(file, fixture, fmt, figure_dir):
    """Fold the exchange matrix along the group action."""
    qf = _load(file, fixture)
    if qf.action is None:
        raise click.UsageError("the input has no group action")
    folded = fold_matrix(qf.quiver, qf.action)
    data = {
        "unfolded": _matrix_json(exchange_matrix(qf.quiver)),
        "folded": _matrix_json(folded),
        "symmetrizer": list(folded.symmetrizer),
    }
    lines = [folded.to_text()]
    if figure_dir:
        from .plots import draw_quiver

        d = Path(figure_dir)
        d.mkdir(parents=True, exist_ok=True)
        out = draw_quiver(qf.quiver, d / "quiver.png", title="input quiver")
        data["figures"] = [str(out)]
        lines.append(f"figure: {out}")
    _emit(data, fmt, lines)


@main.command("fold-quiver")
@_common
@_figdir
def cmd_fold_quiver(file, fixture, fmt, figure_dir):
    """Fold the quiver itself: orbit/character vertices and counted arrows."""
    qf = _load(file, fixture)
    if qf.action is None:
        raise click.UsageError("the input has no group action")
    fq = fold_quiver(qf.action)
    verify_gamma(fq)
    data = {
        "vertices": [
            {"id": v.id, "label": v.label, "frozen": v.id in fq.quiver.frozen_vertices}
            for v in fq.vertices
        ],
        "arrows": [
            {
                "id": a.id,
                "source": a.source,
                "target": a.target,
                "frozen": a.id in fq.quiver.frozen_arrows,
            }
            for a in fq.quiver.arrows
        ],
    }
    lines = ["vertices:"]
    for v in fq.vertices:
        mark = " frozen" if v.id in fq.quiver.frozen_vertices else ""
        lines.append(f"  {v.id} {v.label}{mark}")
    lines.append("arrows:")
    labels = {v.id: v.label for v in fq.vertices}
    for a in fq.quiver.arrows:
        mark = " frozen" if a.id in fq.quiver.frozen_arrows else ""
        lines.append(f"  {a.id}: {labels[a.source]} -> {labels[a.target]}{mark}")
    if figure_dir:
        from .plots import draw_quiver

        d = Path(figure_dir)
        d.mkdir(parents=True, exist_ok=True)
        out = draw_quiver(fq.quiver, d / "folded-quiver.png", title="folded quiver")
        data["figures"] = [str(out)]
        lines.append(f"figure: {out}")
    _emit(data, fmt, lines)


@main.command("fold-potential")
@_common
def cmd_fold_potential(file, fixture, fmt):
    """Fold the potential along the group action."""
    qf = _load(file, fixture)
    if qf.action is None or qf.potential is None:
        raise click.UsageError("the input needs both a potential and a group action")
    fq = fold_quiver(qf.action)
    wg = fold_potential(fq, qf.potential)
    data = {
        "potential": [
            {"coeff": str(c), "cycle": list(cyc.arrows)} for c, cyc in wg.terms
        ]
    }
    _emit(data, fmt, [str(wg)])


@main.command("mutate")
@_common
@click.option("--at", "-k", "keys", multiple=True, required=True, help="vertex key, repeatable")
def cmd_mutate(file, fixture, fmt, keys):
    """Mutate the unfolded exchange matrix at a sequence of vertices."""
    qf = _load(file, fixture)
    m = exchange_matrix(qf.quiver)
    for k in keys:
        m = fz_mutate(m, k)
    _emit({"matrix": _matrix_json(m)}, fmt, [m.to_text()])


@main.command("orbit-mutate")
@_common
@click.option("--at", "-k", "keys", multiple=True, required=True, help="orbit key like [1], repeatable")
def cmd_orbit_mutate(file, fixture, fmt, keys):
    """Mutate along orbits and check folding commutes with the sequence."""
    qf = _load(file, fixture)
    if qf.action is None:
        raise click.UsageError("the input has no group action")
    orbits = qf.action.orbits()
    m = orbit_mutation_sequence(exchange_matrix(qf.quiver), list(keys), orbits)
    folded, _ = check_fold_commutes(qf.quiver, qf.action, list(keys))
    data = {"matrix": _matrix_json(m), "folded": _matrix_json(folded)}
    _emit(data, fmt, [m.to_text(), "", "folded:", folded.to_text()])


@main.command("enumerate")
@_common
@_figdir
@click.option("--folded/--unfolded", default=False, help="start from the folded matrix")
@click.option("--budget", default=2000, show_default=True, help="seed cap before failing")
def cmd_enumerate(file, fixture, fmt, figure_dir, folded, budget):
    """Enumerate the exchange graph from the initial seed."""
    qf = _load(file, fixture)
    if folded:
        if qf.action is None:
            raise click.UsageError("--folded needs a group action")
        seed = seed_from_folded(fold_matrix(qf.quiver, qf.action))
    else:
        seed = seed_from_quiver(qf.quiver)
    graph = enumerate_exchange_graph(seed, budget=budget)
    names = list(seed.matrix.row_index)
    data = {
        "seeds": len(graph.seeds),
        "clusters": len(graph.clusters),
        "edges": len(graph.edges),
        "variables": sorted(graph.variables),
    }
    lines = [
        f"seeds: {len(graph.seeds)}",
        f"clusters: {len(graph.clusters)}",
        f"edges: {len(graph.edges)}",
        "variables:",
    ] + [f"  {v}" for v in sorted(graph.variables)]
    if figure_dir:
        from .plots import draw_exchange_graph

        d = Path(figure_dir)
        d.mkdir(parents=True, exist_ok=True)
        out = draw_exchange_graph(graph, d / "exchange-graph.png")
        data["figures"] = [str(out)]
        lines.append(f"figure: {out}")
    _emit(data, fmt, lines)


def _dg_lines(dg):
    lines = ["generators:"]
    for a in dg.quiver.arrows:
        lines.append(f"  {a.id}: {a.source} -> {a.target}  deg {a.degree}")
    lines.append("differential:")
    for aid in sorted(dg.differential):
        lines.append(f"  d({aid}) = {dg.differential[aid]}")
    return lines


def _dg_json(dg):
    return {
        "generators": [
            {"id": a.id, "source": a.source, "target": a.target, "degree": a.degree}
            for a in dg.quiver.arrows
        ],
        "differential": {aid: str(ps) for aid, ps in dg.differential.items()},
    }


@main.command("ginzburg")
@_common
def cmd_ginzburg(file, fixture, fmt):
    """The relative differential graded completion of the input."""
    qf = _load(file, fixture)
    if qf.potential is None:
        raise click.UsageError("the input has no potential")
    dg = relative_ginzburg(qf.quiver, qf.potential)
    _emit(_dg_json(dg), fmt, _dg_lines(dg))


@main.command("preprojective")
@_common
def cmd_preprojective(file, fixture, fmt):
    """The boundary dg quiver of the frozen subquiver."""
    qf = _load(file, fixture)
    dg = boundary_dg_quiver(qf.quiver.frozen_subquiver())
    _emit(_dg_json(dg), fmt, _dg_lines(dg))


@main.command("character")
@_common
@click.option("--dims", required=True, help="dimension vector like 1:1,2:1")
@click.option(
    "--generic/--zero-maps",
    default=True,
    help="fill arrow maps with ones (default) or zeros",
)
def cmd_character(file, fixture, fmt, dims, generic):
    """Cluster character of a representation with the given dimensions."""
    qf = _load(file, fixture)
    try:
        dv = {}
        for part in dims.split(","):
            v, _, d = part.partition(":")
            dv[int(v.strip())] = int(d.strip())
    except ValueError:
        raise click.UsageError(f"bad dimension vector {dims!r}") from None
    maps = {}
    if generic:
        for a in qf.quiver.arrows:
            nr, nc = dv.get(a.target, 0), dv.get(a.source, 0)
            if nr and nc:
                maps[a.id] = [[1] * nc for _ in range(nr)]
    rep = QuiverRepresentation(qf.quiver, dv, maps)
    cc = cluster_character(rep)
    ind = index_vector(rep)
    names = [f"x{v}" for v in qf.quiver.vertex_ids]
    data = {
        "index": {str(v): k for v, k in ind.items()},
        "character": cc.to_string(names),
    }
    _emit(data, fmt, [f"index: {ind}", f"character: {cc.to_string(names)}"])


@main.command("check")
@_common
@click.option("--seed", "rng_seed", default=0, show_default=True, help="seed for randomized checks")
@click.option("--budget", default=200, show_default=True, help="random instances per harness")
def cmd_check(file, fixture, fmt, rng_seed, budget):
    """Run every validation applicable to the input, plus random harnesses."""
    qf = _load(file, fixture)
    results: list[tuple[str, str]] = []

    def run(name, fn):
        try:
            fn()
            results.append((name, "ok"))
        except IcefoldError as exc:
            results.append((name, f"FAIL: {exc}"))

    run("exchange matrix", lambda: exchange_matrix(qf.quiver))
    if qf.potential is not None:
        run(
            "potential commutator identity",
            lambda: _expect_empty(potential_commutator_residual(qf.potential)),
        )
        run("differential squares to zero", lambda: relative_ginzburg(qf.quiver, qf.potential))
        if qf.quiver.frozen_vertices:
            run("comparison functor is a chain map", lambda: ginzburg_functor(qf.quiver, qf.potential))
    if qf.action is not None:
        run("action is admissible", lambda: require_admissible(qf.action))
        run("folded matrix consistency", lambda: fold_matrix(qf.quiver, qf.action))
        if qf.potential is not None:
            run("potential is invariant", lambda: potential_invariant(qf.action, qf.potential))
            run("folded corner dimensions", lambda: verify_gamma(fold_quiver(qf.action)))
        orbits = [o.key for o in qf.action.orbits() if str(o.least) not in map(str, qf.quiver.frozen_vertices)]
        if orbits:
            run(
                "fold commutes with one orbit mutation",
                lambda: check_fold_commutes(qf.quiver, qf.action, orbits[:1]),
            )
    rng = random.Random(rng_seed)
    run("random mutation involution", lambda: _harness_involution(rng, budget))
    data = {"checks": [{"name": n, "result": r} for n, r in results]}
    lines = [f"{'PASS' if r == 'ok' else 'FAIL'} {n}" + ("" if r == "ok" else f" ({r})") for n, r in results]
    _emit(data, fmt, lines)
    if any(r != "ok" for _, r in results):
        sys.exit(1)


def _expect_empty(residual: dict):
    if residual:
        raise IcefoldError(f"nonzero residual: {residual}")


def _harness_involution(rng: random.Random, budget: int):
    from .quiver import ExchangeMatrix
    from .randgen import is_skew_symmetrizable, random_skew_symmetrizable

    for _ in range(budget):
        n = rng.randint(2, 5)
        b, d = random_skew_symmetrizable(rng, n)
        rows = [str(k) for k in range(n)]
        m = ExchangeMatrix(rows, rows, b)
        k = str(rng.randrange(n))
        m1 = fz_mutate(m, k)
        if not is_skew_symmetrizable([list(r) for r in m1.entries], d):
            raise IcefoldError("mutation broke skew-symmetrizability")
        if fz_mutate(m1, k) != m:
            raise IcefoldError("mutation is not an involution")


@main.command("serve")
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8642, show_default=True)
def cmd_serve(host, port):
    """Serve the session API over loopback HTTP."""
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=host, port=port)


if __name__ == "__main__":
    main()
