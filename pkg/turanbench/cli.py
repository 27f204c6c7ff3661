import json
import logging
from pathlib import Path
from typing import Iterable, List, Optional

import click
from rich import box
from rich.console import Console
from rich.logging import RichHandler
from rich.table import Table

from turanbench.cleaning import clean_for_p4hat, require_free
from turanbench.cleaning.certify import (
    Certificate,
    certify_books,
    certify_half,
    certify_unit,
    replay_certificate,
)
from turanbench.config import configure
from turanbench.constructions import (
    ConstructionSpec,
    Family,
    build,
    verify_construction,
)
from turanbench.errors import (
    Counterexample,
    InvalidArgument,
    PreconditionViolation,
    UnsupportedBound,
)
from turanbench.graph import Graph
from turanbench.graph6 import encode_graph6, read_graph6
from turanbench.manifest import RunManifest
from turanbench.packing import max_edge_disjoint_triangles
from turanbench.patterns import (
    CATALOG,
    find_free_violation,
    parse_pattern_list,
)
from turanbench.patterns.catalog import PARAMETRIC_FAMILIES, SHORTHANDS
from turanbench.search.bounds import verify_bounds
from turanbench.search.extremal import OBJECTIVES, exact_extremal
from turanbench.search.local import local_search_lower_bound
from turanbench.search.records import ResultsDB, report_table
from turanbench.structure import (
    bfs_levels,
    check_level_inequalities,
    triangle_blocks,
    triangle_summary,
)

CERTIFIERS = {
    "half": certify_half,
    "unit": certify_unit,
    "books": certify_books,
}


class TuranBenchGroup(click.Group):
    """
    Maps library errors onto the exit codes: 2 for bad invocations, 1 when
    a precondition or a structural claim fails.
    """

    def invoke(self, ctx: click.Context):
        try:
            return super().invoke(ctx)
        except (InvalidArgument, UnsupportedBound) as e:
            raise click.UsageError(e.error_msg, ctx) from None
        except PreconditionViolation as e:
            click.echo(f"Error: {e.error_msg}", err=True)
            ctx.exit(1)
        except Counterexample as e:
            click.echo(f"Counterexample: {e.error_msg}", err=True)
            click.echo(e.graph6, err=True)
            ctx.exit(1)


def _argv(ctx: click.Context) -> List[str]:
    chain = []
    while ctx is not None:
        chain.append(ctx)
        ctx = ctx.parent
    argv = []
    for c in reversed(chain):
        if c.parent is not None:
            argv.append(c.info_name)
        for param in c.command.params:
            value = c.params.get(param.name)
            if value is None or value == param.default:
                continue
            option = max(param.opts, key=len)
            if value is False and getattr(param, "secondary_opts", None):
                argv.append(max(param.secondary_opts, key=len))
            elif value is True:
                argv.append(option)
            elif value is not False:
                argv.append(f"{option}={value}")
    return argv


def _json_output(ctx: click.Context) -> bool:
    return ctx.find_root().obj["json"]


def _emit(ctx: click.Context, data, table: Optional[Table] = None):
    """
    Prints `data` as JSON under ``--json``, `table` otherwise.
    """
    if _json_output(ctx) or table is None:
        click.echo(json.dumps(data, indent=4, sort_keys=True))
    else:
        Console().print(table)


def _write(
    ctx: click.Context,
    path: str,
    *,
    text: Optional[str] = None,
    data: Optional[dict] = None,
    inputs: Iterable[str] = (),
):
    """
    Writes an output file and its manifest. JSON `data` embeds the manifest.
    """
    manifest = RunManifest.capture(_argv(ctx), inputs)
    if data is not None:
        data = dict(data, manifest=manifest.as_dict())
        text = json.dumps(data, indent=4, sort_keys=True) + "\n"
    Path(path).write_text(text, encoding="utf-8")
    manifest.write_beside(path)


def _read(path: str) -> List[Graph]:
    graphs = read_graph6(path)
    if not graphs:
        raise InvalidArgument(f"{path} holds no graphs", argument="--in")
    return graphs


def _key_value_table(rows: dict) -> Table:
    table = Table(show_header=False, box=box.SIMPLE)
    table.add_column("Key", style="magenta")
    table.add_column("Value", style="green")
    for key, value in rows.items():
        table.add_row(key, str(value))
    return table


def _in_option(f):
    return click.option(
        "--in",
        "in_path",
        required=True,
        type=click.Path(exists=True, dir_okay=False),
        help="graph6 file, one graph per line.",
    )(f)


@click.group(cls=TuranBenchGroup)
@click.option(
    "--max-vertices",
    type=int,
    default=None,
    help="Largest graph accepted.",
)
@click.option(
    "--threads",
    type=int,
    default=None,
    help="Worker processes for exhaustive search.",
)
@click.option(
    "--json", "json_output", is_flag=True, help="Print JSON instead of tables."
)
@click.option("-v", "--verbose", count=True, help="Repeat for more logging.")
@click.pass_context
def cli(ctx, max_vertices, threads, json_output, verbose):
    """
    Command line interface for turanbench.
    """
    level = [logging.WARNING, logging.INFO, logging.DEBUG][min(verbose, 2)]
    logging.basicConfig(
        level=level,
        format="%(message)s",
        handlers=[RichHandler(console=Console(stderr=True))],
        force=True,
    )
    configure(max_vertices=max_vertices, threads=threads)
    ctx.obj = {"json": json_output}


@cli.command("construct")
@click.option(
    "--family", type=click.Choice([f.value for f in Family]), required=True
)
@click.option("--n", "n", type=int, required=True)
@click.option("--k", "k", type=int, default=None, help="Path length, fnk.")
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.pass_context
def construct_command(ctx, family, n, k, out):
    """
    Build a lower-bound construction and check its formula and freeness.
    """
    spec = ConstructionSpec(Family(family), n, k)
    report = verify_construction(spec)
    g6 = encode_graph6(build(spec))
    data = dict(report.as_dict(), graph6=g6)

    if out is not None:
        _write(ctx, out, text=g6 + "\n")
        _emit(ctx, data, _key_value_table(report.as_dict()))
    elif _json_output(ctx):
        _emit(ctx, data)
    else:
        click.echo(g6)

    if not report.ok:
        click.echo(f"Error: {spec} does not match its formula", err=True)
        ctx.exit(1)


@cli.command("check")
@_in_option
@click.option("--forbid", required=True, help="Comma-separated pattern names.")
@click.pass_context
def check_command(ctx, in_path, forbid):
    """
    Check graphs for freeness, printing a witness for each copy found.
    """
    patterns = parse_pattern_list(forbid)
    results = []
    for i, g in enumerate(_read(in_path)):
        violation = find_free_violation(g, patterns)
        results.append(
            {
                "index": i,
                "graph6": encode_graph6(g),
                "free": violation is None,
                "pattern": None if violation is None else violation[0].name,
                "witness": None if violation is None else list(violation[1]),
            }
        )

    table = Table(box=box.SIMPLE)
    table.add_column("#", style="white")
    table.add_column("graph6", style="blue")
    table.add_column("Free", style="green")
    table.add_column("Witness", style="magenta")
    for r in results:
        table.add_row(
            str(r["index"]),
            r["graph6"],
            str(r["free"]),
            "" if r["free"] else f"{r['pattern']} at {r['witness']}",
        )
    _emit(ctx, results, table)

    if not all(r["free"] for r in results):
        ctx.exit(1)


@cli.command("count")
@_in_option
@click.pass_context
def count_command(ctx, in_path):
    """
    Triangle, edge and path counts with their identities.
    """
    results = [
        dict(triangle_summary(g), index=i)
        for i, g in enumerate(_read(in_path))
    ]

    table = Table(box=box.SIMPLE)
    columns = ["index", "n", "e", "t", "sum_link_edges", "p2", "p3"]
    for column in columns + ["nordhaus_stewart_holds"]:
        table.add_column(column, justify="right")
    for r in results:
        table.add_row(
            *(str(r[c]) for c in columns), str(r["nordhaus_stewart_holds"])
        )
    _emit(ctx, results, table)

    for r in results:
        identity = r["sum_link_edges"] == 3 * r["t"]
        if not identity or not r["nordhaus_stewart_holds"]:
            ctx.exit(1)


@cli.command("blocks")
@_in_option
@click.pass_context
def blocks_command(ctx, in_path):
    """
    Decompose the triangle-covered edges into triangle blocks.
    """
    results = []
    table = Table(box=box.SIMPLE)
    table.add_column("#", style="white")
    table.add_column("Label", style="magenta")
    table.add_column("Triangles", justify="right")
    table.add_column("Edges", style="green")
    for i, g in enumerate(_read(in_path)):
        decomposition = triangle_blocks(g)
        results.append(dict(decomposition.as_dict(), index=i))
        for block, label, t in zip(
            decomposition.blocks,
            decomposition.labels,
            decomposition.triangles,
        ):
            table.add_row(str(i), label, str(t), str(list(block)))
    _emit(ctx, results, table)


@cli.command("pack")
@_in_option
@click.option(
    "--mode",
    type=click.Choice(["exact", "greedy"]),
    default=None,
    help="Defaults to exact unless there are too many triangles.",
)
@click.pass_context
def pack_command(ctx, in_path, mode):
    """
    Pack edge-disjoint triangles.
    """
    results = []
    table = Table(box=box.SIMPLE)
    table.add_column("#", style="white")
    table.add_column("Size", justify="right", style="green")
    table.add_column("Exact")
    table.add_column("Triangles", style="magenta")
    for i, g in enumerate(_read(in_path)):
        packing = max_edge_disjoint_triangles(g, mode=mode)
        results.append(dict(packing.as_dict(), index=i))
        table.add_row(
            str(i),
            str(len(packing)),
            str(packing.exact),
            " ".join(str(tuple(t)) for t in packing.triangles),
        )
    _emit(ctx, results, table)


@cli.command("levels")
@_in_option
@click.option("--k", "k", type=int, required=True, help="Checks C_2k-free.")
@click.option("--root", type=int, default=None, help="Defaults to every root.")
@click.pass_context
def levels_command(ctx, in_path, k, root):
    """
    BFS level statistics of 2k-cycle-free graphs, with the level
    inequalities checked for every root.
    """
    if k < 2:
        raise InvalidArgument("k must be at least 2", argument="--k")
    results = []
    table = Table(box=box.SIMPLE)
    for column in ("#", "Root", "|L_i|", "e(L_i)", "e(L_i, L_i+1)", "Ok"):
        table.add_column(column)
    for i, g in enumerate(_read(in_path)):
        require_free(g, [f"cycle:{2 * k}"])
        for r in range(g.n) if root is None else [root]:
            levels = bfs_levels(g, r)
            violations = check_level_inequalities(levels, k)
            results.append(
                {
                    "index": i,
                    "root": r,
                    "sizes": [len(level) for level in levels.levels],
                    "inner_edges": levels.inner_edges,
                    "cross_edges": levels.cross_edges,
                    "violations": [vars(v) for v in violations],
                }
            )
            table.add_row(
                str(i),
                str(r),
                str(results[-1]["sizes"]),
                str(levels.inner_edges),
                str(levels.cross_edges),
                str(not violations),
            )
    _emit(ctx, results, table)

    if any(r["violations"] for r in results):
        ctx.exit(1)


@cli.command("clean")
@_in_option
@click.option(
    "--out",
    type=click.Path(dir_okay=False),
    default=None,
    help="Write the cleaned graphs here, as graph6.",
)
@click.pass_context
def clean_command(ctx, in_path, out):
    """
    Remove K5, K5-, K4, K222, Q32 and K122 from graphs free of the suspended
    4-path.
    """
    reports, cleaned = [], []
    table = Table(box=box.SIMPLE)
    for column in ("#", "Pattern", "Deletions", "Triangles lost"):
        table.add_column(column)
    for i, g in enumerate(_read(in_path)):
        result, report = clean_for_p4hat(g)
        cleaned.append(result)
        reports.append(dict(report.to_dict(), index=i))
        lost = {}
        for step in report.steps:
            lost[step.pattern] = lost.get(step.pattern, 0) + step.triangles_lost
        for pattern, deletions in report.counts().items():
            table.add_row(
                str(i), pattern, str(deletions), str(lost[pattern])
            )

    if out is not None:
        text = "".join(encode_graph6(g) + "\n" for g in cleaned)
        _write(ctx, out, text=text, inputs=[in_path])
    _emit(ctx, reports, table)


@cli.command("certify")
@_in_option
@click.option(
    "--law",
    type=click.Choice(sorted(CERTIFIERS)),
    default="half",
    help="half: t <= e/2 (books or light pairs), unit: t <= e.",
)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.option(
    "--replay",
    type=click.Path(exists=True, dir_okay=False),
    default=None,
    help="Replay certificates from this file instead of issuing new ones.",
)
@click.pass_context
def certify_command(ctx, in_path, law, out, replay):
    """
    Issue or replay triangle-edge certificates.
    """
    graphs = _read(in_path)
    if replay is not None:
        data = json.loads(Path(replay).read_text(encoding="utf-8"))
        certificates = [
            Certificate.from_dict(c) for c in data.get("certificates", [data])
        ]
        if len(certificates) != len(graphs):
            raise InvalidArgument(
                f"{len(certificates)} certificates for {len(graphs)} graphs",
                argument="--replay",
            )
        for g, certificate in zip(graphs, certificates):
            replay_certificate(g, certificate)
    else:
        certificates = [CERTIFIERS[law](g) for g in graphs]

    results = [c.to_dict() for c in certificates]
    if out is not None:
        _write(ctx, out, data={"certificates": results}, inputs=[in_path])

    table = Table(box=box.SIMPLE)
    for column in ("#", "Kind", "Steps", "Deviations", "Conclusion"):
        table.add_column(column)
    for i, c in enumerate(certificates):
        table.add_row(
            str(i),
            c.kind,
            str(len(c.trace)),
            str(len(c.deviations)),
            c.conclusion,
        )
    _emit(ctx, results, table)

    unexpected = False
    for i, c in enumerate(certificates):
        for deviation in c.unexpected_deviations:
            click.echo(f"Error: certificate {i}: {deviation}", err=True)
            unexpected = True
    if unexpected or not all(c.holds for c in certificates):
        ctx.exit(1)


@cli.command("search")
@click.option("--n", "n", type=int, required=True)
@click.option("--forbid", required=True, help="Comma-separated pattern names.")
@click.option(
    "--exact/--local",
    default=True,
    help="Exhaustive search, or a local-search lower bound.",
)
@click.option(
    "--objective", type=click.Choice(OBJECTIVES), default=OBJECTIVES[0]
)
@click.option("--no-prune", is_flag=True, help="Scan every free graph.")
@click.option("--budget", type=int, default=16, help="Local search restarts.")
@click.option("--seed", type=int, default=None, help="Local search seed.")
@click.option(
    "--start",
    type=click.Path(exists=True, dir_okay=False),
    default=None,
    help="Local search starts from the first graph in this file.",
)
@click.option(
    "--db",
    type=click.Path(dir_okay=False),
    default=None,
    help="Append the record to this results database.",
)
@click.pass_context
def search_command(
    ctx, n, forbid, exact, objective, no_prune, budget, seed, start, db
):
    """
    Compute ex(n, K3, F) exactly, or a lower bound by local search.
    """
    forbidden = parse_pattern_list(forbid)
    inputs = []
    if exact:
        record = exact_extremal(
            n, forbidden, objective=objective, prune=not no_prune
        )
    else:
        start_graph = None
        if start is not None:
            start_graph = _read(start)[0]
            inputs.append(start)
        record = local_search_lower_bound(
            n,
            forbidden,
            budget=budget,
            seed=seed,
            start=start_graph,
            objective=objective,
        )

    try:
        checks = verify_bounds(record)
    except UnsupportedBound:
        checks = []

    if db is not None:
        manifest = RunManifest.capture(_argv(ctx), inputs)
        ResultsDB(db).append(record, manifest=manifest.as_dict())

    data = {
        "record": record.to_dict(),
        "bounds": [c.as_dict() for c in checks],
    }
    table = _key_value_table(record.to_dict())
    for check in checks:
        table.add_row(
            check.name,
            f"{'holds' if check.holds else 'FAILS'} ({check.detail})",
        )
    _emit(ctx, data, table)

    if not all(c.holds for c in checks):
        ctx.exit(1)


@cli.command("report")
@click.option(
    "--db",
    type=click.Path(dir_okay=False),
    default=None,
    help="Results database, defaults to $TURANBENCH_DB.",
)
@click.option(
    "--csv",
    "csv_path",
    type=click.Path(dir_okay=False, allow_dash=True),
    default=None,
    help="Write the table as CSV, - for stdout.",
)
@click.pass_context
def report_command(ctx, db, csv_path):
    """
    Tabulate the results database against constructions and upper bounds.
    """
    results = ResultsDB(db)
    table = report_table(results)

    if csv_path == "-":
        click.echo(table.to_csv(), nl=False)
    elif csv_path is not None:
        inputs = [results.path] if results.path.exists() else []
        _write(ctx, csv_path, text=table.to_csv(), inputs=inputs)

    if csv_path != "-":
        rich_table = Table(box=box.SIMPLE)
        for column in table.columns:
            rich_table.add_column(column)
        for row in table.rows:
            rich_table.add_row(
                *("" if row[c] is None else str(row[c]) for c in table.columns)
            )
        _emit(ctx, table.as_dict(), rich_table)

    if table.warnings:
        click.echo(f"{table.warnings} corrupt rows skipped", err=True)


@cli.command("patterns")
@click.pass_context
def patterns_command(ctx):
    """
    List the pattern catalog.
    """
    entries = [
        {
            "name": entry.name,
            "n": entry.n,
            "edges": len(entry.edges),
            "aliases": list(entry.aliases),
        }
        for entry in CATALOG
    ]
    entries += [
        {"name": name, "n": None, "edges": None, "aliases": [target]}
        for name, target in sorted(SHORTHANDS.items())
    ]

    table = Table(box=box.SIMPLE)
    table.add_column("Name", style="magenta")
    table.add_column("Vertices", justify="right")
    table.add_column("Edges", justify="right")
    table.add_column("Aliases", style="green")
    for e in entries:
        table.add_row(
            e["name"],
            "" if e["n"] is None else str(e["n"]),
            "" if e["edges"] is None else str(e["edges"]),
            ", ".join(e["aliases"]),
        )
    for family in PARAMETRIC_FAMILIES:
        table.add_row(f"{family}:...", "", "", "")
    table.add_row("suspension:<pattern>", "", "", "")
    _emit(
        ctx,
        {
            "catalog": entries,
            "families": list(PARAMETRIC_FAMILIES),
        },
        table,
    )
