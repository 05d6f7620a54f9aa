"""Command-line interface."""
from __future__ import annotations

import sys

import click

from . import __version__
from .audit import (
    FAMILY_FEASIBLE,
    INEQUALITIES,
    OP_FUNCS,
    OP_SITE_KIND,
    family_audit,
    parse_site,
    run_audit,
    sharpness_search,
)
from .constructions import ALL_RULES, RULE_SIGNATURE, apply_rule, base_graph_for
from .errors import DistingError
from .graphs import FAMILY_KINDS, FamilySpec, Graph, make_family, parse_graph6, to_graph6
from .solver import distinguishing_index, distinguishing_number


def _load_graphs(graph6: str | None, path: str | None) -> list:
    if (graph6 is None) == (path is None):
        raise click.UsageError("provide exactly one of --graph6 or --file")
    if graph6 is not None:
        return [parse_graph6(graph6)]
    with open(path) as fh:
        return [parse_graph6(line) for line in fh if line.strip()]


def _format_vertex_labeling(labels) -> str:
    return ",".join(f"{v}={lab}" for v, lab in enumerate(labels))


def _format_edge_labeling(labels: dict) -> str:
    return ",".join(f"{u}-{v}={lab}" for (u, v), lab in sorted(labels.items()))


@click.group()
@click.version_option(__version__)
def main():
    """Exact distinguishing number / index toolkit."""


@main.command()
@click.option("--edges", is_flag=True, help="compute the distinguishing index D' instead of D")
@click.option("--graph6", default=None)
@click.option("--file", "path", type=click.Path(exists=True), default=None)
def compute(edges, graph6, path):
    """Print D or D' and a witness labeling."""
    for g in _load_graphs(graph6, path):
        try:
            if edges:
                res = distinguishing_index(g)
                witness = _format_edge_labeling(res.witness_dict())
                name = "D'"
            else:
                res = distinguishing_number(g)
                witness = _format_vertex_labeling(res.witness)
                name = "D"
        except DistingError as exc:
            raise click.ClickException(str(exc))
        click.echo(f"{to_graph6(g)} {name}={res.value} witness: {witness}")


@main.command()
@click.option("--kind", type=click.Choice(sorted(OP_FUNCS)), required=True)
@click.option("--site", required=True, help='"v=K" or "e=U,V"')
@click.option("--graph6", default=None)
@click.option("--file", "path", type=click.Path(exists=True), default=None)
def op(kind, site, graph6, path):
    """Apply one graph operation and emit the derived graph6."""
    site_kind, value = parse_site(site)
    if site_kind != OP_SITE_KIND[kind]:
        raise click.UsageError(f"operation {kind} needs a {OP_SITE_KIND[kind]} site")
    for g in _load_graphs(graph6, path):
        try:
            click.echo(to_graph6(OP_FUNCS[kind](g, value)))
        except (DistingError, ValueError) as exc:
            raise click.ClickException(str(exc))


@main.command()
@click.option("--name", type=click.Choice(FAMILY_KINDS), required=True)
@click.option("--param", type=int, required=True)
def family(name, param):
    """Emit the graph6 string of a named family member."""
    try:
        click.echo(to_graph6(make_family(FamilySpec(name, param))))
    except ValueError as exc:
        raise click.ClickException(str(exc))


@main.command()
@click.option("--rule", type=click.Choice(ALL_RULES), required=True)
@click.option("--site", required=True, help='"v=K" or "e=U,V"')
@click.option("--graph6", required=True)
@click.option("--verify", is_flag=True, help="print the verification verdict too")
def construct(rule, site, graph6, verify):
    """Run one proof construction (base labeling comes from the solver)."""
    from .solver import distinguishing_index_or_none

    g = parse_graph6(graph6)
    site_kind, mode = RULE_SIGNATURE[rule]
    parsed_kind, value = parse_site(site)
    if parsed_kind != site_kind:
        raise click.UsageError(f"rule {rule} needs a {site_kind} site")
    try:
        bg = base_graph_for(rule, g, value if site_kind == "vertex" else tuple(value))
        if mode == "vertex":
            base = distinguishing_number(bg).witness
        else:
            res = distinguishing_index_or_none(bg)
            if res is None:
                raise click.ClickException("base graph has undefined D'; rule not applicable")
            base = res.witness_dict()
        outcome = apply_rule(rule, g, value, base)
    except DistingError as exc:
        raise click.ClickException(str(exc))
    if outcome.mode == "vertex":
        click.echo(f"labeling: {_format_vertex_labeling(outcome.labeling)}")
    else:
        click.echo(f"labeling: {_format_edge_labeling(outcome.labeling)}")
    click.echo(f"labels_used={outcome.labels_used} claimed_bound={outcome.claimed_bound}")
    if verify:
        verdict = {True: "verified", False: "FAILED", None: "undefined-target"}[outcome.verified]
        click.echo(f"verification: {verdict}")
        if outcome.finding:
            click.echo(f"finding: {outcome.finding}")


@main.command()
@click.option("--nmax", type=int, default=None)
@click.option("--corpus", "corpus_file", type=click.Path(exists=True), default=None)
@click.option("--out", type=click.Path(), default=None, help="JSON Lines report path")
@click.option("--csv", "csv_path", type=click.Path(), default=None, help="CSV mirror of the bound records")
@click.option("--figures", "figures_dir", type=click.Path(), default=None,
              help="directory for rendered PNG figures")
@click.option("--jobs", type=int, default=1)
@click.option("--constructions", is_flag=True, help="also replay the proof constructions (n <= 6)")
def audit(nmax, corpus_file, out, csv_path, figures_dir, jobs, constructions):
    """Run the full inequality audit; exit status is non-zero on any fail verdict."""
    if nmax is not None and corpus_file is not None:
        raise click.UsageError("use either --nmax or --corpus, not both")
    report = run_audit(nmax=nmax, corpus_file=corpus_file,
                       constructions=constructions, jobs=jobs)
    payload = report.to_jsonl()
    if out:
        with open(out, "w") as fh:
            fh.write(payload)
    else:
        click.echo(payload, nl=False)
    if csv_path:
        with open(csv_path, "w") as fh:
            fh.write(report.to_csv())
    if figures_dir:
        from .figures import render_figures

        for p in render_figures(report, figures_dir):
            click.echo(f"figure: {p}", err=True)
    summary = report.summary
    click.echo(
        "audit: {graphs} graphs, {bound_records} bound records, verdicts {verdict_counts}".format(
            **summary),
        err=True,
    )
    if report.has_failures:
        sys.exit(1)


@main.command()
@click.option("--ineq", type=click.Choice(sorted(INEQUALITIES)), required=True)
@click.option("--nmax", type=int, default=6)
def sharpness(ineq, nmax):
    """List corpus witnesses achieving equality in the named bound."""
    for w in sharpness_search(ineq, nmax):
        click.echo(
            f"{w['graph6']} {w['op']} {w['site']} "
            f"D:{w['D_before']}->{w['D_after']} Dp:{w['Dp_before']}->{w['Dp_after']}"
        )


@main.command()
@click.option("--name", type=click.Choice(sorted(FAMILY_FEASIBLE)), required=True)
@click.option("--from", "start", type=int, required=True)
@click.option("--to", "stop", type=int, required=True)
def families(name, start, stop):
    """Family formula table: computed vs predicted values."""
    try:
        rows = family_audit(name, range(start, stop + 1))
    except (DistingError, ValueError) as exc:
        raise click.ClickException(str(exc))
    for row in rows:
        line = (
            f"{name}({row['param']}): n={row['n']} D={row['D']} D'={row['Dp']}"
            f" predicted_D={row['predicted_D']} match={row['match_D']}"
        )
        if row.get("predicted_Dp") is not None:
            line += f" predicted_Dp={row['predicted_Dp']} match_Dp={row['match_Dp']}"
        if "deletion_changes_D" in row:
            line += f" deletion_changes_D={row['deletion_changes_D']}"
        click.echo(line)


if __name__ == "__main__":
    main()
