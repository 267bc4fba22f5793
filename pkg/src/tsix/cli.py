"""Command-line entry points: index, query, eval, serve."""

from __future__ import annotations

import json
import sys

import click

from . import _kernels
from .bundle import build_bundle, load_bundle, save_bundle
from .consistency import resolve_schema_level
from .errors import DocumentParseError, TsixError
from .evalharness import METHOD_SC, METHOD_SLCA, load_suite, run_suite
from .output import ReturnStrategy, infer_entities, render
from .xmlstore import ParseConfig, parse_file

_STRATEGIES = [s.value for s in ReturnStrategy]


def _split_keywords(keywords: tuple[str, ...]) -> list[str]:
    out: list[str] = []
    for k in keywords:
        out.extend(k.split())
    return out


@click.group()
def main() -> None:
    """Schema-consistent XML keyword search."""


@main.command("index")
@click.argument("input_xml", type=click.Path(exists=True, dir_okay=False))
@click.argument("out_bundle", type=click.Path(dir_okay=False))
@click.option("--case-sensitive", is_flag=True, help="Match keywords case-sensitively.")
def cmd_index(input_xml: str, out_bundle: str, case_sensitive: bool) -> None:
    """Parse INPUT_XML and write the index bundle to OUT_BUNDLE."""
    try:
        tree = parse_file(input_xml, ParseConfig(case_sensitive=case_sensitive))
    except DocumentParseError as exc:
        raise click.ClickException(f"{input_xml}: {exc} (byte {exc.byte_offset})")
    bundle = build_bundle(tree)
    save_bundle(bundle, out_bundle)
    stats = bundle.stats()
    click.echo(f"wrote {out_bundle}")
    click.echo(f"  instance nodes:    {stats['instance_nodes']}")
    click.echo(f"  schema nodes:      {stats['schema_nodes']}")
    click.echo(f"  distinct keywords: {stats['distinct_keywords']}")


def _load(bundle_path: str):
    try:
        return load_bundle(bundle_path)
    except (OSError, TsixError) as exc:
        raise click.ClickException(f"{bundle_path}: {exc}")


@main.command("query")
@click.argument("bundle_path", type=click.Path(exists=True, dir_okay=False))
@click.argument("keywords", nargs=-1, required=True)
@click.option("--method", type=click.Choice([METHOD_SC, METHOD_SLCA]), default=METHOD_SC)
@click.option("--strategy", type=click.Choice(_STRATEGIES), default=ReturnStrategy.SUBTREE.value)
@click.option("--json", "as_json", is_flag=True, help="Machine-readable output.")
def cmd_query(bundle_path: str, keywords: tuple[str, ...], method: str, strategy: str,
              as_json: bool) -> None:
    """Run a keyword query against a bundle.

    With --method=sc results come grouped per surviving result structure;
    --method=slca prints the flat smallest-LCA baseline.
    """
    bundle = _load(bundle_path)
    kws = _split_keywords(keywords)
    if not kws:
        raise click.ClickException("no keywords given")
    strat = ReturnStrategy(strategy)
    tree, guide = bundle.tree, bundle.guide
    entities = infer_entities(guide, tree)

    if method == METHOD_SLCA:
        from .consistency import instance_slca_ids

        ids = instance_slca_ids(tree, kws)
        if as_json:
            payload = {"method": method, "keywords": kws,
                       "results": [_result_json(bundle, i, strat, kws, entities) for i in ids]}
            click.echo(json.dumps(payload, indent=2))
        else:
            click.echo(f"{len(ids)} result(s)")
            for i in ids:
                click.echo(f"  {tree.nodes[i].label}({i})  {'.'.join(tree.label_path(i))}")
        return

    result = resolve_schema_level(bundle, kws)
    if as_json:
        groups = []
        for g in result.groups:
            groups.append({
                "group_id": g.snode_id,
                "label_path": ".".join(g.structure.incoming_label_path),
                "results": [_result_json(bundle, i, strat, kws, entities) for i in g.result_ids],
            })
        click.echo(json.dumps({"method": method, "keywords": kws, "groups": groups,
                               "containment_flags": [list(f) for f in result.containment_flags]},
                              indent=2))
    else:
        click.echo(f"{len(result.groups)} group(s)")
        for g in result.groups:
            click.echo(f"group {g.snode_id}: {'.'.join(g.structure.incoming_label_path)}")
            for i in g.result_ids:
                click.echo(f"  {tree.nodes[i].label}({i})")


def _result_json(bundle, inode_id: int, strategy: ReturnStrategy, keywords, entities) -> dict:
    (rendered,) = render(bundle.tree, bundle.guide, [inode_id], strategy, keywords, entities)
    data = rendered.as_json(bundle.tree)
    data["id"] = inode_id
    return data


@main.command("eval")
@click.argument("bundle_path", type=click.Path(exists=True, dir_okay=False))
@click.argument("suite_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--json-out", type=click.Path(dir_okay=False), help="Write the full report as JSON.")
@click.option("--csv-out", type=click.Path(dir_okay=False), help="Write plot-ready CSV rows.")
@click.option("--strategy", "strategies", type=click.Choice(_STRATEGIES), multiple=True,
              default=(ReturnStrategy.SUBTREE.value,))
def cmd_eval(bundle_path: str, suite_path: str, json_out: str | None, csv_out: str | None,
             strategies: tuple[str, ...]) -> None:
    """Measure precision/recall of SC vs the smallest-LCA baseline on a suite."""
    bundle = _load(bundle_path)
    try:
        specs = load_suite(suite_path)
    except (OSError, KeyError, json.JSONDecodeError) as exc:
        raise click.ClickException(f"{suite_path}: {exc}")
    report = run_suite(bundle, specs, strategies=tuple(ReturnStrategy(s) for s in strategies))
    for row in report.rows:
        click.echo(f"{row['query']:>8} {row['method']:>5} {row['strategy']:<15}"
                   f" p={row['precision']:.3f} r={row['recall']:.3f}"
                   f" retrieved={row['retrieved_count']} ({row['elapsed_ms']:.1f} ms)")
    if json_out:
        report.write_json(json_out)
        click.echo(f"report: {json_out}")
    if csv_out:
        report.write_csv(csv_out)
        click.echo(f"csv: {csv_out}")


@main.command("serve")
@click.argument("bundle_path", envvar="TSIX_BUNDLE", type=click.Path(exists=True, dir_okay=False))
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8778, envvar="TSIX_PORT", show_default=True)
@click.option("--ui-dir", envvar="TSIX_UI_DIR", type=click.Path(file_okay=False),
              help="Static frontend build to serve under /ui.")
def cmd_serve(bundle_path: str, host: str, port: int, ui_dir: str | None) -> None:
    """Serve the query/feedback API for a bundle."""
    import uvicorn

    from .service import create_app

    bundle = _load(bundle_path)
    app = create_app(bundle, ui_dir=ui_dir)
    click.echo(f"kernel backend: {_kernels.BACKEND}", err=True)
    uvicorn.run(app, host=host, port=port, log_level="warning")


if __name__ == "__main__":
    sys.exit(main())
