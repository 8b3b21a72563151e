"""Command-line surface: build snapshots, query them, serve the API.

Query-style subcommands route through the same app the HTTP API serves,
so their JSON output is identical to the corresponding endpoint's.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from . import snapshot as snapshot_mod
from .errors import TowndexError
from .pipeline import BuildConfig, BuildResult, build_pipeline, load_index_for
from .service import create_app


def _print_reports(result: BuildResult) -> None:
    r = result.census_report
    click.echo(f"census: {r.rows_ok} rows ok, {r.rows_rejected} rejected")
    for line, reason in r.reject_reasons:
        click.echo(f"  line {line}: {reason}")
    for year, report in result.directory_reports:
        click.echo(f"directory {year}: {report.rows_ok} rows ok, {report.rows_rejected} rejected")
        for line, reason in report.reject_reasons:
            click.echo(f"  line {line}: {reason}")


def _client(snapshot_path: str):
    from fastapi.testclient import TestClient

    snap = snapshot_mod.load(snapshot_path)
    app = create_app(snap, index=load_index_for(snap))
    return TestClient(app)


def _get_json(snapshot_path: str, route: str) -> None:
    with _client(snapshot_path) as client:
        response = client.get(route)
    click.echo(json.dumps(response.json(), indent=1))
    if response.status_code >= 400:
        sys.exit(1)


@click.group()
def main() -> None:
    """towndex: an interactive directory of a historical community."""


@main.command()
@click.option("--config", "config_path", required=True, type=click.Path())
@click.option("--out", "out_path", default="snapshot.json", type=click.Path())
def ingest(config_path: str, out_path: str) -> None:
    """Parse sources, build the entity KB, and write a snapshot (no linking)."""
    try:
        config = BuildConfig.from_file(config_path)
        result = build_pipeline(config)
    except TowndexError as exc:
        raise click.ClickException(str(exc))
    _print_reports(result)
    # drop mentions: linking is the `link` subcommand's job
    from .linking import MentionStore
    result.snapshot.store = MentionStore([])
    snapshot_mod.save(result.snapshot, out_path)
    click.echo(f"wrote {out_path} ({len(result.snapshot.kb.persons)} persons)")


@main.command()
@click.option("--config", "config_path", required=True, type=click.Path())
@click.option("--out", "out_path", default="snapshot.json", type=click.Path())
def link(config_path: str, out_path: str) -> None:
    """Run the full pipeline including mention linking; write the snapshot."""
    try:
        config = BuildConfig.from_file(config_path)
        result = build_pipeline(config)
    except TowndexError as exc:
        raise click.ClickException(str(exc))
    _print_reports(result)
    snapshot_mod.save(result.snapshot, out_path)
    click.echo(f"wrote {out_path} ({len(result.snapshot.store)} mentions)")


@main.group()
def stats() -> None:
    """Mention statistics over a linked snapshot."""


@stats.command()
@click.option("--snapshot", "snapshot_path", required=True, type=click.Path())
@click.option("--n", required=True, type=int)
@click.option("--seed", required=True, type=int)
def coverage(snapshot_path: str, n: int, seed: int) -> None:
    """Seeded household-extended coverage experiment."""
    _get_json(snapshot_path, f"/api/stats/coverage?n={n}&seed={seed}")


@stats.command()
@click.option("--snapshot", "snapshot_path", required=True, type=click.Path())
@click.option("--k", required=True, type=int)
def top(snapshot_path: str, k: int) -> None:
    """Most-mentioned persons."""
    _get_json(snapshot_path, f"/api/stats/top?k={k}")


@main.command()
@click.argument("name")
@click.option("--snapshot", "snapshot_path", required=True, type=click.Path())
def query(name: str, snapshot_path: str) -> None:
    """Ranked person search by name."""
    from urllib.parse import quote

    _get_json(snapshot_path, f"/api/persons?q={quote(name)}")


@main.command()
@click.argument("route")
@click.option("--snapshot", "snapshot_path", required=True, type=click.Path())
def get(route: str, snapshot_path: str) -> None:
    """Fetch any API route (e.g. /api/meta) and print its JSON."""
    _get_json(snapshot_path, route)


@main.command()
@click.option("--addr", default="127.0.0.1:8000", show_default=True)
@click.option("--snapshot", "snapshot_path", required=True, type=click.Path())
@click.option("--static", "static_dir", default=None, type=click.Path(),
              help="Directory of built UI assets to serve at /")
def serve(addr: str, snapshot_path: str, static_dir: str | None) -> None:
    """Serve the read-only JSON API (and optionally the browse UI)."""
    import uvicorn

    try:
        snap = snapshot_mod.load(snapshot_path)
    except TowndexError as exc:
        raise click.ClickException(str(exc))
    app = create_app(snap, index=load_index_for(snap),
                     static_dir=Path(static_dir) if static_dir else None)
    host, _, port = addr.partition(":")
    uvicorn.run(app, host=host or "127.0.0.1", port=int(port or 8000))


@main.command()
@click.option("--snapshot", "snapshot_path", required=True, type=click.Path())
def repl(snapshot_path: str) -> None:
    """Interactive name lookup. Empty line or :quit exits."""
    with _client(snapshot_path) as client:
        from urllib.parse import quote

        click.echo("towndex repl; type a name, :quit to exit")
        while True:
            try:
                line = input("> ").strip()
            except EOFError:
                break
            if not line or line == ":quit":
                break
            response = client.get(f"/api/persons?q={quote(line)}")
            body = response.json()
            if response.status_code >= 400:
                click.echo(body["error"]["message"])
                continue
            for person in body["results"]:
                click.echo(
                    f"{person['id']}  {person['display_name']}  "
                    f"mentions={person['mention_count']}"
                )
            if not body["results"]:
                click.echo("(no matches)")


if __name__ == "__main__":
    main()
