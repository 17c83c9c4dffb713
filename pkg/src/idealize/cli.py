"""Command line interface: analyze, extract, serve."""

from __future__ import annotations

import dataclasses
import logging
from pathlib import Path

import click

from .config import AppConfig, load_config
from .graph_rank import ExtractionError, extract
from .service import (
    AnalysisRequest,
    TrendsError,
    ValidationError,
    analyze_idea,
    emit_choropleth,
    emit_trend_chart_data,
)
from .trends_client import CONTEXTS, TIMEFRAME_LABELS


@click.group()
@click.option("--verbose", is_flag=True, help="Log progress to stderr.")
def main(verbose: bool) -> None:
    """Estimate the strength of a business idea from search interest."""
    logging.basicConfig(
        level=logging.INFO if verbose else logging.WARNING,
        format="%(levelname)s %(name)s %(message)s",
    )


def _load(config_path: str | None) -> AppConfig:
    try:
        return load_config(config_path)
    except (ValueError, OSError) as exc:
        raise click.ClickException(f"bad config: {exc}") from exc


@main.command()
@click.option("--text-file", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--geo", default=None, help="Geography code, e.g. US.")
@click.option("--context", default=None, type=click.Choice(list(CONTEXTS)))
@click.option("--timeframe", default=None, type=click.Choice(list(TIMEFRAME_LABELS)))
@click.option("--max-keywords", default=None, type=int)
@click.option("--mode", default=None, type=click.Choice(["fixture", "wire"]))
@click.option("--fixtures", default=None, type=click.Path(file_okay=False),
              help="Directory of fixture JSON files (fixture mode).")
@click.option("--out", default="idealize_out", type=click.Path(file_okay=False),
              help="Output directory for the report files.")
@click.option("--format", "fmt", default="json", type=click.Choice(["json", "csv"]),
              help="Format of the chart and map documents.")
def analyze(text_file, config_path, geo, context, timeframe, max_keywords, mode,
            fixtures, out, fmt) -> None:
    """Analyze the idea text in TEXT-FILE and write a report."""
    config = _load(config_path)
    overrides = {}
    if mode:
        overrides["mode"] = mode
    if fixtures:
        overrides["fixtures_dir"] = fixtures
    if overrides:
        config = dataclasses.replace(config, **overrides)

    request = AnalysisRequest(
        text=Path(text_file).read_text(encoding="utf-8"),
        geo=geo or config.geo,
        context=context or config.context,
        timeframe=timeframe or config.timeframe,
        max_keywords=max_keywords or config.max_keywords,
    )
    try:
        report = analyze_idea(request, config)
    except ValidationError as exc:
        raise click.UsageError(f"{exc.field}: {exc}") from exc
    except TrendsError as exc:
        raise click.ClickException(f"interest retrieval failed: {exc}") from exc

    out_dir = Path(out)
    out_dir.mkdir(parents=True, exist_ok=True)
    report_path = out_dir / "report.json"
    report_path.write_text(report.to_canonical_json(), encoding="utf-8")
    chart_path = out_dir / f"trend_chart.{fmt}"
    chart_path.write_text(emit_trend_chart_data(report, fmt), encoding="utf-8", newline="")
    map_path = out_dir / f"choropleth.{fmt}"
    map_path.write_text(emit_choropleth(report, fmt), encoding="utf-8", newline="")
    written = [report_path, chart_path, map_path]

    keywords = [k["text"] for k in report.payload["extraction"]["keywords"]]
    summary = report.payload["region_summary"]
    click.echo(f"keywords: {', '.join(keywords)}")
    click.echo(
        f"strongest region: {summary['strongest_region']} "
        f"(strength {summary['max_strength']:.4f})"
    )
    for path in written:
        click.echo(f"wrote {path}")


@main.command()
@click.option("--text-file", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False))
def extract_cmd(text_file, config_path) -> None:
    """Print ranked keywords for TEXT-FILE, one per line: text<TAB>weight."""
    config = _load(config_path)
    try:
        keywords = extract(Path(text_file).read_text(encoding="utf-8"),
                           config.extraction_config())
    except ExtractionError as exc:
        raise click.ClickException(str(exc)) from exc
    for kw in keywords:
        click.echo(f"{kw.text}\t{kw.weight:.6f}")


@main.command()
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--host", default="127.0.0.1")
@click.option("--port", default=8000, type=int)
def serve(config_path, host, port) -> None:
    """Run the HTTP JSON API."""
    import uvicorn

    from .http_api import create_app

    app = create_app(_load(config_path))
    uvicorn.run(app, host=host, port=port, log_level="info")


# expose "extract" as the command name while keeping the function importable
extract_cmd.name = "extract"

if __name__ == "__main__":
    main()
