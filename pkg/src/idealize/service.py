"""End-to-end analysis: text in, deterministic report out.

One call runs keyword extraction, fetches each keyword's interest series and
regional table, combines them into idea strength over time and per region,
and packages everything as a JSON-ready payload. The same payload backs the
CLI, the HTTP API, and the golden-file tests, so serialization is canonical:
sorted keys, tight separators, one trailing newline. Wall-clock timings stay
outside the payload to keep repeated runs byte-identical.
"""

from __future__ import annotations

import csv
import io
import json
import logging
import time
from dataclasses import dataclass, field

from .config import AppConfig
from .graph_rank import EmptyExtraction, extract_detailed
from .idea_scoring import (
    CapitalTable,
    average_trend_per_idea,
    choropleth_buckets,
    normalized_keyword_weights,
    regional_idea_strength,
    series_on_grid,
)
from .trends_client import (
    CONTEXTS,
    Context,
    QueryKey,
    TIMEFRAMES,
    Timeframe,
    TrendsClient,
    TrendsClientError,
    batch_keywords,
)
from .trends_wire import WireError

logger = logging.getLogger("idealize.service")

SCHEMA_VERSION = 1
IDEA_SERIES_NAME = "__idea__"


class ValidationError(Exception):
    """Bad request input; ``field`` names the offending field."""

    def __init__(self, field_name: str, message: str):
        super().__init__(message)
        self.field = field_name


class TrendsError(Exception):
    """Interest retrieval failed; ``keyword`` names the query that failed."""

    def __init__(self, message: str, keyword: str | None = None):
        super().__init__(message)
        self.keyword = keyword


def canonical_json(obj) -> str:
    """The one serialization used for reports: sorted keys, no spaces, trailing newline."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False) + "\n"


@dataclass
class AnalysisRequest:
    text: str
    geo: str = "US"
    context: str = "web"
    timeframe: str = "Past 12 months"
    max_keywords: int = 5

    @classmethod
    def from_mapping(cls, body, config: AppConfig | None = None) -> "AnalysisRequest":
        """Validate a decoded JSON body; raises ValidationError naming the bad field."""
        defaults = config or AppConfig()
        if not isinstance(body, dict):
            raise ValidationError("body", "request body must be a JSON object")

        text = body.get("text")
        if not isinstance(text, str) or not text.strip():
            raise ValidationError("text", "'text' must be a nonempty string")

        geo = body.get("geo", defaults.geo)
        if not isinstance(geo, str) or not geo:
            raise ValidationError("geo", "'geo' must be a nonempty string")

        context = body.get("context", defaults.context)
        if context not in CONTEXTS:
            raise ValidationError(
                "context", f"'context' must be one of {list(CONTEXTS)}, got {context!r}"
            )

        timeframe = body.get("timeframe", defaults.timeframe)
        if timeframe not in TIMEFRAMES:
            raise ValidationError(
                "timeframe",
                f"'timeframe' must be one of {list(TIMEFRAMES)}, got {timeframe!r}",
            )

        max_keywords = body.get("max_keywords", defaults.max_keywords)
        if isinstance(max_keywords, bool) or not isinstance(max_keywords, int):
            raise ValidationError("max_keywords", "'max_keywords' must be an integer")
        if max_keywords < 1:
            raise ValidationError("max_keywords", "'max_keywords' must be >= 1")

        return cls(
            text=text,
            geo=geo,
            context=context,
            timeframe=timeframe,
            max_keywords=max_keywords,
        )


@dataclass
class AnalysisReport:
    payload: dict
    timings: dict[str, float] = field(default_factory=dict)

    def to_canonical_json(self) -> str:
        return canonical_json(self.payload)


def analyze_idea(
    request: AnalysisRequest,
    config: AppConfig | None = None,
    client: TrendsClient | None = None,
    capitals: CapitalTable | None = None,
) -> AnalysisReport:
    """Run the full pipeline for one idea text.

    Raises ValidationError for unusable input, TrendsError when interest
    retrieval fails (or, with allow_partial, when it fails for every
    keyword).
    """
    config = config or AppConfig()
    capitals = capitals or CapitalTable.load(config.capitals_path)
    if request.geo not in capitals.geos():
        raise ValidationError(
            "geo", f"'geo' must be one of {capitals.geos()}, got {request.geo!r}"
        )

    timings: dict[str, float] = {}
    t0 = time.perf_counter()
    try:
        outcome = extract_detailed(request.text, config.extraction_config())
    except EmptyExtraction as exc:
        raise ValidationError("text", f"no rankable keywords in text: {exc}") from exc
    timings["extract_s"] = time.perf_counter() - t0

    ranked = outcome.keywords[: request.max_keywords]
    weighted = normalized_keyword_weights(ranked)
    client = client or config.build_client()
    timeframe = Timeframe.from_label(request.timeframe)
    context = Context(request.context)

    t1 = time.perf_counter()
    keys = {
        kw.text: QueryKey(
            keyword=kw.text, geo=request.geo, context=context, timeframe=timeframe
        )
        for kw in weighted
    }
    series = {}
    failures: dict[str, Exception] = {}
    # Series travel in batches of five; a failing batch is retried keyword by
    # keyword so the diagnostic (and partial mode) can name the culprit.
    for chunk in batch_keywords([kw.text for kw in weighted]):
        try:
            series.update(client.fetch_series_batch([keys[text] for text in chunk]))
        except (TrendsClientError, WireError):
            for text in chunk:
                try:
                    series[text] = client.fetch_interest_over_time(keys[text])
                except (TrendsClientError, WireError) as exc:
                    failures[text] = exc
    tables = {}
    for kw in weighted:
        if kw.text in failures:
            continue
        try:
            tables[kw.text] = client.fetch_interest_by_region(keys[kw.text])
        except (TrendsClientError, WireError) as exc:
            failures[kw.text] = exc
    timings["fetch_s"] = time.perf_counter() - t1

    dropped: list[str] = []
    if failures:
        first_bad = next(kw.text for kw in weighted if kw.text in failures)
        if not config.allow_partial:
            raise TrendsError(
                f"interest retrieval failed for keyword {first_bad!r}: "
                f"{failures[first_bad]}",
                keyword=first_bad,
            )
        survivors = [kw for kw in ranked if kw.text not in failures]
        if not survivors:
            raise TrendsError(
                f"interest retrieval failed for every keyword, first was {first_bad!r}: "
                f"{failures[first_bad]}",
                keyword=first_bad,
            )
        dropped = sorted(failures)
        for text in dropped:
            logger.warning("dropping keyword %r: %s", text, failures[text])
        weighted = normalized_keyword_weights(survivors)

    t2 = time.perf_counter()
    idea_points = average_trend_per_idea(
        weighted, series, normalized_scale=config.normalized_scale
    )
    strength_map = regional_idea_strength(
        weighted, tables, normalized_scale=config.normalized_scale
    )
    buckets = choropleth_buckets(strength_map)
    distances = capitals.capital_distances(request.geo)

    grid = [stamp for stamp, _ in idea_points]
    keyword_values = {
        kw.text: series_on_grid(series[kw.text], grid) for kw in weighted
    }

    region_rows = []
    for code in sorted(strength_map):
        rel = distances[code][1] if code in distances else None
        region_rows.append(
            {
                "region_code": code,
                "strength": strength_map[code],
                "bucket": buckets[code],
                "hex_color": config.color_ramp[buckets[code]],
                "relative_capital_distance": rel,
            }
        )

    max_strength = max(strength_map.values())
    strongest = min(c for c, v in strength_map.items() if v == max_strength)
    timings["score_s"] = time.perf_counter() - t2
    timings["total_s"] = time.perf_counter() - t0

    payload = {
        "schema_version": SCHEMA_VERSION,
        "query": {
            "text": request.text,
            "geo": request.geo,
            "context": request.context,
            "timeframe": request.timeframe,
            "timeframe_token": timeframe.wire_token,
            "max_keywords": request.max_keywords,
            "mode": config.mode,
            "normalized_scale": config.normalized_scale,
        },
        "extraction": {
            "candidate_count": outcome.candidate_count,
            "iterations": outcome.iterations,
            "converged": outcome.converged,
            "keywords": [
                {
                    "text": kw.text,
                    "weight": kw.weight,
                    "normalized_weight": kw.normalized_weight,
                }
                for kw in weighted
            ],
            "dropped": dropped,
        },
        "series": {
            "timestamps": grid,
            "keywords": keyword_values,
            "idea": [v for _, v in idea_points],
        },
        "regions": region_rows,
        "region_summary": {
            "strongest_region": strongest,
            "max_strength": max_strength,
            "min_strength": min(strength_map.values()),
        },
    }
    logger.info(
        "analysis done: %d keywords, %d regions, %.3fs total (%d source reads)",
        len(weighted),
        len(region_rows),
        timings["total_s"],
        client.stats.source_reads,
    )
    return AnalysisReport(payload=payload, timings=timings)


def _trend_chart_rows(payload: dict) -> list[dict]:
    rows = []
    timestamps = payload["series"]["timestamps"]
    for entry in payload["extraction"]["keywords"]:
        name = entry["text"]
        for stamp, value in zip(timestamps, payload["series"]["keywords"][name]):
            rows.append({"timestamp": stamp, "series_name": name, "value": value})
    for stamp, value in zip(timestamps, payload["series"]["idea"]):
        rows.append({"timestamp": stamp, "series_name": IDEA_SERIES_NAME, "value": value})
    return rows


def emit_trend_chart_data(report: AnalysisReport, fmt: str = "csv") -> str:
    """Long-format chart document: one row per (timestamp, series_name, value).

    Keyword series come first in rank order; the combined idea series is
    last under the reserved name __idea__. CSV has a header row and RFC 4180
    line endings; json is the same rows as a canonical JSON array.
    """
    rows = _trend_chart_rows(report.payload)
    if fmt == "json":
        return canonical_json(rows)
    if fmt != "csv":
        raise ValueError("format must be 'json' or 'csv'")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow(["timestamp", "series_name", "value"])
    for row in rows:
        writer.writerow([row["timestamp"], row["series_name"], row["value"]])
    return buf.getvalue()


def emit_choropleth(report: AnalysisReport, fmt: str = "csv") -> str:
    """Region rows sorted by region code, with bucket and color attached."""
    rows = report.payload["regions"]
    if fmt == "json":
        return canonical_json(rows)
    if fmt != "csv":
        raise ValueError("format must be 'json' or 'csv'")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow(
        ["region_code", "strength", "bucket", "hex_color", "relative_capital_distance"]
    )
    for row in rows:
        rel = row["relative_capital_distance"]
        writer.writerow(
            [
                row["region_code"],
                row["strength"],
                row["bucket"],
                row["hex_color"],
                "" if rel is None else rel,
            ]
        )
    return buf.getvalue()
