"""Search-interest retrieval per keyword, from local fixtures or the wire.

Interest over time and interest by region are both served through one client
that batches keywords (five per request), caches results on disk, and rate
limits live calls. Values are normalized so each keyword's window maximum is
100; regional tables express relative concentration within a region, not
absolute query volume.

Fixture mode replays deterministic JSON files and is the default for tests
and offline runs; wire mode speaks the public trends endpoints (see
trends_wire).
"""

from __future__ import annotations

import hashlib
import json
import os
import threading
import time
from dataclasses import dataclass, field
from datetime import date, datetime
from enum import Enum
from importlib import resources
from pathlib import Path


class TrendsClientError(Exception):
    """Base class for trend-retrieval failures."""


class EmptySeries(TrendsClientError):
    """Raised when a series or regional table has no data points."""


class FixtureMissing(TrendsClientError):
    """Raised in fixture mode when no fixture file exists for a query."""


class InvalidFixture(TrendsClientError):
    """Raised when a fixture file is unreadable or violates the normalization invariant."""


class QuotaExceeded(TrendsClientError):
    """Raised when the rate limiter refuses a request under the reject policy."""


class Context(str, Enum):
    """Search property the interest data is drawn from."""

    WEB = "web"
    NEWS = "news"
    IMAGES = "images"
    FROOGLE = "froogle"
    YOUTUBE = "youtube"


CONTEXTS: tuple[str, ...] = tuple(c.value for c in Context)

# Wire property parameter per context; plain web search is the empty string.
CONTEXT_WIRE_PROPERTY: dict[str, str] = {
    "web": "",
    "news": "news",
    "images": "images",
    "froogle": "froogle",
    "youtube": "youtube",
}

# Selectable lookback windows and their wire tokens.
TIMEFRAMES: dict[str, str] = {
    "Last hour": "now 1-H",
    "Last four hours": "now 4-H",
    "Last day": "now 1-d",
    "Last seven days": "now 7-d",
    "Past 30 days": "today 1-m",
    "Past 90 days": "today 3-m",
    "Past 12 months": "today 12-m",
    "Last five years": "today+5-y",
    "Since the beginning of Google Trends (2004)": "all",
}

TIMEFRAME_LABELS: tuple[str, ...] = tuple(TIMEFRAMES)


@dataclass(frozen=True)
class Timeframe:
    """One of the nine lookback windows; the span ends at query time."""

    label: str
    wire_token: str

    @classmethod
    def from_label(cls, label: str) -> "Timeframe":
        try:
            return cls(label=label, wire_token=TIMEFRAMES[label])
        except KeyError:
            raise ValueError(
                f"unknown timeframe label {label!r}; expected one of {list(TIMEFRAMES)}"
            ) from None


@dataclass(frozen=True)
class QueryKey:
    """Cache identity of one interest query."""

    keyword: str
    geo: str
    context: Context
    timeframe: Timeframe

    def __post_init__(self) -> None:
        trimmed = self.keyword.strip()
        if not trimmed:
            raise ValueError("keyword must be nonempty")
        object.__setattr__(self, "keyword", trimmed)
        if not isinstance(self.context, Context):
            object.__setattr__(self, "context", Context(self.context))

    def fingerprint(self) -> str:
        """Stable filename-safe hash used for fixture files and cache entries."""
        material = "\x1f".join(
            [self.keyword, self.geo, self.context.value, self.timeframe.label]
        )
        return hashlib.sha256(material.encode("utf-8")).hexdigest()[:24]


def _parse_timestamp(value: str) -> datetime:
    try:
        return datetime.fromisoformat(value.replace("Z", "+00:00"))
    except ValueError:
        return datetime.combine(date.fromisoformat(value), datetime.min.time())


def _check_increasing(timestamps: list[str], what: str) -> None:
    parsed = [_parse_timestamp(t) for t in timestamps]
    for earlier, later in zip(parsed, parsed[1:]):
        if later <= earlier:
            raise ValueError(f"{what} timestamps must be strictly increasing")


@dataclass
class RawSeries:
    """Unnormalized query counts; exists only in fixtures and tests."""

    points: list[tuple[str, float]]

    def __post_init__(self) -> None:
        self.points = [(str(t), float(v)) for t, v in self.points]
        if any(v < 0 for _, v in self.points):
            raise ValueError("raw values must be non-negative")
        _check_increasing([t for t, _ in self.points], "raw series")


@dataclass
class TrendSeries:
    """Normalized interest over time for one keyword, values in [0, 100]."""

    keyword: str
    points: list[tuple[str, float]]

    def __post_init__(self) -> None:
        self.points = [(str(t), float(v)) for t, v in self.points]
        _check_increasing([t for t, _ in self.points], "trend series")
        validate_normalized([v for _, v in self.points], "trend series")

    def values(self) -> list[float]:
        return [v for _, v in self.points]

    def timestamps(self) -> list[str]:
        return [t for t, _ in self.points]


@dataclass
class RegionInterestTable:
    """Normalized interest per region for one keyword, values in [0, 100]."""

    keyword: str
    rows: dict[str, float]

    def __post_init__(self) -> None:
        self.rows = {str(code): float(v) for code, v in self.rows.items()}
        validate_normalized(list(self.rows.values()), "region table")


def validate_normalized(values: list[float], what: str) -> None:
    """Check the indexing invariant: range [0, 100], max exactly 100 when any value > 0."""
    if not values:
        return
    if min(values) < 0 or max(values) > 100:
        raise ValueError(f"{what} values must lie in [0, 100]")
    peak = max(values)
    if peak > 0 and abs(peak - 100.0) > 1e-9:
        raise ValueError(f"{what} with positive values must peak at exactly 100")


def normalize_series(raw: RawSeries, keyword: str = "") -> TrendSeries:
    """Index a raw series to its own window maximum: value / max * 100.

    An all-zero series stays all zero; an empty one is an error.
    """
    if not raw.points:
        raise EmptySeries("cannot normalize an empty series")
    peak = max(v for _, v in raw.points)
    if peak == 0:
        points = [(t, 0.0) for t, _ in raw.points]
    else:
        points = [(t, v / peak * 100.0) for t, v in raw.points]
    return TrendSeries(keyword=keyword, points=points)


def normalize_regions(raw_rows: dict[str, float], keyword: str = "") -> RegionInterestTable:
    """Index regional counts to the strongest region: value / max * 100."""
    if not raw_rows:
        raise EmptySeries("cannot normalize an empty region table")
    values = {str(code): float(v) for code, v in raw_rows.items()}
    if any(v < 0 for v in values.values()):
        raise ValueError("raw region values must be non-negative")
    peak = max(values.values())
    if peak == 0:
        rows = {code: 0.0 for code in values}
    else:
        rows = {code: v / peak * 100.0 for code, v in values.items()}
    return RegionInterestTable(keyword=keyword, rows=rows)


def batch_keywords(keywords: list[str], max_per_request: int = 5) -> list[list[str]]:
    """Order-preserving chunks of at most max_per_request keywords.

    Batching is a transport constraint only; every keyword's series is still
    normalized independently.
    """
    if not keywords:
        raise ValueError("keywords must be nonempty")
    if max_per_request < 1:
        raise ValueError("max_per_request must be >= 1")
    return [
        keywords[i : i + max_per_request] for i in range(0, len(keywords), max_per_request)
    ]


def default_fixtures_dir() -> Path:
    return Path(str(resources.files("idealize.data") / "fixtures"))


class FixtureStore:
    """Reads fixture JSON files named by QueryKey fingerprint."""

    def __init__(self, directory: str | Path | None = None):
        self.directory = Path(directory) if directory else default_fixtures_dir()

    def path_for(self, key: QueryKey) -> Path:
        return self.directory / f"{key.fingerprint()}.json"

    def load(self, key: QueryKey) -> dict:
        path = self.path_for(key)
        if not path.exists():
            raise FixtureMissing(
                f"no fixture for keyword={key.keyword!r} geo={key.geo!r} "
                f"context={key.context.value!r} timeframe={key.timeframe.label!r} "
                f"(expected {path.name})"
            )
        try:
            return json.loads(path.read_text(encoding="utf-8"))
        except (json.JSONDecodeError, UnicodeDecodeError) as exc:
            raise InvalidFixture(f"fixture {path.name} is not valid JSON: {exc}") from exc


def write_fixture(directory: str | Path, payload: dict) -> Path:
    """Write one fixture file named by its own query fields; used by generators and tests."""
    key = QueryKey(
        keyword=payload["keyword"],
        geo=payload.get("geo", ""),
        context=Context(payload.get("context", "web")),
        timeframe=Timeframe.from_label(payload["timeframe_label"]),
    )
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    path = directory / f"{key.fingerprint()}.json"
    path.write_text(
        json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n",
        encoding="utf-8",
    )
    return path


class TrendsCache:
    """File-backed cache keyed by query fingerprint, with per-entry TTL.

    Writes go through a temp file and an atomic rename, so concurrent readers
    never observe a torn entry.
    """

    def __init__(self, directory: str | Path, ttl_hours: float = 24.0):
        self.directory = Path(directory)
        self.ttl_seconds = ttl_hours * 3600.0
        self.directory.mkdir(parents=True, exist_ok=True)

    def _path(self, key: QueryKey, kind: str) -> Path:
        return self.directory / f"{key.fingerprint()}.{kind}.json"

    def get(self, key: QueryKey, kind: str) -> dict | None:
        path = self._path(key, kind)
        try:
            entry = json.loads(path.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError):
            return None
        if time.time() - entry.get("stored_at", 0.0) > self.ttl_seconds:
            return None
        return entry.get("payload")

    def put(self, key: QueryKey, kind: str, payload: dict) -> None:
        path = self._path(key, kind)
        tmp = path.with_suffix(".tmp")
        tmp.write_text(
            json.dumps({"stored_at": time.time(), "payload": payload}, ensure_ascii=False),
            encoding="utf-8",
        )
        os.replace(tmp, path)


class RateLimiter:
    """Caps request starts at ``rate_per_sec``; excess callers wait or are refused.

    The limiter is the single serialization point for wire traffic, so a
    plain lock plus a next-slot clock is enough.
    """

    def __init__(self, rate_per_sec: float = 1.0, policy: str = "wait"):
        if rate_per_sec <= 0:
            raise ValueError("rate_per_sec must be positive")
        if policy not in ("wait", "reject"):
            raise ValueError("policy must be 'wait' or 'reject'")
        self.rate_per_sec = rate_per_sec
        self.policy = policy
        self._interval = 1.0 / rate_per_sec
        self._next_slot = 0.0
        self._lock = threading.Lock()

    def acquire(self) -> None:
        with self._lock:
            now = time.monotonic()
            if now >= self._next_slot:
                self._next_slot = now + self._interval
                return
            if self.policy == "reject":
                raise QuotaExceeded(
                    f"refused: limit is {self.rate_per_sec:g} requests/second"
                )
            delay = self._next_slot - now
            self._next_slot += self._interval
        time.sleep(delay)


@dataclass
class ClientStats:
    source_reads: int = 0
    cache_hits: int = 0


class TrendsClient:
    """Fetches normalized interest data with caching, batching, and rate limiting.

    mode='fixture' replays local JSON files; mode='wire' talks to the live
    endpoints through a WireSession (trends_wire). The client is shareable
    across threads: the cache is atomic per entry and the rate limiter
    serializes wire calls.
    """

    def __init__(
        self,
        mode: str = "fixture",
        fixtures_dir: str | Path | None = None,
        cache: TrendsCache | None = None,
        rate_limiter: RateLimiter | None = None,
        wire=None,
    ):
        if mode not in ("fixture", "wire"):
            raise ValueError("mode must be 'fixture' or 'wire'")
        self.mode = mode
        self.fixtures = FixtureStore(fixtures_dir)
        self.cache = cache
        self.rate_limiter = rate_limiter
        self._wire = wire
        self.stats = ClientStats()

    def _wire_session(self):
        if self._wire is None:
            from .trends_wire import WireSession

            self._wire = WireSession()
        return self._wire

    def fetch_interest_over_time(self, key: QueryKey) -> TrendSeries:
        cached = self.cache.get(key, "series") if self.cache else None
        if cached is not None:
            self.stats.cache_hits += 1
            return TrendSeries(keyword=cached["keyword"], points=cached["points"])

        self.stats.source_reads += 1
        if self.mode == "fixture":
            series = self._series_from_fixture(key)
        else:
            if self.rate_limiter:
                self.rate_limiter.acquire()
            points = self._wire_session().interest_over_time(key)
            if not points:
                raise EmptySeries(f"wire returned no points for {key.keyword!r}")
            # Re-index to the keyword's own max: batched wire responses are
            # scaled across keywords, and normalization is idempotent anyway.
            series = normalize_series(RawSeries(points=points), keyword=key.keyword)

        if self.cache:
            self.cache.put(
                key, "series", {"keyword": series.keyword, "points": series.points}
            )
        return series

    def fetch_series_batch(self, keys: list[QueryKey]) -> dict[str, TrendSeries]:
        """Series for several keywords; wire mode spends one exchange per five.

        All keys must share geo, context, and timeframe. All-or-nothing: the
        first failure propagates (callers wanting per-keyword isolation fetch
        individually).
        """
        if not keys:
            return {}
        out: dict[str, TrendSeries] = {}
        for chunk_words in batch_keywords([k.keyword for k in keys]):
            chunk = [k for k in keys if k.keyword in set(chunk_words)]
            if self.mode == "fixture":
                for key in chunk:
                    out[key.keyword] = self.fetch_interest_over_time(key)
                continue
            missing = []
            for key in chunk:
                cached = self.cache.get(key, "series") if self.cache else None
                if cached is not None:
                    self.stats.cache_hits += 1
                    out[key.keyword] = TrendSeries(
                        keyword=cached["keyword"], points=cached["points"]
                    )
                else:
                    missing.append(key)
            if not missing:
                continue
            if self.rate_limiter:
                self.rate_limiter.acquire()
            self.stats.source_reads += len(missing)
            fetched = self._wire_session().interest_over_time_batch(missing)
            for key in missing:
                points = fetched.get(key.keyword, [])
                if not points:
                    raise EmptySeries(f"wire returned no points for {key.keyword!r}")
                series = normalize_series(RawSeries(points=points), keyword=key.keyword)
                out[key.keyword] = series
                if self.cache:
                    self.cache.put(
                        key, "series", {"keyword": series.keyword, "points": series.points}
                    )
        return out

    def fetch_interest_by_region(self, key: QueryKey) -> RegionInterestTable:
        cached = self.cache.get(key, "regions") if self.cache else None
        if cached is not None:
            self.stats.cache_hits += 1
            return RegionInterestTable(keyword=cached["keyword"], rows=cached["rows"])

        self.stats.source_reads += 1
        if self.mode == "fixture":
            table = self._regions_from_fixture(key)
        else:
            if self.rate_limiter:
                self.rate_limiter.acquire()
            rows = self._wire_session().interest_by_region(key)
            table = normalize_regions(rows, keyword=key.keyword)

        if self.cache:
            self.cache.put(key, "regions", {"keyword": table.keyword, "rows": table.rows})
        return table

    def _series_from_fixture(self, key: QueryKey) -> TrendSeries:
        doc = self.fixtures.load(key)
        if "raw_series" in doc:
            raw = RawSeries(points=[(t, v) for t, v in doc["raw_series"]])
            return normalize_series(raw, keyword=key.keyword)
        if "series" in doc:
            if not doc["series"]:
                raise EmptySeries("fixture series has no points")
            try:
                return TrendSeries(keyword=key.keyword, points=doc["series"])
            except ValueError as exc:
                raise InvalidFixture(f"pre-normalized series rejected: {exc}") from exc
        raise InvalidFixture(
            f"fixture {self.fixtures.path_for(key).name} has neither 'raw_series' nor 'series'"
        )

    def _regions_from_fixture(self, key: QueryKey) -> RegionInterestTable:
        doc = self.fixtures.load(key)
        if "raw_regions" in doc:
            if not doc["raw_regions"]:
                raise EmptySeries("fixture region table is empty")
            return normalize_regions(doc["raw_regions"], keyword=key.keyword)
        if "regions" in doc:
            if not doc["regions"]:
                raise EmptySeries("fixture region table is empty")
            try:
                return RegionInterestTable(keyword=key.keyword, rows=doc["regions"])
            except ValueError as exc:
                raise InvalidFixture(f"pre-normalized regions rejected: {exc}") from exc
        raise InvalidFixture(
            f"fixture {self.fixtures.path_for(key).name} has neither 'raw_regions' nor 'regions'"
        )
