"""Runtime settings for extraction, retrieval, and serving.

A config file is either JSON or flat key=value lines; both map onto the same
AppConfig fields. Everything has a default, so the empty config is valid and
runs in fixture mode against the bundled data.
"""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass, field
from pathlib import Path

from .graph_rank import ExtractionConfig
from .trends_client import RateLimiter, TrendsCache, TrendsClient
from .trends_wire import WIRE_ENDPOINTS

# Light-to-dark blue ramp, one hex per choropleth bucket.
DEFAULT_COLOR_RAMP: tuple[str, ...] = (
    "#f7fbff",
    "#deebf7",
    "#c6dbef",
    "#9ecae1",
    "#6baed6",
    "#4292c6",
    "#2171b5",
    "#08519c",
    "#08306b",
)


@dataclass
class AppConfig:
    mode: str = "fixture"
    fixtures_dir: str | None = None
    cache_dir: str | None = None
    cache_ttl_hours: float = 24.0
    rate_per_sec: float = 1.0
    rate_policy: str = "wait"
    max_keywords: int = 5
    normalized_scale: bool = False
    allow_partial: bool = False
    geo: str = "US"
    context: str = "web"
    timeframe: str = "Past 12 months"
    window: int = 2
    ratio: float = 1.0 / 3.0
    damping: float = 0.85
    tolerance: float = 1e-6
    max_iterations: int = 100
    stopwords_path: str | None = None
    lexicon_path: str | None = None
    capitals_path: str | None = None
    color_ramp: tuple[str, ...] = DEFAULT_COLOR_RAMP
    wire_endpoints: dict = field(default_factory=lambda: dict(WIRE_ENDPOINTS))
    static_dir: str | None = None

    def __post_init__(self) -> None:
        if self.mode not in ("fixture", "wire"):
            raise ValueError("mode must be 'fixture' or 'wire'")
        if self.rate_policy not in ("wait", "reject"):
            raise ValueError("rate_policy must be 'wait' or 'reject'")
        if self.max_keywords < 1:
            raise ValueError("max_keywords must be >= 1")
        if len(self.color_ramp) != 9:
            raise ValueError("color_ramp must list exactly nine colors")
        self.color_ramp = tuple(self.color_ramp)

    def extraction_config(self) -> ExtractionConfig:
        return ExtractionConfig(
            window=self.window,
            ratio=self.ratio,
            damping=self.damping,
            tolerance=self.tolerance,
            max_iterations=self.max_iterations,
            stopwords_path=self.stopwords_path,
            lexicon_path=self.lexicon_path,
        )

    def build_client(self) -> TrendsClient:
        cache = (
            TrendsCache(self.cache_dir, ttl_hours=self.cache_ttl_hours)
            if self.cache_dir
            else None
        )
        limiter = (
            RateLimiter(rate_per_sec=self.rate_per_sec, policy=self.rate_policy)
            if self.mode == "wire"
            else None
        )
        wire = None
        if self.mode == "wire":
            from .trends_wire import WireSession

            wire = WireSession(endpoints=dict(self.wire_endpoints))
        return TrendsClient(
            mode=self.mode,
            fixtures_dir=self.fixtures_dir,
            cache=cache,
            rate_limiter=limiter,
            wire=wire,
        )


_FIELD_TYPES = {f.name: f.type for f in dataclasses.fields(AppConfig)}
_BOOL_WORDS = {"true": True, "yes": True, "1": True, "false": False, "no": False, "0": False}


def _coerce(key: str, raw: str):
    if key in ("normalized_scale", "allow_partial"):
        word = raw.strip().lower()
        if word not in _BOOL_WORDS:
            raise ValueError(f"config key {key!r} expects a boolean, got {raw!r}")
        return _BOOL_WORDS[word]
    if key in ("max_keywords", "window", "max_iterations"):
        return int(raw)
    if key in ("cache_ttl_hours", "rate_per_sec", "ratio", "damping", "tolerance"):
        return float(raw)
    if key == "color_ramp":
        return tuple(part.strip() for part in raw.split(",") if part.strip())
    if key == "wire_endpoints":
        return json.loads(raw)
    return raw


def load_config(path: str | Path | None = None) -> AppConfig:
    """Read JSON or key=value config; None gives pure defaults."""
    if path is None:
        return AppConfig()
    text = Path(path).read_text(encoding="utf-8")
    stripped = text.lstrip()
    if stripped.startswith("{"):
        mapping = json.loads(text)
        if not isinstance(mapping, dict):
            raise ValueError("JSON config must be an object")
        values = dict(mapping)
    else:
        values = {}
        for lineno, line in enumerate(text.splitlines(), start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"config line {lineno} is not key=value: {line!r}")
            key, _, raw = line.partition("=")
            values[key.strip()] = _coerce(key.strip(), raw.strip())
    unknown = set(values) - set(_FIELD_TYPES)
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    return AppConfig(**values)
