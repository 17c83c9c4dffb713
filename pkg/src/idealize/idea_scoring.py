"""Turns per-keyword interest into a single idea-strength signal.

Keyword weights from the extraction step are normalized to sum to one, then
combined with each keyword's interest series: the idea's strength at time t
is the weight-normalized sum of keyword interests divided by the number of
keywords. The same formula applied to regional tables yields a per-region
strength map, which is bucketed for choropleth rendering and annotated with
each region's distance from the geography's capital.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .trends_client import RegionInterestTable, TrendSeries, _parse_timestamp

EARTH_RADIUS_KM = 6371.0
BUCKET_COUNT = 9


class ScoringError(Exception):
    """Base class for idea-scoring failures."""


class EmptyKeywordSet(ScoringError):
    pass


class NonPositiveWeight(ScoringError):
    pass


class MissingSeries(ScoringError):
    pass


class GridMismatch(ScoringError):
    pass


class MissingTable(ScoringError):
    pass


class UnknownGeo(ScoringError):
    pass


class UnknownRegion(ScoringError):
    pass


@dataclass(frozen=True)
class WeightedKeyword:
    """A keyword with its raw extraction weight and its share of the total."""

    text: str
    weight: float
    normalized_weight: float


def normalized_keyword_weights(keywords) -> list[WeightedKeyword]:
    """Scale raw weights to shares summing to one.

    Accepts (text, weight) pairs or any objects with .text and .weight.
    Order is preserved. Every weight must be strictly positive.
    """
    pairs = []
    for item in keywords:
        if isinstance(item, tuple):
            text, weight = item
        else:
            text, weight = item.text, item.weight
        pairs.append((str(text), float(weight)))
    if not pairs:
        raise EmptyKeywordSet("cannot normalize an empty keyword set")
    for text, weight in pairs:
        if weight <= 0:
            raise NonPositiveWeight(f"keyword {text!r} has non-positive weight {weight}")
    total = sum(weight for _, weight in pairs)
    return [
        WeightedKeyword(text=text, weight=weight, normalized_weight=weight / total)
        for text, weight in pairs
    ]


def series_on_grid(series: TrendSeries, grid: list[str]) -> list[float]:
    """Values of the series sampled at the grid timestamps.

    Identical grids pass through; otherwise each grid point takes the value
    at the nearest series timestamp (earlier wins ties).
    """
    if series.timestamps() == grid:
        return series.values()
    if not series.points:
        raise GridMismatch(f"series for {series.keyword!r} has no points to sample")
    stamps = [_parse_timestamp(t) for t in series.timestamps()]
    values = series.values()
    out = []
    for label in grid:
        target = _parse_timestamp(label)
        best = min(range(len(stamps)), key=lambda i: (abs((stamps[i] - target).total_seconds()), i))
        out.append(values[best])
    return out


def average_trend_per_idea(
    weighted: list[WeightedKeyword],
    series_by_keyword: dict[str, TrendSeries],
    normalized_scale: bool = False,
) -> list[tuple[str, float]]:
    """Idea strength over time: sum of weight-share times interest, over keyword count.

    strength(t) = (sum_k share_k * interest_k(t)) / nkeywords

    With normalized_scale=True the trailing division is dropped, putting the
    result on the same 0-100 footing as the inputs.
    """
    if not weighted:
        raise EmptyKeywordSet("idea strength needs at least one keyword")
    for kw in weighted:
        if kw.text not in series_by_keyword:
            raise MissingSeries(f"no interest series for keyword {kw.text!r}")
    first = series_by_keyword[weighted[0].text]
    if not first.points:
        raise GridMismatch(f"series for {weighted[0].text!r} has no points")
    grid = first.timestamps()
    sampled = {kw.text: series_on_grid(series_by_keyword[kw.text], grid) for kw in weighted}
    divisor = 1.0 if normalized_scale else float(len(weighted))
    points = []
    for i, stamp in enumerate(grid):
        total = sum(kw.normalized_weight * sampled[kw.text][i] for kw in weighted)
        points.append((stamp, total / divisor))
    return points


def regional_idea_strength(
    weighted: list[WeightedKeyword],
    tables_by_keyword: dict[str, RegionInterestTable],
    normalized_scale: bool = False,
) -> dict[str, float]:
    """The strength formula applied per region over the union of region codes.

    A keyword with no row for some region contributes zero there.
    """
    if not weighted:
        raise EmptyKeywordSet("regional strength needs at least one keyword")
    for kw in weighted:
        if kw.text not in tables_by_keyword:
            raise MissingTable(f"no regional table for keyword {kw.text!r}")
    codes: set[str] = set()
    for kw in weighted:
        codes.update(tables_by_keyword[kw.text].rows)
    divisor = 1.0 if normalized_scale else float(len(weighted))
    out: dict[str, float] = {}
    for code in sorted(codes):
        total = sum(
            kw.normalized_weight * tables_by_keyword[kw.text].rows.get(code, 0.0)
            for kw in weighted
        )
        out[code] = total / divisor
    return out


def choropleth_buckets(strength_map: dict[str, float]) -> dict[str, int]:
    """Assign each region to one of nine equal-width intensity buckets.

    Buckets split [min, max] of the observed values; the maximum lands in
    bucket 8. A constant map puts everything in bucket 0.
    """
    if not strength_map:
        return {}
    lo = min(strength_map.values())
    hi = max(strength_map.values())
    if hi == lo:
        return {code: 0 for code in strength_map}
    width = (hi - lo) / BUCKET_COUNT
    out = {}
    for code, value in strength_map.items():
        bucket = int((value - lo) / width)
        out[code] = min(bucket, BUCKET_COUNT - 1)
    return out


def haversine_km(lat1: float, lon1: float, lat2: float, lon2: float) -> float:
    """Great-circle distance in kilometres on a sphere of radius 6371 km."""
    phi1 = math.radians(lat1)
    phi2 = math.radians(lat2)
    dphi = math.radians(lat2 - lat1)
    dlam = math.radians(lon2 - lon1)
    a = math.sin(dphi / 2.0) ** 2 + math.cos(phi1) * math.cos(phi2) * math.sin(dlam / 2.0) ** 2
    return EARTH_RADIUS_KM * 2.0 * math.asin(min(1.0, math.sqrt(a)))


def default_capitals_path() -> Path:
    return Path(str(resources.files("idealize.data") / "capitals.json"))


class CapitalTable:
    """Capital and region centroids per geography, loaded from a JSON table."""

    def __init__(self, data: dict):
        self._data = data

    @classmethod
    def load(cls, path: str | Path | None = None) -> "CapitalTable":
        path = Path(path) if path else default_capitals_path()
        return cls(json.loads(path.read_text(encoding="utf-8")))

    def geos(self) -> list[str]:
        return sorted(self._data)

    def _geo(self, geo: str) -> dict:
        try:
            return self._data[geo]
        except KeyError:
            raise UnknownGeo(f"no capital data for geography {geo!r}") from None

    def capital(self, geo: str) -> tuple[str, float, float]:
        cap = self._geo(geo)["capital"]
        return cap["name"], float(cap["lat"]), float(cap["lon"])

    def region_coords(self, geo: str) -> dict[str, tuple[float, float]]:
        regions = self._geo(geo)["regions"]
        return {code: (float(p["lat"]), float(p["lon"])) for code, p in regions.items()}

    def capital_distances(self, geo: str) -> dict[str, tuple[float, float]]:
        """Per region: (km from capital, distance relative to the farthest region)."""
        _, cap_lat, cap_lon = self.capital(geo)
        coords = self.region_coords(geo)
        km = {
            code: haversine_km(cap_lat, cap_lon, lat, lon)
            for code, (lat, lon) in coords.items()
        }
        farthest = max(km.values(), default=0.0)
        if farthest == 0.0:
            return {code: (d, 0.0) for code, d in km.items()}
        return {code: (d, d / farthest) for code, d in km.items()}

    def relative_distance(self, geo: str, region_code: str) -> float:
        distances = self.capital_distances(geo)
        try:
            return distances[region_code][1]
        except KeyError:
            raise UnknownRegion(f"region {region_code!r} not in geography {geo!r}") from None
