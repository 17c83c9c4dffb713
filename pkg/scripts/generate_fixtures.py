"""Regenerate the bundled trend fixtures.

Fixtures are seeded-random raw series and regional tables for the top five
keywords of the two sample idea texts, under the two timeframes the demos
use. Each text gets one deliberately dominant region (raw count 100 while
every other region stays in [10, 60]) so the two reports rank regions
differently and each choropleth has a unique darkest region.

Run from the repository root:

    python scripts/generate_fixtures.py
"""

from __future__ import annotations

import hashlib
import json
import random
from datetime import date, timedelta
from pathlib import Path

from idealize import extract
from idealize.trends_client import write_fixture

ROOT = Path(__file__).resolve().parent.parent
FIXTURE_DIR = ROOT / "src" / "idealize" / "data" / "fixtures"
CAPITALS = ROOT / "src" / "idealize" / "data" / "capitals.json"

END_DATE = date(2025, 8, 17)
TIMEFRAME_POINTS = {"Past 12 months": 52, "Last five years": 261}

TEXTS = {
    "1": (ROOT / "tests" / "data" / "idea_text_1.txt", "CA"),
    "2": (ROOT / "tests" / "data" / "idea_text_2.txt", "TX"),
}


def _seed(*parts: str) -> int:
    material = "|".join(parts).encode("utf-8")
    return int.from_bytes(hashlib.sha256(material).digest()[:8], "big")


def build_fixture(keyword: str, timeframe: str, boost_region: str, codes: list[str]) -> dict:
    rng = random.Random(_seed(keyword, timeframe))
    n = TIMEFRAME_POINTS[timeframe]
    start = END_DATE - timedelta(days=7 * (n - 1))
    series = [
        [(start + timedelta(days=7 * i)).isoformat(), rng.randint(5, 95)]
        for i in range(n)
    ]
    regions = {code: rng.randint(10, 60) for code in codes}
    regions[boost_region] = 100
    return {
        "keyword": keyword,
        "geo": "US",
        "context": "web",
        "timeframe_label": timeframe,
        "raw_series": series,
        "raw_regions": regions,
    }


def main() -> None:
    codes = sorted(json.loads(CAPITALS.read_text(encoding="utf-8"))["US"]["regions"])
    FIXTURE_DIR.mkdir(parents=True, exist_ok=True)
    for old in FIXTURE_DIR.glob("*.json"):
        old.unlink()
    for label, (text_path, boost) in TEXTS.items():
        keywords = [kw.text for kw in extract(text_path.read_text(encoding="utf-8"))[:5]]
        print(f"text {label}: {keywords} (dominant region {boost})")
        for keyword in keywords:
            for timeframe in TIMEFRAME_POINTS:
                path = write_fixture(
                    FIXTURE_DIR, build_fixture(keyword, timeframe, boost, codes)
                )
                print(f"  wrote {path.name} ({keyword!r}, {timeframe})")


if __name__ == "__main__":
    main()
