"""Refresh the golden report/chart/map files from the bundled fixtures.

Run after any intentional change to extraction, scoring, fixtures, or the
report schema, then review the diff before committing.
"""

from pathlib import Path

from idealize.config import AppConfig
from idealize.service import (
    AnalysisRequest,
    analyze_idea,
    emit_choropleth,
    emit_trend_chart_data,
)

ROOT = Path(__file__).resolve().parent.parent
GOLDEN = ROOT / "tests" / "golden"


def main() -> None:
    GOLDEN.mkdir(parents=True, exist_ok=True)
    text = (ROOT / "tests" / "data" / "idea_text_1.txt").read_text(encoding="utf-8")
    report = analyze_idea(AnalysisRequest(text=text), AppConfig(mode="fixture"))
    (GOLDEN / "report.json").write_bytes(report.to_canonical_json().encode("utf-8"))
    (GOLDEN / "trend_chart.csv").write_bytes(
        emit_trend_chart_data(report, fmt="csv").encode("utf-8")
    )
    (GOLDEN / "choropleth.csv").write_bytes(
        emit_choropleth(report, fmt="csv").encode("utf-8")
    )
    for name in ("report.json", "trend_chart.csv", "choropleth.csv"):
        print(f"wrote {GOLDEN / name}")


if __name__ == "__main__":
    main()
