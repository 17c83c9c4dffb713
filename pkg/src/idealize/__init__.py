"""Estimate the strength of a business idea from search-interest data.

The pipeline extracts weighted keywords from an idea description, pulls each
keyword's search-interest series and regional breakdown, and combines them
into an idea-strength signal over time and across regions. Use extract() for
keywords only, analyze_idea() for the full report, create_app() for the HTTP
API, or the `idealize` command line.
"""

from .config import AppConfig, DEFAULT_COLOR_RAMP, load_config
from .graph_rank import (
    EmptyExtraction,
    ExtractionConfig,
    ExtractionError,
    RankedKeyword,
    extract,
    extract_detailed,
)
from .idea_scoring import (
    CapitalTable,
    average_trend_per_idea,
    choropleth_buckets,
    haversine_km,
    normalized_keyword_weights,
    regional_idea_strength,
)
from .service import (
    AnalysisReport,
    AnalysisRequest,
    TrendsError,
    ValidationError,
    analyze_idea,
    canonical_json,
    emit_choropleth,
    emit_trend_chart_data,
)
from .trends_client import (
    CONTEXTS,
    Context,
    QueryKey,
    RegionInterestTable,
    TIMEFRAME_LABELS,
    TIMEFRAMES,
    Timeframe,
    TrendSeries,
    TrendsClient,
    batch_keywords,
    normalize_regions,
    normalize_series,
)

__version__ = "0.1.0"

__all__ = [
    "AnalysisReport",
    "AnalysisRequest",
    "AppConfig",
    "CONTEXTS",
    "CapitalTable",
    "Context",
    "DEFAULT_COLOR_RAMP",
    "EmptyExtraction",
    "ExtractionConfig",
    "ExtractionError",
    "QueryKey",
    "RankedKeyword",
    "RegionInterestTable",
    "TIMEFRAMES",
    "TIMEFRAME_LABELS",
    "Timeframe",
    "TrendSeries",
    "TrendsClient",
    "TrendsError",
    "ValidationError",
    "analyze_idea",
    "average_trend_per_idea",
    "batch_keywords",
    "canonical_json",
    "choropleth_buckets",
    "emit_choropleth",
    "emit_trend_chart_data",
    "extract",
    "extract_detailed",
    "haversine_km",
    "load_config",
    "normalize_regions",
    "normalize_series",
    "normalized_keyword_weights",
    "regional_idea_strength",
]
