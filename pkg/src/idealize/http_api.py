"""HTTP JSON API over the analysis service.

Three endpoints under /api/v1: analyze (POST), config (GET), healthz (GET).
Request bodies are validated by hand so every client error is a 400 with a
stable {"error": {"kind", "detail"}} body; retrieval failures map to 502 and
anything else to 500. Responses are pre-serialized canonical JSON, so the
bytes a client sees match the CLI's report.json exactly.
"""

from __future__ import annotations

import json
import logging

from fastapi import FastAPI, Request, Response
from fastapi.concurrency import run_in_threadpool
from fastapi.middleware.cors import CORSMiddleware

from .config import AppConfig
from .idea_scoring import CapitalTable
from .service import (
    AnalysisRequest,
    TrendsError,
    ValidationError,
    analyze_idea,
    canonical_json,
)
from .trends_client import CONTEXTS, TIMEFRAME_LABELS

logger = logging.getLogger("idealize.http")


def _json_response(obj, status_code: int = 200) -> Response:
    return Response(
        content=canonical_json(obj).encode("utf-8"),
        status_code=status_code,
        media_type="application/json",
    )


def _error_response(kind: str, detail: str, status_code: int) -> Response:
    return _json_response({"error": {"kind": kind, "detail": detail}}, status_code)


def create_app(
    config: AppConfig | None = None, client=None, capitals: CapitalTable | None = None
) -> FastAPI:
    """Build the app; the trends client and capital table are shared across requests."""
    config = config or AppConfig()
    client = client or config.build_client()
    capitals = capitals or CapitalTable.load(config.capitals_path)
    app = FastAPI(title="idealize", docs_url=None, redoc_url=None, openapi_url=None)
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )

    @app.post("/api/v1/analyze")
    async def analyze(request: Request) -> Response:
        try:
            body = json.loads(await request.body())
        except json.JSONDecodeError:
            return _error_response("validation_error", "body: request body is not valid JSON", 400)
        # Runs in the threadpool so one slow fetch never stalls other requests.
        return await run_in_threadpool(_analyze_sync, body)

    def _analyze_sync(body) -> Response:
        try:
            parsed = AnalysisRequest.from_mapping(body, config)
            report = analyze_idea(parsed, config, client=client, capitals=capitals)
        except ValidationError as exc:
            return _error_response("validation_error", f"{exc.field}: {exc}", 400)
        except TrendsError as exc:
            return _error_response("trends_error", str(exc), 502)
        except Exception as exc:  # pragma: no cover - defensive
            logger.exception("analysis failed")
            return _error_response("internal_error", str(exc), 500)
        return Response(
            content=report.to_canonical_json().encode("utf-8"),
            media_type="application/json",
        )

    @app.get("/api/v1/config")
    async def get_config() -> Response:
        return _json_response(
            {
                "contexts": list(CONTEXTS),
                "timeframes": list(TIMEFRAME_LABELS),
                "geos": capitals.geos(),
                "color_ramp": list(config.color_ramp),
                "defaults": {
                    "geo": config.geo,
                    "context": config.context,
                    "timeframe": config.timeframe,
                    "max_keywords": config.max_keywords,
                    "mode": config.mode,
                },
            }
        )

    @app.get("/api/v1/healthz")
    async def healthz() -> Response:
        return _json_response({"status": "ok"})

    if config.static_dir:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=config.static_dir, html=True), name="static")

    return app
