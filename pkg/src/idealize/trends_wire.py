"""Wire protocol for the public trends endpoints.

The flow is a two-step handshake: an explore call registers the query and
returns per-widget tokens, then widgetdata calls fetch the actual payloads
(multiline for interest over time, comparedgeo for interest by region). All
responses carry a junk prefix before the JSON body that must be stripped.

Endpoints live in one table (WIRE_ENDPOINTS) so a config can point the client
at a proxy or a test server. Transports are injectable: RequestsTransport for
live traffic, RecordingTransport to capture exchanges, ReplayTransport to run
tests offline against captured traffic.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

from .trends_client import CONTEXT_WIRE_PROPERTY, QueryKey

WIRE_ENDPOINTS: dict[str, str] = {
    "base": "https://trends.google.com",
    "explore": "/trends/api/explore",
    "interest_over_time": "/trends/api/widgetdata/multiline",
    "interest_by_region": "/trends/api/widgetdata/comparedgeo",
}

# Widget ids assigned by the explore response.
_TIMESERIES_WIDGET = "TIMESERIES"
_GEO_WIDGET = "GEO_MAP"


class WireError(Exception):
    """A wire call failed; ``retryable`` hints whether backing off may help."""

    def __init__(self, message: str, retryable: bool = False):
        super().__init__(message)
        self.retryable = retryable


@dataclass
class TransportResponse:
    status_code: int
    text: str


class RequestsTransport:
    """Live HTTP transport; one pooled session, browser-ish user agent."""

    def __init__(self, timeout: float = 10.0):
        self.timeout = timeout
        self._session = None

    def _get_session(self):
        if self._session is None:
            import requests

            session = requests.Session()
            session.headers.update(
                {"User-Agent": "Mozilla/5.0 (X11; Linux x86_64) idealize/0.1"}
            )
            self._session = session
        return self._session

    def request(self, method: str, url: str, params: dict) -> TransportResponse:
        import requests

        try:
            resp = self._get_session().request(
                method, url, params=params, timeout=self.timeout
            )
        except requests.RequestException as exc:
            raise WireError(f"transport failure for {url}: {exc}", retryable=True) from exc
        return TransportResponse(status_code=resp.status_code, text=resp.text)


def _exchange_key(method: str, url: str, params: dict) -> str:
    return json.dumps(
        {"method": method.upper(), "url": url, "params": params},
        sort_keys=True,
        separators=(",", ":"),
        ensure_ascii=False,
    )


class RecordingTransport:
    """Wraps a live transport and appends every exchange to a JSON file."""

    def __init__(self, inner, record_path: str | Path):
        self.inner = inner
        self.record_path = Path(record_path)
        self.exchanges: list[dict] = []

    def request(self, method: str, url: str, params: dict) -> TransportResponse:
        resp = self.inner.request(method, url, params)
        self.exchanges.append(
            {
                "method": method.upper(),
                "url": url,
                "params": params,
                "status_code": resp.status_code,
                "text": resp.text,
            }
        )
        self.record_path.write_text(
            json.dumps(self.exchanges, indent=2, ensure_ascii=False) + "\n",
            encoding="utf-8",
        )
        return resp


class ReplayTransport:
    """Serves recorded exchanges back; unknown requests are an error.

    Each recorded response is consumed in order per (method, url, params)
    key; once a key's recordings run out the last one is repeated, which
    keeps cache-miss retries in tests from needing duplicate captures.
    """

    def __init__(self, source: str | Path | list[dict]):
        if isinstance(source, (str, Path)):
            exchanges = json.loads(Path(source).read_text(encoding="utf-8"))
        else:
            exchanges = source
        self._queues: dict[str, list[TransportResponse]] = {}
        for ex in exchanges:
            key = _exchange_key(ex["method"], ex["url"], ex["params"])
            self._queues.setdefault(key, []).append(
                TransportResponse(ex["status_code"], ex["text"])
            )
        self.requests_served: list[dict] = []

    def request(self, method: str, url: str, params: dict) -> TransportResponse:
        key = _exchange_key(method, url, params)
        queue = self._queues.get(key)
        if not queue:
            raise WireError(f"no recorded exchange for {key}", retryable=False)
        self.requests_served.append({"method": method.upper(), "url": url, "params": params})
        if len(queue) > 1:
            return queue.pop(0)
        return queue[0]


def strip_json_prefix(text: str) -> str:
    """Drop the anti-hijacking junk the endpoints prepend to JSON bodies."""
    for i, ch in enumerate(text):
        if ch in "{[":
            return text[i:]
    raise WireError("response contains no JSON body", retryable=False)


def _epoch_to_iso(value: str) -> str:
    stamp = datetime.fromtimestamp(int(value), tz=timezone.utc)
    if stamp.hour == stamp.minute == stamp.second == 0:
        return stamp.date().isoformat()
    return stamp.replace(tzinfo=None).isoformat()


@dataclass
class WireSession:
    """Stateless handshake-then-fetch driver over an injectable transport."""

    transport: object = None
    endpoints: dict = field(default_factory=lambda: dict(WIRE_ENDPOINTS))
    hl: str = "en-US"
    tz: int = 0
    retries: int = 2
    backoff: float = 0.5

    def __post_init__(self):
        if self.transport is None:
            self.transport = RequestsTransport()

    def _url(self, name: str) -> str:
        return self.endpoints["base"] + self.endpoints[name]

    def _call(self, method: str, name: str, params: dict) -> str:
        last_error: WireError | None = None
        for attempt in range(self.retries + 1):
            try:
                resp = self.transport.request(method, self._url(name), params)
            except WireError as exc:
                if not exc.retryable:
                    raise
                last_error = exc
            else:
                if resp.status_code == 200:
                    return resp.text
                retryable = resp.status_code == 429 or resp.status_code >= 500
                last_error = WireError(
                    f"{name} returned HTTP {resp.status_code}", retryable=retryable
                )
                if not retryable:
                    raise last_error
            if attempt < self.retries and self.backoff > 0:
                time.sleep(self.backoff * (attempt + 1))
        raise last_error  # type: ignore[misc]

    def explore(self, keys: list[QueryKey]) -> list[dict]:
        """Register a query of up to five keywords; returns widget descriptors."""
        if not keys:
            raise ValueError("explore requires at least one query key")
        if len(keys) > 5:
            raise ValueError("explore accepts at most five keywords per request")
        first = keys[0]
        if any(
            (k.geo, k.context, k.timeframe.label)
            != (first.geo, first.context, first.timeframe.label)
            for k in keys
        ):
            raise ValueError("all keys in one explore call must share geo, context, timeframe")
        req = {
            "comparisonItem": [
                {"keyword": k.keyword, "geo": k.geo, "time": k.timeframe.wire_token}
                for k in keys
            ],
            "category": 0,
            "property": CONTEXT_WIRE_PROPERTY[first.context.value],
        }
        params = {
            "hl": self.hl,
            "tz": str(self.tz),
            "req": json.dumps(req, separators=(",", ":"), ensure_ascii=False),
        }
        text = self._call("POST", "explore", params)
        try:
            doc = json.loads(strip_json_prefix(text))
            widgets = doc["widgets"]
        except (json.JSONDecodeError, KeyError) as exc:
            raise WireError(f"explore response unparsable: {exc}", retryable=False) from exc
        return widgets

    def _widget(self, widgets: list[dict], widget_id: str) -> dict:
        for w in widgets:
            if w.get("id") == widget_id:
                return w
        raise WireError(f"explore response lacks widget {widget_id!r}", retryable=False)

    def _widget_params(self, widget: dict) -> dict:
        return {
            "hl": self.hl,
            "tz": str(self.tz),
            "req": json.dumps(widget["request"], separators=(",", ":"), ensure_ascii=False),
            "token": widget["token"],
        }

    def interest_over_time_batch(
        self, keys: list[QueryKey]
    ) -> dict[str, list[tuple[str, float]]]:
        """One handshake and one multiline fetch for up to five keywords.

        Returns points per keyword; the value array index follows the
        comparison-item order of the request.
        """
        widgets = self.explore(keys)
        widget = self._widget(widgets, _TIMESERIES_WIDGET)
        text = self._call("GET", "interest_over_time", self._widget_params(widget))
        try:
            doc = json.loads(strip_json_prefix(text))
            timeline = doc["default"]["timelineData"]
        except (json.JSONDecodeError, KeyError) as exc:
            raise WireError(f"multiline response unparsable: {exc}", retryable=False) from exc
        out: dict[str, list[tuple[str, float]]] = {k.keyword: [] for k in keys}
        for item in timeline:
            stamp = _epoch_to_iso(item["time"])
            values = item["value"]
            for i, key in enumerate(keys):
                out[key.keyword].append((stamp, float(values[i])))
        return out

    def interest_over_time(self, key: QueryKey) -> list[tuple[str, float]]:
        return self.interest_over_time_batch([key])[key.keyword]

    def interest_by_region(self, key: QueryKey) -> dict[str, float]:
        """Regional interest for one keyword; region codes lose their country prefix."""
        widgets = self.explore([key])
        widget = self._widget(widgets, _GEO_WIDGET)
        text = self._call("GET", "interest_by_region", self._widget_params(widget))
        try:
            doc = json.loads(strip_json_prefix(text))
            geo_rows = doc["default"]["geoMapData"]
        except (json.JSONDecodeError, KeyError) as exc:
            raise WireError(
                f"comparedgeo response unparsable: {exc}", retryable=False
            ) from exc
        rows: dict[str, float] = {}
        for entry in geo_rows:
            code = entry.get("geoCode", "")
            if "-" in code:
                code = code.split("-", 1)[1]
            if not code:
                continue
            rows[code] = float(entry["value"][0])
        return rows
