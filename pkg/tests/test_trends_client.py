import json
import os
import threading
import time

import pytest
from hypothesis import given, strategies as st

from idealize.trends_client import (
    CONTEXTS,
    Context,
    EmptySeries,
    FixtureMissing,
    FixtureStore,
    InvalidFixture,
    QueryKey,
    QuotaExceeded,
    RateLimiter,
    RawSeries,
    RegionInterestTable,
    TIMEFRAMES,
    Timeframe,
    TrendSeries,
    TrendsCache,
    TrendsClient,
    batch_keywords,
    normalize_regions,
    normalize_series,
    write_fixture,
)
from conftest import make_key


class TestTimeframes:
    def test_the_nine_labels(self):
        assert TIMEFRAMES == {
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

    def test_from_label(self):
        tf = Timeframe.from_label("Past 12 months")
        assert tf.wire_token == "today 12-m"

    def test_unknown_label(self):
        with pytest.raises(ValueError):
            Timeframe.from_label("Past 13 months")

    def test_contexts_are_the_five(self):
        assert CONTEXTS == ("web", "news", "images", "froogle", "youtube")


class TestQueryKey:
    def test_trims_keyword(self):
        key = make_key("  business idea  ")
        assert key.keyword == "business idea"

    def test_empty_keyword_rejected(self):
        with pytest.raises(ValueError):
            make_key("   ")

    def test_fingerprint_stable_and_distinct(self):
        a = make_key("auto")
        b = make_key("auto")
        c = make_key("parts")
        d = make_key("auto", timeframe="Last five years")
        assert a.fingerprint() == b.fingerprint()
        assert a.fingerprint() != c.fingerprint()
        assert a.fingerprint() != d.fingerprint()

    def test_accepts_context_string(self):
        key = QueryKey(keyword="x", geo="US", context="youtube",
                       timeframe=Timeframe.from_label("Last day"))
        assert key.context is Context.YOUTUBE


class TestNormalizeSeries:
    def test_hand_example(self):
        raw = RawSeries(points=[("2025-01-05", 2), ("2025-01-12", 4), ("2025-01-19", 1)])
        out = normalize_series(raw)
        assert [v for _, v in out.points] == [50.0, 100.0, 25.0]

    def test_constant_series(self):
        raw = RawSeries(points=[("2025-01-05", 7), ("2025-01-12", 7)])
        assert normalize_series(raw).values() == [100.0, 100.0]

    def test_all_zero(self):
        raw = RawSeries(points=[("2025-01-05", 0), ("2025-01-12", 0), ("2025-01-19", 0)])
        assert normalize_series(raw).values() == [0.0, 0.0, 0.0]

    def test_empty_rejected(self):
        with pytest.raises(EmptySeries):
            normalize_series(RawSeries(points=[]))

    def test_timestamps_must_increase(self):
        with pytest.raises(ValueError):
            RawSeries(points=[("2025-01-12", 1), ("2025-01-05", 2)])

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            RawSeries(points=[("2025-01-05", -1)])

    @given(st.lists(st.floats(min_value=0, max_value=1e9), min_size=1, max_size=28),
           st.floats(min_value=1e-3, max_value=1e3))
    def test_range_and_scale_invariance(self, values, scale):
        stamps = [f"2025-01-{i + 1:02d}" for i in range(len(values))]
        base = normalize_series(RawSeries(points=list(zip(stamps, values))))
        scaled = normalize_series(
            RawSeries(points=[(t, v * scale) for t, v in zip(stamps, values)])
        )
        assert all(0.0 <= v <= 100.0 for v in base.values())
        if any(v > 0 for v in base.values()):
            assert max(base.values()) == 100.0
        for a, b in zip(base.values(), scaled.values()):
            assert a == pytest.approx(b, abs=1e-9)

    @given(st.lists(st.integers(min_value=0, max_value=10_000), min_size=1, max_size=28))
    def test_idempotence(self, values):
        stamps = [f"2025-01-{i + 1:02d}" for i in range(len(values))]
        once = normalize_series(RawSeries(points=list(zip(stamps, values))))
        twice = normalize_series(RawSeries(points=once.points))
        for a, b in zip(once.values(), twice.values()):
            assert a == pytest.approx(b, abs=1e-12)


class TestNormalizeRegions:
    def test_passthrough_when_max_is_100(self):
        out = normalize_regions({"CA": 50, "TX": 100, "NY": 25})
        assert out.rows == {"CA": 50.0, "TX": 100.0, "NY": 25.0}

    def test_single_region_becomes_100(self):
        assert normalize_regions({"X": 3}).rows == {"X": 100.0}

    def test_empty_rejected(self):
        with pytest.raises(EmptySeries):
            normalize_regions({})

    def test_relative_concentration_shape(self):
        # region A searches the keyword twice as intensely as region B,
        # regardless of absolute volume: the indexed shape is 100 vs 55
        out = normalize_regions({"ES": 55_000, "PT": 100_000})
        assert out.rows["PT"] == 100.0
        assert out.rows["ES"] == pytest.approx(55.0)


class TestTrendSeriesValidation:
    def test_max_must_be_100_when_positive(self):
        with pytest.raises(ValueError):
            TrendSeries(keyword="x", points=[("2025-01-05", 40.0), ("2025-01-12", 60.0)])

    def test_range_enforced(self):
        with pytest.raises(ValueError):
            TrendSeries(keyword="x", points=[("2025-01-05", 120.0)])
        with pytest.raises(ValueError):
            RegionInterestTable(keyword="x", rows={"CA": -5.0})

    def test_all_zero_is_valid(self):
        series = TrendSeries(keyword="x", points=[("2025-01-05", 0.0)])
        assert series.values() == [0.0]


class TestBatchKeywords:
    def test_seven_chunks_five_two(self):
        batches = batch_keywords([f"k{i}" for i in range(7)])
        assert [len(b) for b in batches] == [5, 2]
        assert [kw for batch in batches for kw in batch] == [f"k{i}" for i in range(7)]

    def test_five_is_one_batch(self):
        assert batch_keywords(["a", "b", "c", "d", "e"]) == [["a", "b", "c", "d", "e"]]

    def test_singleton(self):
        assert batch_keywords(["solo"]) == [["solo"]]

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            batch_keywords([])


class TestFixtureMode:
    def test_raw_fixture_is_normalized(self, tmp_path):
        key = make_key("business")
        write_fixture(tmp_path, {
            "keyword": "business", "geo": "US", "context": "web",
            "timeframe_label": "Past 12 months",
            "raw_series": [["2025-01-05", 10], ["2025-01-12", 40], ["2025-01-19", 20]],
        })
        client = TrendsClient(mode="fixture", fixtures_dir=tmp_path)
        series = client.fetch_interest_over_time(key)
        assert series.values() == [25.0, 100.0, 50.0]

    def test_missing_fixture(self, tmp_path):
        client = TrendsClient(mode="fixture", fixtures_dir=tmp_path)
        with pytest.raises(FixtureMissing):
            client.fetch_interest_over_time(make_key("ghost"))

    def test_prenormalized_series_accepted(self, tmp_path):
        key = make_key("auto")
        store = FixtureStore(tmp_path)
        store.directory.joinpath(f"{key.fingerprint()}.json").write_text(json.dumps({
            "keyword": "auto", "geo": "US", "context": "web",
            "timeframe_label": "Past 12 months",
            "series": [["2025-01-05", 50.0], ["2025-01-12", 100.0]],
        }))
        client = TrendsClient(mode="fixture", fixtures_dir=tmp_path)
        assert client.fetch_interest_over_time(key).values() == [50.0, 100.0]

    def test_prenormalized_must_peak_at_100(self, tmp_path):
        key = make_key("auto")
        FixtureStore(tmp_path).directory.joinpath(f"{key.fingerprint()}.json").write_text(
            json.dumps({
                "keyword": "auto", "geo": "US", "context": "web",
                "timeframe_label": "Past 12 months",
                "series": [["2025-01-05", 50.0], ["2025-01-12", 80.0]],
            })
        )
        client = TrendsClient(mode="fixture", fixtures_dir=tmp_path)
        with pytest.raises(InvalidFixture):
            client.fetch_interest_over_time(key)

    def test_corrupt_fixture(self, tmp_path):
        key = make_key("auto")
        (tmp_path / f"{key.fingerprint()}.json").write_text("{not json")
        client = TrendsClient(mode="fixture", fixtures_dir=tmp_path)
        with pytest.raises(InvalidFixture):
            client.fetch_interest_over_time(key)

    def test_regions_from_raw(self, tmp_path):
        key = make_key("parts")
        write_fixture(tmp_path, {
            "keyword": "parts", "geo": "US", "context": "web",
            "timeframe_label": "Past 12 months",
            "raw_regions": {"CA": 50, "TX": 100, "NY": 25},
        })
        client = TrendsClient(mode="fixture", fixtures_dir=tmp_path)
        table = client.fetch_interest_by_region(key)
        assert table.rows == {"CA": 50.0, "TX": 100.0, "NY": 25.0}

    def test_empty_region_table(self, tmp_path):
        key = make_key("parts")
        write_fixture(tmp_path, {
            "keyword": "parts", "geo": "US", "context": "web",
            "timeframe_label": "Past 12 months", "raw_regions": {},
        })
        client = TrendsClient(mode="fixture", fixtures_dir=tmp_path)
        with pytest.raises(EmptySeries):
            client.fetch_interest_by_region(key)

    def test_empty_series_fixture(self, tmp_path):
        key = make_key("parts")
        write_fixture(tmp_path, {
            "keyword": "parts", "geo": "US", "context": "web",
            "timeframe_label": "Past 12 months", "raw_series": [],
        })
        client = TrendsClient(mode="fixture", fixtures_dir=tmp_path)
        with pytest.raises(EmptySeries):
            client.fetch_interest_over_time(key)

    def test_bundled_fixtures_load(self):
        client = TrendsClient(mode="fixture")
        series = client.fetch_interest_over_time(make_key("maintenance"))
        assert max(series.values()) == 100.0
        table = client.fetch_interest_by_region(make_key("maintenance"))
        assert len(table.rows) == 51

    def test_series_batch_matches_individual(self, tmp_path):
        keys = []
        for i, word in enumerate(["one", "two", "three"]):
            write_fixture(tmp_path, {
                "keyword": word, "geo": "US", "context": "web",
                "timeframe_label": "Past 12 months",
                "raw_series": [["2025-01-05", 1 + i], ["2025-01-12", 4]],
            })
            keys.append(make_key(word))
        client = TrendsClient(mode="fixture", fixtures_dir=tmp_path)
        batch = client.fetch_series_batch(keys)
        for key in keys:
            assert batch[key.keyword].points == client.fetch_interest_over_time(key).points


class TestCache:
    def test_single_underlying_read(self, tmp_path):
        fixtures = tmp_path / "fx"
        write_fixture(fixtures, {
            "keyword": "auto", "geo": "US", "context": "web",
            "timeframe_label": "Past 12 months",
            "raw_series": [["2025-01-05", 1], ["2025-01-12", 2]],
        })
        client = TrendsClient(
            mode="fixture", fixtures_dir=fixtures,
            cache=TrendsCache(tmp_path / "cache"),
        )
        key = make_key("auto")
        first = client.fetch_interest_over_time(key)
        second = client.fetch_interest_over_time(key)
        assert first.points == second.points
        assert client.stats.source_reads == 1
        assert client.stats.cache_hits == 1

    def test_expired_entry_refetches(self, tmp_path):
        fixtures = tmp_path / "fx"
        write_fixture(fixtures, {
            "keyword": "auto", "geo": "US", "context": "web",
            "timeframe_label": "Past 12 months",
            "raw_series": [["2025-01-05", 1]],
        })
        cache = TrendsCache(tmp_path / "cache", ttl_hours=0.0)
        client = TrendsClient(mode="fixture", fixtures_dir=fixtures, cache=cache)
        key = make_key("auto")
        client.fetch_interest_over_time(key)
        time.sleep(0.01)
        client.fetch_interest_over_time(key)
        assert client.stats.source_reads == 2

    def test_torn_entry_treated_as_miss(self, tmp_path):
        cache = TrendsCache(tmp_path)
        key = make_key("auto")
        cache.put(key, "series", {"keyword": "auto", "points": []})
        path = next(tmp_path.glob("*.series.json"))
        path.write_text("{truncated")
        assert cache.get(key, "series") is None

    def test_separate_kinds_do_not_collide(self, tmp_path):
        cache = TrendsCache(tmp_path)
        key = make_key("auto")
        cache.put(key, "series", {"keyword": "auto", "points": [["2025-01-05", 100.0]]})
        cache.put(key, "regions", {"keyword": "auto", "rows": {"CA": 100.0}})
        assert cache.get(key, "series")["points"] == [["2025-01-05", 100.0]]
        assert cache.get(key, "regions")["rows"] == {"CA": 100.0}


class TestRateLimiter:
    def test_reject_policy_raises(self):
        limiter = RateLimiter(rate_per_sec=1000.0, policy="reject")
        limiter.acquire()
        with pytest.raises(QuotaExceeded):
            limiter.acquire()

    def test_wait_policy_spaces_requests(self):
        limiter = RateLimiter(rate_per_sec=50.0, policy="wait")
        start = time.monotonic()
        for _ in range(4):
            limiter.acquire()
        elapsed = time.monotonic() - start
        # four acquisitions at 50/s need at least three 20 ms gaps
        assert elapsed >= 0.055

    def test_rate_respected_under_threads(self):
        limiter = RateLimiter(rate_per_sec=100.0, policy="wait")
        stamps = []
        lock = threading.Lock()

        def worker():
            limiter.acquire()
            with lock:
                stamps.append(time.monotonic())

        threads = [threading.Thread(target=worker) for _ in range(8)]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        stamps.sort()
        # at 100/s, any 1-second window fits at most 100 starts; with 8
        # requests just check consecutive gaps respect the floor loosely
        gaps = [b - a for a, b in zip(stamps, stamps[1:])]
        assert all(g >= 0.005 for g in gaps)

    def test_invalid_config_rejected(self):
        with pytest.raises(ValueError):
            RateLimiter(rate_per_sec=0)
        with pytest.raises(ValueError):
            RateLimiter(policy="drop")


def test_write_fixture_round_trip(tmp_path):
    payload = {
        "keyword": "trend strength", "geo": "US", "context": "web",
        "timeframe_label": "Last five years",
        "raw_series": [["2025-01-05", 5]],
        "raw_regions": {"CA": 10},
    }
    path = write_fixture(tmp_path, payload)
    key = make_key("trend strength", timeframe="Last five years")
    assert path.name == f"{key.fingerprint()}.json"
    assert FixtureStore(tmp_path).load(key) == payload
