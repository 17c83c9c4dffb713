import json
from pathlib import Path

import pytest

from idealize.trends_client import Context, QueryKey, Timeframe

DATA = Path(__file__).parent / "data"
GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture(scope="session")
def idea_text_1() -> str:
    return (DATA / "idea_text_1.txt").read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def idea_text_2() -> str:
    return (DATA / "idea_text_2.txt").read_text(encoding="utf-8")


def make_key(keyword: str, geo: str = "US", context: str = "web",
             timeframe: str = "Past 12 months") -> QueryKey:
    return QueryKey(
        keyword=keyword,
        geo=geo,
        context=Context(context),
        timeframe=Timeframe.from_label(timeframe),
    )


def write_json(path: Path, obj) -> Path:
    path.write_text(json.dumps(obj), encoding="utf-8")
    return path
