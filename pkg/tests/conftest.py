from __future__ import annotations

import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parents[1]
SRC = ROOT / "src"
if str(SRC) not in sys.path:
    sys.path.insert(0, str(SRC))

from lamplighter.config import get_config  # noqa: E402
from lamplighter.ring import make_galois_ring, parse_ring_spec  # noqa: E402
from lamplighter.series import SeriesParams  # noqa: E402

GOLDEN = ROOT / "tests" / "golden"


def make_params(ring: str, r: str, a: str, b: str) -> SeriesParams:
    return SeriesParams.parse(parse_ring_spec(ring), r, a, b)


@pytest.fixture(autouse=True)
def isolated_config(tmp_path, monkeypatch):
    for name in (
        "LAMPLIGHTER_ENUMERATION_BUDGET",
        "LAMPLIGHTER_SEED",
        "LAMPLIGHTER_WORKERS",
        "LAMPLIGHTER_ORDER_CAP",
        "LAMPLIGHTER_ORACLE_SAMPLES",
    ):
        monkeypatch.delenv(name, raising=False)
    monkeypatch.setenv("LAMPLIGHTER_OUTPUT_DIR", str(tmp_path / "out"))
    get_config.cache_clear()
    yield
    get_config.cache_clear()


@pytest.fixture
def bireversible_params() -> SeriesParams:
    return make_params("zmod:3", "2", "2", "1")


@pytest.fixture
def nonreversible_params() -> SeriesParams:
    return make_params("zmod:6", "1", "3", "2")


@pytest.fixture
def zmod9_params() -> SeriesParams:
    return make_params("zmod:9", "2", "1", "2")


@pytest.fixture
def gr4_params() -> SeriesParams:
    return SeriesParams.parse(make_galois_ring(2, 2, 2), "1", "1", "2+z")


@pytest.fixture
def degenerate_params() -> SeriesParams:
    return make_params("zmod:4", "1", "2", "0")


@pytest.fixture
def golden():
    def _read(name: str) -> str:
        return (GOLDEN / name).read_text(encoding="utf-8")

    return _read
