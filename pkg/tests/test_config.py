from __future__ import annotations

import pytest

from lamplighter.config import Config, get_config
from lamplighter.errors import ResourceLimit


@pytest.fixture
def temp_config(tmp_path, monkeypatch) -> Config:
    monkeypatch.setenv("LAMPLIGHTER_ENUMERATION_BUDGET", "5_000")
    monkeypatch.setenv("LAMPLIGHTER_SEED", "42")
    monkeypatch.setenv("LAMPLIGHTER_WORKERS", "0")
    monkeypatch.setenv("LAMPLIGHTER_ORACLE_SAMPLES", "lots")
    monkeypatch.setenv("LAMPLIGHTER_OUTPUT_DIR", str(tmp_path / "reports"))
    return Config.from_env()


def test_config_reads_environment(temp_config: Config, tmp_path):
    assert temp_config.enumeration_budget == 5000
    assert temp_config.seed == 42
    assert temp_config.workers == 1
    assert temp_config.oracle_samples == 200
    assert temp_config.order_cap == 4096
    assert temp_config.output_dir == tmp_path / "reports"


def test_config_directories_created(temp_config: Config):
    temp_config.ensure_directories()
    assert temp_config.output_dir.exists()


def test_check_budget(temp_config: Config):
    temp_config.check_budget(5000, "elements")
    with pytest.raises(ResourceLimit):
        temp_config.check_budget(5001, "elements")
    temp_config.check_budget(10_000, "elements", budget=20_000)


def test_get_config_is_cached():
    assert get_config() is get_config()
