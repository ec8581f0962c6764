from __future__ import annotations

"""Configuration helpers for the lamplighter toolkit."""

import logging
import os
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Optional, Tuple

from dotenv import load_dotenv

from .errors import ResourceLimit

logger = logging.getLogger(__name__)

# Load .env either from project root or current working directory.
_ENV_PATH_CANDIDATES: Tuple[Path, ...] = (
    Path(__file__).resolve().parents[2] / ".env",
    Path.cwd() / ".env",
)
for candidate in _ENV_PATH_CANDIDATES:
    if candidate.exists():
        load_dotenv(candidate)
        break
else:
    load_dotenv()


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name, "").strip()
    if not raw:
        return default
    try:
        return int(raw.replace("_", ""))
    except ValueError:
        logger.warning("⚠️ Ignoring non-integer %s=%r, using %d", name, raw, default)
        return default


@dataclass(frozen=True)
class Config:
    """Container for runtime configuration."""

    enumeration_budget: int
    seed: int
    workers: int
    order_cap: int
    oracle_samples: int
    output_dir: Path

    @staticmethod
    def from_env() -> "Config":
        """Build a :class:`Config` from environment variables."""

        return Config(
            enumeration_budget=_env_int("LAMPLIGHTER_ENUMERATION_BUDGET", 1_000_000),
            seed=_env_int("LAMPLIGHTER_SEED", 0),
            workers=max(1, _env_int("LAMPLIGHTER_WORKERS", 4)),
            order_cap=_env_int("LAMPLIGHTER_ORDER_CAP", 4096),
            oracle_samples=_env_int("LAMPLIGHTER_ORACLE_SAMPLES", 200),
            output_dir=Path(os.getenv("LAMPLIGHTER_OUTPUT_DIR", "out")).expanduser(),
        )

    def ensure_directories(self) -> None:
        """Ensure the report directory exists."""

        if not self.output_dir.exists():
            logger.info("📁 Creating directory: %s", self.output_dir)
            self.output_dir.mkdir(parents=True, exist_ok=True)

    def check_budget(self, count: int, what: str, budget: Optional[int] = None) -> None:
        """Raise :class:`ResourceLimit` when ``count`` objects exceed the budget."""

        limit = self.enumeration_budget if budget is None else budget
        if count > limit:
            raise ResourceLimit(f"{what}: {count} objects exceed the enumeration budget of {limit}")


@lru_cache(maxsize=1)
def get_config() -> Config:
    """Return a cached :class:`Config` instance."""
    return Config.from_env()


__all__ = ["Config", "get_config"]
