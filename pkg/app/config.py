"""
Application Settings

Typed settings for the engine, read from BROCCOLI_* environment variables
or a local .env file. CLI flags and request fields override them per run.
"""

from functools import lru_cache
import logging

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

from app.services.enumeration import (
    DEFAULT_DENOMINATOR_BOUND,
    DEFAULT_RETRY_BUDGET,
    DEFAULT_SPREAD,
)


class Settings(BaseSettings):
    """
    Engine configuration.

    Attributes:
        log_level: Root logging level
        spread: Numerators of random coordinates are drawn from [-spread, spread]
        denominator_bound: Denominators of random coordinates are drawn from [1, bound]
        retry_budget: Number of reseeded attempts before giving up on genericity
        workers: Worker processes for multi-seed runs (1 = in-process)
        relation_samples: Default number of samples for the relation fuzzer
        relation_max_entry: Default entry bound for relation samples
    """
    model_config = SettingsConfigDict(
        env_prefix="BROCCOLI_",
        env_file=".env",
        extra="ignore",
    )

    log_level: str = Field(default="INFO")
    spread: int = Field(default=DEFAULT_SPREAD, ge=1)
    denominator_bound: int = Field(default=DEFAULT_DENOMINATOR_BOUND, ge=1)
    retry_budget: int = Field(default=DEFAULT_RETRY_BUDGET, ge=1)
    workers: int = Field(default=1, ge=1)
    relation_samples: int = Field(default=1000, ge=1)
    relation_max_entry: int = Field(default=10, ge=1)

    def draw_options(self) -> dict[str, int]:
        """Keyword arguments for seeded configuration draws."""
        return {
            "spread": self.spread,
            "denominator_bound": self.denominator_bound,
            "retry_budget": self.retry_budget,
        }


@lru_cache
def get_settings() -> Settings:
    return Settings()


def configure_logging(level: str | None = None) -> None:
    """Configure root logging the same way for the API and the CLI."""
    logging.basicConfig(
        level=(level or get_settings().log_level).upper(),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    )
