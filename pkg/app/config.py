"""Application configuration using pydantic-settings.

Values come from the environment or a .env file. Only output_format changes
what the CLI prints; the rest tune logging and resource use.
"""

from functools import lru_cache
from typing import Literal

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from app.intersection.oracle import MAX_ORACLE_GENUS


class Settings(BaseSettings):
    """Settings loaded from QUOTPAIRS_* environment variables."""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        env_prefix="QUOTPAIRS_",
        case_sensitive=False,
        extra="ignore",
    )

    output_format: Literal["text", "json"] = Field(
        default="text", description="Default CLI output format"
    )
    log_level: str = Field(default="WARNING", description="structlog level, written to stderr")
    max_workers: int = Field(default=4, ge=1, description="Thread pool size for --parallel")
    oracle_max_genus: int = Field(
        default=MAX_ORACLE_GENUS, description="Largest genus the oracle sweep may reach"
    )
    app_name: str = Field(default="quotpairs", description="Application name")

    @field_validator("oracle_max_genus")
    @classmethod
    def _cap_oracle_genus(cls, v: int) -> int:
        if not 0 <= v <= MAX_ORACLE_GENUS:
            raise ValueError(f"oracle_max_genus must lie in [0, {MAX_ORACLE_GENUS}]")
        return v

    @field_validator("log_level")
    @classmethod
    def _upper_level(cls, v: str) -> str:
        return v.upper()


@lru_cache()
def get_settings() -> Settings:
    """Cached settings instance, built on first access."""
    return Settings()
