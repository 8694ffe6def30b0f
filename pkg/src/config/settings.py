"""Toolkit configuration using Pydantic Settings."""

from functools import lru_cache

from pydantic import Field
from pydantic_settings import (
    BaseSettings,
    PydanticBaseSettingsSource,
    SettingsConfigDict,
)


class Settings(BaseSettings):
    """Toolkit settings.

    Values come only from constructor keywords, which the CLI fills from its
    flags. Environment variables and dotenv files are never consulted.
    """

    model_config = SettingsConfigDict(case_sensitive=False, frozen=True)

    # Application
    app_name: str = "xlbench"
    app_version: str = "0.1.0"

    # Logging
    log_level: str = "INFO"
    log_format: str = "json"  # 'json' for pipelines, 'console' for humans

    # Instance generation
    grid_size: int = Field(default=1000, ge=1, le=1000)
    cluster_decay: float = Field(default=40.0, gt=0)
    max_candidates_per_point: int = Field(default=1_000_000, ge=1)
    sl_small_fraction_min: float = Field(default=0.70, ge=0, le=1)
    sl_small_fraction_max: float = Field(default=0.95, ge=0, le=1)

    # Bin packing
    binpack_time_limit: float = Field(default=60.0, gt=0)

    # Baseline solver
    solver_time_limit: float = Field(default=60.0, gt=0)
    neighbor_k: int = Field(default=20, ge=1)
    perturbation_moves: int = Field(default=6, ge=1)

    # Challenge
    challenge_horizon: float = Field(default=30.0, gt=0)
    challenge_bonus: float = Field(default=5.0, ge=0)

    # Reporting
    report_decimals: int = Field(default=3, ge=0)

    @classmethod
    def settings_customise_sources(
        cls,
        settings_cls: type[BaseSettings],
        init_settings: PydanticBaseSettingsSource,
        env_settings: PydanticBaseSettingsSource,
        dotenv_settings: PydanticBaseSettingsSource,
        file_secret_settings: PydanticBaseSettingsSource,
    ) -> tuple[PydanticBaseSettingsSource, ...]:
        """Restrict configuration to explicit keyword arguments."""
        return (init_settings,)


@lru_cache
def get_settings() -> Settings:
    """Get cached settings instance."""
    return Settings()
