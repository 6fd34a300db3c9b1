from typing import Literal

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Runtime settings loaded from environment variables."""

    # Environment
    environment: str = "development"
    debug: bool = False

    # Runs
    output_dir: str = "runs"
    log_every: int = 100
    default_seeds: int = 10
    max_workers: int | None = None

    # Time-to-goal clock; "null" writes 0.0 so replays are byte-identical
    tg_clock: Literal["wall", "null"] = "wall"

    # HTTP surface
    api_max_episodes: int = 200
    api_rate_limit: str = "10/minute"

    model_config = SettingsConfigDict(
        env_prefix="BRNES_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )


settings = Settings()
