"""Application settings for regusolve."""

from pathlib import Path
from typing import Any, Dict, Union

from dotenv import dotenv_values
from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Runtime settings, overridable through REGUSOLVE_* environment variables or .env."""

    model_config = SettingsConfigDict(
        env_prefix="REGUSOLVE_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    # Directories
    results_dir: str = "results"
    logs_dir: str = "logs"
    log_level: str = "INFO"

    # Experiment defaults
    default_sample_size: int = Field(default=50, ge=1)
    default_delta: float = Field(default=1e-4, ge=0.0)
    default_repetitions: int = Field(default=10, ge=1)
    default_seed_noise: int = 42
    default_seed_sketch: int = 7

    # Parameter-choice grid
    grid_points: int = Field(default=300, ge=3)
    grid_lower_ratio: float = Field(default=1e-10, gt=0.0)
    grid_upper_ratio: float = Field(default=10.0, gt=0.0)
    discrepancy_tau: float = Field(default=1.0, gt=0.0)

    # Runner
    max_workers: int = Field(default=1, ge=1)


def load_key_value_file(path: Union[str, Path]) -> Dict[str, Any]:
    """Read a key=value config file (dotenv syntax) into a dict of strings.

    Keys are normalized so that ``sample-size`` and ``sample_size`` agree.
    A line without ``=`` is rejected.
    """
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"Config file not found: {path}")
    values: Dict[str, Any] = {}
    for key, value in dotenv_values(path, interpolate=False, encoding="utf-8").items():
        if value is None:
            raise ValueError(f"Invalid config entry {key!r} in {path}: expected key=value")
        values[key.strip().replace("-", "_")] = value.strip()
    return values


settings = Settings()
