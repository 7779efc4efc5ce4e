"""Configuration management for the Leibniz toolkit."""
from __future__ import annotations

import dataclasses
import logging
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Optional

try:  # Python 3.11+
    import tomllib  # type: ignore
except ModuleNotFoundError:  # pragma: no cover - fallback for older interpreters
    import tomli as tomllib  # type: ignore

import tomli_w

LOGGER = logging.getLogger(__name__)

APP_DIR = Path(os.environ.get("LEIBNIZ_KIT_HOME", Path.home() / ".local" / "share" / "LeibnizKit"))
CONFIG_PATH = APP_DIR / "config.toml"
LOG_DIR = APP_DIR / "logs"
REPORT_FORMATS = {"text", "json"}


class ConfigError(ValueError):
    """Raised when a configuration file cannot be parsed."""


@dataclass
class Config:
    """Run defaults persisted to TOML; command-line flags override them per run."""

    max_dim: int = 24
    seed: int = 0
    trials: int = 20
    sample_attempts: int = 64
    log_level: str = "INFO"
    report_format: str = "text"
    corpus_dir: Optional[str] = None

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "max_dim": int(self.max_dim),
            "seed": int(self.seed),
            "trials": int(self.trials),
            "sample_attempts": int(self.sample_attempts),
            "log_level": self.log_level,
            "report_format": self.report_format,
        }
        # TOML has no null
        if self.corpus_dir:
            data["corpus_dir"] = str(self.corpus_dir)
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Config":
        report_format = str(data.get("report_format", "text")).lower()
        if report_format not in REPORT_FORMATS:
            LOGGER.warning("Unknown report_format %r; using text", report_format)
            report_format = "text"
        corpus_dir = data.get("corpus_dir")
        return cls(
            max_dim=max(1, int(data.get("max_dim", 24))),
            seed=int(data.get("seed", 0)),
            trials=max(1, int(data.get("trials", 20))),
            sample_attempts=max(1, int(data.get("sample_attempts", 64))),
            log_level=str(data.get("log_level", "INFO")).upper(),
            report_format=report_format,
            corpus_dir=str(corpus_dir) if corpus_dir else None,
        )


DEFAULT_CONFIG = Config()


class ConfigManager:
    """Loads and saves the configuration file, creating it on first use."""

    def __init__(self, config_path: Path | None = None) -> None:
        self.config_path = Path(config_path) if config_path else CONFIG_PATH

    @property
    def log_dir(self) -> Path:
        return self.config_path.parent / "logs"

    def ensure_directories(self) -> None:
        for path in {self.config_path.parent, self.log_dir}:
            path.mkdir(parents=True, exist_ok=True)

    def load(self) -> Config:
        if not self.config_path.exists():
            LOGGER.info("Config file not found, creating default configuration at %s", self.config_path)
            self.save(DEFAULT_CONFIG)
            return dataclasses.replace(DEFAULT_CONFIG)
        try:
            with self.config_path.open("rb") as fh:
                raw = tomllib.load(fh)
            return Config.from_dict(raw)
        except (tomllib.TOMLDecodeError, TypeError, ValueError) as exc:
            raise ConfigError(f"invalid configuration in {self.config_path}: {exc}") from exc

    def save(self, config: Config) -> None:
        self.ensure_directories()
        with self.config_path.open("wb") as fh:
            tomli_w.dump(config.to_dict(), fh)
