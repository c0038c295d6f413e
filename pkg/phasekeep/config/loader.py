"""Configuration file loader and writer."""

from __future__ import annotations

import hashlib
import logging
from pathlib import Path

import yaml
from pydantic import ValidationError

from ..errors import PhaseKeepError
from .models import PhaseKeepConfig

logger = logging.getLogger(__name__)


class ConfigError(PhaseKeepError):
    """Unreadable or invalid configuration file.

    Carries the YAML line number for syntax errors, or the dotted field path
    for values that fail validation.
    """

    def __init__(self, message: str, line: int | None = None, field: str | None = None):
        self.line = line
        self.field = field
        super().__init__(message)

    def __str__(self) -> str:
        message = super().__str__()
        if self.line is not None:
            return f"line {self.line}: {message}"
        if self.field is not None:
            return f"{self.field}: {message}"
        return message


def _field_path(loc: tuple) -> str:
    return ".".join(str(part) for part in loc)


class ConfigLoader:
    """Load and save a phasekeep configuration file."""

    def __init__(self, path: Path | str):
        """Initialize config loader.

        Args:
            path: YAML configuration file.
        """
        self._path = Path(path)

    @property
    def path(self) -> Path:
        return self._path

    def load(self) -> PhaseKeepConfig:
        """Parse and validate the configuration file.

        Returns:
            Validated configuration.

        Raises:
            ConfigError: File missing, YAML syntax error (with line number) or
                invalid value (with field path).
        """
        try:
            with open(self._path, encoding="utf-8") as f:
                data = yaml.safe_load(f)
        except OSError as e:
            raise ConfigError(f"cannot read {self._path}: {e.strerror}") from e
        except yaml.MarkedYAMLError as e:
            line = e.problem_mark.line + 1 if e.problem_mark is not None else None
            raise ConfigError(f"YAML syntax error: {e.problem}", line=line) from e
        except yaml.YAMLError as e:
            raise ConfigError(f"YAML error: {e}") from e

        if data is None:
            data = {}
        if not isinstance(data, dict):
            raise ConfigError("top level must be a mapping of sections", line=1)

        try:
            config = PhaseKeepConfig.model_validate(data)
        except ValidationError as e:
            first = e.errors()[0]
            raise ConfigError(first["msg"], field=_field_path(first["loc"])) from e

        logger.info(f"Loaded config from: {self._path}")
        return config

    def save(self, config: PhaseKeepConfig, path: Path | str | None = None) -> Path:
        """Write ``config`` as YAML.

        Args:
            config: Configuration to save.
            path: Target file. If None, overwrites the loader's path.

        Returns:
            Path where config was saved.
        """
        target = Path(path) if path is not None else self._path
        data = config.model_dump(mode="json", exclude_none=True)

        with open(target, "w", encoding="utf-8") as f:
            yaml.dump(
                data,
                f,
                default_flow_style=False,
                sort_keys=False,
                allow_unicode=True,
            )

        logger.info(f"Saved config to: {target}")
        return target


def load_config(path: Path | str) -> PhaseKeepConfig:
    """Load configuration from ``path``.

    Convenience function that creates a ConfigLoader and loads config.
    """
    return ConfigLoader(path).load()


def config_digest(path: Path | str) -> str:
    """SHA-256 of the configuration file bytes."""
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()
