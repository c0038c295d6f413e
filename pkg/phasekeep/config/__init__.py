"""Configuration module."""

from .loader import ConfigError, ConfigLoader, config_digest, load_config
from .models import (
    SUPPORTED_VERSION,
    ChainSection,
    DriftSection,
    GeometrySection,
    NoiseSection,
    PhaseKeepConfig,
    PhasesSection,
    PlanSection,
    ScenarioSection,
    SweepSection,
)

__all__ = [
    "SUPPORTED_VERSION",
    "ChainSection",
    "ConfigError",
    "ConfigLoader",
    "DriftSection",
    "GeometrySection",
    "NoiseSection",
    "PhaseKeepConfig",
    "PhasesSection",
    "PlanSection",
    "ScenarioSection",
    "SweepSection",
    "config_digest",
    "load_config",
]
