"""Scenario configuration and result models."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Literal

import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..chain import ChainGraph
from ..errors import PhaseKeepError
from ..qubit import BeamGeometry, Geometry, RfPhases

# 250 nm effective wavelength
DEFAULT_DELTA_K = 2 * math.pi / 250e-9


class ExperimentError(PhaseKeepError):
    """Base class for scenario and fitting errors."""

    pass


class ScenarioMismatchError(ExperimentError):
    """A scenario runner was handed another scenario's config."""

    pass


class DegenerateFitError(ExperimentError):
    """Not enough independent data to determine the fit parameters."""

    pass


class ScenarioId(str, Enum):
    """Registered scenarios."""

    RAMSEY = "ramsey"
    PHASE_FRINGE = "phase_fringe"
    PARITY_SCAN = "parity_scan"
    SIDEBAND_SHIFT = "sideband_shift"
    RANDOM_PHASE = "random_phase"
    STABILITY = "stability"
    ALIGNMENT = "alignment"


class AnalysisSource(str, Enum):
    """Which drive supplies the analysis π/2 pulse."""

    MICROWAVE = "microwave"
    RAMAN = "raman"


class SweepSpec(BaseModel):
    """Independent variable of a scan, in SI units or radians."""

    model_config = ConfigDict(frozen=True)

    name: str = Field(..., description="Column name, unit included (e.g. delay_s)")
    start: float
    stop: float
    points: int = Field(..., ge=2)

    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.points)


class NoiseSpec(BaseModel):
    """Noise and imperfection model shared by all scenarios."""

    model_config = ConfigDict(frozen=True)

    dephasing_time: float | None = Field(
        default=None, gt=0, description="1/e Ramsey coherence time τ in s; None disables"
    )
    path_drift_step: float = Field(
        default=0.0, ge=0, description="Path-length random walk in m/√s"
    )
    repetition_drift_step: float = Field(
        default=0.0, ge=0, description="Repetition-rate random walk in Hz/√s"
    )
    detection_error: float = Field(default=0.0, ge=0, le=1, description="Per-qubit readout flip")
    contrast: float = Field(default=1.0, ge=0, le=1, description="Parity contrast of the gate")
    random_phase_span: float = Field(
        default=2 * math.pi, ge=0, description="Width of the uniform random phase in rad"
    )
    random_phase_center: float = Field(default=0.0, description="Center of the random phase in rad")
    random_phase_mode: Literal["per_shot", "per_point"] = "per_shot"


class ScenarioConfig(BaseModel):
    """Everything one scenario run depends on."""

    model_config = ConfigDict(frozen=True)

    scenario: ScenarioId
    sweep: SweepSpec
    shots: int = Field(default=500, ge=1)
    seed: int = Field(default=0, ge=0, lt=2**64)
    noise: NoiseSpec = Field(default_factory=NoiseSpec)
    beams: BeamGeometry = Field(default_factory=lambda: BeamGeometry(delta_k=DEFAULT_DELTA_K))
    rf: RfPhases = Field(default_factory=RfPhases)
    analysis_source: AnalysisSource = AnalysisSource.MICROWAVE
    raman_offset: float = Field(default=0.0, description="Static offset φ' of Raman analysis, rad")
    fringe_offset: float = Field(default=0.0, description="Static Raman fringe offset, rad")
    microwave_phase: float = Field(default=0.0, description="First-pulse phase φµ, rad")
    sample_shots: bool = Field(default=True, description="False returns exact expectations")
    max_workers: int = Field(default=4, ge=1)

    # scenario-specific
    sideband: Literal["red", "blue", "both"] = "red"
    inner_points: int = Field(default=24, ge=3, description="Analysis phases per parity fit")
    misalignments: tuple[float, ...] = Field(default=(0.0,), description="θε values in rad")
    feed_forward: bool = True
    chain: ChainGraph | None = Field(default=None, description="Chain for drift monitoring")

    @model_validator(mode="after")
    def _check_sweep(self) -> ScenarioConfig:
        if self.scenario is ScenarioId.ALIGNMENT and not self.misalignments:
            raise ValueError("alignment scenario needs at least one misalignment")
        return self

    @property
    def geometry(self) -> Geometry:
        return self.beams.geometry


@dataclass(frozen=True)
class FitResult:
    """Outcome of a least-squares fit.

    Sinusoid fits fill amplitude, phase and offset; Gaussian-decay fits fill
    amplitude and decay_time; line fits fill slope and offset.
    """

    kind: Literal["sinusoid", "gaussian_decay", "line"]
    amplitude: float = 0.0
    phase: float = 0.0
    offset: float = 0.0
    decay_time: float | None = None
    slope: float | None = None
    residual_rms: float = 0.0
    phase_stderr: float | None = None
    points: int = 0

    def as_dict(self) -> dict:
        return {k: v for k, v in self.__dict__.items() if v is not None}


@dataclass
class RunResult:
    """Tabular record of one scenario sweep.

    ``table`` always starts with ``series``, the sweep column, ``mean`` and
    ``stderr``; further columns hold per-point noise draws.
    """

    scenario: ScenarioId
    seed: int
    sweep_name: str
    table: pd.DataFrame
    fits: dict[str, FitResult] = field(default_factory=dict)
    summary: dict[str, float] = field(default_factory=dict)

    def series(self, name: str) -> pd.DataFrame:
        return self.table[self.table["series"] == name]
