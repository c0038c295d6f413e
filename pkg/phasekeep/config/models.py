"""Configuration file models.

Frequencies are written in MHz (``*_mhz``), angles in degrees where a key
ends in ``_deg`` and radians otherwise. The ``to_*`` converters produce the
SI-unit models the rest of the package works with.
"""

from __future__ import annotations

import math
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator

from ..chain import (
    ChainGraph,
    CombSpec,
    DriftProfile,
    PresetId,
    PresetParams,
)
from ..experiments import AnalysisSource, NoiseSpec, ScenarioConfig, ScenarioId, SweepSpec
from ..planner import RESIDUAL_TOLERANCE, CoPropPlan, GatePlan, PlannerInput
from ..qubit import BeamGeometry, Geometry, RfPhases

SUPPORTED_VERSION = 1

MHZ = 1e6


class _Section(BaseModel):
    model_config = ConfigDict(extra="forbid")


class PlanSection(_Section):
    """Resonance-search inputs."""

    qubit_frequency_mhz: float = Field(..., gt=0, description="Qubit splitting ν0")
    mode_frequency_mhz: float = Field(default=0.0, ge=0, description="Motional mode να")
    detuning_mhz: float = Field(default=0.0, ge=0, description="Gate detuning δ")
    repetition_rate_mhz: float = Field(..., gt=0, description="Comb repetition rate νr")
    aom_a_frequencies_mhz: list[float] = Field(
        default_factory=list, description="Candidate AOM A drive frequencies"
    )
    aom_a_window_mhz: tuple[float, float] = Field(default=(60.0, 200.0))
    aom_b_window_mhz: tuple[float, float] = Field(default=(150.0, 180.0))
    aom_a_signs: list[Literal[1, -1]] = Field(default_factory=lambda: [1, -1])
    tooth_range: tuple[int, int] = Field(default=(1, 400), description="Inclusive tooth search")
    tolerance_hz: float = Field(default=RESIDUAL_TOLERANCE, gt=0)

    def to_planner_input(self) -> PlannerInput:
        return PlannerInput(
            qubit_frequency=self.qubit_frequency_mhz * MHZ,
            mode_frequency=self.mode_frequency_mhz * MHZ,
            detuning=self.detuning_mhz * MHZ,
            repetition_rate=self.repetition_rate_mhz * MHZ,
            aom_a_frequencies=tuple(f * MHZ for f in self.aom_a_frequencies_mhz),
            aom_a_window=(self.aom_a_window_mhz[0] * MHZ, self.aom_a_window_mhz[1] * MHZ),
            aom_b_window=(self.aom_b_window_mhz[0] * MHZ, self.aom_b_window_mhz[1] * MHZ),
            aom_a_signs=tuple(self.aom_a_signs),
            tooth_range=self.tooth_range,
            tolerance=self.tolerance_hz,
        )


class DriftSection(_Section):
    """Piecewise-constant repetition-rate offset."""

    times_s: list[float] = Field(default_factory=list)
    offsets_hz: list[float] = Field(default_factory=list)

    def to_profile(self) -> DriftProfile:
        return DriftProfile(times=tuple(self.times_s), offsets=tuple(self.offsets_hz))


class PhasesSection(_Section):
    """AOM A and sideband tone phases in rad."""

    a_rad: float = 0.0
    red_rad: float = 0.0
    blue_rad: float = 0.0

    def to_rf_phases(self) -> RfPhases:
        return RfPhases(phase_a=self.a_rad, phase_red=self.red_rad, phase_blue=self.blue_rad)


class ChainSection(_Section):
    """Which circuit to build around the chosen plan."""

    preset: PresetId = PresetId.THREE_PLL
    master_frequency_mhz: float = Field(..., gt=0, description="Master oscillator ν_MO")
    tooth_margin: int = Field(default=3, ge=0)
    capture_range_mhz: float = Field(default=1.0, gt=0)
    plan_index: int = Field(default=0, ge=0, description="Row of the sorted gate-plan table")
    copropagating: bool = Field(default=False, description="Also build the carrier path")
    comb_phase_rad: float = 0.0
    pll_phase_noise_rad: float = Field(default=0.0, ge=0)
    drift: DriftSection = Field(default_factory=DriftSection)
    phases: PhasesSection = Field(default_factory=PhasesSection)

    def to_preset_params(
        self,
        planner: PlannerInput,
        gate_plan: GatePlan,
        coprop_plan: CoPropPlan | None = None,
    ) -> PresetParams:
        return PresetParams(
            master_frequency=self.master_frequency_mhz * MHZ,
            planner=planner,
            gate_plan=gate_plan,
            coprop_plan=coprop_plan,
            comb=CombSpec(
                drift=self.drift.to_profile(),
                tooth_margin=self.tooth_margin,
                phase_offset=self.comb_phase_rad,
            ),
            phase_a=self.phases.a_rad,
            phase_red=self.phases.red_rad,
            phase_blue=self.phases.blue_rad,
            capture_range=self.capture_range_mhz * MHZ,
            pll_phase_noise_std=self.pll_phase_noise_rad,
        )


class GeometrySection(_Section):
    """Raman beam geometry."""

    kind: Geometry = Geometry.INSENSITIVE
    effective_wavelength_nm: float = Field(default=250.0, gt=0, description="λ' = 2π/Δk")
    ion_positions_um: tuple[float, float] = (0.0, 0.0)
    misalignment_deg: float = 0.0

    def to_beam_geometry(self) -> BeamGeometry:
        return BeamGeometry.from_wavelength(
            self.effective_wavelength_nm * 1e-9,
            geometry=self.kind,
            positions=(self.ion_positions_um[0] * 1e-6, self.ion_positions_um[1] * 1e-6),
            misalignment=math.radians(self.misalignment_deg),
        )


class NoiseSection(_Section):
    """Noise model; every source is off by default."""

    dephasing_time_s: float | None = Field(default=None, gt=0)
    path_drift_step_m: float = Field(default=0.0, ge=0, description="Random walk, m/√s")
    repetition_drift_step_hz: float = Field(default=0.0, ge=0, description="Random walk, Hz/√s")
    detection_error: float = Field(default=0.0, ge=0, le=1)
    contrast: float = Field(default=1.0, ge=0, le=1)
    random_phase_span_rad: float = Field(default=2 * math.pi, ge=0)
    random_phase_center_rad: float = 0.0
    random_phase_mode: Literal["per_shot", "per_point"] = "per_shot"

    def to_noise_spec(self) -> NoiseSpec:
        return NoiseSpec(
            dephasing_time=self.dephasing_time_s,
            path_drift_step=self.path_drift_step_m,
            repetition_drift_step=self.repetition_drift_step_hz,
            detection_error=self.detection_error,
            contrast=self.contrast,
            random_phase_span=self.random_phase_span_rad,
            random_phase_center=self.random_phase_center_rad,
            random_phase_mode=self.random_phase_mode,
        )


class SweepSection(_Section):
    name: str
    start: float
    stop: float
    points: int = Field(..., ge=2)


class ScenarioSection(_Section):
    """Scenario to run and its scan."""

    id: str = Field(..., description="Registered scenario id")
    sweep: SweepSection
    shots: int = Field(default=500, ge=1)
    seed: int = Field(default=0, ge=0, lt=2**64)
    analysis_source: AnalysisSource = AnalysisSource.MICROWAVE
    raman_offset_rad: float = 0.0
    fringe_offset_rad: float = 0.0
    microwave_phase_rad: float = 0.0
    rf: PhasesSection = Field(default_factory=PhasesSection)
    sample_shots: bool = True
    max_workers: int = Field(default=4, ge=1)
    sideband: Literal["red", "blue", "both"] = "red"
    inner_points: int = Field(default=24, ge=3)
    misalignments_deg: list[float] = Field(default_factory=lambda: [0.0])
    feed_forward: bool = True
    use_chain: bool = Field(default=False, description="Model beat-note drift through the chain")


class PhaseKeepConfig(BaseModel):
    """Root of a configuration file."""

    model_config = ConfigDict(extra="forbid")

    version: int = Field(default=SUPPORTED_VERSION, description="Schema version")
    plan: PlanSection | None = None
    chain: ChainSection | None = None
    geometry: GeometrySection = Field(default_factory=GeometrySection)
    noise: NoiseSection = Field(default_factory=NoiseSection)
    scenario: ScenarioSection | None = None

    @field_validator("version")
    @classmethod
    def _check_version(cls, value: int) -> int:
        if value < 1 or value > SUPPORTED_VERSION:
            raise ValueError(
                f"schema version {value} not supported (this release reads up to {SUPPORTED_VERSION})"
            )
        return value

    def to_scenario_config(
        self, seed: int | None = None, chain: ChainGraph | None = None
    ) -> ScenarioConfig:
        """Scenario section merged with the shared geometry and noise sections.

        Raises:
            ValueError: The file has no scenario section or names an unknown
                scenario id.
        """
        section = self.scenario
        if section is None:
            raise ValueError("config has no scenario section")
        return ScenarioConfig(
            scenario=ScenarioId(section.id),
            sweep=SweepSpec(**section.sweep.model_dump()),
            shots=section.shots,
            seed=section.seed if seed is None else seed,
            noise=self.noise.to_noise_spec(),
            beams=self.geometry.to_beam_geometry(),
            rf=section.rf.to_rf_phases(),
            analysis_source=section.analysis_source,
            raman_offset=section.raman_offset_rad,
            fringe_offset=section.fringe_offset_rad,
            microwave_phase=section.microwave_phase_rad,
            sample_shots=section.sample_shots,
            max_workers=section.max_workers,
            sideband=section.sideband,
            inner_points=section.inner_points,
            misalignments=tuple(math.radians(d) for d in section.misalignments_deg),
            feed_forward=section.feed_forward,
            chain=chain,
        )
