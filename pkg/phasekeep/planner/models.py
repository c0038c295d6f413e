"""Frequency-plan models."""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, model_validator

# Residuals below this are treated as exact resonance (Hz).
RESIDUAL_TOLERANCE = 1e-3


class PlannerInput(BaseModel):
    """Everything the resonance search needs. All frequencies in Hz."""

    model_config = ConfigDict(frozen=True)

    qubit_frequency: float = Field(..., gt=0, description="Qubit splitting ν0")
    mode_frequency: float = Field(default=0.0, ge=0, description="Motional mode frequency να")
    detuning: float = Field(default=0.0, ge=0, description="Gate detuning δ")
    repetition_rate: float = Field(..., gt=0, description="Comb repetition rate νr")
    aom_a_frequencies: tuple[float, ...] = Field(
        default=(), description="Candidate AOM A drive frequencies νA"
    )
    aom_a_window: tuple[float, float] = Field(default=(60e6, 200e6))
    aom_b_window: tuple[float, float] = Field(default=(150e6, 180e6))
    aom_a_signs: tuple[Literal[1, -1], ...] = Field(
        default=(1, -1), description="Allowed AOM A diffraction signs sA"
    )
    tooth_range: tuple[int, int] = Field(default=(1, 400), description="Inclusive search range")
    tolerance: float = Field(default=RESIDUAL_TOLERANCE, gt=0)

    @model_validator(mode="after")
    def _check_intervals(self) -> PlannerInput:
        for label, (lo, hi) in (
            ("aom_a_window", self.aom_a_window),
            ("aom_b_window", self.aom_b_window),
            ("tooth_range", self.tooth_range),
        ):
            if lo > hi:
                raise ValueError(f"{label} is empty: [{lo}, {hi}]")
        if not self.aom_a_signs:
            raise ValueError("aom_a_signs must allow at least one sign")
        return self

    @property
    def red_target(self) -> float:
        """ν0 − να + δ, the red-sideband beat-note."""
        return self.qubit_frequency - self.mode_frequency + self.detuning

    @property
    def blue_target(self) -> float:
        """ν0 + να − δ, the blue-sideband beat-note."""
        return self.qubit_frequency + self.mode_frequency - self.detuning

    @property
    def aom_b_center(self) -> float:
        return (self.aom_b_window[0] + self.aom_b_window[1]) / 2


class GatePlan(BaseModel):
    """Tooth pair and AOM drives for a two-sideband entangling gate."""

    model_config = ConfigDict(frozen=True)

    n: int = Field(..., description="Red-sideband comb tooth")
    m: int = Field(..., description="Blue-sideband comb tooth")
    aom_a_sign: Literal[1, -1]
    nu_a: float = Field(..., description="AOM A drive in Hz")
    nu_b_red: float = Field(..., description="AOM B red-sideband drive in Hz")
    nu_b_blue: float = Field(..., description="AOM B blue-sideband drive in Hz")
    residual_red: float = 0.0
    residual_blue: float = 0.0
    merit: float = Field(default=0.0, description="Total distance of B tones from center, Hz")

    @property
    def single_tooth(self) -> bool:
        return self.n == self.m


class CoPropPlan(BaseModel):
    """Comb tooth and AOM B tone pair for a copropagating carrier transition."""

    model_config = ConfigDict(frozen=True)

    p: int
    nu_b1: float = Field(..., description="Absorbed AOM B tone in Hz")
    nu_b2: float = Field(..., description="Emitted AOM B tone in Hz")
    residual: float = 0.0
    merit: float = 0.0

    @property
    def gap(self) -> float:
        return self.nu_b1 - self.nu_b2


class PlanDiagnostics(BaseModel):
    """Why a search came back empty, and how close it got."""

    nearest_tooth: int | None = None
    nearest_pair: tuple[int, int] | None = None
    required_gap: float | None = Field(default=None, description="Tone gap the nearest tooth needs")
    violations: list[str] = Field(default_factory=list)


class PlanReport(BaseModel):
    """Independent recomputation of a plan's resonance residuals."""

    residuals: tuple[float, ...]
    window_violations: list[str] = Field(default_factory=list)
    tolerance: float = RESIDUAL_TOLERANCE

    @property
    def within_tolerance(self) -> bool:
        return all(abs(r) < self.tolerance for r in self.residuals)

    @property
    def ok(self) -> bool:
        return self.within_tolerance and not self.window_violations


class PlanList(list):
    """Search result: the sorted plans, plus diagnostics when nothing fit."""

    def __init__(self, plans=(), diagnostics: PlanDiagnostics | None = None):
        super().__init__(plans)
        self.diagnostics = diagnostics
