"""Gate-phase bookkeeping for the two sideband beat-notes.

Each sideband beat-note imprints ½(Δk·X − Δφ) on ion ``i``, where Δk is the
wave-vector difference projected on the trap axis, X the ion position and
Δφ the rf phase difference of the two beams driving it. The spin phase is
φS = −(φrsb + φbsb), the motional phase φM = φrsb − φbsb, and the
entangled-state phase φG = φS,1 + φS,2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from pydantic import BaseModel, ConfigDict, Field


class Geometry(str, Enum):
    """Beam arrangement of the red and blue sideband beat-notes."""

    INSENSITIVE = "insensitive"  # Δk_r ≈ −Δk_b
    SENSITIVE = "sensitive"  # Δk_r ≈ +Δk_b


class BeamGeometry(BaseModel):
    """Wave-vector geometry of the Raman beams."""

    model_config = ConfigDict(frozen=True)

    geometry: Geometry = Geometry.INSENSITIVE
    delta_k: float = Field(..., gt=0, description="|Δk| in rad/m")
    positions: tuple[float, float] = Field(default=(0.0, 0.0), description="Ion positions X_i in m")
    misalignment: float = Field(default=0.0, description="θε in rad")

    @classmethod
    def from_wavelength(cls, wavelength: float, **kwargs) -> BeamGeometry:
        """Build from the effective wavelength λ' = 2π/Δk (m)."""
        if wavelength <= 0:
            raise ValueError("effective wavelength must be positive")
        return cls(delta_k=2 * math.pi / wavelength, **kwargs)

    @property
    def effective_wavelength(self) -> float:
        return 2 * math.pi / self.delta_k

    def axial_wavevectors(self) -> tuple[float, float]:
        """(Δk_r, Δk_b) projected on the trap axis."""
        projected = self.delta_k * math.sin(self.misalignment)
        if self.geometry is Geometry.INSENSITIVE:
            return projected, -projected
        return projected, projected


class RfPhases(BaseModel):
    """Phases of the AOM A drive and the two AOM B sideband tones (rad)."""

    model_config = ConfigDict(frozen=True)

    phase_a: float = Field(default=0.0, allow_inf_nan=False)
    phase_red: float = Field(default=0.0, allow_inf_nan=False)
    phase_blue: float = Field(default=0.0, allow_inf_nan=False)


class NoiseState(BaseModel):
    """Slow disturbances present during one gate."""

    model_config = ConfigDict(frozen=True)

    path_drift: float = Field(default=0.0, allow_inf_nan=False, description="δx in m")
    clock_offset: float = Field(default=0.0, allow_inf_nan=False, description="Reference phase in rad")


@dataclass(frozen=True)
class GatePhaseSet:
    """Per-ion sideband, spin and motional phases plus the gate phase."""

    geometry: Geometry
    red: tuple[float, float]
    blue: tuple[float, float]
    spin: tuple[float, float]
    motional: tuple[float, float]
    gate: float


def sideband_phases(
    geometry: BeamGeometry, rf: RfPhases, noise: NoiseState | None = None
) -> GatePhaseSet:
    """Phases imprinted by the red and blue sideband beat-notes.

    Path drift δx shifts the optical phase of both B beams by δφ = Δk·δx, and
    each per-ion sideband phase is half the beat-note phase it sees. In the
    insensitive geometry an ion's red phase moves by +δφ/2 and its blue phase
    by −δφ/2, so φG is unchanged. Booking the full shift on the sideband
    phases instead (red − δφ, blue + δφ) changes only the motional phase and
    gives the same φG. In the sensitive geometry both move by −δφ/2 and φG
    moves by 2δφ. The clock offset shifts all three rf phases alike.
    """
    noise = noise or NoiseState()
    drift = geometry.delta_k * noise.path_drift
    phase_a = rf.phase_a + noise.clock_offset
    phase_red = rf.phase_red + noise.clock_offset + drift
    phase_blue = rf.phase_blue + noise.clock_offset + drift

    if geometry.geometry is Geometry.INSENSITIVE:
        delta_red = phase_a - phase_red
    else:
        delta_red = phase_red - phase_a
    delta_blue = phase_blue - phase_a

    k_red, k_blue = geometry.axial_wavevectors()
    red = tuple(0.5 * (k_red * x - delta_red) for x in geometry.positions)
    blue = tuple(0.5 * (k_blue * x - delta_blue) for x in geometry.positions)
    spin = tuple(-(r + b) for r, b in zip(red, blue))
    motional = tuple(r - b for r, b in zip(red, blue))

    return GatePhaseSet(
        geometry=geometry.geometry,
        red=red,
        blue=blue,
        spin=spin,
        motional=motional,
        gate=spin[0] + spin[1],
    )


def gate_phase_from_rf(geometry: BeamGeometry, rf: RfPhases) -> float:
    """φG for the given rf phases with no drift.

    Insensitive: φB,b − φB,r (φA cancels). Sensitive: φB,r + φB,b − 2φA.
    Position terms add when the beams are misaligned.
    """
    return sideband_phases(geometry, rf).gate
