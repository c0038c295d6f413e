"""Bell-state fidelity from populations and parity contrast."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class FidelityBudget:
    populations: float  # P(00) + P(11)
    parity_amplitude: float
    fidelity: float


def fidelity_from_measurements(populations: float, parity_amplitude: float) -> float:
    """F = ½(P00 + P11) + ½A for a target state (|00⟩ + e^{iφ}|11⟩)/√2."""
    if not 0.0 <= populations <= 1.0:
        raise ValueError(f"populations {populations} outside [0, 1]")
    if not 0.0 <= parity_amplitude <= 1.0:
        raise ValueError(f"parity amplitude {parity_amplitude} outside [0, 1]")
    return 0.5 * populations + 0.5 * parity_amplitude


def error_budget(thermal_error: float, detection_error: float) -> FidelityBudget:
    """Fidelity estimate from a thermal-motion error and a detection error.

    Thermal error reduces both ions' target populations, so
    P00 + P11 = (1 − ε_th)². Both errors reduce the parity amplitude,
    A = (1 − ε_th)(1 − ε_det).
    """
    for label, value in (("thermal", thermal_error), ("detection", detection_error)):
        if not 0.0 <= value <= 0.5:
            raise ValueError(f"{label} error {value} outside [0, 0.5]")
    populations = (1.0 - thermal_error) ** 2
    amplitude = (1.0 - thermal_error) * (1.0 - detection_error)
    return FidelityBudget(
        populations=populations,
        parity_amplitude=amplitude,
        fidelity=fidelity_from_measurements(populations, amplitude),
    )
