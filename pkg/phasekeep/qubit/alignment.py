"""Wave-front alignment formulas."""

from __future__ import annotations

import math


def alignment_signal(distance: float, misalignment: float, wavelength: float) -> float:
    """Brightness after shuttling by ``distance`` between two π/2 pulses.

    cos²(π·d·sin θε / λ'); 1 when the wave fronts are perpendicular to the
    trap axis.
    """
    if wavelength <= 0:
        raise ValueError("effective wavelength must be positive")
    return math.cos(math.pi * distance * math.sin(misalignment) / wavelength) ** 2


def misalignment_phase(delta_k: float, length: float, misalignment: float) -> float:
    """Motional phase difference Δk·l·sin θε across an ion chain of length ``length``."""
    if length < 0:
        raise ValueError("chain length must be non-negative")
    return delta_k * length * math.sin(misalignment)


def max_misalignment(delta_k: float, length: float, max_phase: float) -> float:
    """Largest θε (rad) keeping the phase variation over ``length`` below ``max_phase``.

    For 10° over 30 µm at Δk = 2π/250 nm this is about 0.0133°; the "< 0.02°"
    often quoted for that case is a rounded upper figure, not this bound.
    """
    if delta_k <= 0 or length <= 0:
        raise ValueError("delta_k and length must be positive")
    ratio = abs(max_phase) / (delta_k * length)
    return math.asin(min(ratio, 1.0))
