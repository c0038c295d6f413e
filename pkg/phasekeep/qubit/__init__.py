"""Two-qubit register, gate phases and alignment formulas."""

from .alignment import alignment_signal, max_misalignment, misalignment_phase
from .phases import (
    BeamGeometry,
    GatePhaseSet,
    Geometry,
    NoiseState,
    RfPhases,
    gate_phase_from_rf,
    sideband_phases,
)
from .state import (
    QubitError,
    QubitIndexError,
    StateNormError,
    TwoQubitState,
    excitation,
    ms_gate,
    ms_unitary,
    parity,
    rotate,
    rotate_both,
    rotation_matrix,
)

__all__ = [
    "BeamGeometry",
    "GatePhaseSet",
    "Geometry",
    "NoiseState",
    "QubitError",
    "QubitIndexError",
    "RfPhases",
    "StateNormError",
    "TwoQubitState",
    "alignment_signal",
    "excitation",
    "gate_phase_from_rf",
    "max_misalignment",
    "misalignment_phase",
    "ms_gate",
    "ms_unitary",
    "parity",
    "rotate",
    "rotate_both",
    "rotation_matrix",
    "sideband_phases",
]
