"""Two-ion qubit register: state vector, gates and parity.

Basis order is |00⟩, |01⟩, |10⟩, |11⟩ with qubit 1 the left (most
significant) label.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import PhaseKeepError

NORM_TOLERANCE = 1e-9

# Parity weight of each basis state.
PARITY_SIGNS = np.array([1.0, -1.0, -1.0, 1.0])


class QubitError(PhaseKeepError):
    """Base class for qubit-register errors."""

    pass


class StateNormError(QubitError):
    """State vector is not normalized."""

    pass


class QubitIndexError(QubitError):
    """Qubit index is not 1 or 2."""

    pass


@dataclass(frozen=True, eq=False)
class TwoQubitState:
    """Pure two-qubit state plus a classical parity-contrast factor.

    ``contrast`` scales every fringe read out from the state: outcome
    probabilities are mixed with the uniform distribution by ``1 − contrast``.
    """

    amplitudes: np.ndarray
    contrast: float = 1.0

    def __post_init__(self) -> None:
        amplitudes = np.array(self.amplitudes, dtype=np.complex128).reshape(-1)
        if amplitudes.shape != (4,):
            raise ValueError(f"Expected 4 amplitudes, got {amplitudes.shape[0]}")
        if not np.all(np.isfinite(amplitudes)):
            raise ValueError("Amplitudes must be finite")
        if not 0.0 <= self.contrast <= 1.0:
            raise ValueError(f"Contrast {self.contrast} outside [0, 1]")
        amplitudes.flags.writeable = False
        object.__setattr__(self, "amplitudes", amplitudes)

    @classmethod
    def basis(cls, label: str) -> TwoQubitState:
        """Computational basis state, e.g. ``"00"`` or ``"10"``."""
        if len(label) != 2 or set(label) - {"0", "1"}:
            raise ValueError(f"Invalid basis label: {label!r}")
        amplitudes = np.zeros(4, dtype=np.complex128)
        amplitudes[int(label, 2)] = 1.0
        return cls(amplitudes)

    @property
    def norm_squared(self) -> float:
        return float(np.vdot(self.amplitudes, self.amplitudes).real)

    def require_normalized(self) -> None:
        if abs(self.norm_squared - 1.0) > NORM_TOLERANCE:
            raise StateNormError(f"State norm² is {self.norm_squared}, expected 1")

    def probabilities(self) -> np.ndarray:
        """Outcome probabilities for |00⟩, |01⟩, |10⟩, |11⟩."""
        ideal = np.abs(self.amplitudes) ** 2
        return self.contrast * ideal + (1.0 - self.contrast) / 4.0

    def evolve(self, unitary: np.ndarray, contrast: float = 1.0) -> TwoQubitState:
        self.require_normalized()
        return TwoQubitState(unitary @ self.amplitudes, contrast=self.contrast * contrast)


def ms_unitary(phi_g: float) -> np.ndarray:
    """Maximally entangling Mølmer–Sørensen map with gate phase ``phi_g``."""
    e = np.exp(1j * phi_g)
    return np.array(
        [
            [1, 0, 0, -1j * e],
            [0, 1, -1j, 0],
            [0, -1j, 1, 0],
            [-1j / e, 0, 0, 1],
        ],
        dtype=np.complex128,
    ) / math.sqrt(2.0)


def ms_gate(state: TwoQubitState, phi_g: float, contrast: float = 1.0) -> TwoQubitState:
    """Apply the entangling gate; ``contrast`` multiplies the state's contrast.

    Raises:
        StateNormError: If ``state`` is not normalized.
    """
    if not 0.0 <= contrast <= 1.0:
        raise ValueError(f"Contrast {contrast} outside [0, 1]")
    return state.evolve(ms_unitary(phi_g), contrast)


def rotation_matrix(theta: float, phi: float) -> np.ndarray:
    """Single-qubit R(θ, φ) = cos(θ/2)·I − i·sin(θ/2)·(cos φ·σx + sin φ·σy)."""
    c = math.cos(theta / 2)
    s = math.sin(theta / 2)
    return np.array(
        [
            [c, -1j * np.exp(-1j * phi) * s],
            [-1j * np.exp(1j * phi) * s, c],
        ],
        dtype=np.complex128,
    )


_IDENTITY = np.eye(2, dtype=np.complex128)


def rotate(state: TwoQubitState, qubit: int, theta: float, phi: float) -> TwoQubitState:
    """Carrier rotation R(θ, φ) on one qubit.

    Raises:
        QubitIndexError: If ``qubit`` is not 1 or 2.
        StateNormError: If ``state`` is not normalized.
    """
    r = rotation_matrix(theta, phi)
    if qubit == 1:
        unitary = np.kron(r, _IDENTITY)
    elif qubit == 2:
        unitary = np.kron(_IDENTITY, r)
    else:
        raise QubitIndexError(f"Qubit index must be 1 or 2, got {qubit}")
    return state.evolve(unitary)


def rotate_both(state: TwoQubitState, theta: float, phi: float) -> TwoQubitState:
    """The same rotation on both qubits (global analysis pulse)."""
    r = rotation_matrix(theta, phi)
    return state.evolve(np.kron(r, r))


def parity(state: TwoQubitState) -> float:
    """P(00) + P(11) − P(01) − P(10), including the contrast factor."""
    return float(PARITY_SIGNS @ state.probabilities())


def excitation(state: TwoQubitState, qubit: int = 1) -> float:
    """Probability of reading qubit ``qubit`` in |1⟩."""
    probs = state.probabilities()
    if qubit == 1:
        return float(probs[2] + probs[3])
    if qubit == 2:
        return float(probs[1] + probs[3])
    raise QubitIndexError(f"Qubit index must be 1 or 2, got {qubit}")
