"""Random streams and projective readout."""

from __future__ import annotations

import math

import numpy as np

# Stream families under one seed: scan points and auxiliary series (walks).
POINT_STREAM = 0
AUX_STREAM = 1


def point_rng(seed: int, index: int) -> np.random.Generator:
    """Independent generator for scan point ``index``."""
    return np.random.default_rng([seed, POINT_STREAM, index])


def aux_rng(seed: int, stream: int) -> np.random.Generator:
    """Generator for series shared across points, e.g. drift walks."""
    return np.random.default_rng([seed, AUX_STREAM, stream])


def readout_matrix(detection_error: float) -> np.ndarray:
    """4×4 map from true to observed two-qubit outcome probabilities."""
    e = detection_error
    single = np.array([[1 - e, e], [e, 1 - e]])
    return np.kron(single, single)


def measure(
    probabilities: np.ndarray,
    shots: int,
    rng: np.random.Generator,
    detection_error: float = 0.0,
    sample: bool = True,
) -> np.ndarray:
    """Estimated outcome frequencies for |00⟩, |01⟩, |10⟩, |11⟩.

    ``probabilities`` is either one row (every shot shares it) or one row per
    shot. With ``sample=False`` the exact expectation is returned.
    """
    rows = np.atleast_2d(np.asarray(probabilities, dtype=float))
    observed = rows @ readout_matrix(detection_error).T
    observed = np.clip(observed, 0.0, None)
    observed /= observed.sum(axis=1, keepdims=True)

    if not sample:
        return observed.mean(axis=0)
    if observed.shape[0] == 1:
        return rng.multinomial(shots, observed[0]) / shots
    if observed.shape[0] != shots:
        raise ValueError(f"Expected {shots} per-shot rows, got {observed.shape[0]}")
    cumulative = np.cumsum(observed, axis=1)
    draws = rng.random(shots)
    outcomes = np.minimum((draws[:, None] > cumulative).sum(axis=1), 3)
    return np.bincount(outcomes, minlength=4) / shots


def parity_of(frequencies: np.ndarray) -> float:
    return float(frequencies[0] + frequencies[3] - frequencies[1] - frequencies[2])


def parity_stderr(value: float, shots: int, sample: bool = True) -> float:
    return math.sqrt(max(1.0 - value**2, 0.0) / shots) if sample else 0.0


def excitation_of(frequencies: np.ndarray, qubit: int = 1) -> float:
    if qubit == 1:
        return float(frequencies[2] + frequencies[3])
    return float(frequencies[1] + frequencies[3])


def binomial_stderr(p: float, shots: int, sample: bool = True) -> float:
    """Standard error of a measured probability.

    Uses the smoothed estimate (k+1)/(N+2) so that 0 and 1 keep a finite
    error bar.
    """
    if not sample:
        return 0.0
    smoothed = (p * shots + 1) / (shots + 2)
    return math.sqrt(smoothed * (1 - smoothed) / shots)


def brightness(
    probability: float,
    shots: int,
    rng: np.random.Generator,
    detection_error: float = 0.0,
    sample: bool = True,
) -> float:
    """Single-ion bright probability after readout error."""
    observed = probability * (1 - detection_error) + (1 - probability) * detection_error
    if not sample:
        return observed
    return rng.binomial(shots, min(max(observed, 0.0), 1.0)) / shots
