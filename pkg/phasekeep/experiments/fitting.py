"""Least-squares fits for fringes, decays and slopes."""

from __future__ import annotations

import logging
import math

import numpy as np

from .models import DegenerateFitError, FitResult

logger = logging.getLogger(__name__)


def wrap_phase(phase: float) -> float:
    """Wrap to (−π, π]."""
    wrapped = math.remainder(phase, 2 * math.pi)
    return math.pi if wrapped == -math.pi else wrapped


def _as_arrays(x, y) -> tuple[np.ndarray, np.ndarray]:
    x = np.asarray(x, dtype=float).reshape(-1)
    y = np.asarray(y, dtype=float).reshape(-1)
    if x.shape != y.shape:
        raise ValueError(f"x and y lengths differ: {x.size} vs {y.size}")
    return x, y


def fit_sinusoid(x, y, omega: float = 1.0, sigma=None) -> FitResult:
    """Fit y = offset + A·cos(ω·x + phase).

    Linear least squares on {1, cos ωx, sin ωx}; with coefficients (o, c, s),
    A = √(c² + s²) and phase = atan2(−s, c), wrapped to (−π, π].

    Args:
        x: Scan values.
        y: Observations.
        omega: Known angular frequency (1 for fringes, 2 for parity scans).
        sigma: Optional per-point standard errors for weighting.

    Raises:
        DegenerateFitError: Fewer than 3 points or a rank-deficient design.
    """
    x, y = _as_arrays(x, y)
    if x.size < 3:
        raise DegenerateFitError(f"Sinusoid fit needs at least 3 points, got {x.size}")

    design = np.column_stack([np.ones_like(x), np.cos(omega * x), np.sin(omega * x)])
    weights = np.ones_like(y) if sigma is None else 1.0 / np.maximum(np.asarray(sigma, float), 1e-12)
    coef, _, rank, _ = np.linalg.lstsq(design * weights[:, None], y * weights, rcond=None)
    if rank < 3:
        raise DegenerateFitError(f"Sinusoid design has rank {rank} (x values not spread)")

    offset, c, s = (float(v) for v in coef)
    amplitude = math.hypot(c, s)
    residual = y - design @ coef
    rms = float(np.sqrt(np.mean(residual**2)))
    phase_stderr = rms * math.sqrt(2.0 / x.size) / amplitude if amplitude > 0 else None
    return FitResult(
        kind="sinusoid",
        amplitude=amplitude,
        phase=wrap_phase(math.atan2(-s, c)),
        offset=offset,
        residual_rms=rms,
        phase_stderr=phase_stderr,
        points=int(x.size),
    )


def fit_gaussian_decay(t, y, sigma=None) -> FitResult:
    """Fit y = c·exp(−(t/τ)²) on log-transformed data.

    Weights follow the delta method, var(log y) = var(y)/y². Non-positive
    observations are dropped with a warning.

    Raises:
        DegenerateFitError: If fewer than three usable points remain, or they
            share one delay.
    """
    t, y = _as_arrays(t, y)
    sigma = np.ones_like(y) if sigma is None else np.asarray(sigma, dtype=float).reshape(-1)
    keep = y > 0
    if not np.all(keep):
        logger.warning(f"Gaussian decay fit: dropped {int(np.sum(~keep))} non-positive point(s)")
    t, y, sigma = t[keep], y[keep], sigma[keep]
    if t.size == 0:
        raise DegenerateFitError("Gaussian decay fit: every point was non-positive")
    if t.size < 3:
        raise DegenerateFitError(f"Gaussian decay fit needs 3 points, got {t.size}")
    if np.ptp(t**2) == 0:
        raise DegenerateFitError("Gaussian decay fit needs two distinct delays")

    weights = y / np.maximum(sigma, 1e-12)
    design = np.column_stack([np.ones_like(t), t**2])
    log_y = np.log(y)
    coef, _, rank, _ = np.linalg.lstsq(design * weights[:, None], log_y * weights, rcond=None)
    if rank < 2:
        raise DegenerateFitError("Gaussian decay design is rank-deficient")

    intercept, slope = float(coef[0]), float(coef[1])
    decay_time = math.inf if slope >= 0 else 1.0 / math.sqrt(-slope)
    model = np.exp(intercept + slope * t**2)
    return FitResult(
        kind="gaussian_decay",
        amplitude=math.exp(intercept),
        decay_time=decay_time,
        residual_rms=float(np.sqrt(np.mean((y - model) ** 2))),
        points=int(t.size),
    )


def fit_line(x, y) -> FitResult:
    """Ordinary least-squares line; ``offset`` holds the intercept."""
    x, y = _as_arrays(x, y)
    if x.size < 2 or np.ptp(x) == 0:
        raise DegenerateFitError("Line fit needs two distinct x values")
    slope, intercept = np.polyfit(x, y, 1)
    residual = y - (slope * x + intercept)
    return FitResult(
        kind="line",
        slope=float(slope),
        offset=float(intercept),
        residual_rms=float(np.sqrt(np.mean(residual**2))),
        points=int(x.size),
    )
