"""Seeded numerical versions of the phase-coherence measurements.

Every scenario evaluates its scan points independently: point ``i`` draws
from ``point_rng(seed, i)`` only, so results are bit-identical for a given
(config, seed) regardless of thread scheduling.
"""

from __future__ import annotations

import logging
import math

import numpy as np
import pandas as pd

from ..chain import DriftProfile, Transition, effective_drive, with_feed_forward
from ..qubit import (
    NoiseState,
    RfPhases,
    TwoQubitState,
    alignment_signal,
    ms_gate,
    rotate,
    rotate_both,
    sideband_phases,
)
from .fitting import fit_gaussian_decay, fit_line, fit_sinusoid
from .models import (
    AnalysisSource,
    FitResult,
    RunResult,
    ScenarioConfig,
    ScenarioId,
    ScenarioMismatchError,
)
from .points import PointResult, map_points
from .sampling import (
    aux_rng,
    binomial_stderr,
    brightness,
    excitation_of,
    measure,
    parity_of,
    parity_stderr,
    point_rng,
)

logger = logging.getLogger(__name__)

# Gauss–Hermite order for exact expectations over Gaussian phase noise.
QUADRATURE_ORDER = 48

_GROUND = TwoQubitState.basis("00")


def _require(config: ScenarioConfig, expected: ScenarioId) -> None:
    if config.scenario is not expected:
        raise ScenarioMismatchError(
            f"{expected.value} runner got a {config.scenario.value} config"
        )


def _table(
    config: ScenarioConfig, series: str, xs: np.ndarray, points: list[PointResult]
) -> pd.DataFrame:
    data = {
        "series": [series] * len(points),
        config.sweep.name: xs,
        "mean": [p.mean for p in points],
        "stderr": [p.stderr for p in points],
    }
    for key in points[0].extras if points else ():
        data[key] = [p.extras[key] for p in points]
    return pd.DataFrame(data)


def _finish(config: ScenarioConfig, tables: list[pd.DataFrame]) -> RunResult:
    table = pd.concat(tables, ignore_index=True) if len(tables) > 1 else tables[0]
    return RunResult(
        scenario=config.scenario, seed=config.seed, sweep_name=config.sweep.name, table=table
    )


def _gaussian_average(function, sigma: float) -> np.ndarray:
    nodes, weights = np.polynomial.hermite_e.hermegauss(QUADRATURE_ORDER)
    weights = weights / weights.sum()
    return sum(w * function(sigma * z) for z, w in zip(nodes, weights))


# --- single-qubit fringes ---------------------------------------------------


def _ramsey_probabilities(config: ScenarioConfig, dephasing: float) -> np.ndarray:
    state = TwoQubitState(_GROUND.amplitudes, contrast=config.noise.contrast)
    state = rotate(state, 1, math.pi / 2, config.fringe_offset)
    state = rotate(state, 1, math.pi / 2, config.microwave_phase + dephasing)
    return state.probabilities()


def run_ramsey(config: ScenarioConfig) -> RunResult:
    """Raman π/2, delay T with Gaussian clock dephasing, microwave π/2.

    The dephasing phase has standard deviation √2·T/τ, giving a fringe
    contrast envelope of exp(−(T/τ)²). Records P(|1⟩) per delay and fits the
    envelope to recover τ.
    """
    _require(config, ScenarioId.RAMSEY)
    delays = config.sweep.values()
    tau = config.noise.dephasing_time

    def task(index: int) -> PointResult:
        rng = point_rng(config.seed, index)
        sigma = 0.0 if tau is None else math.sqrt(2.0) * abs(delays[index]) / tau
        if sigma == 0.0:
            rows = _ramsey_probabilities(config, 0.0)
        elif config.sample_shots:
            draws = rng.normal(0.0, sigma, config.shots)
            rows = np.array([_ramsey_probabilities(config, d) for d in draws])
        else:
            rows = _gaussian_average(lambda d: _ramsey_probabilities(config, d), sigma)
        freqs = measure(rows, config.shots, rng, config.noise.detection_error, config.sample_shots)
        p1 = excitation_of(freqs)
        return PointResult(
            mean=p1,
            stderr=binomial_stderr(p1, config.shots, config.sample_shots),
            extras={"dephasing_sigma_rad": sigma},
        )

    points = map_points(task, len(delays), config.max_workers)
    result = _finish(config, [_table(config, "ramsey", delays, points)])

    contrast = 2 * result.table["mean"].to_numpy() - 1
    sigma = 2 * result.table["stderr"].to_numpy() if config.sample_shots else None
    fit = fit_gaussian_decay(delays, contrast, sigma)
    result.fits["decay"] = fit
    result.summary["decay_time_s"] = fit.decay_time
    result.summary["contrast_at_zero"] = fit.amplitude
    logger.info(f"Ramsey: fitted decay time {fit.decay_time:.3f} s")
    return result


def run_phase_fringe(config: ScenarioConfig) -> RunResult:
    """Microwave π/2 with phase φµ, then Raman π/2 with swept phase φR.

    P(|1⟩) = ½ + A·sin(φ0 + φR − φµ); both drives share the clock reference,
    so the fringe is stable and its phase follows φµ.
    """
    _require(config, ScenarioId.PHASE_FRINGE)
    phases = config.sweep.values()

    def task(index: int) -> PointResult:
        rng = point_rng(config.seed, index)
        state = TwoQubitState(_GROUND.amplitudes, contrast=config.noise.contrast)
        state = rotate(state, 1, math.pi / 2, config.microwave_phase)
        state = rotate(state, 1, math.pi / 2, phases[index] + config.fringe_offset)
        freqs = measure(
            state.probabilities(),
            config.shots,
            rng,
            config.noise.detection_error,
            config.sample_shots,
        )
        p1 = excitation_of(freqs)
        return PointResult(mean=p1, stderr=binomial_stderr(p1, config.shots, config.sample_shots))

    points = map_points(task, len(phases), config.max_workers)
    result = _finish(config, [_table(config, "fringe", phases, points)])
    fit = fit_sinusoid(phases, result.table["mean"], omega=1.0)
    result.fits["fringe"] = fit
    result.summary.update(amplitude=fit.amplitude, phase_rad=fit.phase)
    return result


# --- two-qubit parity -------------------------------------------------------


def _analysis_phase(config: ScenarioConfig, phase: float) -> float:
    if config.analysis_source is AnalysisSource.RAMAN:
        return phase + config.raman_offset / 2
    return phase


def _parity_probabilities(
    config: ScenarioConfig, rf: RfPhases, phase: float, noise: NoiseState | None = None
) -> np.ndarray:
    gate = sideband_phases(config.beams, rf, noise).gate
    state = ms_gate(_GROUND, gate, config.noise.contrast)
    state = rotate_both(state, math.pi / 2, _analysis_phase(config, phase))
    return state.probabilities()


def _measure_parity(
    config: ScenarioConfig, rows: np.ndarray, rng: np.random.Generator
) -> tuple[float, float]:
    freqs = measure(rows, config.shots, rng, config.noise.detection_error, config.sample_shots)
    value = parity_of(freqs)
    return value, parity_stderr(value, config.shots, config.sample_shots)


def _inner_phases(config: ScenarioConfig) -> np.ndarray:
    # Two parity periods.
    return np.linspace(0.0, 2 * math.pi, config.inner_points, endpoint=False)


def fit_parity_phase(
    config: ScenarioConfig,
    rf: RfPhases,
    rng: np.random.Generator,
    noise: NoiseState | None = None,
) -> FitResult:
    """Inner parity scan over two fringe periods, fitted for its phase."""
    phases = _inner_phases(config)
    values = [
        _measure_parity(config, _parity_probabilities(config, rf, p, noise), rng)[0]
        for p in phases
    ]
    return fit_sinusoid(phases, values, omega=2.0)


def run_parity_scan(config: ScenarioConfig) -> RunResult:
    """Entangling gate from |00⟩, then a π/2 analysis pulse of phase φ on both
    ions; the parity follows A·cos(2φ + φG + φ')."""
    _require(config, ScenarioId.PARITY_SCAN)
    phases = config.sweep.values()

    def task(index: int) -> PointResult:
        rng = point_rng(config.seed, index)
        value, err = _measure_parity(config, _parity_probabilities(config, config.rf, phases[index]), rng)
        return PointResult(mean=value, stderr=err)

    points = map_points(task, len(phases), config.max_workers)
    result = _finish(config, [_table(config, "parity", phases, points)])
    fit = fit_sinusoid(phases, result.table["mean"], omega=2.0)
    result.fits["parity"] = fit
    result.summary.update(amplitude=fit.amplitude, phase_rad=fit.phase)
    logger.info(f"Parity scan: A={fit.amplitude:.3f}, phase={fit.phase:.3f} rad")
    return result


def _shifted(rf: RfPhases, sideband: str, shift: float) -> RfPhases:
    red = shift if sideband in ("red", "both") else 0.0
    blue = shift if sideband in ("blue", "both") else 0.0
    return RfPhases(phase_a=rf.phase_a, phase_red=rf.phase_red + red, phase_blue=rf.phase_blue + blue)


def run_sideband_shift(config: ScenarioConfig) -> RunResult:
    """Shift the phase of the red, blue or both sideband tones and track the
    fitted parity phase.

    Insensitive geometry gives slopes −1 (red) and +1 (blue); sensitive
    geometry +1 for both.
    """
    _require(config, ScenarioId.SIDEBAND_SHIFT)
    shifts = config.sweep.values()

    def task(index: int) -> PointResult:
        rng = point_rng(config.seed, index)
        fit = fit_parity_phase(config, _shifted(config.rf, config.sideband, shifts[index]), rng)
        return PointResult(
            mean=fit.phase,
            stderr=fit.phase_stderr if fit.phase_stderr is not None else math.nan,
            extras={"amplitude": fit.amplitude},
        )

    points = map_points(task, len(shifts), config.max_workers)
    table = _table(config, config.sideband, shifts, points)
    table["mean"] = np.unwrap(table["mean"].to_numpy())
    result = _finish(config, [table])
    fit = fit_line(shifts, table["mean"])
    result.fits["slope"] = fit
    result.summary["slope"] = fit.slope
    logger.info(f"Sideband shift ({config.sideband}): slope {fit.slope:+.4f}")
    return result


def run_random_phase(config: ScenarioConfig) -> RunResult:
    """Add the same random phase to both sideband tones, mimicking a jump in
    optical path length, and record the parity fringe.

    The phase is redrawn every shot (``per_shot``) or every scan point
    (``per_point``).
    """
    _require(config, ScenarioId.RANDOM_PHASE)
    phases = config.sweep.values()
    noise = config.noise

    def task(index: int) -> PointResult:
        rng = point_rng(config.seed, index)
        count = config.shots if noise.random_phase_mode == "per_shot" else 1
        draws = noise.random_phase_center + noise.random_phase_span * (rng.random(count) - 0.5)
        rows = np.array(
            [
                _parity_probabilities(config, _shifted(config.rf, "both", d), phases[index])
                for d in draws
            ]
        )
        value, err = _measure_parity(config, rows, rng)
        return PointResult(mean=value, stderr=err, extras={"random_phase_mean_rad": float(draws.mean())})

    points = map_points(task, len(phases), config.max_workers)
    result = _finish(config, [_table(config, config.geometry.value, phases, points)])
    fit = fit_sinusoid(phases, result.table["mean"], omega=2.0)
    result.fits["parity"] = fit
    result.summary.update(amplitude=fit.amplitude, phase_rad=fit.phase)
    logger.info(f"Random phase ({config.geometry.value}): A={fit.amplitude:.3f}")
    return result


# --- long-term drift ---------------------------------------------------------


def _random_walk(rng: np.random.Generator, times: np.ndarray, step: float) -> np.ndarray:
    dt = np.diff(times, prepend=times[0])
    return np.cumsum(rng.normal(0.0, 1.0, times.size) * step * np.sqrt(dt))


def _beat_errors(config: ScenarioConfig, times: np.ndarray, offsets: np.ndarray):
    """Red/blue beat-note phase deviations caused by repetition-rate drift."""
    if config.chain is None:
        return lambda index, rng: (0.0, 0.0)
    chain = with_feed_forward(config.chain, config.feed_forward)
    quiet = chain.replace_node(chain.comb, drift=DriftProfile.zero())
    drifting = chain.replace_node(
        chain.comb, drift=DriftProfile(times=tuple(times - times[0]), offsets=tuple(offsets))
    )
    nominal = {
        t: effective_drive(quiet, 0.0, t).phase
        for t in (Transition.RED_SIDEBAND, Transition.BLUE_SIDEBAND)
    }

    def errors(index: int, rng: np.random.Generator) -> tuple[float, float]:
        elapsed = float(times[index] - times[0])
        red = effective_drive(drifting, elapsed, Transition.RED_SIDEBAND, rng).phase
        blue = effective_drive(drifting, elapsed, Transition.BLUE_SIDEBAND, rng).phase
        return red - nominal[Transition.RED_SIDEBAND], blue - nominal[Transition.BLUE_SIDEBAND]

    return errors


def run_stability(config: ScenarioConfig) -> RunResult:
    """Repeated parity-phase fits over a long wall-clock span.

    Path length and repetition rate follow independent random walks. The
    chain (when given) turns repetition-rate drift into red/blue beat-note
    phase errors, which vanish while feed-forward is on. Reports the fitted
    fringe phase over time and its peak-to-peak spread.
    """
    _require(config, ScenarioId.STABILITY)
    times = config.sweep.values()
    if np.any(np.diff(times) <= 0):
        raise ScenarioMismatchError("stability sweep must run forward in time")
    path = _random_walk(aux_rng(config.seed, 0), times, config.noise.path_drift_step)
    offsets = _random_walk(aux_rng(config.seed, 1), times, config.noise.repetition_drift_step)
    beat_errors = _beat_errors(config, times, offsets)

    def task(index: int) -> PointResult:
        rng = point_rng(config.seed, index)
        error_red, error_blue = beat_errors(index, rng)
        rf = RfPhases(
            phase_a=config.rf.phase_a,
            phase_red=config.rf.phase_red - error_red,
            phase_blue=config.rf.phase_blue + error_blue,
        )
        fit = fit_parity_phase(config, rf, rng, NoiseState(path_drift=float(path[index])))
        return PointResult(
            mean=fit.phase,
            stderr=fit.phase_stderr if fit.phase_stderr is not None else math.nan,
            extras={
                "path_drift_m": float(path[index]),
                "repetition_offset_hz": float(offsets[index]),
                "beat_error_red_rad": error_red,
                "beat_error_blue_rad": error_blue,
            },
        )

    points = map_points(task, len(times), config.max_workers)
    label = "feed_forward_on" if config.feed_forward else "feed_forward_off"
    table = _table(config, label, times, points)
    table["mean"] = np.unwrap(table["mean"].to_numpy())
    result = _finish(config, [table])
    spread = math.degrees(float(np.ptp(table["mean"].to_numpy())))
    result.summary["spread_deg"] = spread
    logger.info(f"Stability ({label}): phase spread {spread:.2f} deg")
    return result


# --- alignment ---------------------------------------------------------------


def run_alignment_scan(config: ScenarioConfig) -> RunResult:
    """Ion brightness after shuttling by d between two π/2 pulses, one series
    per misalignment angle."""
    _require(config, ScenarioId.ALIGNMENT)
    distances = config.sweep.values()
    wavelength = config.beams.effective_wavelength
    count = len(distances)

    tables = []
    for series, angle in enumerate(config.misalignments):

        def task(index: int, angle: float = angle, series: int = series) -> PointResult:
            rng = point_rng(config.seed, series * count + index)
            expected = alignment_signal(distances[index], angle, wavelength)
            value = brightness(
                expected, config.shots, rng, config.noise.detection_error, config.sample_shots
            )
            return PointResult(mean=value, stderr=binomial_stderr(value, config.shots, config.sample_shots))

        points = map_points(task, count, config.max_workers)
        tables.append(_table(config, f"theta_{math.degrees(angle):g}deg", distances, points))
    return _finish(config, tables)
