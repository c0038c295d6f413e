"""Seeded phase-coherence scenarios, fits and result output."""

from .budget import FidelityBudget, error_budget, fidelity_from_measurements
from .fitting import fit_gaussian_decay, fit_line, fit_sinusoid, wrap_phase
from .models import (
    DEFAULT_DELTA_K,
    AnalysisSource,
    DegenerateFitError,
    ExperimentError,
    FitResult,
    NoiseSpec,
    RunResult,
    ScenarioConfig,
    ScenarioId,
    ScenarioMismatchError,
    SweepSpec,
)
from .runner import SCENARIOS, ScenarioEntry, known_scenarios, run_scenario
from .scenarios import (
    fit_parity_phase,
    run_alignment_scan,
    run_parity_scan,
    run_phase_fringe,
    run_ramsey,
    run_random_phase,
    run_sideband_shift,
    run_stability,
)
from .writer import OutputFormat, ResultWriter

__all__ = [
    "DEFAULT_DELTA_K",
    "SCENARIOS",
    "AnalysisSource",
    "DegenerateFitError",
    "ExperimentError",
    "FidelityBudget",
    "FitResult",
    "NoiseSpec",
    "OutputFormat",
    "ResultWriter",
    "RunResult",
    "ScenarioConfig",
    "ScenarioEntry",
    "ScenarioId",
    "ScenarioMismatchError",
    "SweepSpec",
    "error_budget",
    "fidelity_from_measurements",
    "fit_gaussian_decay",
    "fit_line",
    "fit_parity_phase",
    "fit_sinusoid",
    "known_scenarios",
    "run_alignment_scan",
    "run_parity_scan",
    "run_phase_fringe",
    "run_ramsey",
    "run_random_phase",
    "run_scenario",
    "run_sideband_shift",
    "run_stability",
    "wrap_phase",
]
