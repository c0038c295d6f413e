"""Scenario registry and dispatch."""

from __future__ import annotations

import logging
from collections.abc import Callable
from dataclasses import dataclass

from .models import RunResult, ScenarioConfig, ScenarioId
from .scenarios import (
    run_alignment_scan,
    run_parity_scan,
    run_phase_fringe,
    run_ramsey,
    run_random_phase,
    run_sideband_shift,
    run_stability,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ScenarioEntry:
    runner: Callable[[ScenarioConfig], RunResult]
    description: str


SCENARIOS: dict[ScenarioId, ScenarioEntry] = {
    ScenarioId.RAMSEY: ScenarioEntry(
        run_ramsey, "Raman/microwave Ramsey delay scan with Gaussian clock dephasing"
    ),
    ScenarioId.PHASE_FRINGE: ScenarioEntry(
        run_phase_fringe, "Microwave then Raman π/2 fringe versus Raman phase"
    ),
    ScenarioId.PARITY_SCAN: ScenarioEntry(
        run_parity_scan, "Entangling gate followed by an analysis-phase parity scan"
    ),
    ScenarioId.SIDEBAND_SHIFT: ScenarioEntry(
        run_sideband_shift, "Fitted parity phase versus red/blue sideband tone phase"
    ),
    ScenarioId.RANDOM_PHASE: ScenarioEntry(
        run_random_phase, "Parity scan with a random phase on both sideband tones"
    ),
    ScenarioId.STABILITY: ScenarioEntry(
        run_stability, "Parity phase over a long span with path and comb drift"
    ),
    ScenarioId.ALIGNMENT: ScenarioEntry(
        run_alignment_scan, "Ion brightness versus shuttle distance per misalignment"
    ),
}


def known_scenarios() -> list[str]:
    return [scenario.value for scenario in SCENARIOS]


def run_scenario(config: ScenarioConfig) -> RunResult:
    """Run the scenario named by ``config.scenario``."""
    entry = SCENARIOS[config.scenario]
    logger.info(
        f"Running {config.scenario.value}: {config.sweep.points} points, "
        f"{config.shots} shots, seed {config.seed}"
    )
    return entry.runner(config)
