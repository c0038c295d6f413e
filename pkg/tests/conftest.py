"""Shared fixtures: the distinct-tooth and single-tooth operating points."""

from __future__ import annotations

import pytest

from phasekeep.chain import ChainGraph, PresetId, PresetParams, build_preset
from phasekeep.planner import PlannerInput, plan_copropagating, plan_gate

MHZ = 1e6
MASTER_FREQUENCY = 12606 * MHZ


@pytest.fixture
def gate_input() -> PlannerInput:
    """Distinct-tooth operating point (νA = 77.5 MHz, positive order)."""
    return PlannerInput(
        qubit_frequency=12642.82 * MHZ,
        mode_frequency=2.5 * MHZ,
        detuning=0.01 * MHZ,
        repetition_rate=80.57 * MHZ,
        aom_a_frequencies=(77.5 * MHZ,),
        aom_a_signs=(1,),
    )


@pytest.fixture
def single_tooth_input() -> PlannerInput:
    """Single-tooth operating point (νA = 160 MHz, negative order)."""
    return PlannerInput(
        qubit_frequency=12642.82 * MHZ,
        mode_frequency=2.5 * MHZ,
        detuning=0.01 * MHZ,
        repetition_rate=80.57 * MHZ,
        aom_a_frequencies=(160 * MHZ,),
        aom_a_signs=(-1,),
    )


@pytest.fixture
def three_pll_chain(gate_input: PlannerInput) -> ChainGraph:
    params = PresetParams(
        master_frequency=MASTER_FREQUENCY,
        planner=gate_input,
        gate_plan=plan_gate(gate_input)[0],
        coprop_plan=plan_copropagating(gate_input)[0],
    )
    return build_preset(PresetId.THREE_PLL, params)


@pytest.fixture
def single_pll_chain(single_tooth_input: PlannerInput) -> ChainGraph:
    coprop = [p for p in plan_copropagating(single_tooth_input) if p.p == 157][0]
    params = PresetParams(
        master_frequency=MASTER_FREQUENCY,
        planner=single_tooth_input,
        gate_plan=plan_gate(single_tooth_input)[0],
        coprop_plan=coprop,
    )
    return build_preset(PresetId.SINGLE_PLL, params)
