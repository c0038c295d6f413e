"""End-to-end checks against the published operating points and measurements."""

from __future__ import annotations

import math
import time
from pathlib import Path

import numpy as np
import pytest

from phasekeep.chain import (
    PresetId,
    Transition,
    configure_for,
    drift_sensitivity,
    with_feed_forward,
)
from phasekeep.cli import build_chain
from phasekeep.config import load_config
from phasekeep.experiments import (
    ScenarioConfig,
    ScenarioId,
    SweepSpec,
    error_budget,
    fit_parity_phase,
    run_phase_fringe,
    run_ramsey,
    run_scenario,
    run_sideband_shift,
    run_stability,
    wrap_phase,
)
from phasekeep.planner import PlannerInput, plan_gate, validate_plan
from phasekeep.qubit import (
    BeamGeometry,
    Geometry,
    NoiseState,
    RfPhases,
    TwoQubitState,
    ms_gate,
    sideband_phases,
)

pytestmark = pytest.mark.slow

CONFIGS = Path(__file__).resolve().parent.parent / "configs"
MHZ = 1e6


def test_distinct_tooth_gate_plan():
    inp = load_config(CONFIGS / "gate_plan.yaml").plan.to_planner_input()
    start = time.perf_counter()
    best = plan_gate(inp)[0]
    assert time.perf_counter() - start < 1.0
    assert (best.n, best.m) == (160, 154)
    assert best.nu_b_red == pytest.approx(173.4 * MHZ, abs=0.1 * MHZ)
    assert best.nu_b_blue == pytest.approx(160.0 * MHZ, abs=0.1 * MHZ)


def test_single_tooth_gate_plan():
    inp = load_config(CONFIGS / "single_tooth.yaml").plan.to_planner_input()
    best = plan_gate(inp)[0]
    assert best.n == best.m == 157
    assert best.aom_a_sign == -1
    assert best.nu_b_red == pytest.approx(169.2 * MHZ, abs=0.2 * MHZ)
    assert best.nu_b_blue == pytest.approx(155.7 * MHZ, abs=0.2 * MHZ)
    positive_only = inp.model_copy(update={"aom_a_signs": (1,)})
    assert not any(p.single_tooth for p in plan_gate(positive_only))


@pytest.mark.parametrize(
    "name, bypassed",
    [("gate_plan", (160, 154)), ("single_tooth", (157, 157))],
)
def test_chain_drift_contract(name, bypassed):
    chain = build_chain(load_config(CONFIGS / f"{name}.yaml"))
    free = with_feed_forward(chain, False)
    for transition, expected in zip((Transition.RED_SIDEBAND, Transition.BLUE_SIDEBAND), bypassed):
        assert abs(drift_sensitivity(configure_for(chain, transition), transition)) < 1e-6
        off = drift_sensitivity(configure_for(free, transition), transition)
        assert abs(off) == pytest.approx(expected, abs=1e-6)
    if chain.preset is PresetId.THREE_PLL:
        plls = {p.name: p for p in chain.nodes_of_kind("pll")}
        assert plls["pll_1"].lock_frequency == pytest.approx(285 * MHZ, abs=0.5 * MHZ)
        assert plls["pll_2"].lock_frequency == pytest.approx(198 * MHZ, abs=0.5 * MHZ)


def test_optical_phase_immunity():
    rng = np.random.default_rng(404)
    insensitive = BeamGeometry.from_wavelength(250e-9)
    sensitive = BeamGeometry.from_wavelength(250e-9, geometry=Geometry.SENSITIVE)
    for _ in range(1000):
        rf = RfPhases(**dict(zip(("phase_a", "phase_red", "phase_blue"), rng.uniform(-3, 3, 3))))
        amplitudes = rng.normal(size=4) + 1j * rng.normal(size=4)
        state = TwoQubitState(amplitudes / np.linalg.norm(amplitudes))
        noise = NoiseState(path_drift=float(rng.uniform(-1e-6, 1e-6)))
        still = ms_gate(state, sideband_phases(insensitive, rf).gate)
        drifted = ms_gate(state, sideband_phases(insensitive, rf, noise).gate)
        np.testing.assert_allclose(drifted.amplitudes, still.amplitudes, atol=1e-12)

    config = ScenarioConfig(
        scenario=ScenarioId.PARITY_SCAN,
        sweep=SweepSpec(name="analysis_phase_rad", start=0.0, stop=math.pi, points=2),
        beams=sensitive,
        sample_shots=False,
    )
    for path_drift in rng.uniform(-1e-6, 1e-6, 20):
        noise = NoiseState(path_drift=float(path_drift))
        still = fit_parity_phase(config, RfPhases(), rng)
        moved = fit_parity_phase(config, RfPhases(), rng, noise)
        shift = wrap_phase(moved.phase - still.phase)
        expected = wrap_phase(2 * sensitive.delta_k * path_drift)
        assert wrap_phase(shift - expected) == pytest.approx(0.0, abs=1e-9)


@pytest.mark.parametrize("seed", range(10))
@pytest.mark.parametrize(
    "geometry, sideband, slope",
    [
        (Geometry.INSENSITIVE, "red", -1.0),
        (Geometry.INSENSITIVE, "blue", 1.0),
        (Geometry.SENSITIVE, "red", 1.0),
        (Geometry.SENSITIVE, "blue", 1.0),
    ],
)
def test_sideband_sign(seed, geometry, sideband, slope):
    config = ScenarioConfig(
        scenario=ScenarioId.SIDEBAND_SHIFT,
        sweep=SweepSpec(name="sideband_phase_rad", start=0.0, stop=math.pi, points=9),
        shots=300,
        seed=seed,
        beams=BeamGeometry.from_wavelength(250e-9, geometry=geometry),
        sideband=sideband,
    )
    assert run_sideband_shift(config).summary["slope"] == pytest.approx(slope, abs=0.02)


@pytest.mark.parametrize("seed", [5, 17, 123])
def test_random_phase_dichotomy(seed):
    config = load_config(CONFIGS / "random_phase.yaml").to_scenario_config(seed=seed)
    start = time.perf_counter()
    insensitive = run_scenario(config)
    sensitive = run_scenario(
        config.model_copy(
            update={"beams": config.beams.model_copy(update={"geometry": Geometry.SENSITIVE})}
        )
    )
    assert time.perf_counter() - start < 20.0  # two runs
    assert insensitive.summary["amplitude"] >= 0.95
    assert sensitive.summary["amplitude"] <= 0.15
    assert insensitive.summary["amplitude"] - sensitive.summary["amplitude"] > 0.7


def test_ramsey_coherence_time():
    config = load_config(CONFIGS / "ramsey.yaml").to_scenario_config()
    result = run_ramsey(config)
    assert result.table["mean"].iloc[0] == pytest.approx(1.0, abs=0.02)
    assert result.summary["decay_time_s"] == pytest.approx(1.8, rel=0.1)


def test_ramsey_fringe_amplitude():
    config = load_config(CONFIGS / "phase_fringe.yaml").to_scenario_config()
    assert run_phase_fringe(config).summary["amplitude"] == pytest.approx(0.5, abs=0.02)


def test_stability_over_a_day():
    config = load_config(CONFIGS / "stability.yaml")
    scenario = config.to_scenario_config(chain=build_chain(config))
    result = run_stability(scenario)
    assert result.table["time_s"].iloc[-1] == pytest.approx(86_400)
    assert result.table["path_drift_m"].abs().max() > 0
    assert result.summary["spread_deg"] < 8.0


def test_error_budget_brackets_reported_fidelity():
    assert 0.85 <= error_budget(0.08, 0.05).fidelity <= 0.88


@pytest.mark.parametrize("seed", range(100))
def test_planner_completeness(seed):
    rng = np.random.default_rng(10_000 + seed)
    inp = PlannerInput(
        qubit_frequency=rng.uniform(5_000, 15_000) * MHZ,
        mode_frequency=rng.uniform(0.5, 5) * MHZ,
        detuning=rng.uniform(0, 0.1) * MHZ,
        repetition_rate=rng.uniform(50, 120) * MHZ,
        aom_a_frequencies=tuple(rng.uniform(60, 200, size=2) * MHZ),
        tooth_range=(1, 400),
    )
    b_lo, b_hi = inp.aom_b_window
    expected = set()
    for nu_a in inp.aom_a_frequencies:
        for sign in inp.aom_a_signs:
            reds = [
                n
                for n in range(1, 401)
                if b_lo <= n * inp.repetition_rate - sign * nu_a - inp.red_target <= b_hi
            ]
            blues = [
                m
                for m in range(1, 401)
                if b_lo <= inp.blue_target - m * inp.repetition_rate - sign * nu_a <= b_hi
            ]
            expected |= {(n, m, sign, nu_a) for n in reds for m in blues}
    plans = plan_gate(inp)
    assert {(p.n, p.m, p.aom_a_sign, p.nu_a) for p in plans} == expected
    assert all(validate_plan(p, inp).ok for p in plans)
