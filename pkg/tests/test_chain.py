"""Tests for tone propagation, presets and drift cancellation."""

from __future__ import annotations

import math

import numpy as np
import pytest
from pydantic import ValidationError

from phasekeep.chain import (
    AOM,
    AWG,
    PLL,
    ChainConfigurationError,
    ChainGraph,
    CombSource,
    ConstraintViolationError,
    DriftProfile,
    Edge,
    EmptyOutputError,
    LockError,
    MasterOscillator,
    Mixer,
    MixerMode,
    PresetId,
    PresetParams,
    Switch,
    Tone,
    ToothOutOfRangeError,
    Transition,
    awg_frequencies,
    build_preset,
    comb_tooth,
    configure_for,
    drift_sensitivity,
    effective_drive,
    propagate,
    with_feed_forward,
)
from phasekeep.planner import PlannerInput, plan_gate

MHZ = 1e6
SIDEBANDS = (Transition.RED_SIDEBAND, Transition.BLUE_SIDEBAND)


def _comb(**kwargs) -> CombSource:
    return CombSource(name="comb", repetition_rate=80.57 * MHZ, tooth_range=(150, 165), **kwargs)


def _with_drift(chain: ChainGraph, drift: DriftProfile) -> ChainGraph:
    return chain.replace_node(chain.comb, drift=drift)


# --- values -----------------------------------------------------------------


def test_tone_rejects_non_finite():
    with pytest.raises(ValidationError):
        Tone(frequency=math.inf)
    with pytest.raises(ValidationError):
        Tone(frequency=1.0, phase=math.nan)


def test_tone_folding_negates_frequency_and_phase():
    tone = Tone(frequency=-5.0, phase=0.3).folded()
    assert tone.frequency == 5.0
    assert tone.phase == pytest.approx(-0.3)


def test_drift_profile_is_zero_before_first_sample():
    drift = DriftProfile(times=(10.0, 20.0), offsets=(5.0, -5.0))
    assert drift.at(0.0) == 0.0
    assert drift.at(15.0) == 5.0
    assert drift.at(100.0) == -5.0
    assert drift.integral(10.0) == 0.0
    assert drift.integral(30.0) == pytest.approx(5.0 * 10 - 5.0 * 10)


@pytest.mark.parametrize(
    "times, offsets",
    [((0.0, 0.0), (1.0, 2.0)), ((1.0,), (1.0, 2.0)), ((-1.0,), (1.0,))],
)
def test_drift_profile_rejects_bad_samples(times, offsets):
    with pytest.raises(ValidationError):
        DriftProfile(times=times, offsets=offsets)


# --- comb -------------------------------------------------------------------


def test_comb_tooth_frequency():
    tooth = comb_tooth(_comb(), 160, 0.0)
    assert tooth.frequency == pytest.approx(12891.2 * MHZ)
    assert tooth.phase == 0.0


def test_reference_tooth_carries_only_static_offset():
    comb = _comb(drift=DriftProfile.constant(100.0), phase_offset=0.4)
    tooth = comb_tooth(comb, 0, 5.0)
    assert tooth.frequency == 0.0
    assert tooth.phase == pytest.approx(0.4)


def test_comb_tooth_accumulates_drift_phase():
    comb = _comb(drift=DriftProfile.constant(100.0))
    tooth = comb_tooth(comb, 154, 1.0)
    assert tooth.frequency == pytest.approx(154 * (80.57 * MHZ + 100.0))
    assert tooth.phase == pytest.approx(2 * math.pi * 154 * 100)


def test_comb_tooth_phase_derivative_matches_frequency_offset():
    comb = _comb(drift=DriftProfile(times=(0.0, 2.0), offsets=(30.0, -70.0)))
    for t in (0.5, 3.0):
        dt = 1e-3
        rate = (comb_tooth(comb, 157, t + dt).phase - comb_tooth(comb, 157, t).phase) / dt
        offset = comb_tooth(comb, 157, t).frequency - 157 * comb.repetition_rate
        assert rate == pytest.approx(2 * math.pi * offset, rel=1e-9)


def test_comb_tooth_out_of_range():
    with pytest.raises(ToothOutOfRangeError):
        comb_tooth(_comb(), 200, 0.0)


# --- node behaviour ---------------------------------------------------------


def _two_source_chain(mode: MixerMode, passband, first: float, second: float) -> ChainGraph:
    return ChainGraph(
        nodes=(
            AWG(name="a", tones=(Tone(frequency=first, phase=0.5),)),
            AWG(name="b", tones=(Tone(frequency=second, phase=0.2),)),
            Mixer(name="mix", mode=mode, passband=passband),
        ),
        edges=(Edge(source="a", target="mix", port=0), Edge(source="b", target="mix", port=1)),
    )


def test_sum_mixer_adds_frequency_and_phase():
    chain = _two_source_chain(MixerMode.SUM, (0, 1e9), 100.0, 30.0)
    (tone,) = propagate(chain, 0.0)["mix"]
    assert tone.frequency == 130.0
    assert tone.phase == pytest.approx(0.7)


def test_difference_mixer_folds_negative_products():
    chain = _two_source_chain(MixerMode.DIFFERENCE, (0, 1e9), 30.0, 100.0)
    (tone,) = propagate(chain, 0.0)["mix"]
    assert tone.frequency == 70.0
    assert tone.phase == pytest.approx(-(0.5 - 0.2))


def test_mixer_passband_removing_everything_names_the_mixer():
    chain = _two_source_chain(MixerMode.SUM, (1e6, 2e6), 100.0, 30.0)
    with pytest.raises(EmptyOutputError) as excinfo:
        propagate(chain, 0.0)
    assert excinfo.value.node == "mix"


def _pll_chain(**pll_kwargs) -> ChainGraph:
    return ChainGraph(
        nodes=(
            _comb(),
            MasterOscillator(name="mo", frequency=12606 * MHZ),
            Mixer(name="mixer_1", mode=MixerMode.DIFFERENCE, passband=(0.5e6, 400 * MHZ)),
            PLL(name="pll", **pll_kwargs),
        ),
        edges=(
            Edge(source="comb", target="mixer_1", port=0),
            Edge(source="mo", target="mixer_1", port=1),
            Edge(source="mixer_1", target="pll"),
        ),
        comb="comb",
    )


def test_pll_locks_to_the_beat_in_capture_range():
    chain = _pll_chain(lock_tooth=160, sign=1, lock_frequency=285.2 * MHZ)
    (tone,) = propagate(chain, 0.0)["pll"]
    assert tone.frequency == pytest.approx(285.2 * MHZ)


def test_pll_without_beat_in_range_fails_to_lock():
    chain = _pll_chain(lock_tooth=160, sign=1, lock_frequency=250 * MHZ)
    with pytest.raises(LockError) as excinfo:
        propagate(chain, 0.0)
    assert excinfo.value.node == "pll"


def test_bypassed_pll_ignores_drift():
    chain = _pll_chain(lock_tooth=160, sign=1, lock_frequency=285.2 * MHZ, bypassed=True)
    drifting = _with_drift(chain, DriftProfile.constant(500.0))
    (tone,) = propagate(drifting, 1.0)["pll"]
    assert tone.frequency == 285.2 * MHZ
    assert tone.phase == 0.0


def test_pll_phase_noise_needs_a_generator():
    chain = _pll_chain(
        lock_tooth=160, sign=1, lock_frequency=285.2 * MHZ, phase_noise_std=0.1
    )
    assert propagate(chain, 0.0)["pll"][0].phase == 0.0
    noisy = propagate(chain, 0.0, np.random.default_rng(3))["pll"][0].phase
    again = propagate(chain, 0.0, np.random.default_rng(3))["pll"][0].phase
    assert noisy != 0.0
    assert noisy == again


def test_aom_drive_tone_must_lie_in_window():
    with pytest.raises(ValidationError):
        AOM(
            name="aom",
            center=165 * MHZ,
            bandwidth=30 * MHZ,
            drive_tones=(Tone(frequency=100 * MHZ),),
        )


def test_aom_drops_tones_outside_window_and_applies_sign():
    chain = ChainGraph(
        nodes=(
            AWG(name="awg", tones=(Tone(frequency=160 * MHZ, phase=0.3), Tone(frequency=10 * MHZ))),
            AOM(name="aom", center=165 * MHZ, bandwidth=30 * MHZ, sign=-1),
        ),
        edges=(Edge(source="awg", target="aom"),),
    )
    (tone,) = propagate(chain, 0.0)["aom"]
    assert tone.frequency == -160 * MHZ
    assert tone.phase == pytest.approx(-0.3)


def test_switch_tap_only_passes_at_its_position():
    def chain_at(position: int) -> ChainGraph:
        return ChainGraph(
            nodes=(
                AWG(name="one", tones=(Tone(frequency=1.0),)),
                AWG(name="two", tones=(Tone(frequency=2.0),)),
                Switch(name="sw", position=position),
                AOM(name="sink", center=1.5, bandwidth=3.0),
            ),
            edges=(
                Edge(source="one", target="sw", port=1),
                Edge(source="two", target="sw", port=2),
                Edge(source="sw", target="sink", tap=2),
            ),
        )

    assert [t.frequency for t in propagate(chain_at(2), 0.0)["sink"]] == [2.0]
    assert propagate(chain_at(1), 0.0)["sink"] == []


def test_chain_json_round_trip(three_pll_chain):
    restored = ChainGraph.model_validate_json(three_pll_chain.to_json())
    assert restored.order == three_pll_chain.order
    assert effective_drive(restored, 0.0, Transition.RED_SIDEBAND).frequency == pytest.approx(
        effective_drive(three_pll_chain, 0.0, Transition.RED_SIDEBAND).frequency
    )


# --- presets ----------------------------------------------------------------


def test_three_pll_lock_frequencies(three_pll_chain):
    plls = {p.name: p for p in three_pll_chain.nodes_of_kind("pll")}
    assert plls["pll_1"].lock_frequency == pytest.approx(285.2 * MHZ)
    assert plls["pll_1"].sign == 1
    assert plls["pll_2"].lock_frequency == pytest.approx(198.22 * MHZ)
    assert plls["pll_2"].sign == -1


def test_three_pll_awg_frequencies(three_pll_chain):
    gate = awg_frequencies(three_pll_chain)["awg_gate"]
    assert gate[0] == pytest.approx(111.83 * MHZ)
    assert gate[1] == pytest.approx(38.19 * MHZ)
    assert awg_frequencies(three_pll_chain)["awg_mw"] == [pytest.approx(36.82 * MHZ)]
    for name in ("mixer_2r", "mixer_2b"):
        assert three_pll_chain.node(name).mode is MixerMode.DIFFERENCE


def test_single_pll_beat_and_legs(single_pll_chain):
    (pll,) = single_pll_chain.nodes_of_kind("pll")
    assert pll.lock_frequency == pytest.approx(43.49 * MHZ)
    assert single_pll_chain.node("mixer_2r").mode is MixerMode.SUM
    gate = awg_frequencies(single_pll_chain)["awg_gate"]
    assert gate[0] == pytest.approx(125.67 * MHZ)
    assert gate[1] == pytest.approx(199.31 * MHZ)


def test_single_pll_rejects_distinct_teeth(gate_input):
    params = PresetParams(
        master_frequency=12606 * MHZ, planner=gate_input, gate_plan=plan_gate(gate_input)[0]
    )
    with pytest.raises(ConstraintViolationError) as excinfo:
        build_preset(PresetId.SINGLE_PLL, params)
    assert excinfo.value.node == "pll_1"


def test_plan_outside_aom_window_names_the_aom(gate_input):
    narrow = gate_input.model_copy(update={"aom_b_window": (150 * MHZ, 170 * MHZ)})
    params = PresetParams(
        master_frequency=12606 * MHZ, planner=narrow, gate_plan=plan_gate(gate_input)[0]
    )
    with pytest.raises(ConstraintViolationError) as excinfo:
        build_preset(PresetId.THREE_PLL, params)
    assert excinfo.value.node == "aom_b"


def test_zero_drift_zero_phases_give_zero_node_phases(three_pll_chain):
    outputs = propagate(three_pll_chain, 0.0)
    for name, tones in outputs.items():
        for tone in tones:
            assert tone.phase == pytest.approx(0.0, abs=1e-12), name


@pytest.mark.parametrize("chain_name", ["three_pll_chain", "single_pll_chain"])
def test_beat_notes_hit_sideband_resonances(request, chain_name, gate_input):
    chain = request.getfixturevalue(chain_name)
    red = effective_drive(chain, 0.0, Transition.RED_SIDEBAND)
    blue = effective_drive(chain, 0.0, Transition.BLUE_SIDEBAND)
    assert red.frequency == pytest.approx(gate_input.red_target, abs=1e-3)
    assert blue.frequency == pytest.approx(gate_input.blue_target, abs=1e-3)
    assert red.phase == pytest.approx(0.0, abs=1e-12)


def _preset_for(plan) -> PresetId:
    return PresetId.SINGLE_PLL if plan.n == plan.m else PresetId.THREE_PLL


def _assert_sidebands_resonant(chain, inp):
    red = effective_drive(chain, 0.0, Transition.RED_SIDEBAND)
    blue = effective_drive(chain, 0.0, Transition.BLUE_SIDEBAND)
    assert red.frequency == pytest.approx(inp.red_target, abs=1e-3)
    assert blue.frequency == pytest.approx(inp.blue_target, abs=1e-3)


def test_every_gate_plan_builds_a_resonant_chain(gate_input):
    inp = gate_input.model_copy(
        update={"aom_a_frequencies": (77.5 * MHZ, 160 * MHZ), "aom_a_signs": (1, -1)}
    )
    plans = plan_gate(inp)
    assert {(p.n, p.m, p.aom_a_sign) for p in plans} == {
        (160, 154, 1),
        (158, 156, -1),
        (157, 157, -1),
        (161, 153, 1),
    }
    for plan in plans:
        params = PresetParams(master_frequency=12606 * MHZ, planner=inp, gate_plan=plan)
        chain = build_preset(_preset_for(plan), params)
        _assert_sidebands_resonant(chain, inp)
        assert abs(drift_sensitivity(chain, Transition.RED_SIDEBAND)) < 1e-6
        assert abs(drift_sensitivity(chain, Transition.BLUE_SIDEBAND)) < 1e-6
        if (plan.n, plan.m) == (158, 156):
            red_awg, blue_awg = awg_frequencies(chain)["awg_gate"]
            assert red_awg == pytest.approx(43.17 * MHZ, abs=1e3)
            assert blue_awg == pytest.approx(116.81 * MHZ, abs=1e3)


def test_random_operating_points_build_resonant_chains():
    rng = np.random.default_rng(2024)
    built = 0
    for _ in range(40):
        inp = PlannerInput(
            qubit_frequency=(12642.82 + rng.uniform(-20, 20)) * MHZ,
            mode_frequency=rng.uniform(1, 4) * MHZ,
            detuning=rng.uniform(0, 0.05) * MHZ,
            repetition_rate=rng.uniform(79, 82) * MHZ,
            aom_a_frequencies=tuple(rng.uniform(70, 170, size=2) * MHZ),
        )
        master = inp.qubit_frequency - 36.82 * MHZ
        for plan in plan_gate(inp):
            params = PresetParams(master_frequency=master, planner=inp, gate_plan=plan)
            try:
                chain = build_preset(_preset_for(plan), params)
            except ConstraintViolationError:
                # Spurious mixer products in the AOM B band; not a sign error.
                continue
            _assert_sidebands_resonant(chain, inp)
            assert abs(drift_sensitivity(chain, Transition.RED_SIDEBAND)) < 1e-6
            assert abs(drift_sensitivity(chain, Transition.BLUE_SIDEBAND)) < 1e-6
            built += 1
    assert built >= 3


def test_microwave_path(three_pll_chain, gate_input):
    chain = configure_for(three_pll_chain, Transition.MICROWAVE)
    tone = effective_drive(chain, 0.0, Transition.MICROWAVE)
    assert tone.frequency == pytest.approx(gate_input.qubit_frequency)


def test_copropagating_path(three_pll_chain, gate_input):
    chain = configure_for(three_pll_chain, Transition.CARRIER_COPROPAGATING)
    tone = effective_drive(chain, 0.0, Transition.CARRIER_COPROPAGATING)
    assert tone.frequency == pytest.approx(gate_input.qubit_frequency, abs=1e-3)
    assert awg_frequencies(chain)["awg_coprop"] == [pytest.approx(124.845 * MHZ)]


def test_wrong_switch_positions_are_rejected(three_pll_chain):
    with pytest.raises(ChainConfigurationError):
        effective_drive(three_pll_chain, 0.0, Transition.MICROWAVE)


def test_configure_for_sets_switches(three_pll_chain):
    chain = configure_for(three_pll_chain, Transition.CARRIER_COPROPAGATING)
    assert chain.node("switch_a").position == 2
    assert chain.node("switch_b").position == 2
    assert three_pll_chain.node("switch_a").position == 3


# --- drift ------------------------------------------------------------------


@pytest.mark.parametrize("chain_name", ["three_pll_chain", "single_pll_chain"])
@pytest.mark.parametrize("transition", list(Transition))
def test_feed_forward_cancels_drift(request, chain_name, transition):
    chain = configure_for(request.getfixturevalue(chain_name), transition)
    assert abs(drift_sensitivity(chain, transition)) < 1e-6


@pytest.mark.parametrize(
    "chain_name, expected",
    [
        ("three_pll_chain", {"red_sideband": 160, "blue_sideband": 154, "carrier_copropagating": 157}),
        ("single_pll_chain", {"red_sideband": 157, "blue_sideband": 157, "carrier_copropagating": 157}),
    ],
)
def test_bypassed_sensitivity_equals_tooth_index(request, chain_name, expected):
    chain = with_feed_forward(request.getfixturevalue(chain_name), False)
    for name, tooth in expected.items():
        transition = Transition(name)
        sensitivity = drift_sensitivity(configure_for(chain, transition), transition)
        assert sensitivity == pytest.approx(tooth, abs=1e-6)
    microwave = configure_for(chain, Transition.MICROWAVE)
    assert drift_sensitivity(microwave, Transition.MICROWAVE) == pytest.approx(0.0, abs=1e-9)


def test_beat_independent_of_random_piecewise_drift(three_pll_chain, single_pll_chain):
    # Float64 spacing near 12.6 GHz is 1.9e-6 Hz.
    rng = np.random.default_rng(11)
    for chain in (three_pll_chain, single_pll_chain):
        quiet = {t: effective_drive(chain, 0.0, t) for t in SIDEBANDS}
        for _ in range(20):
            times = tuple(np.cumsum(rng.uniform(0.1, 5.0, 4)) - 0.1)
            offsets = tuple(rng.uniform(-1000.0, 1000.0, 4))
            drifting = _with_drift(chain, DriftProfile(times=times, offsets=offsets))
            t = float(rng.uniform(0.0, 30.0))
            for transition in SIDEBANDS:
                beat = effective_drive(drifting, t, transition)
                assert beat.frequency == pytest.approx(quiet[transition].frequency, abs=1e-5)


def test_no_drift_means_feed_forward_makes_no_difference(three_pll_chain):
    bypassed = with_feed_forward(three_pll_chain, False)
    for transition in SIDEBANDS:
        on = effective_drive(three_pll_chain, 0.0, transition)
        off = effective_drive(bypassed, 0.0, transition)
        assert on.frequency == pytest.approx(off.frequency)


def test_presets_agree_on_sideband_frequencies(three_pll_chain, single_pll_chain):
    for transition in SIDEBANDS:
        assert effective_drive(three_pll_chain, 0.0, transition).frequency == pytest.approx(
            effective_drive(single_pll_chain, 0.0, transition).frequency, abs=1e-3
        )


def test_bypassed_red_phase_accumulates_tooth_drift(three_pll_chain):
    bypassed = with_feed_forward(three_pll_chain, False)
    drifting = _with_drift(bypassed, DriftProfile.constant(10.0))
    beat = effective_drive(drifting, 2.0, Transition.RED_SIDEBAND)
    assert beat.phase == pytest.approx(2 * math.pi * 160 * 10.0 * 2.0, rel=1e-9)
