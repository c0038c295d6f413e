"""Preset phase-coherence circuits built from a frequency plan.

Both presets share one master oscillator, one comb photodiode and two AOMs:

- AOM A (static drive νA, diffraction order −sA) on the beam absorbed for the
  red sideband.
- AOM B fed through switch ``b`` with either the gate tones (position 1) or
  the copropagating carrier tones (position 2).

Switch ``a`` is ganged: position 1 routes the microwave AWG tone, 2 the
copropagating shift tone and 3 the gate AWG tones.

Each AOM B tone that must follow the comb comes from a feed-forward leg: one
mixer combining a PLL locked to the comb tooth with an AWG tone. The mixer
mode depends on which side of the master oscillator the tooth lies and on the
drift sign the tone must carry:

- THREE_PLL, distinct-tooth plan (n=160, m=154): both legs are ``PLL − AWG``, giving
  AWG tones of 111.83 MHz and 38.19 MHz.
- SINGLE_PLL, single-tooth plan (n=m=157): red is ``PLL + AWG`` and blue is
  ``AWG − PLL`` around the 43.49 MHz beat.

AWG tones are always derived from the plan. The 116.8 MHz / 43.2 MHz pair
often quoted for the n=160, m=154 operating point does not meet its resonance
conditions; those magnitudes belong to the n=158, m=156, sA=−1 plan (blue
and red legs respectively).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from pydantic import BaseModel, ConfigDict, Field

from ..planner import CoPropPlan, GatePlan, PlannerInput, validate_plan
from .errors import ChainError, ConstraintViolationError
from .evaluate import effective_drive, propagate
from .models import (
    AOM,
    AWG,
    PLL,
    ChainGraph,
    CombSource,
    Combiner,
    DriftProfile,
    Edge,
    MasterOscillator,
    Mixer,
    MixerMode,
    PresetId,
    Switch,
    Tone,
    Transition,
    TransitionPath,
)

logger = logging.getLogger(__name__)

SWITCH_A = "switch_a"
SWITCH_B = "switch_b"

# Switch positions per transition.
GATE_SWITCHES = {SWITCH_A: 3, SWITCH_B: 1}
MICROWAVE_SWITCHES = {SWITCH_A: 1}
COPROP_SWITCHES = {SWITCH_A: 2, SWITCH_B: 2}


class CombSpec(BaseModel):
    """Comb settings not covered by the plan."""

    model_config = ConfigDict(frozen=True)

    drift: DriftProfile = Field(default_factory=DriftProfile)
    tooth_margin: int = Field(default=3, ge=0, description="Extra teeth either side of the plan")
    phase_offset: float = 0.0


class PresetParams(BaseModel):
    """Inputs for :func:`build_preset`. Frequencies in Hz, phases in rad."""

    model_config = ConfigDict(frozen=True)

    master_frequency: float = Field(..., gt=0, description="ν_MO")
    planner: PlannerInput
    gate_plan: GatePlan
    coprop_plan: CoPropPlan | None = None
    comb: CombSpec = Field(default_factory=CombSpec)
    phase_a: float = Field(default=0.0, description="AOM A rf phase")
    phase_red: float = Field(default=0.0, description="AOM B red-sideband tone phase")
    phase_blue: float = Field(default=0.0, description="AOM B blue-sideband tone phase")
    capture_range: float = Field(default=1e6, gt=0)
    pll_phase_noise_std: float = Field(default=0.0, ge=0)


@dataclass(frozen=True)
class _Leg:
    mode: MixerMode
    awg_frequency: float
    pll_first: bool

    def awg_phase(self, target_phase: float) -> float:
        # PLL phase is zero at zero drift; pick the AWG phase that lands the
        # output on target_phase.
        if self.mode is MixerMode.DIFFERENCE and self.pll_first:
            return -target_phase
        return target_phase


def _feed_forward_leg(
    node: str, pll_sign: int, pll_frequency: float, target: float, drift_sign: int
) -> _Leg:
    """Choose mixer mode and AWG frequency so the output tone is ``target``
    and carries ``drift_sign`` times the PLL's tooth drift."""
    if pll_sign == drift_sign:
        if target > pll_frequency:
            return _Leg(mode=MixerMode.SUM, awg_frequency=target - pll_frequency, pll_first=True)
        if target < pll_frequency:
            return _Leg(
                mode=MixerMode.DIFFERENCE, awg_frequency=pll_frequency - target, pll_first=True
            )
        raise ConstraintViolationError(node, "target equals the PLL frequency, AWG tone would be 0 Hz")
    return _Leg(mode=MixerMode.DIFFERENCE, awg_frequency=target + pll_frequency, pll_first=False)


def _pll(name: str, tooth: int, params: PresetParams) -> PLL:
    beat = tooth * params.planner.repetition_rate - params.master_frequency
    if beat == 0:
        raise ConstraintViolationError(name, f"tooth {tooth} coincides with the master oscillator")
    return PLL(
        name=name,
        lock_tooth=tooth,
        sign=1 if beat > 0 else -1,
        lock_frequency=abs(beat),
        capture_range=params.capture_range,
        phase_noise_std=params.pll_phase_noise_std,
    )


def _leg_edges(mixer: str, pll: str, awg_source: str, leg: _Leg, tap: int | None) -> list[Edge]:
    pll_port, awg_port = (0, 1) if leg.pll_first else (1, 0)
    return [
        Edge(source=pll, target=mixer, port=pll_port),
        Edge(source=awg_source, target=mixer, port=awg_port, tap=tap),
    ]


def _check_windows(params: PresetParams) -> None:
    plan = params.gate_plan
    a_lo, a_hi = params.planner.aom_a_window
    if not a_lo <= plan.nu_a <= a_hi:
        raise ConstraintViolationError("aom_a", f"νA={plan.nu_a} Hz outside window [{a_lo}, {a_hi}]")
    report = validate_plan(plan, params.planner)
    if report.window_violations:
        raise ConstraintViolationError("aom_b", "; ".join(report.window_violations))
    if not report.within_tolerance:
        raise ConstraintViolationError("comb", f"gate plan residuals {report.residuals} Hz")
    if params.coprop_plan is not None:
        report = validate_plan(params.coprop_plan, params.planner)
        if report.window_violations:
            raise ConstraintViolationError("aom_b", "; ".join(report.window_violations))
        if not report.within_tolerance:
            raise ConstraintViolationError("comb", f"carrier plan residual {report.residuals} Hz")


def build_preset(preset: PresetId, params: PresetParams) -> ChainGraph:
    """Build and verify one of the preset phase-coherence circuits.

    Args:
        preset: THREE_PLL (one PLL per comb tooth) or SINGLE_PLL (one PLL for
            a single-tooth plan).
        params: Master oscillator, comb, planner input and plan.

    Returns:
        Chain configured for the entangling gate (switch a=3, b=1).

    Raises:
        ConstraintViolationError: Naming the node whose frequency constraint
            the plan cannot meet.
    """
    preset = PresetId(preset)
    _check_windows(params)

    inp = params.planner
    plan = params.gate_plan
    coprop = params.coprop_plan
    nu_r = inp.repetition_rate
    mo = params.master_frequency
    lo_b, hi_b = inp.aom_b_window

    if preset is PresetId.SINGLE_PLL:
        if plan.n != plan.m:
            raise ConstraintViolationError("pll_1", f"single-PLL circuit needs n == m, got {plan.n}, {plan.m}")
        if coprop is not None and coprop.p != plan.n:
            raise ConstraintViolationError("pll_1", f"single-PLL circuit needs p == n, got p={coprop.p}")
        red_pll = _pll("pll_1", plan.n, params)
        blue_pll = red_pll
        coprop_pll = red_pll if coprop is not None else None
        plls = [red_pll]
    else:
        red_pll = _pll("pll_1", plan.n, params)
        blue_pll = _pll("pll_2", plan.m, params)
        plls = [red_pll, blue_pll]
        coprop_pll = None
        if coprop is not None:
            coprop_pll = _pll("pll_3", coprop.p, params)
            plls.append(coprop_pll)

    teeth = [plan.n, plan.m] + ([coprop.p] if coprop is not None else [])
    margin = params.comb.tooth_margin
    tooth_range = (max(1, min(teeth) - margin), max(teeth) + margin)

    # The red tone must follow +n·δr and the blue tone −m·δr.
    red_leg = _feed_forward_leg("mixer_2r", red_pll.sign, red_pll.lock_frequency, plan.nu_b_red, +1)
    blue_leg = _feed_forward_leg("mixer_2b", blue_pll.sign, blue_pll.lock_frequency, plan.nu_b_blue, -1)

    microwave = inp.qubit_frequency - mo
    if microwave == 0:
        raise ConstraintViolationError("awg_mw", "qubit frequency equals the master oscillator")

    nodes: list = [
        MasterOscillator(name="mo", frequency=mo),
        CombSource(
            name="comb",
            repetition_rate=nu_r,
            drift=params.comb.drift,
            tooth_range=tooth_range,
            phase_offset=params.comb.phase_offset,
        ),
        Mixer(
            name="mixer_1",
            mode=MixerMode.DIFFERENCE,
            passband=(0.5e6, max(p.lock_frequency for p in plls) + nu_r),
        ),
        *plls,
        AWG(
            name="awg_gate",
            tones=(
                Tone(frequency=red_leg.awg_frequency, phase=red_leg.awg_phase(params.phase_red)),
                Tone(frequency=blue_leg.awg_frequency, phase=blue_leg.awg_phase(params.phase_blue)),
            ),
        ),
        AWG(name="awg_mw", tones=(Tone(frequency=abs(microwave)),)),
        Switch(name=SWITCH_A, position=GATE_SWITCHES[SWITCH_A]),
        Mixer(name="mixer_2r", mode=red_leg.mode, passband=(lo_b, hi_b)),
        Mixer(name="mixer_2b", mode=blue_leg.mode, passband=(lo_b, hi_b)),
        Combiner(name="combiner_gate"),
        Mixer(
            name="mixer_3",
            mode=MixerMode.SUM if microwave > 0 else MixerMode.DIFFERENCE,
            passband=(inp.qubit_frequency - nu_r / 2, inp.qubit_frequency + nu_r / 2),
        ),
        Switch(name=SWITCH_B, position=GATE_SWITCHES[SWITCH_B]),
        AOM(
            name="aom_b",
            center=(lo_b + hi_b) / 2,
            bandwidth=hi_b - lo_b,
            sign=1,
        ),
        AOM(
            name="aom_a",
            center=sum(inp.aom_a_window) / 2,
            bandwidth=inp.aom_a_window[1] - inp.aom_a_window[0],
            sign=-plan.aom_a_sign,
            drive_tones=(Tone(frequency=plan.nu_a, phase=params.phase_a),),
        ),
    ]
    edges: list[Edge] = [
        Edge(source="comb", target="mixer_1", port=0),
        Edge(source="mo", target="mixer_1", port=1),
        *(Edge(source="mixer_1", target=p.name) for p in plls),
        Edge(source="awg_mw", target=SWITCH_A, port=1),
        Edge(source="awg_gate", target=SWITCH_A, port=3),
        *_leg_edges("mixer_2r", red_pll.name, SWITCH_A, red_leg, tap=3),
        *_leg_edges("mixer_2b", blue_pll.name, SWITCH_A, blue_leg, tap=3),
        Edge(source="mixer_2r", target="combiner_gate", port=0),
        Edge(source="mixer_2b", target="combiner_gate", port=1),
        Edge(source="mo", target="mixer_3", port=0),
        Edge(source=SWITCH_A, target="mixer_3", port=1, tap=1),
        Edge(source="combiner_gate", target=SWITCH_B, port=1),
        Edge(source=SWITCH_B, target="aom_b"),
    ]

    paths = {
        Transition.RED_SIDEBAND: TransitionPath(
            transition=Transition.RED_SIDEBAND,
            target_frequency=inp.red_target,
            switches=GATE_SWITCHES,
            tooth=plan.n,
            absorb_from="aom_a",
            emit_into="aom_b",
        ),
        Transition.BLUE_SIDEBAND: TransitionPath(
            transition=Transition.BLUE_SIDEBAND,
            target_frequency=inp.blue_target,
            switches=GATE_SWITCHES,
            tooth=plan.m,
            absorb_from="aom_b",
            emit_into="aom_a",
        ),
        Transition.MICROWAVE: TransitionPath(
            transition=Transition.MICROWAVE,
            target_frequency=inp.qubit_frequency,
            switches=MICROWAVE_SWITCHES,
            source="mixer_3",
        ),
    }

    if coprop is not None:
        # One carrier tone follows the comb, the other is static. The
        # tracked tone carries −p·δr in the beat: absorbed tone (B1) when the
        # tooth lies below the master oscillator, emitted tone (B2) above.
        tracked, static = (
            (coprop.nu_b2, coprop.nu_b1) if coprop_pll.sign > 0 else (coprop.nu_b1, coprop.nu_b2)
        )
        coprop_leg = _feed_forward_leg(
            "mixer_c", coprop_pll.sign, coprop_pll.lock_frequency, tracked, coprop_pll.sign
        )
        nodes += [
            AWG(name="awg_coprop", tones=(Tone(frequency=coprop_leg.awg_frequency),)),
            AWG(name="awg_static", tones=(Tone(frequency=static),)),
            Mixer(name="mixer_c", mode=coprop_leg.mode, passband=(lo_b, hi_b)),
            Combiner(name="combiner_coprop"),
        ]
        edges += [
            Edge(source="awg_coprop", target=SWITCH_A, port=2),
            *_leg_edges("mixer_c", coprop_pll.name, SWITCH_A, coprop_leg, tap=2),
            Edge(source="mixer_c", target="combiner_coprop", port=0),
            Edge(source="awg_static", target="combiner_coprop", port=1),
            Edge(source="combiner_coprop", target=SWITCH_B, port=2),
        ]
        paths[Transition.CARRIER_COPROPAGATING] = TransitionPath(
            transition=Transition.CARRIER_COPROPAGATING,
            target_frequency=inp.qubit_frequency,
            switches=COPROP_SWITCHES,
            tooth=coprop.p,
            absorb_from="aom_b",
            emit_into="aom_b",
        )

    chain = ChainGraph(
        nodes=tuple(nodes), edges=tuple(edges), preset=preset, comb="comb", paths=paths
    )
    _verify(chain, params)
    logger.info(
        f"Built {preset.value} chain: PLLs "
        + ", ".join(f"{p.name}={p.lock_frequency / 1e6:.3f} MHz" for p in plls)
    )
    return chain


def _verify(chain: ChainGraph, params: PresetParams) -> None:
    """Evaluate the drift-free chain in every configuration and confirm each
    feed-forward leg emits exactly its planned tone."""
    quiet = chain.replace_node("comb", drift=DriftProfile.zero())
    tolerance = max(params.planner.tolerance, 1e-3)
    for transition in quiet.paths:
        configured = configure_for(quiet, transition)
        try:
            outputs = propagate(configured, 0.0)
            beat = effective_drive(configured, 0.0, transition)
        except ChainError as e:
            raise ConstraintViolationError(getattr(e, "node", "chain"), str(e)) from e
        for leg in ("mixer_2r", "mixer_2b", "mixer_c"):
            tones = outputs.get(leg, [])
            if len(tones) > 1:
                freqs = ", ".join(f"{t.frequency / 1e6:.4f}" for t in tones)
                raise ConstraintViolationError(leg, f"spurious products in passband ({freqs} MHz)")
        target = configured.paths[transition].target_frequency
        if abs(beat.frequency - target) > tolerance:
            raise ConstraintViolationError(
                "aom_b", f"{transition.value} beat {beat.frequency} Hz misses {target} Hz"
            )


def configure_for(chain: ChainGraph, transition: Transition) -> ChainGraph:
    """Copy of ``chain`` with switches set for ``transition``."""
    path = chain.paths.get(Transition(transition))
    if path is None:
        raise ConstraintViolationError("chain", f"no path for {Transition(transition).value}")
    changes = {
        name: {"position": position}
        for name, position in path.switches.items()
        if chain.node(name).position != position
    }
    return chain.replace_nodes(changes) if changes else chain


def with_feed_forward(chain: ChainGraph, enabled: bool) -> ChainGraph:
    """Copy of ``chain`` with every PLL locked (enabled) or free-running."""
    changes = {node.name: {"bypassed": not enabled} for node in chain.nodes_of_kind("pll")}
    return chain.replace_nodes(changes)


def awg_frequencies(chain: ChainGraph) -> dict[str, list[float]]:
    """AWG tone frequencies in Hz, keyed by AWG node."""
    return {node.name: [tone.frequency for tone in node.tones] for node in chain.nodes_of_kind("awg")}
