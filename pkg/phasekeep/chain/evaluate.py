"""Frequency and phase propagation through a signal chain."""

from __future__ import annotations

import logging
import math

import numpy as np

from .errors import (
    ChainConfigurationError,
    EmptyOutputError,
    LockError,
    ToothOutOfRangeError,
)
from .models import (
    AOM,
    AWG,
    PLL,
    ChainGraph,
    CombSource,
    Combiner,
    DriftProfile,
    MasterOscillator,
    Mixer,
    MixerMode,
    Switch,
    Tone,
    Transition,
)

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi


def comb_tooth(comb: CombSource, k: int, t: float) -> Tone:
    """Tooth ``k`` of the comb relative to the reference tooth.

    Frequency is k·(νr + δr(t)); phase is 2π·k·∫₀ᵗ δr plus the static offset.
    Tooth 0 is the reference and is always available.

    Raises:
        ToothOutOfRangeError: If ``k`` lies outside the comb's tooth range.
    """
    lo, hi = comb.tooth_range
    if k != 0 and not lo <= k <= hi:
        raise ToothOutOfRangeError(f"{comb.name}: tooth {k} outside range [{lo}, {hi}]")
    drift = comb.drift
    return Tone(
        frequency=k * (comb.repetition_rate + drift.at(t)),
        phase=TWO_PI * k * drift.integral(t) + comb.phase_offset,
    )


def _rf_harmonics(comb: CombSource, t: float) -> list[Tone]:
    # The photodiode sees tooth differences, so the static offset drops out.
    lo, hi = comb.tooth_range
    reference = comb_tooth(comb, 0, t)
    return [comb_tooth(comb, k, t).minus(reference) for k in range(max(lo, 1), hi + 1)]


def _in_band(tone: Tone, band: tuple[float, float]) -> bool:
    return band[0] <= tone.frequency <= band[1]


def _mix(node: Mixer, ports: dict[int, list[Tone]]) -> list[Tone]:
    first, second = ports.get(0, []), ports.get(1, [])
    if node.mode is MixerMode.SUM:
        products = [a.plus(b) for a in first for b in second]
    else:
        products = [a.minus(b).folded() for a in first for b in second]
    kept = [tone for tone in products if tone.frequency > 0 and _in_band(tone, node.passband)]
    if products and not kept:
        raise EmptyOutputError(node.name)
    if len(kept) < len(products):
        logger.debug(f"{node.name}: passband dropped {len(products) - len(kept)} products")
    return kept


def _lock(node: PLL, tones: list[Tone], rng: np.random.Generator | None) -> list[Tone]:
    if node.bypassed:
        output = Tone(frequency=node.lock_frequency, phase=0.0)
    else:
        captured = [
            tone for tone in tones if abs(tone.frequency - node.lock_frequency) <= node.capture_range
        ]
        if not captured:
            raise LockError(
                node.name, f"no beat-note within capture range of {node.lock_frequency} Hz"
            )
        if len(captured) > 1:
            freqs = ", ".join(f"{tone.frequency:.1f}" for tone in captured)
            raise LockError(node.name, f"ambiguous lock, several beat-notes in range ({freqs})")
        output = captured[0]
    if node.phase_noise_std > 0 and rng is not None:
        output = Tone(
            frequency=output.frequency,
            phase=output.phase + float(rng.normal(0.0, node.phase_noise_std)),
        )
    return [output]


def _diffract(node: AOM, tones: list[Tone]) -> list[Tone]:
    kept = []
    for tone in (*tones, *node.drive_tones):
        if node.accepts(tone.frequency):
            kept.append(tone.scaled(node.sign))
        else:
            logger.debug(f"{node.name}: tone at {tone.frequency} Hz outside AOM window")
    return kept


def _gather(chain: ChainGraph, name: str, outputs: dict[str, list[Tone]]) -> dict[int, list[Tone]]:
    ports: dict[int, list[Tone]] = {}
    for edge in chain.inputs_of(name):
        source = chain.node(edge.source)
        if isinstance(source, Switch) and edge.tap is not None and edge.tap != source.position:
            continue
        ports.setdefault(edge.port, []).extend(outputs[edge.source])
    return ports


def propagate(
    chain: ChainGraph, t: float, rng: np.random.Generator | None = None
) -> dict[str, list[Tone]]:
    """Evaluate every node's output tones at time ``t``.

    Args:
        chain: Validated chain graph.
        t: Evaluation time in seconds.
        rng: Random generator for PLL phase noise. Without one, PLLs are ideal.

    Returns:
        Dict mapping node name to its output tones.

    Raises:
        EmptyOutputError: If a mixer passband removes every product.
        LockError: If a PLL cannot find a unique beat-note.
    """
    outputs: dict[str, list[Tone]] = {}
    for name in chain.order:
        node = chain.node(name)
        ports = _gather(chain, name, outputs)
        flat = [tone for port in sorted(ports) for tone in ports[port]]

        if isinstance(node, MasterOscillator):
            result = [Tone(frequency=node.frequency, phase=node.phase)]
        elif isinstance(node, CombSource):
            result = _rf_harmonics(node, t)
        elif isinstance(node, AWG):
            result = list(node.tones)
        elif isinstance(node, Mixer):
            result = _mix(node, ports)
        elif isinstance(node, PLL):
            result = _lock(node, flat, rng)
        elif isinstance(node, AOM):
            result = _diffract(node, flat)
        elif isinstance(node, Switch):
            result = list(ports.get(node.position, []))
        elif isinstance(node, Combiner):
            result = flat if node.passband is None else [
                tone for tone in flat if _in_band(tone, node.passband)
            ]
        else:
            raise TypeError(f"Unsupported node kind: {node.kind}")

        outputs[name] = result
    return outputs


def _check_switches(chain: ChainGraph, transition: Transition) -> None:
    path = chain.paths.get(transition)
    if path is None:
        raise ChainConfigurationError(f"Chain has no path for {transition.value}")
    wrong = []
    for switch_name, wanted in path.switches.items():
        actual = chain.node(switch_name).position
        if actual != wanted:
            wrong.append(f"{switch_name} at {actual}, needs {wanted}")
    if wrong:
        raise ChainConfigurationError(f"{transition.value}: " + "; ".join(wrong))


def effective_drive(
    chain: ChainGraph,
    t: float,
    transition: Transition,
    rng: np.random.Generator | None = None,
) -> Tone:
    """Beat-note (frequency, phase) the ion sees for ``transition``.

    Raman paths combine comb tooth ``k`` with the absorbed AOM tone and
    subtract the emitted one; the tone pair closest to the nominal resonance
    is the one that drives the transition.

    Raises:
        ChainConfigurationError: If switches are not set for ``transition`` or
            no beat-note lies near resonance.
    """
    transition = Transition(transition)
    _check_switches(chain, transition)
    path = chain.paths[transition]
    outputs = propagate(chain, t, rng)

    if path.source is not None:
        candidates = list(outputs[path.source])
    else:
        comb = chain.node(chain.comb)
        tooth = comb_tooth(comb, path.tooth, t).minus(comb_tooth(comb, 0, t))
        absorbed = outputs[path.absorb_from]
        emitted = outputs[path.emit_into]
        same_beam = path.absorb_from == path.emit_into
        candidates = [
            tooth.plus(a).minus(e)
            for i, a in enumerate(absorbed)
            for j, e in enumerate(emitted)
            if not (same_beam and i == j)
        ]

    if not candidates:
        raise ChainConfigurationError(f"{transition.value}: no light reaches the ion")
    best = min(candidates, key=lambda tone: abs(tone.frequency - path.target_frequency))
    if abs(best.frequency - path.target_frequency) > path.resonance_window:
        raise ChainConfigurationError(
            f"{transition.value}: nearest beat-note {best.frequency:.1f} Hz is off resonance"
        )
    return best


def drift_sensitivity(chain: ChainGraph, transition: Transition, step: float = 100.0) -> float:
    """∂(beat frequency)/∂δr by finite perturbation of the repetition rate.

    The beat is affine in δr, so one forward difference about zero drift is
    exact up to rounding.
    """
    transition = Transition(transition)
    base = chain.replace_node(chain.comb, drift=DriftProfile.zero())
    bumped = chain.replace_node(chain.comb, drift=DriftProfile.constant(step))
    f0 = effective_drive(base, 0.0, transition).frequency
    f1 = effective_drive(bumped, 0.0, transition).frequency
    return (f1 - f0) / step
