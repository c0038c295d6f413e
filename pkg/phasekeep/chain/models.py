"""Signal-chain models: tones, drift profiles, nodes and the chain graph."""

from __future__ import annotations

import math
from enum import Enum
from typing import Annotated, Literal, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, PrivateAttr, field_validator, model_validator


class Tone(BaseModel):
    """A single (frequency, phase) pair carried by a signal line.

    ``phase`` is the excess phase relative to the nominal, drift-free frame,
    kept unwrapped.
    """

    model_config = ConfigDict(frozen=True)

    frequency: float = Field(..., allow_inf_nan=False, description="Frequency in Hz")
    phase: float = Field(default=0.0, allow_inf_nan=False, description="Phase in radians")

    def plus(self, other: Tone) -> Tone:
        return Tone(frequency=self.frequency + other.frequency, phase=self.phase + other.phase)

    def minus(self, other: Tone) -> Tone:
        return Tone(frequency=self.frequency - other.frequency, phase=self.phase - other.phase)

    def folded(self) -> Tone:
        """Return the tone with a non-negative frequency (real-signal folding)."""
        if self.frequency < 0:
            return Tone(frequency=-self.frequency, phase=-self.phase)
        return self

    def scaled(self, sign: int) -> Tone:
        return Tone(frequency=sign * self.frequency, phase=sign * self.phase)


class DriftProfile(BaseModel):
    """Piecewise-constant repetition-rate offset δr(t).

    Segment ``i`` holds ``offsets[i]`` on ``[times[i], times[i+1])``; the last
    segment extends forever. The profile is zero before its first sample.
    """

    model_config = ConfigDict(frozen=True)

    times: tuple[float, ...] = Field(default=(), description="Sample times in s")
    offsets: tuple[float, ...] = Field(default=(), description="δr values in Hz")

    @model_validator(mode="after")
    def _check_samples(self) -> DriftProfile:
        if len(self.times) != len(self.offsets):
            raise ValueError("times and offsets must have equal length")
        if not all(math.isfinite(v) for v in (*self.times, *self.offsets)):
            raise ValueError("drift samples must be finite")
        if self.times and self.times[0] < 0:
            raise ValueError("drift profile must start at t >= 0")
        if any(b <= a for a, b in zip(self.times, self.times[1:])):
            raise ValueError("drift sample times must be strictly increasing")
        return self

    @classmethod
    def zero(cls) -> DriftProfile:
        return cls()

    @classmethod
    def constant(cls, offset: float) -> DriftProfile:
        return cls(times=(0.0,), offsets=(offset,))

    def at(self, t: float) -> float:
        """δr at time ``t`` in Hz."""
        if not self.times or t < self.times[0]:
            return 0.0
        idx = int(np.searchsorted(self.times, t, side="right")) - 1
        return self.offsets[idx]

    def integral(self, t: float) -> float:
        """Closed-form ∫₀ᵗ δr(τ)dτ in Hz·s."""
        if not self.times or t <= self.times[0]:
            return 0.0
        times = np.asarray(self.times)
        offsets = np.asarray(self.offsets)
        idx = int(np.searchsorted(times, t, side="right")) - 1
        full = np.sum(offsets[:idx] * np.diff(times)[:idx])
        return float(full + offsets[idx] * (t - times[idx]))


class MixerMode(str, Enum):
    """Mixer sideband selection."""

    SUM = "sum"
    DIFFERENCE = "difference"


class MasterOscillator(BaseModel):
    """Fixed RF reference (the master oscillator)."""

    model_config = ConfigDict(frozen=True)

    kind: Literal["master_oscillator"] = "master_oscillator"
    name: str
    frequency: float = Field(..., gt=0, description="ν_MO in Hz")
    phase: float = Field(default=0.0, allow_inf_nan=False)


class CombSource(BaseModel):
    """Frequency comb seen through a fast photodiode.

    The RF output carries the harmonics k·(νr + δr) for every tooth index
    ``k >= 1`` inside ``tooth_range``.
    """

    model_config = ConfigDict(frozen=True)

    kind: Literal["comb"] = "comb"
    name: str
    repetition_rate: float = Field(..., gt=0, description="Nominal νr in Hz")
    drift: DriftProfile = Field(default_factory=DriftProfile)
    tooth_range: tuple[int, int] = Field(..., description="Inclusive tooth index interval")
    phase_offset: float = Field(default=0.0, allow_inf_nan=False, description="Static comb phase")

    @field_validator("tooth_range")
    @classmethod
    def _check_range(cls, value: tuple[int, int]) -> tuple[int, int]:
        if value[0] > value[1]:
            raise ValueError(f"empty tooth range {value}")
        return value


class Mixer(BaseModel):
    """Two-input RF mixer followed by a hard passband filter.

    Port 0 is the minuend for difference mixing.
    """

    model_config = ConfigDict(frozen=True)

    kind: Literal["mixer"] = "mixer"
    name: str
    mode: MixerMode
    passband: tuple[float, float] = Field(..., description="Hz interval kept after mixing")


class Combiner(BaseModel):
    """RF power combiner: union of its inputs, optionally band-limited."""

    model_config = ConfigDict(frozen=True)

    kind: Literal["combiner"] = "combiner"
    name: str
    passband: tuple[float, float] | None = None


class PLL(BaseModel):
    """Phase-locked oscillator following one beat-note.

    ``sign`` is +1 when the locked tooth lies above the master oscillator
    (k·νr − ν_MO) and −1 when it lies below.
    """

    model_config = ConfigDict(frozen=True)

    kind: Literal["pll"] = "pll"
    name: str
    lock_tooth: int = Field(..., description="Comb tooth index the loop follows")
    sign: Literal[1, -1]
    lock_frequency: float = Field(..., gt=0, description="Nominal beat-note in Hz")
    capture_range: float = Field(default=1e6, gt=0, description="Capture half-width in Hz")
    bypassed: bool = Field(default=False, description="Free-run at the nominal frequency")
    phase_noise_std: float = Field(default=0.0, ge=0, description="Additive phase noise in rad")


class AWG(BaseModel):
    """Arbitrary waveform generator output."""

    model_config = ConfigDict(frozen=True)

    kind: Literal["awg"] = "awg"
    name: str
    tones: tuple[Tone, ...] = ()


class AOM(BaseModel):
    """Acousto-optic modulator in a given diffraction order."""

    model_config = ConfigDict(frozen=True)

    kind: Literal["aom"] = "aom"
    name: str
    center: float = Field(..., gt=0, description="Center frequency in Hz")
    bandwidth: float = Field(..., gt=0, description="Full bandwidth in Hz")
    sign: Literal[1, -1] = Field(default=1, description="Diffraction order sign")
    drive_tones: tuple[Tone, ...] = Field(default=(), description="Static RF drive")

    @property
    def window(self) -> tuple[float, float]:
        half = self.bandwidth / 2
        return self.center - half, self.center + half

    def accepts(self, frequency: float) -> bool:
        lo, hi = self.window
        return lo <= frequency <= hi

    @model_validator(mode="after")
    def _check_drive(self) -> AOM:
        for tone in self.drive_tones:
            if not self.accepts(tone.frequency):
                raise ValueError(
                    f"{self.name}: drive tone {tone.frequency} Hz outside window {self.window}"
                )
        return self


class Switch(BaseModel):
    """RF switch; see ``Edge.tap`` for ganged outputs."""

    model_config = ConfigDict(frozen=True)

    kind: Literal["switch"] = "switch"
    name: str
    position: int = Field(..., ge=0)


NodeSpec = Annotated[
    Union[MasterOscillator, CombSource, Mixer, Combiner, PLL, AWG, AOM, Switch],
    Field(discriminator="kind"),
]


class Edge(BaseModel):
    """Directed signal line ``source -> target``.

    ``port`` orders inputs at the target. ``tap`` marks a switch output that
    only carries signal while the switch sits at that position.
    """

    model_config = ConfigDict(frozen=True)

    source: str
    target: str
    port: int = Field(default=0, ge=0)
    tap: int | None = None


class Transition(str, Enum):
    """Qubit transitions the chain can drive."""

    CARRIER_COPROPAGATING = "carrier_copropagating"
    RED_SIDEBAND = "red_sideband"
    BLUE_SIDEBAND = "blue_sideband"
    MICROWAVE = "microwave"


class TransitionPath(BaseModel):
    """How the ion sees one transition in a built chain.

    Raman paths absorb from one comb tooth through ``absorb_from`` and emit
    through ``emit_into``; the microwave path reads ``source`` directly.
    """

    model_config = ConfigDict(frozen=True)

    transition: Transition
    target_frequency: float = Field(..., description="Nominal resonance in Hz")
    switches: dict[str, int] = Field(default_factory=dict)
    tooth: int | None = None
    absorb_from: str | None = None
    emit_into: str | None = None
    source: str | None = None
    resonance_window: float = Field(default=2e6, description="Max beat offset from target in Hz")


class PresetId(str, Enum):
    """Built-in circuit variants."""

    THREE_PLL = "three_pll"
    SINGLE_PLL = "single_pll"


class ChainGraph(BaseModel):
    """Immutable RF/optical signal graph.

    Topology is validated once at construction (through DuckDB) and the
    evaluation order is cached.
    """

    model_config = ConfigDict(frozen=True)

    nodes: tuple[NodeSpec, ...]
    edges: tuple[Edge, ...] = ()
    preset: PresetId | None = None
    comb: str | None = Field(default=None, description="Name of the comb node")
    paths: dict[Transition, TransitionPath] = Field(default_factory=dict)

    _order: tuple[str, ...] = PrivateAttr(default=())
    _by_name: dict[str, NodeSpec] = PrivateAttr(default_factory=dict)
    _inputs: dict[str, tuple[Edge, ...]] = PrivateAttr(default_factory=dict)

    def model_post_init(self, __context) -> None:
        from .topology import analyze_topology

        self._order = analyze_topology(self.nodes, self.edges)
        self._by_name = {node.name: node for node in self.nodes}
        inputs: dict[str, list[Edge]] = {node.name: [] for node in self.nodes}
        for edge in self.edges:
            inputs[edge.target].append(edge)
        self._inputs = {
            name: tuple(sorted(edges, key=lambda e: e.port)) for name, edges in inputs.items()
        }

    @property
    def order(self) -> tuple[str, ...]:
        return self._order

    def node(self, name: str) -> NodeSpec:
        try:
            return self._by_name[name]
        except KeyError as e:
            raise KeyError(f"Unknown chain node: {name}") from e

    def inputs_of(self, name: str) -> tuple[Edge, ...]:
        return self._inputs[name]

    def replace_nodes(self, changes: dict[str, dict]) -> ChainGraph:
        """Return a copy with the named nodes' fields updated."""
        unknown = set(changes) - set(self._by_name)
        if unknown:
            raise KeyError(f"Unknown chain node(s): {', '.join(sorted(unknown))}")
        nodes = tuple(
            node.model_copy(update=changes[node.name]) if node.name in changes else node
            for node in self.nodes
        )
        return ChainGraph(
            nodes=nodes, edges=self.edges, preset=self.preset, comb=self.comb, paths=self.paths
        )

    def replace_node(self, name: str, **changes) -> ChainGraph:
        return self.replace_nodes({name: changes})

    def nodes_of_kind(self, kind: str) -> list[NodeSpec]:
        return [node for node in self.nodes if node.kind == kind]

    def to_json(self, indent: int | None = 2) -> str:
        return self.model_dump_json(indent=indent)
