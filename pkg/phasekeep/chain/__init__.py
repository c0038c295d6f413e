"""RF/optical signal chain: tone propagation, presets and drift analysis."""

from .errors import (
    ChainConfigurationError,
    ChainError,
    ConstraintViolationError,
    EmptyOutputError,
    LockError,
    TopologyError,
    ToothOutOfRangeError,
)
from .evaluate import comb_tooth, drift_sensitivity, effective_drive, propagate
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
    NodeSpec,
    PresetId,
    Switch,
    Tone,
    Transition,
    TransitionPath,
)
from .presets import (
    CombSpec,
    PresetParams,
    awg_frequencies,
    build_preset,
    configure_for,
    with_feed_forward,
)
from .topology import TopologyAnalyzer, analyze_topology

__all__ = [
    "AOM",
    "AWG",
    "PLL",
    "ChainConfigurationError",
    "ChainError",
    "ChainGraph",
    "CombSource",
    "CombSpec",
    "Combiner",
    "ConstraintViolationError",
    "DriftProfile",
    "Edge",
    "EmptyOutputError",
    "LockError",
    "MasterOscillator",
    "Mixer",
    "MixerMode",
    "NodeSpec",
    "PresetId",
    "PresetParams",
    "Switch",
    "Tone",
    "TopologyAnalyzer",
    "TopologyError",
    "ToothOutOfRangeError",
    "Transition",
    "TransitionPath",
    "analyze_topology",
    "awg_frequencies",
    "build_preset",
    "comb_tooth",
    "configure_for",
    "drift_sensitivity",
    "effective_drive",
    "propagate",
    "with_feed_forward",
]
