"""Tests for DuckDB-backed chain topology checks."""

from __future__ import annotations

import pytest

from phasekeep.chain import (
    AWG,
    PLL,
    ChainGraph,
    Combiner,
    Edge,
    Mixer,
    MixerMode,
    Tone,
    TopologyAnalyzer,
    TopologyError,
    analyze_topology,
)


def _awg(name: str) -> AWG:
    return AWG(name=name, tones=(Tone(frequency=1e6),))


def _mixer(name: str) -> Mixer:
    return Mixer(name=name, mode=MixerMode.SUM, passband=(0.0, 1e9))


def test_evaluation_order_respects_edges():
    nodes = (_awg("b"), _awg("a"), _mixer("m"), Combiner(name="c"))
    edges = (
        Edge(source="a", target="m", port=0),
        Edge(source="b", target="m", port=1),
        Edge(source="m", target="c"),
        Edge(source="a", target="c", port=1),
    )
    assert analyze_topology(nodes, edges) == ("a", "b", "m", "c")


def test_cycle_is_reported():
    nodes = (Combiner(name="x"), Combiner(name="y"), Combiner(name="z"))
    edges = (
        Edge(source="x", target="y"),
        Edge(source="y", target="z"),
        Edge(source="z", target="x"),
    )
    analyzer = TopologyAnalyzer.from_chain(nodes, edges)
    try:
        cycles = analyzer.detect_cycles()
    finally:
        analyzer.close()
    assert cycles
    assert cycles[0][0] == cycles[0][-1]
    assert set(cycles[0]) == {"x", "y", "z"}
    with pytest.raises(TopologyError, match="Signal loop"):
        ChainGraph(nodes=nodes, edges=edges)


def test_mixer_needs_two_inputs():
    with pytest.raises(TopologyError, match="expected 2"):
        ChainGraph(nodes=(_awg("a"), _mixer("m")), edges=(Edge(source="a", target="m"),))


def test_mixer_inputs_must_use_ports_zero_and_one():
    nodes = (_awg("a"), _awg("b"), _mixer("m"))
    edges = (Edge(source="a", target="m", port=0), Edge(source="b", target="m", port=2))
    with pytest.raises(TopologyError, match="ports"):
        ChainGraph(nodes=nodes, edges=edges)


def test_pll_needs_exactly_one_input():
    nodes = (PLL(name="p", lock_tooth=1, sign=1, lock_frequency=1e6),)
    with pytest.raises(TopologyError):
        ChainGraph(nodes=nodes)


def test_unknown_edge_endpoint():
    with pytest.raises(TopologyError, match="unknown nodes"):
        ChainGraph(nodes=(_awg("a"),), edges=(Edge(source="a", target="ghost"),))


def test_duplicate_names():
    with pytest.raises(TopologyError, match="Duplicate"):
        ChainGraph(nodes=(_awg("a"), _awg("a")))


def test_preset_chain_is_acyclic_with_cached_order(three_pll_chain):
    order = three_pll_chain.order
    assert set(order) == {node.name for node in three_pll_chain.nodes}
    position = {name: i for i, name in enumerate(order)}
    for edge in three_pll_chain.edges:
        assert position[edge.source] < position[edge.target]
