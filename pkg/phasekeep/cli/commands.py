"""Subcommand implementations.

Each command takes the parsed argparse namespace and returns an exit code:
0 on success, 1 for usage or configuration errors, 2 when a plan is
infeasible or a chain fails its drift contract.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from pydantic import ValidationError

from ..chain import (
    ChainError,
    ChainGraph,
    awg_frequencies,
    build_preset,
    configure_for,
    drift_sensitivity,
    with_feed_forward,
)
from ..config import ConfigError, PhaseKeepConfig, config_digest, load_config
from ..errors import PhaseKeepError
from ..experiments import (
    SCENARIOS,
    DegenerateFitError,
    ExperimentError,
    ResultWriter,
    known_scenarios,
    run_scenario,
)
from ..planner import (
    PlanDiagnostics,
    coprop_plans_to_frame,
    gate_plans_to_frame,
    plan_copropagating,
    plan_gate,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_FAILED = 2

# |∂f/∂δr| below this counts as drift-free.
SENSITIVITY_TOLERANCE = 1e-6


class InfeasiblePlanError(PhaseKeepError):
    """The planner found no plan for the configured inputs."""

    def __init__(self, label: str, diagnostics: PlanDiagnostics | None):
        self.diagnostics = diagnostics
        super().__init__(f"no {label} plan found")


def _err(message: str) -> None:
    print(message, file=sys.stderr)


def _report_diagnostics(diagnostics: PlanDiagnostics | None) -> None:
    if diagnostics is None:
        return
    if diagnostics.nearest_pair is not None:
        n, m = diagnostics.nearest_pair
        _err(f"  nearest teeth: n={n}, m={m}")
    if diagnostics.nearest_tooth is not None:
        _err(f"  nearest tooth: p={diagnostics.nearest_tooth}")
    for violation in diagnostics.violations:
        _err(f"  {violation}")


def _load(args: argparse.Namespace) -> PhaseKeepConfig | None:
    try:
        return load_config(args.config)
    except ConfigError as e:
        _err(f"{args.config}: {e}")
        return None


def build_chain(config: PhaseKeepConfig) -> ChainGraph:
    """Plan the gate (and carrier, if asked) and build the configured preset.

    Raises:
        ConfigError: The plan or chain section is missing, or ``plan_index``
            is past the end of the plan table.
        InfeasiblePlanError: The planner found nothing.
        ConstraintViolationError: The preset cannot realize the plan.
    """
    if config.plan is None:
        raise ConfigError("section required", field="plan")
    if config.chain is None:
        raise ConfigError("section required", field="chain")

    inp = config.plan.to_planner_input()
    plans = plan_gate(inp)
    if not plans:
        raise InfeasiblePlanError("gate", plans.diagnostics)
    index = config.chain.plan_index
    if index >= len(plans):
        raise ConfigError(f"only {len(plans)} plan(s) available", field="chain.plan_index")

    coprop = None
    if config.chain.copropagating:
        coprop_plans = plan_copropagating(inp)
        if not coprop_plans:
            raise InfeasiblePlanError("copropagating", coprop_plans.diagnostics)
        # A single PLL also serves the carrier, so its tooth must match.
        matching = [p for p in coprop_plans if p.p == plans[index].n]
        coprop = matching[0] if matching else coprop_plans[0]

    params = config.chain.to_preset_params(inp, plans[index], coprop)
    return build_preset(config.chain.preset, params)


def cmd_plan(args: argparse.Namespace) -> int:
    """Solve the gate and copropagating plans and write both tables."""
    config = _load(args)
    if config is None:
        return EXIT_USAGE
    if config.plan is None:
        _err(f"{args.config}: plan: section required")
        return EXIT_USAGE

    inp = config.plan.to_planner_input()
    gate = plan_gate(inp)
    coprop = plan_copropagating(inp)

    writer = ResultWriter(Path(args.out), config_digest(args.config), args.format)
    writer.write_table("gate_plans", gate_plans_to_frame(gate))
    writer.write_table("coprop_plans", coprop_plans_to_frame(coprop))

    if not coprop:
        _err("no copropagating plan:")
        _report_diagnostics(coprop.diagnostics)
    if not gate:
        _err("no gate plan:")
        _report_diagnostics(gate.diagnostics)
        return EXIT_FAILED

    best = gate[0]
    print(f"{len(gate)} gate plan(s); best:")
    print(
        f"  n={best.n} m={best.m} sA={best.aom_a_sign:+d} νA={best.nu_a / 1e6:.4f} MHz "
        f"νB,r={best.nu_b_red / 1e6:.4f} MHz νB,b={best.nu_b_blue / 1e6:.4f} MHz"
    )
    if coprop:
        print(f"{len(coprop)} copropagating plan(s); best: p={coprop[0].p}")
    return EXIT_OK


def cmd_chain_verify(args: argparse.Namespace) -> int:
    """Build the configured chain and check every path is drift-free."""
    config = _load(args)
    if config is None:
        return EXIT_USAGE

    try:
        chain = build_chain(config)
    except ConfigError as e:
        _err(f"{args.config}: {e}")
        return EXIT_USAGE
    except InfeasiblePlanError as e:
        _err(f"{e}:")
        _report_diagnostics(e.diagnostics)
        return EXIT_FAILED
    except ChainError as e:
        _err(f"FAIL: {e}")
        return EXIT_FAILED

    print(f"chain {chain.preset.value}:")
    for pll in chain.nodes_of_kind("pll"):
        print(f"  {pll.name}: lock {pll.lock_frequency / 1e6:.6f} MHz, tooth {pll.lock_tooth}")
    for name, freqs in awg_frequencies(chain).items():
        print(f"  {name}: " + ", ".join(f"{f / 1e6:.6f} MHz" for f in freqs))

    bypassed = with_feed_forward(chain, False)
    passed = True
    print(f"  {'transition':<24}{'feed-forward':>16}{'bypassed':>16}")
    for transition in chain.paths:
        on = drift_sensitivity(configure_for(chain, transition), transition)
        off = drift_sensitivity(configure_for(bypassed, transition), transition)
        ok = abs(on) < SENSITIVITY_TOLERANCE
        passed &= ok
        print(f"  {transition.value:<24}{on:>16.3e}{off:>16.3f}{'' if ok else '  <-'}")

    if args.out is not None:
        writer = ResultWriter(Path(args.out), config_digest(args.config))
        seed = config.scenario.seed if config.scenario is not None else None
        writer.write_document(
            f"chain_{chain.preset.value}", "chain", chain.model_dump(mode="json"), seed
        )

    logger.info(f"Chain {chain.preset.value}: drift contract {'passed' if passed else 'failed'}")
    print("PASS" if passed else "FAIL")
    return EXIT_OK if passed else EXIT_FAILED


def cmd_run(args: argparse.Namespace) -> int:
    """Run the configured scenario and write its result table."""
    config = _load(args)
    if config is None:
        return EXIT_USAGE
    if config.scenario is None:
        _err(f"{args.config}: scenario: section required")
        return EXIT_USAGE
    if config.scenario.id not in known_scenarios():
        _err(
            f"unknown scenario '{config.scenario.id}'; known: " + ", ".join(known_scenarios())
        )
        return EXIT_USAGE

    chain = None
    if config.scenario.use_chain:
        try:
            chain = build_chain(config)
        except ConfigError as e:
            _err(f"{args.config}: {e}")
            return EXIT_USAGE
        except InfeasiblePlanError as e:
            _err(f"{e}:")
            _report_diagnostics(e.diagnostics)
            return EXIT_FAILED
        except ChainError as e:
            _err(f"chain: {e}")
            return EXIT_FAILED

    try:
        scenario = config.to_scenario_config(seed=args.seed, chain=chain)
    except ValidationError as e:
        first = e.errors()[0]
        _err(f"{args.config}: scenario: {first['msg']}")
        return EXIT_USAGE

    try:
        result = run_scenario(scenario)
    except DegenerateFitError as e:
        _err(f"fit failed: {e}")
        return EXIT_FAILED
    except ExperimentError as e:
        _err(f"{scenario.scenario.value}: {e}")
        return EXIT_USAGE

    writer = ResultWriter(Path(args.out), config_digest(args.config), args.format)
    for path in writer.write_run(result):
        print(f"wrote {path}")
    for key, value in result.summary.items():
        print(f"  {key} = {value:.6g}")
    return EXIT_OK


def cmd_list_scenarios(args: argparse.Namespace) -> int:
    for scenario, entry in SCENARIOS.items():
        print(f"{scenario.value:<16}{entry.description}")
    return EXIT_OK

