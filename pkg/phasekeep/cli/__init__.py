"""Command-line subcommands."""

from .commands import (
    EXIT_FAILED,
    EXIT_OK,
    EXIT_USAGE,
    SENSITIVITY_TOLERANCE,
    InfeasiblePlanError,
    build_chain,
    cmd_chain_verify,
    cmd_list_scenarios,
    cmd_plan,
    cmd_run,
)

__all__ = [
    "EXIT_FAILED",
    "EXIT_OK",
    "EXIT_USAGE",
    "SENSITIVITY_TOLERANCE",
    "InfeasiblePlanError",
    "build_chain",
    "cmd_chain_verify",
    "cmd_list_scenarios",
    "cmd_plan",
    "cmd_run",
]
