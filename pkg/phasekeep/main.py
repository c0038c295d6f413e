"""Entry point for the phasekeep command line."""

from __future__ import annotations

import argparse
import logging
import sys

from .cli import (
    EXIT_USAGE,
    cmd_chain_verify,
    cmd_list_scenarios,
    cmd_plan,
    cmd_run,
)
from .experiments import OutputFormat


def _seed(value: str) -> int:
    seed = int(value)
    if not 0 <= seed < 2**64:
        raise argparse.ArgumentTypeError(f"seed must be an unsigned 64-bit integer, got {value}")
    return seed


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="phasekeep",
        description="Comb frequency planner and phase-coherence simulator for trapped-ion gates",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="Debug logging on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_config(p: argparse.ArgumentParser) -> None:
        p.add_argument("--config", required=True, help="YAML configuration file")

    p = sub.add_parser("plan", help="Search comb teeth and AOM drives")
    with_config(p)
    p.add_argument("--out", default=".", help="Output directory")
    p.add_argument("--format", choices=[f.value for f in OutputFormat], default="both")
    p.set_defaults(handler=cmd_plan)

    p = sub.add_parser("chain-verify", help="Build the chain and check drift sensitivity")
    with_config(p)
    p.add_argument("--out", default=None, help="Also write the chain graph as JSON here")
    p.set_defaults(handler=cmd_chain_verify)

    p = sub.add_parser("run", help="Run the configured scenario")
    with_config(p)
    p.add_argument("--out", default=".", help="Output directory")
    p.add_argument("--seed", type=_seed, default=None, help="Override the configured seed")
    p.add_argument("--format", choices=[f.value for f in OutputFormat], default="both")
    p.set_defaults(handler=cmd_run)

    p = sub.add_parser("list-scenarios", help="List registered scenarios")
    p.set_defaults(handler=cmd_list_scenarios)

    return parser


def main(argv: list[str] | None = None) -> int:
    """Run phasekeep."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits 2 on usage errors; 2 means a failed contract here.
        return EXIT_USAGE if e.code else 0

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    return args.handler(args)


if __name__ == "__main__":
    sys.exit(main())
