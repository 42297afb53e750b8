#!/usr/bin/env python3
"""
Command-line entry point.

    hyperbessel eval --r 2 --gamma=-1/2 --param z=[1,0]
    hyperbessel certify --config certify.json --threads 4
"""
import argparse
import json
import logging
import sys
from typing import Dict, List, Optional

from pydantic import ValidationError

from algebra.errors import (
    GridExhaustedError,
    HyperBesselError,
    PrecisionError,
    ScalarOperatorError,
    WitnessFailure,
)

from .commands import EXIT_CONFIG, EXIT_REFUSAL, EXIT_TOLERANCE, CommandResult, run_command
from .config import COMMANDS, VERSION, default_log_level, load_config

logger = logging.getLogger(__name__)


def parse_params(items: Optional[List[str]]) -> Dict:
    """key=value pairs; values are parsed as JSON when possible, else kept as strings."""
    params = {}
    for item in items or []:
        if "=" not in item:
            raise ValueError(f"--param expects key=value, got {item!r}")
        key, value = item.split("=", 1)
        try:
            params[key] = json.loads(value)
        except json.JSONDecodeError:
            params[key] = value
    return params


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hyperbessel",
        description="Harmonic analysis and linear dynamics of the hyper-Bessel operator",
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--config", help="JSON config file; flags override its fields")
    parser.add_argument("--r", type=int, help="order r of the operator")
    parser.add_argument("--gamma", help="vector index as comma-separated rationals, e.g. --gamma=-2/3,-1/3")
    parser.add_argument("--truncation", type=int, help="series truncation order N")
    parser.add_argument("--mode", choices=["exact", "float"])
    parser.add_argument("--param", action="append", metavar="KEY=VALUE",
                        help="command parameter, JSON value (repeatable)")
    parser.add_argument("--output", help="output path (stdout when omitted)")
    parser.add_argument("--seed", type=int)
    parser.add_argument("--threads", type=int, help="parallelism cap (env HB_THREADS)")
    parser.add_argument("--log-level", default=None, help="logging level (env HB_LOG_LEVEL)")
    parser.add_argument("--version", action="version", version=f"%(prog)s {VERSION}")
    return parser


def write_output(result: CommandResult, output: Optional[str]):
    text = result.render()
    if output:
        with open(output, "w", encoding="utf-8", newline="") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def exit_code_for(error: Exception) -> int:
    """Map a library exception to a process exit code."""
    if isinstance(error, ScalarOperatorError):
        return EXIT_REFUSAL
    if isinstance(error, (PrecisionError, WitnessFailure, GridExhaustedError)):
        return EXIT_TOLERANCE
    if isinstance(error, OverflowError):
        return EXIT_TOLERANCE
    if isinstance(error, HyperBesselError) and not isinstance(error, ValueError):
        return EXIT_TOLERANCE
    return EXIT_CONFIG


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=(args.log_level or default_log_level()).upper(),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        config = load_config(
            args.config,
            command=args.command,
            r=args.r,
            gamma=args.gamma,
            truncation=args.truncation,
            mode=args.mode,
            params=parse_params(args.param),
            output=args.output,
            seed=args.seed,
            threads=args.threads,
        )
    except (ValidationError, ValueError, OSError) as e:
        print(f"Configuration error: {e}", file=sys.stderr)
        return EXIT_CONFIG

    try:
        result = run_command(config)
    except (HyperBesselError, ValueError, OverflowError) as e:
        code = exit_code_for(e)
        logger.error("%s failed: %s", config.command, e)
        print(f"Error: {e}", file=sys.stderr)
        return code

    write_output(result, config.output)
    if config.output:
        print(f"{config.command}: wrote {config.output} (exit {result.exit_code})", file=sys.stderr)
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
