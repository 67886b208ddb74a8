"""
CLI commands for the cone certification toolkit

Each module exposes register(subparsers); handlers return the exit code.
"""
import argparse

from modules.schemas import RunConfig

EXIT_OK = 0
EXIT_INPUT_ERROR = 1
EXIT_CONDITION_FAILED = 2


def common_options() -> argparse.ArgumentParser:
    """Parent parser with the numeric options shared by every command"""
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--tol", type=float, default=None, help="Power-iteration tolerance (default: settings.TOLERANCE)")
    parent.add_argument("--samples", type=int, default=None, help="Grid size / Monte-Carlo pairs (default: settings.SAMPLES)")
    parent.add_argument("--max-iter", type=int, default=None, dest="max_iter", help="Power-iteration cap")
    parent.add_argument("--oracle", action="store_true", default=None, help="Cross-check with the eigenvalue oracle")
    parent.add_argument("--seed", type=int, default=None, help="Seed for sampling (default: settings.SEED)")
    parent.add_argument("--format", choices=["json", "csv"], default=None, help="Input format (default: from extension)")
    return parent


def run_config(args: argparse.Namespace) -> RunConfig:
    """RunConfig from parsed flags; unset flags fall back to settings"""
    overrides = {
        "tolerance": args.tol,
        "samples": args.samples,
        "max_iter": args.max_iter,
        "oracle": args.oracle,
        "seed": args.seed,
    }
    return RunConfig(**{key: value for key, value in overrides.items() if value is not None})
