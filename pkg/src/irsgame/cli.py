"""Command-line entry point: run the pricing experiment from a YAML config.

Usage:
    irsgame [--config cfg.yaml] [--output results.csv] [--base-seed 0]
            [--trials 20] [--p-max -5 -2.5 0 2.5 5]
            [--schemes game random_pricing direct_only] [-v]

Without --config the reference setup runs as is; flags override single
config keys without touching the file.
"""

from __future__ import annotations

import argparse
import sys

import yaml

from .experiment import SCHEMES, run_experiment, validate_config


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="irsgame",
        description="Stackelberg module-pricing experiment: "
        "schemes x transmit-power grid x Monte-Carlo trials -> CSV",
    )
    parser.add_argument("--config", help="YAML config file (omit for defaults)")
    parser.add_argument("--output", help="CSV output path (overrides config)")
    parser.add_argument(
        "--base-seed", type=int, help="root seed of all randomness (overrides config)"
    )
    parser.add_argument(
        "--trials", type=int, help="Monte-Carlo trials per grid point (overrides config)"
    )
    parser.add_argument(
        "--p-max",
        type=float,
        nargs="+",
        metavar="DBM",
        help="transmit power grid in dBm (overrides config)",
    )
    parser.add_argument(
        "--schemes",
        nargs="+",
        choices=SCHEMES,
        help="subset of schemes to run (overrides config)",
    )
    parser.add_argument(
        "-v",
        "--verbose",
        action="count",
        default=0,
        help="print one line per finished trial",
    )
    return parser


def load_config_file(path: str | None) -> dict:
    """Parse the YAML config; a missing --config or empty file means {}."""
    if path is None:
        return {}
    with open(path, "r", encoding="utf-8") as fh:
        raw = yaml.safe_load(fh)
    if raw is None:
        return {}
    if not isinstance(raw, dict):
        raise ValueError(f"config file {path} must contain a mapping at top level")
    return raw


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        raw = load_config_file(args.config)
        if args.output is not None:
            raw["output_path"] = args.output
        if args.base_seed is not None:
            raw["base_seed"] = args.base_seed
        if args.trials is not None:
            raw["trials"] = args.trials
        if args.p_max is not None:
            raw["p_max_dbm"] = args.p_max
        if args.schemes is not None:
            raw["schemes"] = args.schemes
        config = validate_config(raw)
    except (ValueError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    run_experiment(config, verbose=args.verbose)
    return 0


if __name__ == "__main__":
    sys.exit(main())
