"""Command-line harness: run a trade study or validate a configuration."""

from __future__ import annotations

import argparse
import logging
import sys

from .config import config_lines, load_config
from .errors import ConfigurationError, SimulationFault
from .report import write_report
from .study import run_study

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_SIMULATION = 2
EXIT_IO = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dtn-tradesim",
        description=(
            "Seedable Monte Carlo trade study of store-and-forward routing "
            "protocols on a randomly generated deep-space relay network."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="execute a study and write the report bundle")
    run.add_argument("--config", help="flat key=value config file")
    run.add_argument("--seed", type=int, help="master seed (default 0)")
    run.add_argument("--runs", type=int, dest="run_count", help="number of runs")
    run.add_argument("--packets", type=int, dest="packet_count", help="packets per run")
    run.add_argument("--relays", type=int, dest="relay_count", help="relay satellites")
    run.add_argument("--sigma-frac", type=float, dest="sigma_frac", help="perturbation scale")
    run.add_argument("--beta-a", type=float, dest="beta_a", help="quality Beta shape a")
    run.add_argument("--beta-b", type=float, dest="beta_b", help="quality Beta shape b")
    run.add_argument("--out", dest="out_dir", help="report output directory")
    run.add_argument("--format", choices=["csv", "json", "both"], help="table format")

    validate = sub.add_parser("validate", help="resolve and check a config, then exit")
    validate.add_argument("--config", required=True, help="flat key=value config file")
    return parser


_OVERRIDE_KEYS = (
    "seed",
    "run_count",
    "packet_count",
    "relay_count",
    "sigma_frac",
    "beta_a",
    "beta_b",
    "out_dir",
    "format",
)


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(name)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        if args.command == "validate":
            config = load_config(args.config)
            for line in config_lines(config):
                print(line)
            print("ok")
            return EXIT_OK

        overrides = {
            key: getattr(args, key)
            for key in _OVERRIDE_KEYS
            if getattr(args, key) is not None
        }
        config = load_config(args.config, overrides)
        report = run_study(config)
        files = write_report(report)
        print(f"wrote {len(files)} files to {config.out_dir}")
        print("ranking: " + " > ".join(p.value for p in report.ranking))
        return EXIT_OK
    except ConfigurationError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except SimulationFault as exc:
        print(f"simulation fault: {exc}", file=sys.stderr)
        return EXIT_SIMULATION
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
