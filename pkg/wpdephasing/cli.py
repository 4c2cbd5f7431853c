#!/usr/bin/env python3
# This file is part of wp-dephasing, a simulator for controlled dephasing of
# an Aharonov-Bohm interferometer monitored by a which-path detector.
#
# This program is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License version 3, as
# published by the Free Software Foundation.
#
# This program is distributed in the hope that it will be useful, but
# WITHOUT ANY WARRANTY; without even the implied warranties of
# MERCHANTABILITY, SATISFACTORY QUALITY, or FITNESS FOR A PARTICULAR
# PURPOSE.  See the GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License
# along with this program. If not, see <http://www.gnu.org/licenses/>.
"""Main entry point for the wp-dephasing CLI tool."""
import argparse
import logging
import sys
from typing import List, Optional

from wpdephasing.config import Config
from wpdephasing.constants import (
    COMMAND_AXES,
    DEFAULT_ORACLE_DRAWS,
    DEFAULT_ORACLE_MAX_PROBES,
    DEFAULT_ORACLE_SEED,
    DEFAULT_ORACLE_TOLERANCE,
    EXIT_CONFIG_ERROR,
    EXIT_MODEL_ERROR,
    EXIT_OK,
    MAX_ORACLE_PROBES,
    OUTPUT_FORMATS,
)
from wpdephasing.errors import ConfigError, ModelError
from wpdephasing.process import SweepProcessor

FORMAT = "%(asctime)s %(levelname)s %(name)s %(message)s"
LOG_LEVELS = ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]

logger = logging.getLogger(__name__)


class Cli:
    def __init__(self, argv: Optional[List[str]] = None):
        self.args = self._parse_args(argv)
        self.config = Config(self.args)

    def run(self) -> int:
        self._configure_logging()
        try:
            SweepProcessor(self.config).process()
        except ConfigError as error:
            logger.error("[{}] {}".format(self.config.command, error))
            return EXIT_CONFIG_ERROR
        except ModelError as error:
            logger.error("[{}] {}".format(self.config.command, error))
            return EXIT_MODEL_ERROR
        return EXIT_OK

    @staticmethod
    def _parse_args(argv: Optional[List[str]] = None) -> dict:
        parser = make_cli_parser()
        args = parser.parse_args(argv)
        args_dict = dict(
            command=args.command,
            log_level=args.log_level,
            workers=args.workers,
            config_path=getattr(args, "config_path", None),
            output_path=getattr(args, "output_path", None),
            output_format=getattr(args, "output_format", None),
            overrides=getattr(args, "overrides", None),
            seed=getattr(args, "seed", None),
            draws=getattr(args, "draws", None),
            max_probes=getattr(args, "max_probes", None),
            tolerance=getattr(args, "tolerance", None),
        )
        return args_dict

    def _configure_logging(self):
        logging.basicConfig(format=FORMAT, level=self.config.log_level, stream=sys.stderr)
        logging.getLogger("asyncio").setLevel(logging.CRITICAL)


def _positive_int(value: str) -> int:
    number = int(value)
    if number < 1:
        raise argparse.ArgumentTypeError("must be >= 1, got {}".format(number))
    return number


def _probe_limit(value: str) -> int:
    number = _positive_int(value)
    if number > MAX_ORACLE_PROBES:
        raise argparse.ArgumentTypeError("at most {} probes can be enumerated".format(MAX_ORACLE_PROBES))
    return number


def _common_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument(
        "-l",
        "--log",
        dest="log_level",
        choices=LOG_LEVELS,
        default="WARNING",
        type=str.upper,
    )
    parser.add_argument(
        "-w", "--workers", dest="workers", default=1, type=_positive_int, help="worker threads for sweep points."
    )
    return parser


def _sweep_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument("-c", "--config", dest="config_path", help="TOML config, or a JSON result to rerun.")
    parser.add_argument("-o", "--out", dest="output_path", help="output file; stdout when omitted.")
    parser.add_argument("-f", "--format", dest="output_format", choices=OUTPUT_FORMATS, default="csv")
    parser.add_argument(
        "-s",
        "--set",
        dest="overrides",
        action="append",
        default=[],
        metavar="SECTION.KEY=VALUE",
        help="override a config value; may be repeated.",
    )
    return parser


def make_cli_parser():
    parser = argparse.ArgumentParser(
        description="Simulate controlled dephasing of an AB interferometer by a which-path detector."
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    common, sweep = _common_parser(), _sweep_parser()
    for command, axis in COMMAND_AXES.items():
        subparsers.add_parser(command, parents=[common, sweep], help="sweep the {} axis.".format(axis))
    oracle = subparsers.add_parser(
        "oracle-check", parents=[common], help="verify the factorized coherence by branch enumeration."
    )
    oracle.add_argument("--seed", dest="seed", default=DEFAULT_ORACLE_SEED, type=int)
    oracle.add_argument("--draws", dest="draws", default=DEFAULT_ORACLE_DRAWS, type=_positive_int)
    oracle.add_argument("--max-probes", dest="max_probes", default=DEFAULT_ORACLE_MAX_PROBES, type=_probe_limit)
    oracle.add_argument("--tolerance", dest="tolerance", default=DEFAULT_ORACLE_TOLERANCE, type=float)
    return parser


def main():
    cli = Cli()
    sys.exit(cli.run())


if __name__ == "__main__":
    main()
