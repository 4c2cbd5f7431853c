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
"""Module that processes the requested command."""
import logging
import sys

from wpdephasing.config import Config, load_config
from wpdephasing.constants import COMMAND_AXES
from wpdephasing.errors import OracleCheckError
from wpdephasing.experiments import run_sweep
from wpdephasing.oracle import OracleReport, run_oracle_check
from wpdephasing.results import SweepResult, emit

logger = logging.getLogger(__name__)


class SweepProcessor:
    def __init__(self, config: Config):
        self.config = config

    def process(self):
        if self.config.command == "oracle-check":
            return self.process_oracle_check()
        return self.process_sweep()

    def process_sweep(self) -> SweepResult:
        command = self.config.command
        experiment = load_config(self.config.config_path, self.config.overrides, axis=COMMAND_AXES[command])
        logger.info(
            "[{}] Sweeping {} points with {} worker(s).".format(
                command, experiment.sweep.n_points, self.config.workers
            )
        )
        result = run_sweep(experiment, workers=self.config.workers)
        emit(result, self.config.output_format, self.config.output_path)
        return result

    def process_oracle_check(self) -> OracleReport:
        report = run_oracle_check(
            seed=self.config.seed,
            draws=self.config.draws,
            max_probes=self.config.max_probes,
            tolerance=self.config.tolerance,
            workers=self.config.workers,
        )
        sys.stdout.write("\n".join(report.to_lines()) + "\n")
        if not report.passed:
            raise OracleCheckError(report.seed, report.max_deviation, report.tolerance)
        return report
