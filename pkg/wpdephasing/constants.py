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
"""Contains constants used throughout the package."""
from scipy import constants

# CODATA exact values (SI)
ELEMENTARY_CHARGE = constants.e
PLANCK = constants.h
HBAR = constants.hbar
BOLTZMANN = constants.k
CONDUCTANCE_QUANTUM = 2 * constants.e**2 / constants.h

MICRO = 1e-6
MILLI = 1e-3

# effective thermal width of a Coulomb-blockade peak, in units of k_B*Theta
CB_WIDTH_FACTOR = 2.5
CB_NEIGHBOR_PEAKS = 3

MAX_ORACLE_PROBES = 20
REGIME_FACTOR = 10.0
UNITARITY_TOLERANCE = 1e-12
MIN_FIT_PERIODS = 3

SWEEP_AXES = ["field", "plunger", "qpc_gate", "bias"]
AXIS_UNITS = {"field": "mT", "plunger": "V", "qpc_gate": "V", "bias": "uV"}
AXIS_COLUMN_NAMES = {"field": "B_mT", "plunger": "V_p", "qpc_gate": "V_g", "bias": "V_d_uV"}
COMMAND_AXES = {
    "sweep-field": "field",
    "sweep-plunger": "plunger",
    "sweep-gate": "qpc_gate",
    "sweep-bias": "bias",
}
OUTPUT_FORMATS = ["csv", "json"]

DEFAULT_GAMMA_UEV = 0.5
DEFAULT_PEAK_SPACING_V = 0.04
DEFAULT_LEVER_ARM = 0.01
DEFAULT_ELECTRON_TEMPERATURE_MK = 80.0
DEFAULT_QPC_V_HALF = 0.188
DEFAULT_QPC_WIDTH = 0.001
DEFAULT_COUPLING_DELTA_V = 1e-4
DEFAULT_COUPLING_C = 0.05
DEFAULT_COUPLING_S = 0.05
DEFAULT_BIAS_UV = 100.0
DEFAULT_AB_PERIOD_MT = 2.6
DEFAULT_EXCITATION_UV = 10.0
DEFAULT_BARE_VISIBILITY = 0.054
DEFAULT_PATH_TRANSMISSION = 0.07

DEFAULT_FIELD_PERIODS = 20
DEFAULT_POINTS_PER_PERIOD = 32
DEFAULT_PLUNGER_PERIODS = 5
DEFAULT_PLUNGER_POINTS = 2001
DEFAULT_GATE_HALF_SPAN_WIDTHS = 10.0
DEFAULT_GATE_POINTS = 401
DEFAULT_BIAS_RANGE_UV = (10.0, 100.0)
DEFAULT_BIAS_POINTS = 10
DEFAULT_OPERATING_T_D = 0.2

DEFAULT_ORACLE_SEED = 20240917
DEFAULT_ORACLE_DRAWS = 1000
DEFAULT_ORACLE_MAX_PROBES = 14
DEFAULT_ORACLE_TOLERANCE = 1e-10

EXIT_OK = 0
EXIT_CONFIG_ERROR = 2
EXIT_MODEL_ERROR = 3
