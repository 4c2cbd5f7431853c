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
"""The QPC which-path detector.

Gate-controlled transmission curve, Landauer conductance, the coupling
ΔT_d induced by one extra dot electron, probe statistics and shot noise.
Gate voltages are in V, detector bias in μV and energies in μeV.
"""
import csv
import logging
import math
from pathlib import Path
from typing import List, Optional, Tuple

import attr
from scipy.special import expit, logit

from wpdephasing.constants import (
    CONDUCTANCE_QUANTUM,
    DEFAULT_BIAS_UV,
    DEFAULT_COUPLING_C,
    DEFAULT_COUPLING_DELTA_V,
    DEFAULT_COUPLING_S,
    DEFAULT_QPC_V_HALF,
    DEFAULT_QPC_WIDTH,
    ELEMENTARY_CHARGE,
    MICRO,
    PLANCK,
)
from wpdephasing.errors import CalibrationTableError, DomainError, TableRangeError
from wpdephasing.utils import interpolate_table

logger = logging.getLogger(__name__)

CURVE_MODELS = ["logistic", "table"]
COUPLING_KINDS = ["gate_shift", "saturating", "table"]
TRANSMISSION_TABLE_HEADER = ["v_g", "T_d"]
COUPLING_TABLE_HEADER = ["T_d", "dT_d"]

Table = Tuple[Tuple[float, float], ...]


def _to_table(rows) -> Optional[Table]:
    if rows is None:
        return None
    return tuple((float(x), float(y)) for x, y in rows)


def _check_table(instance, attribute, value: Optional[Table]):
    if value is None:
        return
    if len(value) < 2:
        raise DomainError("{} needs at least two rows".format(attribute.name))
    for (x0, _), (x1, _) in zip(value, value[1:]):
        if not x1 > x0:
            raise DomainError("{} abscissae must be strictly increasing".format(attribute.name))


def _check_probabilities(instance, attribute, value: Optional[Table]):
    if value is not None and any(not 0.0 <= y <= 1.0 for _, y in value):
        raise DomainError("{} values must lie in [0, 1]".format(attribute.name))


@attr.s(frozen=True)
class QpcTransmissionCurve:
    v_half: float = attr.ib(default=DEFAULT_QPC_V_HALF, converter=float)
    width: float = attr.ib(default=DEFAULT_QPC_WIDTH, converter=float, validator=attr.validators.gt(0.0))
    model: str = attr.ib(default="logistic", validator=attr.validators.in_(CURVE_MODELS))
    table: Optional[Table] = attr.ib(
        default=None, converter=_to_table, validator=[_check_table, _check_probabilities]
    )

    def __attrs_post_init__(self):
        if self.model == "table" and self.table is None:
            raise DomainError("table model requires a (v_g, T_d) table")

    def inverse(self, t_d: float) -> float:
        """Gate voltage at which the curve reaches ``t_d``."""
        if not 0.0 < t_d < 1.0:
            raise DomainError("can only invert interior transmissions, got {!r}".format(t_d))
        if self.model == "logistic":
            return self.v_half + self.width * float(logit(t_d))
        gates = [row[0] for row in self.table]
        levels = [row[1] for row in self.table]
        if any(b <= a for a, b in zip(levels, levels[1:])):
            raise DomainError("table transmissions must be strictly increasing to be inverted")
        return interpolate_table(t_d, tuple(zip(levels, gates)))

    def derivative(self, v_g: float) -> float:
        if self.model == "logistic":
            t_d = transmission(self, v_g)
            return t_d * (1.0 - t_d) / self.width
        for (x0, y0), (x1, y1) in zip(self.table, self.table[1:]):
            if x0 <= v_g <= x1:
                return (y1 - y0) / (x1 - x0)
        raise TableRangeError(v_g, self.table[0][0], self.table[-1][0])


@attr.s(frozen=True)
class CouplingModel:
    kind: str = attr.ib(default="saturating", validator=attr.validators.in_(COUPLING_KINDS))
    delta_v: float = attr.ib(default=DEFAULT_COUPLING_DELTA_V, converter=float, validator=attr.validators.ge(0.0))
    c: float = attr.ib(default=DEFAULT_COUPLING_C, converter=float, validator=attr.validators.ge(0.0))
    s: float = attr.ib(default=DEFAULT_COUPLING_S, converter=float, validator=attr.validators.gt(0.0))
    table: Optional[Table] = attr.ib(default=None, converter=_to_table, validator=_check_table)

    def __attrs_post_init__(self):
        if self.kind == "table" and self.table is None:
            raise DomainError("table coupling requires a (T_d, dT_d) table")
        if self.table is not None and any(y < 0.0 for _, y in self.table):
            raise DomainError("coupling table changes must be non-negative")


@attr.s(frozen=True)
class DetectorBias:
    v_d: float = attr.ib(default=DEFAULT_BIAS_UV, converter=float, validator=attr.validators.ge(0.0))


def transmission(curve: QpcTransmissionCurve, v_g: float) -> float:
    if curve.model == "logistic":
        return float(expit((v_g - curve.v_half) / curve.width))
    return interpolate_table(v_g, curve.table)


def landauer_conductance(t_d: float) -> float:
    """Detector conductance in units of 2e^2/h."""
    if not 0.0 <= t_d <= 1.0:
        raise DomainError("transmission probability must lie in [0, 1], got {!r}".format(t_d))
    return t_d


def landauer_conductance_si(t_d: float) -> float:
    return landauer_conductance(t_d) * CONDUCTANCE_QUANTUM


def delta_transmission(coupling: CouplingModel, curve: QpcTransmissionCurve, v_g: float) -> float:
    """Change of the detector transmission caused by one added dot electron."""
    if coupling.kind == "gate_shift":
        return abs(transmission(curve, v_g - coupling.delta_v) - transmission(curve, v_g))
    t_d = transmission(curve, v_g)
    if coupling.kind == "saturating":
        x = t_d * (1.0 - t_d)
        return coupling.c * x / (x + coupling.s)
    return interpolate_table(t_d, coupling.table)


def probe_rate(bias: DetectorBias) -> float:
    """Rate 2eV_d/h (Hz) at which detector electrons probe the dot."""
    return 2.0 * ELEMENTARY_CHARGE * bias.v_d * MICRO / PLANCK


def probe_count(bias: DetectorBias, gamma: float) -> float:
    """Number of probes N = eV_d/(pi*Gamma) during one dwell time.

    With V_d in μV and Gamma in μeV the charge cancels numerically.
    """
    if not gamma > 0.0:
        raise DomainError("gamma must be > 0, got {!r}".format(gamma))
    return bias.v_d / (math.pi * gamma)


def shot_noise_sigma(t_d: float, n: float) -> float:
    """Uncertainty sigma(T_d) = sqrt(T_d(1 - T_d)/N) of a transmission estimated from N probes."""
    if not 0.0 <= t_d <= 1.0:
        raise DomainError("transmission must lie in [0, 1], got {!r}".format(t_d))
    if not n > 0.0:
        raise DomainError("probe count must be > 0, got {!r}".format(n))
    return math.sqrt(t_d * (1.0 - t_d) / n)


def transmitted_count_sigma(t_d: float, n: float) -> float:
    """Binomial spread sigma(N_t) = sqrt(N T_d(1 - T_d)) of the transmitted count."""
    return math.sqrt(n * t_d * (1.0 - t_d))


def load_calibration_table(path) -> Tuple[List[str], Table]:
    """Load a ``v_g,T_d`` or ``T_d,dT_d`` calibration table from CSV."""
    source = str(path)
    rows = []
    with Path(path).open(newline="") as handle:
        reader = csv.reader(handle)
        try:
            header = [cell.strip() for cell in next(reader)]
        except StopIteration:
            raise CalibrationTableError(source, 1, "empty file")
        if header not in (TRANSMISSION_TABLE_HEADER, COUPLING_TABLE_HEADER):
            raise CalibrationTableError(
                source, 1, "header must be 'v_g,T_d' or 'T_d,dT_d', got {!r}".format(",".join(header))
            )
        for row in reader:
            line = reader.line_num
            if not row or all(not cell.strip() for cell in row):
                continue
            if len(row) != 2:
                raise CalibrationTableError(source, line, "expected 2 columns, got {}".format(len(row)))
            try:
                x, y = float(row[0]), float(row[1])
            except ValueError:
                raise CalibrationTableError(source, line, "malformed number in {!r}".format(",".join(row)))
            if not (math.isfinite(x) and math.isfinite(y)):
                raise CalibrationTableError(source, line, "non-finite value")
            if rows and not x > rows[-1][0]:
                raise CalibrationTableError(
                    source, line, "rows must be sorted by strictly increasing {}".format(header[0])
                )
            rows.append((x, y))
    if len(rows) < 2:
        raise CalibrationTableError(source, reader.line_num, "at least two data rows are required")
    logger.debug("[calibration] Loaded {} rows from {}.".format(len(rows), source))
    return header, tuple(rows)
