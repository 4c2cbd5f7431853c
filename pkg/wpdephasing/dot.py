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
"""The quantum-dot slit: resonance width, Coulomb-blockade peaks and the sawtooth dot potential."""
import math

import attr

from wpdephasing.constants import (
    BOLTZMANN,
    CB_NEIGHBOR_PEAKS,
    CB_WIDTH_FACTOR,
    DEFAULT_ELECTRON_TEMPERATURE_MK,
    DEFAULT_GAMMA_UEV,
    DEFAULT_LEVER_ARM,
    DEFAULT_PEAK_SPACING_V,
    ELEMENTARY_CHARGE,
    HBAR,
    MICRO,
    MILLI,
)
from wpdephasing.detector import CouplingModel, QpcTransmissionCurve, delta_transmission, transmission
from wpdephasing.errors import DomainError


@attr.s(frozen=True)
class DotModel:
    """Quantum dot in the Coulomb-blockade regime.

    :param gamma: resonance width Gamma in μeV
    :param peak_spacing: plunger-voltage period of the CB peaks in V
    :param peak_offset: plunger voltage of peak 0 in V
    :param lever_arm: plunger-to-dot energy conversion
    :param theta_e: electron temperature in mK
    :param peak_height: on-peak conductance in units of 2e^2/h
    """

    gamma: float = attr.ib(default=DEFAULT_GAMMA_UEV, converter=float, validator=attr.validators.gt(0.0))
    peak_spacing: float = attr.ib(default=DEFAULT_PEAK_SPACING_V, converter=float, validator=attr.validators.gt(0.0))
    peak_offset: float = attr.ib(default=0.0, converter=float)
    lever_arm: float = attr.ib(default=DEFAULT_LEVER_ARM, converter=float, validator=attr.validators.gt(0.0))
    theta_e: float = attr.ib(
        default=DEFAULT_ELECTRON_TEMPERATURE_MK, converter=float, validator=attr.validators.ge(0.0)
    )
    peak_height: float = attr.ib(default=1.0, converter=float, validator=attr.validators.gt(0.0))

    @property
    def thermal_width(self) -> float:
        """Plunger-voltage scale 2.5*k_B*Theta/(e*lever_arm) of one CB peak, in V."""
        return CB_WIDTH_FACTOR * BOLTZMANN * self.theta_e * MILLI / (ELEMENTARY_CHARGE * self.lever_arm)

    def peak_center(self, index: int) -> float:
        return self.peak_offset + index * self.peak_spacing

    def peak_coordinate(self, v_p: float) -> float:
        return (v_p - self.peak_offset) / self.peak_spacing


@attr.s(frozen=True)
class SawtoothState:
    phase_in_period: float = attr.ib()
    charge_step_index: int = attr.ib()

    @phase_in_period.validator
    def _check_phase(self, attribute, value):
        if not 0.0 <= value < 1.0:
            raise DomainError("phase_in_period must lie in [0, 1), got {!r}".format(value))


def _sech2(x: float) -> float:
    decay = math.exp(-2.0 * abs(x))
    return 4.0 * decay / (1.0 + decay) ** 2


def dwell_time(model: DotModel) -> float:
    """On-resonance dwell time h/(2*pi*Gamma) in seconds."""
    return HBAR / (model.gamma * MICRO * ELEMENTARY_CHARGE)


def cb_conductance(model: DotModel, v_p: float) -> float:
    """Thermally broadened CB peak ladder in units of 2e^2/h."""
    if model.theta_e <= 0.0:
        raise DomainError("cb_conductance needs a finite electron temperature; theta_e=0 gives delta peaks")
    u = model.peak_coordinate(v_p)
    nearest = round(u)
    scale = model.peak_spacing / model.thermal_width
    total = 0.0
    for n in range(nearest - CB_NEIGHBOR_PEAKS, nearest + CB_NEIGHBOR_PEAKS + 1):
        total += _sech2((u - n) * scale)
    return model.peak_height * total


def sawtooth_fraction(model: DotModel, v_p: float) -> SawtoothState:
    u = model.peak_coordinate(v_p)
    index = math.floor(u)
    phase = u - index
    if phase >= 1.0:
        index, phase = index + 1, 0.0
    return SawtoothState(phase_in_period=phase, charge_step_index=index)


def smoothed_charge(model: DotModel, v_p: float) -> float:
    """Electrons added to the dot, with each step smeared over its CB peak.

    The smeared step (1 + tanh x)/2 is the integral of the sech^2 peak
    lineshape, so the charge rises exactly where the dot conducts.
    """
    u = model.peak_coordinate(v_p)
    charge = float(math.floor(u))
    if model.theta_e <= 0.0:
        return charge
    nearest = round(u)
    scale = model.peak_spacing / model.thermal_width
    for n in range(nearest - CB_NEIGHBOR_PEAKS, nearest + CB_NEIGHBOR_PEAKS + 1):
        step = 1.0 if u >= n else 0.0
        charge += 0.5 * (1.0 + math.tanh((u - n) * scale)) - step
    return charge


def ramp_fraction(model: DotModel, v_p: float) -> float:
    """Position along the sawtooth ramp; 0 right after a charging event, 1 right before the next."""
    return model.peak_coordinate(v_p) - smoothed_charge(model, v_p)


def sawtooth_transmission(
    curve: QpcTransmissionCurve, coupling: CouplingModel, v_g: float, fraction: float
) -> float:
    """Detector transmission at ramp position ``fraction`` for the operating gate ``v_g``.

    At fraction 1 the detector sits at T(v_g); a charging event drops it by
    delta_transmission(v_g), after which it relaxes back linearly.
    """
    if coupling.kind == "gate_shift":
        return transmission(curve, v_g - coupling.delta_v * (1.0 - fraction))
    return transmission(curve, v_g) - delta_transmission(coupling, curve, v_g) * (1.0 - fraction)
