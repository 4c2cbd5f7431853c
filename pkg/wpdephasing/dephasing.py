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
"""Detector-induced dephasing of the interferometer.

Every detector electron that scatters while the interfering electron dwells
in the dot leaves the detector in one of two single-probe states, depending
on the path taken. Their overlap is the single-probe coherence factor; N
independent probes multiply it N times. For a small transmission change the
product reduces to 1 - N*dT^2/(8*T*(1 - T)), which is the same as
1 - (dT/sigma)^2/8 with sigma the shot-noise uncertainty of T.
"""
import enum
import math
from typing import Optional

import attr

from wpdephasing.amplitudes import pair_from_transmission, sp_overlap
from wpdephasing.constants import REGIME_FACTOR
from wpdephasing.detector import shot_noise_sigma
from wpdephasing.errors import DomainError
from wpdephasing.utils import wrap_phase


class Regime(str, enum.Enum):
    NOISY = "noisy"
    INTERMEDIATE = "intermediate"
    QUIET = "quiet"


def _check_unit_interval(instance, attribute, value):
    if not 0.0 <= value <= 1.0:
        raise DomainError("{} must lie in [0, 1], got {!r}".format(attribute.name, value))


def _check_finite(instance, attribute, value):
    if not math.isfinite(value):
        raise DomainError("{} must be finite, got {!r}".format(attribute.name, value))


@attr.s(frozen=True)
class DephasingInput:
    t_d: float = attr.ib(converter=float, validator=_check_unit_interval)
    dt_d: float = attr.ib(converter=float, validator=_check_unit_interval)
    n: float = attr.ib(converter=float, validator=_check_finite)
    eta_shift: float = attr.ib(default=0.0, converter=float, validator=_check_finite)

    def __attrs_post_init__(self):
        if self.t_d + self.dt_d > 1.0:
            raise DomainError("T_d + dT_d must not exceed 1, got {!r}".format(self.t_d + self.dt_d))
        if self.n < 0.0:
            raise DomainError("probe count must be >= 0, got {!r}".format(self.n))

    @property
    def interior(self) -> bool:
        return 0.0 < self.t_d < 1.0


@attr.s(frozen=True)
class DephasingResult:
    nu_d_exact: float = attr.ib()
    nu_d_linear: Optional[float] = attr.ib()
    phase_shift: float = attr.ib()
    regime: Regime = attr.ib()
    linear_applicable: bool = attr.ib(default=True)

    @property
    def nu_d_complex(self) -> complex:
        """Exact coherence factor including the accumulated detector phase."""
        return self.nu_d_exact * complex(math.cos(self.phase_shift), math.sin(self.phase_shift))


def single_probe_overlap(data: DephasingInput) -> complex:
    """Overlap of the detector states left by one probe, for the two paths."""
    right = pair_from_transmission(data.t_d + data.dt_d)
    left = pair_from_transmission(data.t_d, data.eta_shift)
    return sp_overlap(right, left)


def linearized_angle_shift(t_d: float, dt_d: float) -> float:
    """First-order angle change dT/(2*sqrt(T(1 - T)))."""
    if not 0.0 < t_d < 1.0:
        raise DomainError("linearized angle shift needs 0 < T_d < 1, got {!r}".format(t_d))
    return dt_d / (2.0 * math.sqrt(t_d * (1.0 - t_d)))


def exact_angle_shift(t_d: float, dt_d: float) -> float:
    return abs(pair_from_transmission(t_d + dt_d).theta - pair_from_transmission(t_d).theta)


def classify_regime(t_d: float, dt_d: float, n: float) -> Regime:
    """Compare the shot-noise uncertainty of T_d with the signal dT_d."""
    if n == 0.0 or dt_d == 0.0:
        return Regime.NOISY
    if not 0.0 < t_d < 1.0:
        return Regime.QUIET
    sigma = shot_noise_sigma(t_d, n)
    if sigma >= REGIME_FACTOR * dt_d:
        return Regime.NOISY
    if sigma <= dt_d / REGIME_FACTOR:
        return Regime.QUIET
    return Regime.INTERMEDIATE


def n_probe_visibility(data: DephasingInput) -> DephasingResult:
    overlap = single_probe_overlap(data)
    exact = min(1.0, abs(overlap) ** data.n)
    linear_applicable = True
    if data.interior:
        linear = max(0.0, 1.0 - data.n * data.dt_d**2 / (8.0 * data.t_d * (1.0 - data.t_d)))
    elif data.dt_d == 0.0:
        linear = 1.0
    else:
        linear, linear_applicable = None, False
    return DephasingResult(
        nu_d_exact=exact,
        nu_d_linear=linear,
        phase_shift=wrap_phase(data.n * data.eta_shift),
        regime=classify_regime(data.t_d, data.dt_d, data.n),
        linear_applicable=linear_applicable,
    )


def shot_noise_form(t_d: float, dt_d: float, n: float) -> float:
    """Visibility 1 - (dT_d/sigma(T_d))^2/8."""
    if not 0.0 < t_d < 1.0:
        raise DomainError("shot-noise form needs 0 < T_d < 1, got {!r}".format(t_d))
    sigma = shot_noise_sigma(t_d, n)
    return 1.0 - (dt_d / sigma) ** 2 / 8.0


def invert_delta_transmission(t_d: float, n: float, relative_drop: float) -> float:
    """dT_d that makes the linearized visibility drop by ``relative_drop`` at N probes."""
    if not 0.0 < t_d < 1.0:
        raise DomainError("inversion needs 0 < T_d < 1, got {!r}".format(t_d))
    if not n > 0.0:
        raise DomainError("probe count must be > 0, got {!r}".format(n))
    if not 0.0 <= relative_drop <= 1.0:
        raise DomainError("relative drop must lie in [0, 1], got {!r}".format(relative_drop))
    return math.sqrt(8.0 * t_d * (1.0 - t_d) * relative_drop / n)
