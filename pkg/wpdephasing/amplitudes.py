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
"""Complex scattering amplitudes of the which-path detector.

A single-channel, left-right symmetric QPC is fully described by an angle
``theta`` and a phase ``eta``:

    t = cos(theta) * exp(i*eta)
    r = i * sin(theta) * exp(i*eta)

which satisfies |t|^2 + |r|^2 = 1 and Re(t * conj(r)) = 0 by construction.
The amplitudes do not depend on the probing particle's energy, so the
outgoing single-particle state of one probe is labelled by the pair alone.
Complex amplitudes are carried as Python ``complex`` values.
"""
import cmath
import math
from typing import Tuple

import attr
import numpy as np

from wpdephasing.errors import DomainError


def _check_theta(instance, attribute, value):
    if not 0.0 <= value <= math.pi / 2:
        raise DomainError("{} must lie in [0, pi/2], got {!r}".format(attribute.name, value))


def _check_finite(instance, attribute, value):
    if not math.isfinite(value):
        raise DomainError("{} must be finite, got {!r}".format(attribute.name, value))


@attr.s(frozen=True)
class ScatteringPair:
    """Transmission/reflection amplitudes of one detector configuration."""

    theta: float = attr.ib(converter=float, validator=_check_theta)
    eta: float = attr.ib(default=0.0, converter=float, validator=_check_finite)

    @property
    def t(self) -> complex:
        return math.cos(self.theta) * cmath.exp(1j * self.eta)

    @property
    def r(self) -> complex:
        return 1j * math.sin(self.theta) * cmath.exp(1j * self.eta)

    @property
    def transmission(self) -> float:
        return math.cos(self.theta) ** 2

    @property
    def reflection(self) -> float:
        return math.sin(self.theta) ** 2


# the outgoing state of one probe is fully labelled by its pair
SpOutgoingState = ScatteringPair


def make_pair(theta: float, eta: float = 0.0) -> ScatteringPair:
    return ScatteringPair(theta=theta, eta=eta)


def pair_from_transmission(t_d: float, eta: float = 0.0) -> ScatteringPair:
    """Build the pair whose transmission probability is ``t_d`` (principal arccos branch)."""
    if not 0.0 <= t_d <= 1.0:
        raise DomainError("transmission probability must lie in [0, 1], got {!r}".format(t_d))
    return ScatteringPair(theta=math.acos(math.sqrt(t_d)), eta=eta)


def sp_overlap(right: ScatteringPair, left: ScatteringPair) -> complex:
    """Overlap <O(t_r, r_r)|O(t_l, r_l)> of two single-probe outgoing states.

    Equals cos(theta_r - theta_l) * exp(i*(eta_l - eta_r)).
    """
    return right.t.conjugate() * left.t + right.r.conjugate() * left.r


def amplitude_arrays(theta, eta) -> Tuple[np.ndarray, np.ndarray]:
    """Vectorized (t, r) for arrays of angles and phases."""
    theta = np.asarray(theta, dtype=float)
    eta = np.asarray(eta, dtype=float)
    if np.any((theta < 0.0) | (theta > np.pi / 2)):
        raise DomainError("theta must lie in [0, pi/2]")
    phase = np.exp(1j * eta)
    return np.cos(theta) * phase, 1j * np.sin(theta) * phase
