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
"""Two-path Aharonov-Bohm interferometer with a dephasing which-path detector."""
import cmath
import logging
import math
from typing import NamedTuple, Optional, Sequence, Tuple

import attr
import numpy as np
from scipy.optimize import minimize_scalar

from wpdephasing.async_handlers import fill_slots
from wpdephasing.constants import (
    CONDUCTANCE_QUANTUM,
    DEFAULT_AB_PERIOD_MT,
    DEFAULT_EXCITATION_UV,
    MICRO,
    MIN_FIT_PERIODS,
    UNITARITY_TOLERANCE,
)
from wpdephasing.errors import (
    DegenerateTraceError,
    DomainError,
    InconsistentModelError,
    InsufficientDataError,
    InvalidOverlapError,
)

logger = logging.getLogger(__name__)

PERIOD_SCAN_WINDOW = 0.1
PERIOD_SCAN_POINTS = 201
PERIOD_XATOL = 1e-7


class VisibilityFit(NamedTuple):
    visibility: float
    phase: float


def _to_complex(value) -> complex:
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise DomainError("complex amplitude must be given as [re, im], got {!r}".format(value))
        return complex(float(value[0]), float(value[1]))
    return complex(value)


@attr.s(frozen=True)
class InterferometerModel:
    """Path amplitudes emitter -> collector through the two slits.

    ``background`` is an incoherent contribution to T_EC from multiply
    reflected paths; it adds to the mean current but never oscillates.
    """

    a_left: complex = attr.ib(converter=_to_complex)
    a_right: complex = attr.ib(converter=_to_complex)
    delta_b: float = attr.ib(default=DEFAULT_AB_PERIOD_MT, converter=float, validator=attr.validators.gt(0.0))
    v_e: float = attr.ib(default=DEFAULT_EXCITATION_UV, converter=float, validator=attr.validators.gt(0.0))
    background: float = attr.ib(default=0.0, converter=float, validator=attr.validators.ge(0.0))

    def __attrs_post_init__(self):
        bound = (abs(self.a_left) + abs(self.a_right)) ** 2 + self.background
        if bound > 1.0 + UNITARITY_TOLERANCE:
            raise DomainError(
                "path amplitudes violate unitarity: (|a_L| + |a_R|)^2 + background = {!r} > 1".format(bound)
            )

    @property
    def path_transmission(self) -> float:
        return abs(self.a_left) ** 2 + abs(self.a_right) ** 2


@attr.s(frozen=True)
class AbTrace:
    """Collector current versus field, in units of (2e^2/h)*V_E."""

    b_values: Tuple[float, ...] = attr.ib(converter=lambda xs: tuple(float(x) for x in xs))
    i_c_values: Tuple[float, ...] = attr.ib(converter=lambda xs: tuple(float(x) for x in xs))

    def __attrs_post_init__(self):
        if len(self.b_values) < 2 or len(self.b_values) != len(self.i_c_values):
            raise DomainError("trace needs two or more points and columns of equal length")
        if any(b1 <= b0 for b0, b1 in zip(self.b_values, self.b_values[1:])):
            raise DomainError("trace field values must be strictly increasing")


def amplitudes_for_visibility(nu0: float, total: float) -> Tuple[complex, complex]:
    """Real path amplitudes with bare visibility ``nu0`` and |a_L|^2 + |a_R|^2 = ``total``."""
    if not 0.0 <= nu0 <= 1.0:
        raise DomainError("bare visibility must lie in [0, 1], got {!r}".format(nu0))
    if not 0.0 < total <= 1.0:
        raise DomainError("path transmission must lie in (0, 1], got {!r}".format(total))
    root = math.sqrt(1.0 - nu0 * nu0)
    return complex(math.sqrt(total * (1.0 + root) / 2.0)), complex(math.sqrt(total * (1.0 - root) / 2.0))


def ab_phase(model: InterferometerModel, b: float) -> float:
    return 2.0 * math.pi * b / model.delta_b


def collector_transmission(model: InterferometerModel, delta_alpha: float, nu_d_complex: complex) -> float:
    """Emitter-to-collector transmission with the detector traced out."""
    if abs(nu_d_complex) > 1.0 + UNITARITY_TOLERANCE:
        raise InvalidOverlapError(nu_d_complex)
    coherent = cmath.exp(1j * delta_alpha) * model.a_left.conjugate() * model.a_right * nu_d_complex
    t_ec = model.path_transmission + model.background + 2.0 * coherent.real
    if not -UNITARITY_TOLERANCE <= t_ec <= 1.0 + UNITARITY_TOLERANCE:
        raise InconsistentModelError(t_ec)
    return min(1.0, max(0.0, t_ec))


def bare_visibility(model: InterferometerModel) -> float:
    total = model.path_transmission
    if total <= 0.0:
        raise DomainError("bare visibility is undefined when both path amplitudes vanish")
    return 2.0 * abs(model.a_left) * abs(model.a_right) / total


def fringe_visibility(model: InterferometerModel, nu_d: complex) -> float:
    """Visibility of the collector signal, background included in the mean."""
    total = model.path_transmission + model.background
    if total <= 0.0:
        raise DomainError("fringe visibility is undefined for a vanishing mean signal")
    return 2.0 * abs(model.a_left) * abs(model.a_right) * abs(nu_d) / total


def collector_current(model: InterferometerModel, t_ec: float) -> float:
    """Collector current (2e^2/h)*T_EC*V_E in amperes."""
    if not 0.0 <= t_ec <= 1.0:
        raise DomainError("collector transmission must lie in [0, 1], got {!r}".format(t_ec))
    return CONDUCTANCE_QUANTUM * t_ec * model.v_e * MICRO


def collector_current_natural(t_ec: float) -> float:
    """Collector current in units of (2e^2/h)*V_E."""
    if not 0.0 <= t_ec <= 1.0:
        raise DomainError("collector transmission must lie in [0, 1], got {!r}".format(t_ec))
    return t_ec


def simulate_trace(
    model: InterferometerModel,
    detector_overlap: complex,
    b_range: Sequence[float],
    n_points: int,
    workers: int = 1,
) -> AbTrace:
    lo, hi = b_range
    if n_points < 2:
        raise DomainError("a trace needs at least 2 points, got {}".format(n_points))
    if not hi > lo:
        raise DomainError("field range must satisfy lo < hi, got ({!r}, {!r})".format(lo, hi))
    b_values = np.linspace(lo, hi, n_points)

    def point(b):
        t_ec = collector_transmission(model, ab_phase(model, b), detector_overlap)
        return collector_current_natural(t_ec)

    return AbTrace(b_values=b_values, i_c_values=fill_slots(point, b_values, workers=workers))


def _harmonic_fit(b_values: np.ndarray, values: np.ndarray, period: float) -> Tuple[np.ndarray, float]:
    angle = 2.0 * np.pi * b_values / period
    design = np.column_stack([np.ones_like(angle), np.cos(angle), np.sin(angle)])
    coeffs, _, _, _ = np.linalg.lstsq(design, values, rcond=None)
    residual = values - design @ coeffs
    return coeffs, float(np.dot(residual, residual))


def extract_visibility(trace: AbTrace, delta_b: float) -> VisibilityFit:
    """Fit c0 + c1*cos(2piB/dB) + c2*sin(2piB/dB) and return (sqrt(c1^2 + c2^2)/c0, atan2(-c2, c1))."""
    b_values = np.asarray(trace.b_values)
    span = b_values[-1] - b_values[0]
    if span < MIN_FIT_PERIODS * delta_b * (1.0 - 1e-12):
        raise InsufficientDataError(
            "trace spans {!r} mT, at least {} periods of {!r} mT are needed".format(span, MIN_FIT_PERIODS, delta_b)
        )
    (c0, c1, c2), _ = _harmonic_fit(b_values, np.asarray(trace.i_c_values), delta_b)
    if c0 <= 0.0:
        raise DegenerateTraceError(float(c0))
    return VisibilityFit(visibility=float(math.hypot(c1, c2) / c0), phase=float(math.atan2(-c2, c1)))


def fit_period(trace: AbTrace, guess: float, window: Optional[float] = None) -> float:
    """Refine the AB period by minimizing the harmonic-fit residual around ``guess``."""
    window = PERIOD_SCAN_WINDOW if window is None else window
    b_values = np.asarray(trace.b_values)
    values = np.asarray(trace.i_c_values)
    candidates = np.linspace(guess * (1.0 - window), guess * (1.0 + window), PERIOD_SCAN_POINTS)
    residuals = [_harmonic_fit(b_values, values, period)[1] for period in candidates]
    best = int(np.argmin(residuals))
    step = candidates[1] - candidates[0]
    lower = candidates[max(best - 1, 0)]
    upper = candidates[min(best + 1, len(candidates) - 1)]
    if upper - lower < step:
        return float(candidates[best])
    result = minimize_scalar(
        lambda period: _harmonic_fit(b_values, values, period)[1],
        bounds=(lower, upper),
        method="bounded",
        options={"xatol": PERIOD_XATOL},
    )
    logger.debug("[fit-period] guess {!r} mT refined to {!r} mT.".format(guess, result.x))
    return float(result.x)
