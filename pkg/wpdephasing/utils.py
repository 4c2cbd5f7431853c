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
"""Module that provides utility functions."""
import math
import os
from importlib.metadata import PackageNotFoundError, version
from typing import List, NamedTuple, Optional, Sequence, Tuple

import numpy as np
from scipy.signal import find_peaks

from wpdephasing.errors import TableRangeError


class LinearFit(NamedTuple):
    slope: float
    intercept: float
    r_squared: float


def ensure_path_exists(path):
    os.makedirs(path, exist_ok=True)


def get_library_version() -> str:
    try:
        return version("wp-dephasing")
    except PackageNotFoundError:
        return "0+unknown"


def wrap_phase(phase: float) -> float:
    """Wrap an angle to (-pi, pi]."""
    wrapped = math.remainder(phase, 2 * math.pi)
    if wrapped <= -math.pi:
        wrapped += 2 * math.pi
    return wrapped


def interpolate_table(x: float, table: Sequence[Tuple[float, float]]) -> float:
    xs = [row[0] for row in table]
    ys = [row[1] for row in table]
    if not xs[0] <= x <= xs[-1]:
        raise TableRangeError(x, xs[0], xs[-1])
    return float(np.interp(x, xs, ys))


def _endpoint_kind(values: np.ndarray, tolerance: float) -> Optional[str]:
    """'max' or 'min' for the first sample, judged against the first one that departs from it."""
    departed = np.flatnonzero(np.abs(values - values[0]) > tolerance)
    if not departed.size:
        return None
    return "max" if values[departed[0]] < values[0] else "min"


def signal_extrema(values: Sequence[float], prominence: Optional[float] = None) -> Tuple[List[int], List[int]]:
    """Return sorted indices of the maxima and minima of a sampled curve.

    Interior extrema come from ``find_peaks`` on the curve and on its negation.
    Both end points are classified too, so a curve that leaves a plateau into
    a dip reports the plateau as a maximum.
    """
    values = np.asarray(values, dtype=float)
    if values.size < 2:
        return [], []
    maxima = set(find_peaks(values, prominence=prominence)[0].tolist())
    minima = set(find_peaks(-values, prominence=prominence)[0].tolist())
    tolerance = prominence or 0.0
    ends = ((0, _endpoint_kind(values, tolerance)), (values.size - 1, _endpoint_kind(values[::-1], tolerance)))
    for index, kind in ends:
        if kind == "max":
            maxima.add(index)
        elif kind == "min":
            minima.add(index)
    return sorted(maxima), sorted(minima)


def linear_fit(x: Sequence[float], y: Sequence[float]) -> LinearFit:
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    slope, intercept = np.polyfit(x, y, 1)
    residual = y - (slope * x + intercept)
    total = float(np.sum((y - y.mean()) ** 2))
    r_squared = 1.0 if total == 0.0 else 1.0 - float(np.sum(residual**2)) / total
    return LinearFit(slope=float(slope), intercept=float(intercept), r_squared=r_squared)


def pairwise_tree_sum(values: Sequence[complex]) -> complex:
    """Sum in a fixed binary tree over the input order."""
    level = list(values)
    if not level:
        return 0j
    while len(level) > 1:
        paired = [level[k] + level[k + 1] for k in range(0, len(level) - 1, 2)]
        if len(level) % 2:
            paired.append(level[-1])
        level = paired
    return level[0]


def gaussian_noise(size: int, amplitude: float, seed: int) -> np.ndarray:
    if amplitude <= 0.0:
        return np.zeros(size)
    return np.random.default_rng(seed).normal(0.0, amplitude, size)
