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
"""Module containing package specific errors."""
from typing import Optional


class SimulationError(Exception):
    pass


class ConfigError(SimulationError):
    pass


class ModelError(SimulationError):
    pass


class ConfigParseError(ConfigError):
    def __init__(self, source: str, line: Optional[int], reason: str):
        super().__init__()
        self.source = source
        self.line = line
        self.reason = reason

    def __str__(self):
        """Return string representation of ConfigParseError."""
        location = self.source if self.line is None else "{}:{}".format(self.source, self.line)
        return "{}: {}: {}".format(self.__class__.__name__, location, self.reason)


class MissingFieldError(ConfigError):
    def __init__(self, field: str):
        super().__init__()
        self.field = field

    def __str__(self):
        """Return string representation of MissingFieldError."""
        return "{}: required field '{}' is missing".format(self.__class__.__name__, self.field)


class ConfigInvariantError(ConfigError):
    def __init__(self, field: str, reason: str):
        super().__init__()
        self.field = field
        self.reason = reason

    def __str__(self):
        """Return string representation of ConfigInvariantError."""
        return "{}: {}: {}".format(self.__class__.__name__, self.field, self.reason)


class CalibrationTableError(ConfigError):
    def __init__(self, source: str, line: int, reason: str):
        super().__init__()
        self.source = source
        self.line = line
        self.reason = reason

    def __str__(self):
        """Return string representation of CalibrationTableError."""
        return "{}: {}:{}: {}".format(self.__class__.__name__, self.source, self.line, self.reason)


class DomainError(ModelError, ValueError):
    def __init__(self, message: str):
        super().__init__()
        self.message = message

    def __str__(self):
        """Return string representation of DomainError."""
        return "{}: {}".format(self.__class__.__name__, self.message)


class TableRangeError(ModelError):
    def __init__(self, value: float, lower: float, upper: float):
        super().__init__()
        self.value = value
        self.lower = lower
        self.upper = upper

    def __str__(self):
        """Return string representation of TableRangeError."""
        return "{}: {!r} is outside the table range [{!r}, {!r}]".format(
            self.__class__.__name__, self.value, self.lower, self.upper
        )


class InvalidOverlapError(ModelError):
    def __init__(self, overlap: complex):
        super().__init__()
        self.overlap = overlap

    def __str__(self):
        """Return string representation of InvalidOverlapError."""
        return "{}: detector overlap {!r} has modulus {!r} > 1".format(
            self.__class__.__name__, self.overlap, abs(self.overlap)
        )


class InconsistentModelError(ModelError):
    def __init__(self, transmission: float):
        super().__init__()
        self.transmission = transmission

    def __str__(self):
        """Return string representation of InconsistentModelError."""
        return "{}: collector transmission {!r} is outside [0, 1]".format(self.__class__.__name__, self.transmission)


class InsufficientDataError(ModelError):
    def __init__(self, message: str):
        super().__init__()
        self.message = message

    def __str__(self):
        """Return string representation of InsufficientDataError."""
        return "{}: {}".format(self.__class__.__name__, self.message)


class DegenerateTraceError(ModelError):
    def __init__(self, mean_level: float):
        super().__init__()
        self.mean_level = mean_level

    def __str__(self):
        """Return string representation of DegenerateTraceError."""
        return "{}: fitted mean level {!r} is not positive".format(self.__class__.__name__, self.mean_level)


class EnumerationLimitError(ModelError):
    def __init__(self, n: int, limit: int):
        super().__init__()
        self.n = n
        self.limit = limit

    def __str__(self):
        """Return string representation of EnumerationLimitError."""
        return "{}: {} probes requested, at most {} can be enumerated".format(
            self.__class__.__name__, self.n, self.limit
        )


class OracleCheckError(ModelError):
    def __init__(self, seed: int, max_deviation: float, tolerance: float):
        super().__init__()
        self.seed = seed
        self.max_deviation = max_deviation
        self.tolerance = tolerance

    def __str__(self):
        """Return string representation of OracleCheckError."""
        return "{}: max deviation {!r} exceeds tolerance {!r} (seed={})".format(
            self.__class__.__name__, self.max_deviation, self.tolerance, self.seed
        )
