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
"""Sweep results and their CSV/JSON renderings."""
import csv
import io
import json
import logging
import math
import sys
from pathlib import Path
from typing import Dict, Optional, Tuple

import attr

from wpdephasing.constants import AXIS_COLUMN_NAMES, OUTPUT_FORMATS
from wpdephasing.errors import DomainError
from wpdephasing.utils import ensure_path_exists

logger = logging.getLogger(__name__)


def _to_floats(values) -> Tuple[float, ...]:
    return tuple(float(v) for v in values)


def _to_columns(columns) -> Dict[str, Tuple[float, ...]]:
    return {str(name): _to_floats(values) for name, values in columns.items()}


@attr.s(frozen=True)
class SweepResult:
    axis_name: str = attr.ib()
    axis_units: str = attr.ib()
    axis_values: Tuple[float, ...] = attr.ib(converter=_to_floats)
    columns: Dict[str, Tuple[float, ...]] = attr.ib(converter=_to_columns)
    meta: dict = attr.ib(factory=dict)

    def __attrs_post_init__(self):
        size = len(self.axis_values)
        for name, values in [(self.axis_name, self.axis_values)] + list(self.columns.items()):
            if len(values) != size:
                raise DomainError("column {} has {} values, expected {}".format(name, len(values), size))
            if not all(math.isfinite(v) for v in values):
                raise DomainError("column {} contains non-finite values".format(name))

    @property
    def axis_column(self) -> str:
        return AXIS_COLUMN_NAMES.get(self.axis_name, self.axis_name)

    def _dumps(self, document, **kwargs) -> str:
        try:
            return json.dumps(document, allow_nan=False, **kwargs)
        except ValueError as err:
            raise DomainError("result of the {} sweep is not finite: {}".format(self.axis_name, err))

    def to_json(self) -> str:
        document = {
            "meta": self.meta,
            "axis": {"name": self.axis_name, "units": self.axis_units, "values": list(self.axis_values)},
            "columns": {name: list(values) for name, values in self.columns.items()},
        }
        return self._dumps(document, indent=2) + "\n"

    def to_csv(self) -> str:
        buffer = io.StringIO()
        buffer.write("# meta: {}\n".format(self._dumps(self.meta)))
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow([self.axis_column] + list(self.columns))
        for index, value in enumerate(self.axis_values):
            writer.writerow([repr(value)] + [repr(column[index]) for column in self.columns.values()])
        return buffer.getvalue()


def render(result: SweepResult, fmt: str) -> str:
    if fmt not in OUTPUT_FORMATS:
        raise DomainError("output format must be one of {}, got {!r}".format(OUTPUT_FORMATS, fmt))
    return result.to_json() if fmt == "json" else result.to_csv()


def emit(result: SweepResult, fmt: str, path: Optional[str] = None):
    """Write the rendered result to ``path``, or to stdout when no path is given."""
    text = render(result, fmt)
    if path is None:
        sys.stdout.write(text)
        return
    target = Path(path)
    if target.parent != Path("."):
        ensure_path_exists(target.parent)
    target.write_text(text)
    logger.info("[emit] Wrote {} rows as {} to {}.".format(len(result.axis_values), fmt, target))
