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
"""Configuration: CLI arguments and the experiment description loaded from TOML."""
import json
import logging
import re
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Tuple

import attr

try:
    import tomllib
except ModuleNotFoundError:  # python < 3.11
    import tomli as tomllib

from wpdephasing.constants import (
    DEFAULT_BARE_VISIBILITY,
    DEFAULT_BIAS_POINTS,
    DEFAULT_BIAS_RANGE_UV,
    DEFAULT_FIELD_PERIODS,
    DEFAULT_GATE_HALF_SPAN_WIDTHS,
    DEFAULT_GATE_POINTS,
    DEFAULT_OPERATING_T_D,
    DEFAULT_PATH_TRANSMISSION,
    DEFAULT_PLUNGER_PERIODS,
    DEFAULT_PLUNGER_POINTS,
    DEFAULT_POINTS_PER_PERIOD,
    SWEEP_AXES,
)
from wpdephasing.detector import (
    COUPLING_TABLE_HEADER,
    TRANSMISSION_TABLE_HEADER,
    CouplingModel,
    DetectorBias,
    QpcTransmissionCurve,
    load_calibration_table,
)
from wpdephasing.dot import DotModel
from wpdephasing.errors import CalibrationTableError, ConfigInvariantError, ConfigParseError, MissingFieldError
from wpdephasing.interferometer import InterferometerModel, amplitudes_for_visibility

logger = logging.getLogger(__name__)

SECTION_KEYS = {
    "dot": ["gamma", "peak_spacing", "peak_offset", "lever_arm", "theta_e", "peak_height"],
    "qpc": ["model", "v_half", "width", "table", "v_g", "t_d_target", "eta_shift"],
    "coupling": ["kind", "delta_v", "c", "s", "table"],
    "interferometer": ["delta_b", "v_e", "background", "bare_visibility", "path_transmission", "a_left", "a_right"],
    "bias": ["v_d", "v_d_values"],
    "sweep": ["axis", "lo", "hi", "n_points"],
}
TOP_LEVEL_KEYS = ["seed", "noise_amplitude"]
STRING_KEYS = {"qpc.model", "coupling.kind", "sweep.axis"}
VISIBILITY_ALLOCATION_NOTE = (
    "bare visibility and incoherent background are a model allocation of the measured fringe contrast"
)


class Config:
    """Arguments of one CLI invocation."""

    def __init__(self, args: dict):
        self.args = args

    @property
    def command(self) -> str:
        return self.args.get("command")

    @property
    def config_path(self) -> Optional[str]:
        return self.args.get("config_path")

    @property
    def output_path(self) -> Optional[str]:
        return self.args.get("output_path")

    @property
    def output_format(self) -> str:
        return self.args.get("output_format")

    @property
    def overrides(self) -> List[str]:
        return self.args.get("overrides") or []

    @property
    def log_level(self) -> str:
        return self.args.get("log_level")

    @property
    def workers(self) -> int:
        return self.args.get("workers")

    @property
    def seed(self) -> int:
        return self.args.get("seed")

    @property
    def draws(self) -> int:
        return self.args.get("draws")

    @property
    def max_probes(self) -> int:
        return self.args.get("max_probes")

    @property
    def tolerance(self) -> float:
        return self.args.get("tolerance")


@attr.s(frozen=True)
class QpcSettings:
    """Detector curve, its coupling to the dot and the operating point.

    The operating gate is ``v_g`` when set, otherwise the gate at which the
    curve reaches ``t_d_target``.
    """

    curve: QpcTransmissionCurve = attr.ib(factory=QpcTransmissionCurve)
    coupling: CouplingModel = attr.ib(factory=CouplingModel)
    v_g: Optional[float] = attr.ib(default=None)
    t_d_target: float = attr.ib(default=DEFAULT_OPERATING_T_D, converter=float)
    eta_shift: float = attr.ib(default=0.0, converter=float)

    @t_d_target.validator
    def _check_target(self, attribute, value):
        if not 0.0 < value < 1.0:
            raise ValueError("t_d_target must lie in (0, 1), got {!r}".format(value))

    def operating_gate(self) -> float:
        if self.v_g is not None:
            return float(self.v_g)
        return self.curve.inverse(self.t_d_target)


@attr.s(frozen=True)
class BiasSettings:
    bias: DetectorBias = attr.ib(factory=DetectorBias)
    v_d_values: Tuple[float, ...] = attr.ib(default=(), converter=lambda xs: tuple(float(x) for x in xs))

    @v_d_values.validator
    def _check_values(self, attribute, value):
        if any(v < 0.0 for v in value):
            raise ValueError("v_d_values must be >= 0")

    @property
    def gate_sweep_values(self) -> Tuple[float, ...]:
        return self.v_d_values or (self.bias.v_d,)


@attr.s(frozen=True)
class SweepSettings:
    axis: str = attr.ib(validator=attr.validators.in_(SWEEP_AXES))
    lo: float = attr.ib(converter=float)
    hi: float = attr.ib(converter=float)
    n_points: int = attr.ib(validator=attr.validators.instance_of(int))

    def __attrs_post_init__(self):
        if not self.hi > self.lo:
            raise ValueError("sweep range needs lo < hi, got lo={!r} hi={!r}".format(self.lo, self.hi))
        if self.n_points < 2:
            raise ValueError("n_points must be >= 2, got {}".format(self.n_points))


@attr.s(frozen=True)
class ExperimentConfig:
    dot: DotModel = attr.ib()
    qpc: QpcSettings = attr.ib()
    interferometer: InterferometerModel = attr.ib()
    bias: BiasSettings = attr.ib()
    sweep: SweepSettings = attr.ib()
    seed: int = attr.ib(default=0)
    noise_amplitude: float = attr.ib(default=0.0, converter=float, validator=attr.validators.ge(0.0))

    def to_mapping(self) -> dict:
        """Fully resolved echo; loading it back yields an equal configuration."""
        curve, coupling = self.qpc.curve, self.qpc.coupling
        qpc = {"model": curve.model, "v_half": curve.v_half, "width": curve.width}
        if curve.table is not None:
            qpc["table"] = [list(row) for row in curve.table]
        if self.qpc.v_g is not None:
            qpc["v_g"] = self.qpc.v_g
        qpc.update(t_d_target=self.qpc.t_d_target, eta_shift=self.qpc.eta_shift)
        coupling_section = {"kind": coupling.kind, "delta_v": coupling.delta_v, "c": coupling.c, "s": coupling.s}
        if coupling.table is not None:
            coupling_section["table"] = [list(row) for row in coupling.table]
        ifm = self.interferometer
        return {
            "dot": attr.asdict(self.dot),
            "qpc": qpc,
            "coupling": coupling_section,
            "interferometer": {
                "delta_b": ifm.delta_b,
                "v_e": ifm.v_e,
                "background": ifm.background,
                "a_left": [ifm.a_left.real, ifm.a_left.imag],
                "a_right": [ifm.a_right.real, ifm.a_right.imag],
            },
            "bias": {"v_d": self.bias.bias.v_d, "v_d_values": list(self.bias.v_d_values)},
            "sweep": attr.asdict(self.sweep),
            "seed": self.seed,
            "noise_amplitude": self.noise_amplitude,
        }


def _field_from_message(section: str, keys: Iterable[str], message: str) -> str:
    for key in keys:
        if re.search(r"\b{}\b".format(re.escape(key)), message):
            return "{}.{}".format(section, key)
    return section


def _build(section: str, factory, **kwargs):
    try:
        return factory(**kwargs)
    except (ValueError, TypeError) as err:
        raise ConfigInvariantError(_field_from_message(section, kwargs, str(err)), str(err))


def _number(mapping: dict, section: str, key: str, integer: bool = False):
    value = mapping[key]
    kinds = (int,) if integer else (int, float)
    if isinstance(value, bool) or not isinstance(value, kinds):
        expected = "an integer" if integer else "a number"
        field = "{}.{}".format(section, key) if section else key
        raise ConfigInvariantError(field, "expected {}, got {!r}".format(expected, value))
    return value


def _numbers(mapping: dict, section: str, integer_keys: Iterable[str] = (), skip: Iterable[str] = ()) -> dict:
    out = {}
    for key in mapping:
        if key in skip or "{}.{}".format(section, key) in STRING_KEYS:
            continue
        out[key] = _number(mapping, section, key, integer=key in integer_keys)
    return out


def _check_keys(mapping: dict):
    for key, value in mapping.items():
        if key in TOP_LEVEL_KEYS:
            continue
        if key not in SECTION_KEYS:
            raise ConfigInvariantError(key, "unknown configuration key")
        if not isinstance(value, dict):
            raise ConfigInvariantError(key, "expected a section")
        for name in value:
            if name not in SECTION_KEYS[key]:
                raise ConfigInvariantError("{}.{}".format(key, name), "unknown configuration key")
    for field in STRING_KEYS:
        section, key = field.split(".")
        value = mapping.get(section, {}).get(key)
        if value is not None and not isinstance(value, str):
            raise ConfigInvariantError(field, "expected a string, got {!r}".format(value))


def _table(value, field: str, header: List[str], base_dir: Optional[Path]):
    if isinstance(value, str):
        path = Path(value)
        if base_dir is not None and not path.is_absolute():
            path = base_dir / path
        try:
            found, rows = load_calibration_table(path)
        except OSError as err:
            raise ConfigInvariantError(field, "cannot read calibration table: {}".format(err))
        if found != header:
            raise CalibrationTableError(str(path), 1, "expected header {!r}".format(",".join(header)))
        return rows
    if not isinstance(value, list) or not all(isinstance(row, list) and len(row) == 2 for row in value):
        raise ConfigInvariantError(field, "expected a file path or a list of [x, y] rows")
    for row in value:
        for cell in row:
            if isinstance(cell, bool) or not isinstance(cell, (int, float)):
                raise ConfigInvariantError(field, "table entries must be numbers, got {!r}".format(cell))
    return value


def _default_sweep_bounds(axis: str, dot: DotModel, curve: QpcTransmissionCurve, ifm: InterferometerModel):
    if axis == "field":
        return 0.0, DEFAULT_FIELD_PERIODS * ifm.delta_b, DEFAULT_FIELD_PERIODS * DEFAULT_POINTS_PER_PERIOD + 1
    if axis == "plunger":
        lo = dot.peak_center(0) + 0.5 * dot.peak_spacing
        return lo, lo + DEFAULT_PLUNGER_PERIODS * dot.peak_spacing, DEFAULT_PLUNGER_POINTS
    if axis == "qpc_gate":
        if curve.model == "table":
            return curve.table[0][0], curve.table[-1][0], DEFAULT_GATE_POINTS
        half = DEFAULT_GATE_HALF_SPAN_WIDTHS * curve.width
        return curve.v_half - half, curve.v_half + half, DEFAULT_GATE_POINTS
    return DEFAULT_BIAS_RANGE_UV[0], DEFAULT_BIAS_RANGE_UV[1], DEFAULT_BIAS_POINTS


def _interferometer(section: dict) -> InterferometerModel:
    explicit = [key for key in ("a_left", "a_right") if key in section]
    allocated = [key for key in ("bare_visibility", "path_transmission") if key in section]
    if explicit and len(explicit) != 2:
        raise ConfigInvariantError("interferometer.{}".format(explicit[0]), "a_left and a_right must be given together")
    if explicit and allocated:
        raise ConfigInvariantError(
            "interferometer.{}".format(allocated[0]), "cannot be combined with explicit a_left/a_right"
        )
    values = _numbers(section, "interferometer", skip=("a_left", "a_right"))
    kwargs = {key: values[key] for key in ("delta_b", "v_e", "background") if key in values}
    if explicit:
        a_left, a_right = section["a_left"], section["a_right"]
    else:
        nu0 = values.get("bare_visibility", DEFAULT_BARE_VISIBILITY)
        total = values.get("path_transmission", DEFAULT_PATH_TRANSMISSION)
        a_left, a_right = _build("interferometer", amplitudes_for_visibility, nu0=nu0, total=total)
    return _build("interferometer", InterferometerModel, a_left=a_left, a_right=a_right, **kwargs)


def config_from_mapping(mapping: dict, base_dir: Optional[Path] = None) -> ExperimentConfig:
    """Validate a parsed configuration and resolve every default."""
    _check_keys(mapping)
    sweep_section = dict(mapping.get("sweep", {}))
    if "axis" not in sweep_section:
        raise MissingFieldError("sweep.axis")

    dot = _build("dot", DotModel, **_numbers(mapping.get("dot", {}), "dot"))

    qpc_section = dict(mapping.get("qpc", {}))
    if "table" in qpc_section:
        qpc_section["table"] = _table(qpc_section["table"], "qpc.table", TRANSMISSION_TABLE_HEADER, base_dir)
    qpc_numbers = _numbers(qpc_section, "qpc", skip=("table",))
    curve_kwargs = {key: qpc_numbers[key] for key in ("v_half", "width") if key in qpc_numbers}
    curve = _build(
        "qpc",
        QpcTransmissionCurve,
        model=qpc_section.get("model", "logistic"),
        table=qpc_section.get("table"),
        **curve_kwargs,
    )

    coupling_section = dict(mapping.get("coupling", {}))
    if "table" in coupling_section:
        coupling_section["table"] = _table(
            coupling_section["table"], "coupling.table", COUPLING_TABLE_HEADER, base_dir
        )
    coupling = _build(
        "coupling",
        CouplingModel,
        kind=coupling_section.get("kind", "saturating"),
        table=coupling_section.get("table"),
        **_numbers(coupling_section, "coupling", skip=("table",)),
    )
    settings_kwargs = {key: qpc_numbers[key] for key in ("v_g", "t_d_target", "eta_shift") if key in qpc_numbers}
    qpc = _build("qpc", QpcSettings, curve=curve, coupling=coupling, **settings_kwargs)

    interferometer = _interferometer(mapping.get("interferometer", {}))

    bias_section = dict(mapping.get("bias", {}))
    v_d_values = bias_section.pop("v_d_values", [])
    if not isinstance(v_d_values, list):
        raise ConfigInvariantError("bias.v_d_values", "expected a list of numbers")
    for value in v_d_values:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigInvariantError("bias.v_d_values", "expected a list of numbers, got {!r}".format(value))
    detector_bias = _build("bias", DetectorBias, **_numbers(bias_section, "bias"))
    bias = _build("bias", BiasSettings, bias=detector_bias, v_d_values=v_d_values)

    axis = sweep_section["axis"]
    if axis not in SWEEP_AXES:
        raise ConfigInvariantError("sweep.axis", "must be one of {}, got {!r}".format(SWEEP_AXES, axis))
    lo, hi, n_points = _default_sweep_bounds(axis, dot, curve, interferometer)
    sweep_numbers = _numbers(sweep_section, "sweep", integer_keys=("n_points",))
    sweep = _build(
        "sweep",
        SweepSettings,
        axis=axis,
        lo=sweep_numbers.get("lo", lo),
        hi=sweep_numbers.get("hi", hi),
        n_points=sweep_numbers.get("n_points", n_points),
    )

    top = _numbers({key: mapping[key] for key in TOP_LEVEL_KEYS if key in mapping}, "", integer_keys=("seed",))
    seed = top.get("seed", 0)
    if seed < 0:
        raise ConfigInvariantError("seed", "must be >= 0, got {}".format(seed))
    noise = top.get("noise_amplitude", 0.0)
    if noise < 0.0:
        raise ConfigInvariantError("noise_amplitude", "must be >= 0, got {!r}".format(noise))
    return ExperimentConfig(
        dot=dot, qpc=qpc, interferometer=interferometer, bias=bias, sweep=sweep, seed=seed, noise_amplitude=noise
    )


def _parse_value(raw: str):
    try:
        return tomllib.loads("value = {}".format(raw))["value"]
    except tomllib.TOMLDecodeError:
        return raw


def apply_overrides(mapping: dict, overrides: Iterable[str]) -> dict:
    """Apply ``section.key=value`` assignments, values parsed as TOML."""
    result = {key: dict(value) if isinstance(value, dict) else value for key, value in mapping.items()}
    for override in overrides:
        path, sep, raw = override.partition("=")
        path = path.strip()
        if not sep or not path:
            raise ConfigParseError("--set", None, "expected key=value, got {!r}".format(override))
        keys = path.split(".")
        if len(keys) > 2:
            raise ConfigInvariantError(path, "overrides address at most section.key")
        value = _parse_value(raw.strip())
        if len(keys) == 1:
            result[keys[0]] = value
            continue
        section = result.setdefault(keys[0], {})
        if not isinstance(section, dict):
            raise ConfigInvariantError(keys[0], "expected a section")
        section[keys[1]] = value
        logger.debug("[config] Override {} = {!r}.".format(path, value))
    return result


def read_mapping(path) -> dict:
    """Parse a TOML config, or the ``meta.config`` echo of a JSON result file."""
    source = str(path)
    try:
        text = Path(path).read_text()
    except OSError as err:
        raise ConfigParseError(source, None, "cannot read file: {}".format(err.strerror or err))
    if Path(path).suffix == ".json":
        try:
            document = json.loads(text)
        except json.JSONDecodeError as err:
            raise ConfigParseError(source, err.lineno, err.msg)
        config = document.get("meta", {}).get("config") if isinstance(document, dict) else None
        if not isinstance(config, dict):
            raise MissingFieldError("meta.config")
        return config
    try:
        return tomllib.loads(text)
    except tomllib.TOMLDecodeError as err:
        match = re.search(r"line (\d+)", str(err))
        raise ConfigParseError(source, int(match.group(1)) if match else None, str(err))


def load_config(path=None, overrides: Iterable[str] = (), axis: Optional[str] = None) -> ExperimentConfig:
    """Load, override and validate an experiment configuration.

    ``axis`` fills in ``sweep.axis`` when the file leaves it out; a file that
    names a different axis is rejected.
    """
    mapping: Dict = read_mapping(path) if path is not None else {}
    mapping = apply_overrides(mapping, overrides)
    if axis is not None:
        sweep = mapping.setdefault("sweep", {})
        if not isinstance(sweep, dict):
            raise ConfigInvariantError("sweep", "expected a section")
        found = sweep.setdefault("axis", axis)
        if found != axis:
            raise ConfigInvariantError("sweep.axis", "{!r} does not match the requested {!r} sweep".format(found, axis))
    base_dir = Path(path).parent if path is not None else None
    config = config_from_mapping(mapping, base_dir)
    logger.info("[config] Loaded {} sweep configuration from {}.".format(config.sweep.axis, path or "defaults"))
    return config
