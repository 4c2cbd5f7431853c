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
"""End-to-end sweeps wiring dot, detector, dephasing and interferometer together.

Every sweep evaluates its physics point by point through ``fill_slots`` and
adds the optional measurement noise to the final observables only.
"""
import logging
import math
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.signal import find_peaks

from wpdephasing.async_handlers import fill_slots
from wpdephasing.config import VISIBILITY_ALLOCATION_NOTE, ExperimentConfig
from wpdephasing.constants import AXIS_UNITS
from wpdephasing.dephasing import DephasingInput, DephasingResult, n_probe_visibility
from wpdephasing.detector import DetectorBias, delta_transmission, probe_count, transmission
from wpdephasing.dot import cb_conductance, ramp_fraction, sawtooth_transmission
from wpdephasing.errors import ConfigInvariantError, DomainError, InsufficientDataError
from wpdephasing.interferometer import (
    AbTrace,
    collector_current,
    extract_visibility,
    fit_period,
    fringe_visibility,
    simulate_trace,
)
from wpdephasing.results import SweepResult
from wpdephasing.utils import LinearFit, gaussian_noise, get_library_version, linear_fit, signal_extrema

logger = logging.getLogger(__name__)

CB_PEAK_PROMINENCE = 0.1
RESET_THRESHOLD = 0.5
RESET_WINDOW_WIDTHS = 4.0
RAMP_FIT_HALF_WIDTH = 0.05
MIN_RAMP_SAMPLES = 3
MIN_COUPLING = 1e-12
MIN_FITTED_VISIBILITY = 1e-9
EXTREMA_NOISE_MULTIPLE = 10.0


def _require_axis(cfg: ExperimentConfig, axis: str):
    if cfg.sweep.axis != axis:
        raise ConfigInvariantError("sweep.axis", "expected {!r}, got {!r}".format(axis, cfg.sweep.axis))


def _axis_values(cfg: ExperimentConfig) -> np.ndarray:
    return np.linspace(cfg.sweep.lo, cfg.sweep.hi, cfg.sweep.n_points)


def _base_meta(cfg: ExperimentConfig) -> dict:
    return {
        "config": cfg.to_mapping(),
        "version": get_library_version(),
        "seed": cfg.seed,
        "model_choices": {"visibility_allocation": VISIBILITY_ALLOCATION_NOTE},
    }


def _with_noise(cfg: ExperimentConfig, columns: Dict[str, np.ndarray], names: Sequence[str]) -> Dict[str, np.ndarray]:
    """Add seeded Gaussian noise to the named observable columns, in the given order."""
    if cfg.noise_amplitude <= 0.0 or not names:
        return columns
    size = cfg.sweep.n_points
    noise = gaussian_noise(size * len(names), cfg.noise_amplitude, cfg.seed).reshape(len(names), size)
    noisy = dict(columns)
    for row, name in zip(noise, names):
        noisy[name] = columns[name] + row
    return noisy


def detector_state(cfg: ExperimentConfig, v_g: float) -> Tuple[float, float]:
    """Operating transmission and its change per added dot electron, with T_d + dT_d capped at 1."""
    curve, coupling = cfg.qpc.curve, cfg.qpc.coupling
    t_d = transmission(curve, v_g)
    dt_d = delta_transmission(coupling, curve, v_g)
    if t_d + dt_d > 1.0:
        logger.warning("[detector] dT_d={!r} exceeds 1 - T_d at V_g={!r}; capped.".format(dt_d, v_g))
        dt_d = 1.0 - t_d
    return t_d, dt_d


def dephasing_state(cfg: ExperimentConfig, t_d: float, dt_d: float, v_d: float) -> DephasingResult:
    n = probe_count(DetectorBias(v_d=v_d), cfg.dot.gamma)
    return n_probe_visibility(DephasingInput(t_d=t_d, dt_d=dt_d, n=n, eta_shift=cfg.qpc.eta_shift))


def _linear_or_exact(result: DephasingResult, where: str) -> float:
    if result.linear_applicable:
        return result.nu_d_linear
    logger.warning("[dephasing] Linearized form undefined at {}; using the product form.".format(where))
    return result.nu_d_exact


def run_field_sweep(cfg: ExperimentConfig, workers: int = 1) -> SweepResult:
    """Collector current versus field with the detector in its operating state."""
    _require_axis(cfg, "field")
    ifm = cfg.interferometer
    v_g = cfg.qpc.operating_gate()
    t_d, dt_d = detector_state(cfg, v_g)
    state = dephasing_state(cfg, t_d, dt_d, cfg.bias.bias.v_d)
    trace = simulate_trace(ifm, state.nu_d_complex, (cfg.sweep.lo, cfg.sweep.hi), cfg.sweep.n_points, workers)
    b_values = np.asarray(trace.b_values)
    columns = _with_noise(cfg, {"I_C_natural": np.asarray(trace.i_c_values)}, ["I_C_natural"])
    natural = columns["I_C_natural"]
    amperes = natural * collector_current(ifm, 1.0)

    results = {
        "V_g": v_g,
        "t_d": t_d,
        "dt_d": dt_d,
        "n_probes": probe_count(cfg.bias.bias, cfg.dot.gamma),
        "nu_d_exact": state.nu_d_exact,
        "nu_d_phase": state.phase_shift,
        "regime": state.regime.value,
        "analytic_visibility": fringe_visibility(ifm, state.nu_d_complex),
        "extracted_visibility": None,
        "extracted_phase": None,
        "fitted_period_mT": None,
    }
    measured = AbTrace(b_values=b_values, i_c_values=natural)
    try:
        fit = extract_visibility(measured, ifm.delta_b)
    except InsufficientDataError as err:
        logger.warning("[sweep-field] Visibility not extracted: {}".format(err))
    else:
        results.update(extracted_visibility=fit.visibility, extracted_phase=fit.phase)
        if fit.visibility > MIN_FITTED_VISIBILITY:
            results["fitted_period_mT"] = fit_period(measured, ifm.delta_b)
    logger.info(
        "[sweep-field] {} points, nu_d={!r}, visibility={!r}.".format(
            len(b_values), state.nu_d_exact, results["extracted_visibility"]
        )
    )
    meta = _base_meta(cfg)
    meta["results"] = results
    return SweepResult(
        axis_name="field",
        axis_units=AXIS_UNITS["field"],
        axis_values=b_values,
        columns={"I_C_A": amperes, "I_C_natural": natural},
        meta=meta,
    )


def _plunger_trace(cfg: ExperimentConfig, v_g: float, v_p: np.ndarray, workers: int) -> Dict[str, np.ndarray]:
    dot, curve, coupling = cfg.dot, cfg.qpc.curve, cfg.qpc.coupling
    g_qd = fill_slots(lambda v: cb_conductance(dot, v), v_p, workers=workers)
    t_d = fill_slots(
        lambda v: sawtooth_transmission(curve, coupling, v_g, ramp_fraction(dot, v)), v_p, workers=workers
    )
    return {"g_QD": g_qd, "T_d": t_d}


def _cb_peaks(g_qd: np.ndarray) -> np.ndarray:
    peaks, _ = find_peaks(g_qd, prominence=CB_PEAK_PROMINENCE * float(np.max(g_qd)))
    return peaks


def _ramp_fit(
    v_p: np.ndarray, t_d: np.ndarray, center: float, origin: float, half_width: float
) -> Optional[LinearFit]:
    inside = np.abs(v_p - center) <= half_width
    if np.count_nonzero(inside) < MIN_RAMP_SAMPLES:
        return None
    return linear_fit(v_p[inside] - origin, t_d[inside])


def _charging_offset(v_p: np.ndarray, t_d: np.ndarray, peak: int, before: LinearFit, after: LinearFit) -> float:
    """Offset from ``v_p[peak]`` where the trace crosses halfway between the two ramps."""
    offsets = v_p - v_p[peak]
    level = t_d - 0.5 * (before.intercept + after.intercept + (before.slope + after.slope) * offsets)
    signs = np.sign(level)
    crossings = np.flatnonzero(signs[:-1] * signs[1:] < 0)
    if not crossings.size:
        return 0.0
    k = int(crossings[np.argmin(np.abs(crossings - peak))])
    return float(offsets[k] - level[k] * (offsets[k + 1] - offsets[k]) / (level[k + 1] - level[k]))


def extract_calibration(
    v_p: Sequence[float], g_qd: Sequence[float], t_d: Sequence[float]
) -> List[Tuple[float, float]]:
    """(T_d, dT_d) for each CB peak found in the trace.

    The ramps on either side of a peak are fitted over a window centred halfway
    to the neighbouring peak and extrapolated to the charging point; T_d is the
    ramp reached just before it and dT_d the jump down to the ramp just after.
    """
    v_p, g_qd, t_d = (np.asarray(values, dtype=float) for values in (v_p, g_qd, t_d))
    peaks = _cb_peaks(g_qd)
    if len(peaks) < 2:
        raise InsufficientDataError(
            "plunger range [{!r}, {!r}] V covers {} CB peak(s), at least 2 are needed".format(
                v_p[0], v_p[-1], len(peaks)
            )
        )
    spacing = float(np.median(np.diff(v_p[peaks])))
    half_width = RAMP_FIT_HALF_WIDTH * spacing
    pairs = []
    for k, peak in enumerate(peaks):
        origin = v_p[peak]
        left = 0.5 * (v_p[peaks[k - 1]] + origin) if k > 0 else origin - 0.5 * spacing
        right = 0.5 * (origin + v_p[peaks[k + 1]]) if k + 1 < len(peaks) else origin + 0.5 * spacing
        before = _ramp_fit(v_p, t_d, left, origin, half_width)
        after = _ramp_fit(v_p, t_d, right, origin, half_width)
        if before is None or after is None:
            logger.warning("[calibration] Too few samples around the CB peak at {!r} V; skipped.".format(origin))
            continue
        offset = _charging_offset(v_p, t_d, peak, before, after)
        level_before = before.intercept + before.slope * offset
        level_after = after.intercept + after.slope * offset
        pairs.append((float(level_before), float(level_before - level_after)))
    if not pairs:
        raise InsufficientDataError("no CB peak has enough samples on both ramps for a calibration")
    return pairs


def _reset_events(v_p: np.ndarray, t_d: np.ndarray, dt_d: float, thermal_width: float) -> np.ndarray:
    """Centre indices of the falls by more than half of ``dt_d`` within a few thermal widths."""
    if dt_d <= MIN_COUPLING:
        return np.array([], dtype=int)
    step = float(v_p[1] - v_p[0])
    lag = max(1, int(round(RESET_WINDOW_WIDTHS * thermal_width / step)))
    if lag >= len(t_d):
        return np.array([], dtype=int)
    drops = t_d[:-lag] - t_d[lag:]
    events, _ = find_peaks(drops, height=RESET_THRESHOLD * dt_d, distance=lag)
    return events + lag // 2


def run_plunger_sweep(cfg: ExperimentConfig, workers: int = 1) -> SweepResult:
    """CB conductance and sawtooth detector transmission versus plunger voltage."""
    _require_axis(cfg, "plunger")
    v_g = cfg.qpc.operating_gate()
    v_p = _axis_values(cfg)
    trace = _plunger_trace(cfg, v_g, v_p, workers)
    dt_d = delta_transmission(cfg.qpc.coupling, cfg.qpc.curve, v_g)
    columns = {"g_QD": trace["g_QD"], "T_d": trace["T_d"], "dT_d": np.full(len(v_p), dt_d)}
    columns = _with_noise(cfg, columns, ["g_QD", "T_d"])

    pairs = extract_calibration(v_p, columns["g_QD"], columns["T_d"])
    mean_t_d = float(np.mean([p[0] for p in pairs]))
    mean_dt_d = float(np.mean([p[1] for p in pairs]))
    resets = _reset_events(v_p, columns["T_d"], mean_dt_d, cfg.dot.thermal_width)
    meta = _base_meta(cfg)
    meta["results"] = {
        "V_g": v_g,
        "cb_peak_count": len(_cb_peaks(columns["g_QD"])),
        "reset_count": len(resets),
        "reset_positions_V": [float(v_p[i]) for i in resets],
        "reset_drops": [p[1] for p in pairs],
        "calibration": [list(pair) for pair in pairs],
        "mean_t_d": mean_t_d,
        "mean_dt_d": mean_dt_d,
        "model_dt_d": dt_d,
    }
    logger.info(
        "[sweep-plunger] {} CB peaks, {} resets, dT_d={!r} (model {!r}).".format(
            meta["results"]["cb_peak_count"], len(resets), mean_dt_d, dt_d
        )
    )
    return SweepResult(
        axis_name="plunger", axis_units=AXIS_UNITS["plunger"], axis_values=v_p, columns=columns, meta=meta
    )


def run_calibration_scan(cfg: ExperimentConfig, v_g_values: Sequence[float], workers: int = 1) -> SweepResult:
    """Repeat the plunger measurement at several QPC gates and average dT_d over the CB peaks."""
    _require_axis(cfg, "plunger")
    v_p = _axis_values(cfg)
    t_column, dt_column, peak_counts, reset_counts = [], [], [], []
    for v_g in v_g_values:
        trace = _with_noise(cfg, _plunger_trace(cfg, v_g, v_p, workers), ["g_QD", "T_d"])
        pairs = extract_calibration(v_p, trace["g_QD"], trace["T_d"])
        t_column.append(float(np.mean([p[0] for p in pairs])))
        dt_column.append(float(np.mean([p[1] for p in pairs])))
        peak_counts.append(len(pairs))
        reset_counts.append(len(_reset_events(v_p, trace["T_d"], dt_column[-1], cfg.dot.thermal_width)))
    meta = _base_meta(cfg)
    meta["results"] = {"cb_peaks_averaged": peak_counts, "reset_counts": reset_counts}
    logger.info("[calibration] {} gate settings averaged over {} CB peaks.".format(len(v_g_values), peak_counts))
    return SweepResult(
        axis_name="qpc_gate",
        axis_units=AXIS_UNITS["qpc_gate"],
        axis_values=v_g_values,
        columns={"T_d": t_column, "dT_d": dt_column},
        meta=meta,
    )


def _bias_label(v_d: float) -> str:
    return "{:g}uV".format(v_d)


def run_gate_sweep(cfg: ExperimentConfig, workers: int = 1) -> SweepResult:
    """Detector transmission, its coupling and the visibility versus QPC gate, per detector bias."""
    _require_axis(cfg, "qpc_gate")
    curve, coupling = cfg.qpc.curve, cfg.qpc.coupling
    v_g = _axis_values(cfg)
    nu0 = fringe_visibility(cfg.interferometer, 1.0)
    state = fill_slots(lambda v: complex(*detector_state(cfg, v)), v_g, dtype=complex, workers=workers)
    t_d, dt_d = state.real.copy(), state.imag.copy()
    columns = {"T_d": t_d, "dT_d": dt_d}
    observables = []
    for v_d in cfg.bias.gate_sweep_values:
        label = _bias_label(v_d)

        def linear(index, v_d=v_d):
            state = dephasing_state(cfg, t_d[index], dt_d[index], v_d)
            return _linear_or_exact(state, "V_g={!r}".format(v_g[index]))

        def exact(index, v_d=v_d):
            return dephasing_state(cfg, t_d[index], dt_d[index], v_d).nu_d_exact

        indices = list(range(len(v_g)))
        columns["nu_d_" + label] = fill_slots(linear, indices, workers=workers)
        columns["nu_d_exact_" + label] = fill_slots(exact, indices, workers=workers)
        columns["nu_" + label] = nu0 * columns["nu_d_" + label]
        observables.append("nu_" + label)
    columns = _with_noise(cfg, columns, observables)
    prominence = EXTREMA_NOISE_MULTIPLE * cfg.noise_amplitude if cfg.noise_amplitude > 0.0 else None

    per_bias = []
    for v_d in cfg.bias.gate_sweep_values:
        nu = columns["nu_" + _bias_label(v_d)]
        maxima, minima = signal_extrema(nu, prominence=prominence)
        per_bias.append(
            {
                "v_d": v_d,
                "n_probes": probe_count(DetectorBias(v_d=v_d), cfg.dot.gamma),
                "maxima_t_d": [float(t_d[i]) for i in maxima],
                "minima_t_d": [float(t_d[i]) for i in minima],
                "dip_depths": [float(nu0 - nu[i]) for i in minima],
            }
        )
    meta = _base_meta(cfg)
    meta["results"] = {"nu0": nu0, "coupling_kind": coupling.kind, "curve_model": curve.model, "bias": per_bias}
    logger.info(
        "[sweep-gate] {} points, {} bias value(s).".format(len(v_g), len(cfg.bias.gate_sweep_values))
    )
    return SweepResult(
        axis_name="qpc_gate", axis_units=AXIS_UNITS["qpc_gate"], axis_values=v_g, columns=columns, meta=meta
    )


def run_bias_sweep(cfg: ExperimentConfig, workers: int = 1) -> SweepResult:
    """Visibility versus detector bias at a fixed detector operating point."""
    _require_axis(cfg, "bias")
    v_g = cfg.qpc.operating_gate()
    t_d, dt_d = detector_state(cfg, v_g)
    v_d = _axis_values(cfg)
    nu0 = fringe_visibility(cfg.interferometer, 1.0)
    if nu0 <= 0.0:
        raise DomainError("bias sweep normalizes by the zero-bias visibility, which is {!r}".format(nu0))
    where = "V_g={!r}".format(v_g)
    nu_d = fill_slots(lambda v: _linear_or_exact(dephasing_state(cfg, t_d, dt_d, v), where), v_d, workers=workers)
    nu_d_exact = fill_slots(lambda v: dephasing_state(cfg, t_d, dt_d, v).nu_d_exact, v_d, workers=workers)
    n_probes = fill_slots(lambda v: probe_count(DetectorBias(v_d=v), cfg.dot.gamma), v_d, workers=workers)
    columns = {"N": n_probes, "nu_d": nu_d, "nu_d_exact": nu_d_exact, "nu": nu0 * nu_d}
    columns = _with_noise(cfg, columns, ["nu"])

    ratio = columns["nu"] / nu0
    fit = linear_fit(v_d, ratio)
    if 0.0 < t_d < 1.0:
        analytic_slope = -(dt_d**2) / (8.0 * math.pi * cfg.dot.gamma * t_d * (1.0 - t_d))
    else:
        analytic_slope = None
    meta = _base_meta(cfg)
    meta["results"] = {
        "V_g": v_g,
        "t_d": t_d,
        "dt_d": dt_d,
        "nu_zero_bias": nu0,
        "fit_slope": fit.slope,
        "fit_intercept": fit.intercept,
        "fit_r_squared": fit.r_squared,
        "analytic_slope": analytic_slope,
        "relative_drop": float(1.0 - ratio[-1]),
    }
    logger.info("[sweep-bias] slope {!r} per uV (analytic {!r}).".format(fit.slope, analytic_slope))
    return SweepResult(axis_name="bias", axis_units=AXIS_UNITS["bias"], axis_values=v_d, columns=columns, meta=meta)


SWEEP_RUNNERS: Dict[str, Callable[[ExperimentConfig, int], SweepResult]] = {
    "field": run_field_sweep,
    "plunger": run_plunger_sweep,
    "qpc_gate": run_gate_sweep,
    "bias": run_bias_sweep,
}


def run_sweep(cfg: ExperimentConfig, workers: int = 1) -> SweepResult:
    return SWEEP_RUNNERS[cfg.sweep.axis](cfg, workers)
