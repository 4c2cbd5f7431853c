#!/usr/bin/python3
""" Unit tests for dot.py """
import math
import unittest

import numpy as np

from wpdephasing.detector import (
    CouplingModel,
    DetectorBias,
    QpcTransmissionCurve,
    delta_transmission,
    probe_count,
    probe_rate,
    transmission,
)
from wpdephasing.dot import (
    DotModel,
    SawtoothState,
    cb_conductance,
    dwell_time,
    ramp_fraction,
    sawtooth_fraction,
    sawtooth_transmission,
    smoothed_charge,
)
from wpdephasing.errors import DomainError


class TestDwellTime(unittest.TestCase):
    def test_examples(self):
        self.assertAlmostEqual(dwell_time(DotModel(gamma=0.5)) / 1.316e-9, 1.0, delta=1e-3)
        self.assertAlmostEqual(dwell_time(DotModel(gamma=0.7)) / 9.40e-10, 1.0, delta=1e-3)

    def test_probe_count_consistency(self):
        for v_d in (10.0, 55.0, 100.0):
            for gamma in (0.3, 0.5, 0.7):
                with self.subTest(v_d=v_d, gamma=gamma):
                    bias = DetectorBias(v_d=v_d)
                    n = probe_rate(bias) * dwell_time(DotModel(gamma=gamma))
                    self.assertAlmostEqual(n / probe_count(bias, gamma), 1.0, delta=1e-12)

    def test_invalid_models(self):
        for kwargs in ({"gamma": 0.0}, {"peak_spacing": -0.1}, {"lever_arm": 0.0}, {"theta_e": -1.0}):
            with self.subTest(**kwargs):
                with self.assertRaises(ValueError):
                    DotModel(**kwargs)


class TestCbConductance(unittest.TestCase):
    def setUp(self):
        self.dot = DotModel(peak_offset=0.01)

    def test_maximum_at_peak_and_minimum_between(self):
        step = 1e-5
        center = self.dot.peak_center(2)
        middle = center + 0.5 * self.dot.peak_spacing
        g = lambda v: cb_conductance(self.dot, v)  # noqa: E731
        self.assertGreater(g(center), g(center - step))
        self.assertGreater(g(center), g(center + step))
        self.assertLess(g(middle), g(middle - step))
        self.assertLess(g(middle), g(middle + step))

    def test_strictly_positive(self):
        for v_p in np.linspace(-0.2, 0.2, 57):
            with self.subTest(v_p=v_p):
                self.assertGreater(cb_conductance(self.dot, v_p), 0.0)

    def test_periodic_and_symmetric(self):
        for v_p in np.linspace(0.0, 0.04, 17):
            with self.subTest(v_p=v_p):
                shifted = cb_conductance(self.dot, v_p + 3 * self.dot.peak_spacing)
                self.assertAlmostEqual(cb_conductance(self.dot, v_p), shifted, delta=1e-12)
                center = self.dot.peak_center(1)
                offset = v_p / 4
                self.assertAlmostEqual(
                    cb_conductance(self.dot, center + offset), cb_conductance(self.dot, center - offset), delta=1e-12
                )

    def test_half_width(self):
        dot = DotModel(peak_spacing=1.0, peak_offset=0.0)
        expected = 2.5 * math.log(1 + math.sqrt(2)) * 1.380649e-23 * 0.08 / (1.602176634e-19 * dot.lever_arm)
        lo, hi = 0.0, 0.5
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            if cb_conductance(dot, mid) > 0.5 * cb_conductance(dot, 0.0):
                lo = mid
            else:
                hi = mid
        self.assertAlmostEqual(lo / expected, 1.0, delta=1e-9)

    def test_zero_temperature_rejected(self):
        with self.assertRaises(DomainError):
            cb_conductance(DotModel(theta_e=0.0), 0.0)


class TestSawtooth(unittest.TestCase):
    def setUp(self):
        self.dot = DotModel(peak_offset=0.02)

    def test_fraction_examples(self):
        self.assertEqual(sawtooth_fraction(self.dot, 0.02), SawtoothState(phase_in_period=0.0, charge_step_index=0))
        state = sawtooth_fraction(self.dot, 0.02 + 1.5 * self.dot.peak_spacing)
        self.assertAlmostEqual(state.phase_in_period, 0.5, delta=1e-12)
        self.assertEqual(state.charge_step_index, 1)

    def test_fraction_below_offset(self):
        state = sawtooth_fraction(self.dot, 0.02 - 0.25 * self.dot.peak_spacing)
        self.assertEqual(state.charge_step_index, -1)
        self.assertAlmostEqual(state.phase_in_period, 0.75, delta=1e-12)

    def test_state_rejects_phase(self):
        with self.assertRaises(DomainError):
            SawtoothState(phase_in_period=1.0, charge_step_index=0)

    def test_sharp_charge_without_temperature(self):
        dot = DotModel(theta_e=0.0, peak_offset=0.02)
        self.assertEqual(smoothed_charge(dot, 0.02 + 2.3 * dot.peak_spacing), 2.0)
        self.assertAlmostEqual(ramp_fraction(dot, 0.02 + 2.3 * dot.peak_spacing), 0.3, delta=1e-12)

    def test_smoothed_charge_is_half_at_peak(self):
        center = self.dot.peak_center(3)
        self.assertAlmostEqual(smoothed_charge(self.dot, center), 2.5, delta=1e-12)

    def test_smoothed_charge_monotone(self):
        values = [smoothed_charge(self.dot, v) for v in np.linspace(0.0, 0.2, 2001)]
        self.assertTrue(all(b >= a - 1e-12 for a, b in zip(values, values[1:])))

    def test_ramp_fraction_bounds(self):
        for v_p in np.linspace(0.0, 0.2, 401):
            with self.subTest(v_p=v_p):
                fraction = ramp_fraction(self.dot, v_p)
                self.assertGreaterEqual(fraction, 0.0)
                self.assertLessEqual(fraction, 1.0)

    def test_reset_magnitude_gate_shift(self):
        curve = QpcTransmissionCurve()
        coupling = CouplingModel(kind="gate_shift", delta_v=2e-4)
        for v_g in (0.185, 0.188, 0.19):
            with self.subTest(v_g=v_g):
                before = sawtooth_transmission(curve, coupling, v_g, 1.0)
                after = sawtooth_transmission(curve, coupling, v_g, 0.0)
                self.assertEqual(before, transmission(curve, v_g))
                self.assertAlmostEqual(before - after, delta_transmission(coupling, curve, v_g), delta=1e-9)

    def test_reset_magnitude_saturating(self):
        curve = QpcTransmissionCurve()
        coupling = CouplingModel(kind="saturating")
        before = sawtooth_transmission(curve, coupling, 0.187, 1.0)
        after = sawtooth_transmission(curve, coupling, 0.187, 0.0)
        self.assertAlmostEqual(before - after, delta_transmission(coupling, curve, 0.187), delta=1e-15)
