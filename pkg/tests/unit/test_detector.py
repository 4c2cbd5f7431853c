#!/usr/bin/python3
""" Unit tests for detector.py """
import math
import tempfile
import unittest
from pathlib import Path

from wpdephasing.constants import CONDUCTANCE_QUANTUM
from wpdephasing.detector import (
    CouplingModel,
    DetectorBias,
    QpcTransmissionCurve,
    delta_transmission,
    landauer_conductance,
    landauer_conductance_si,
    load_calibration_table,
    probe_count,
    probe_rate,
    shot_noise_sigma,
    transmission,
    transmitted_count_sigma,
)
from wpdephasing.errors import CalibrationTableError, DomainError, TableRangeError


class TestTransmission(unittest.TestCase):
    def setUp(self):
        self.curve = QpcTransmissionCurve(v_half=0.188, width=0.001)

    def test_logistic_midpoint(self):
        self.assertEqual(transmission(self.curve, 0.188), 0.5)

    def test_logistic_plateaus(self):
        self.assertLess(transmission(self.curve, 0.1), 1e-30)
        self.assertEqual(transmission(self.curve, 0.3), 1.0)

    def test_logistic_is_monotone(self):
        values = [transmission(self.curve, 0.178 + 0.0001 * k) for k in range(201)]
        self.assertTrue(all(b >= a for a, b in zip(values, values[1:])))

    def test_table_interpolation(self):
        curve = QpcTransmissionCurve(model="table", table=[(0.182, 0.0), (0.194, 1.0)])
        self.assertAlmostEqual(transmission(curve, 0.188), 0.5, delta=1e-12)

    def test_table_out_of_range(self):
        curve = QpcTransmissionCurve(model="table", table=[(0.182, 0.0), (0.194, 1.0)])
        with self.assertRaises(TableRangeError):
            transmission(curve, 0.2)

    def test_table_model_requires_table(self):
        with self.assertRaises(DomainError):
            QpcTransmissionCurve(model="table")

    def test_table_must_be_sorted(self):
        with self.assertRaises(DomainError):
            QpcTransmissionCurve(model="table", table=[(0.19, 0.2), (0.18, 0.4)])

    def test_inverse(self):
        for t_d in (0.05, 0.2, 0.5, 0.9):
            with self.subTest(t_d=t_d):
                self.assertAlmostEqual(transmission(self.curve, self.curve.inverse(t_d)), t_d, delta=1e-14)
        table_curve = QpcTransmissionCurve(model="table", table=[(0.182, 0.0), (0.194, 1.0)])
        self.assertAlmostEqual(table_curve.inverse(0.25), 0.185, delta=1e-12)

    def test_inverse_rejects_plateaus(self):
        with self.assertRaises(DomainError):
            self.curve.inverse(1.0)

    def test_derivative(self):
        self.assertAlmostEqual(self.curve.derivative(0.188), 250.0, delta=1e-9)


class TestLandauer(unittest.TestCase):
    def test_units_of_quantum(self):
        for t_d in (0.0, 0.2, 1.0):
            with self.subTest(t_d=t_d):
                self.assertEqual(landauer_conductance(t_d), t_d)

    def test_si(self):
        self.assertAlmostEqual(landauer_conductance_si(0.2), 1.5496e-5, delta=1e-9)
        self.assertEqual(landauer_conductance_si(1.0), CONDUCTANCE_QUANTUM)

    def test_rejects_non_probability(self):
        with self.assertRaises(DomainError):
            landauer_conductance(1.5)


class TestDeltaTransmission(unittest.TestCase):
    def setUp(self):
        self.curve = QpcTransmissionCurve(v_half=0.188, width=0.001)

    def test_saturating_example(self):
        coupling = CouplingModel(kind="saturating", c=0.05, s=0.1)
        self.assertAlmostEqual(delta_transmission(coupling, self.curve, 0.188), 0.05 * 0.25 / 0.35, delta=1e-15)

    def test_gate_shift_small_step(self):
        coupling = CouplingModel(kind="gate_shift", delta_v=1e-6)
        self.assertAlmostEqual(delta_transmission(coupling, self.curve, 0.188), 1e-6 / 4e-3, delta=1e-9)

    def test_gate_shift_converges_to_derivative(self):
        delta_v = self.curve.width * 1e-4
        coupling = CouplingModel(kind="gate_shift", delta_v=delta_v)
        for v_g in (0.186, 0.188, 0.1905):
            with self.subTest(v_g=v_g):
                slope = delta_transmission(coupling, self.curve, v_g) / delta_v
                derivative = self.curve.derivative(v_g)
                self.assertLessEqual(abs(slope - derivative) / derivative, 1e-3)

    def test_table_coupling(self):
        coupling = CouplingModel(kind="table", table=[(0.0, 0.0), (0.5, 0.04), (1.0, 0.0)])
        self.assertAlmostEqual(delta_transmission(coupling, self.curve, 0.188), 0.04, delta=1e-15)

    def test_vanishes_on_plateaus(self):
        couplings = [
            CouplingModel(kind="saturating"),
            CouplingModel(kind="gate_shift"),
            CouplingModel(kind="table", table=[(0.0, 0.0), (0.5, 0.04), (1.0, 0.0)]),
        ]
        for coupling in couplings:
            for v_g in (0.188 - 0.03, 0.188 + 0.03):
                with self.subTest(kind=coupling.kind, v_g=v_g):
                    t_d = transmission(self.curve, v_g)
                    self.assertTrue(t_d <= 1e-10 or 1.0 - t_d <= 1e-10)
                    self.assertLessEqual(delta_transmission(coupling, self.curve, v_g), 1e-9)

    def test_negative_table_rejected(self):
        with self.assertRaises(DomainError):
            CouplingModel(kind="table", table=[(0.0, 0.0), (1.0, -0.1)])


class TestProbeStatistics(unittest.TestCase):
    def test_probe_count(self):
        cases = [(0.0, 0.5, 0.0), (100.0, 0.5, 63.662), (100.0, 0.7, 45.473)]
        for v_d, gamma, expected in cases:
            with self.subTest(v_d=v_d, gamma=gamma):
                self.assertAlmostEqual(probe_count(DetectorBias(v_d=v_d), gamma), expected, delta=1e-3)

    def test_probe_count_scaling(self):
        base = probe_count(DetectorBias(v_d=30.0), 0.5)
        self.assertAlmostEqual(probe_count(DetectorBias(v_d=60.0), 0.5), 2 * base, delta=1e-12)
        self.assertAlmostEqual(probe_count(DetectorBias(v_d=30.0), 1.0), base / 2, delta=1e-12)

    def test_probe_count_rejects_gamma(self):
        for gamma in (0.0, -1.0):
            with self.subTest(gamma=gamma):
                with self.assertRaises(DomainError):
                    probe_count(DetectorBias(v_d=10.0), gamma)

    def test_negative_bias_rejected(self):
        with self.assertRaises(ValueError):
            DetectorBias(v_d=-1.0)

    def test_probe_rate(self):
        self.assertAlmostEqual(probe_rate(DetectorBias(v_d=100.0)) / 4.8360e10, 1.0, delta=1e-4)

    def test_shot_noise_sigma(self):
        self.assertEqual(shot_noise_sigma(0.0, 10.0), 0.0)
        self.assertEqual(shot_noise_sigma(1.0, 10.0), 0.0)
        self.assertAlmostEqual(shot_noise_sigma(0.5, 100.0), 0.05, delta=1e-15)
        self.assertAlmostEqual(shot_noise_sigma(0.2, 64.0), 0.05, delta=1e-15)

    def test_shot_noise_maximal_at_half(self):
        values = [shot_noise_sigma(k / 100, 50.0) for k in range(101)]
        self.assertEqual(values.index(max(values)), 50)

    def test_shot_noise_rejects_probe_count(self):
        with self.assertRaises(DomainError):
            shot_noise_sigma(0.5, 0.0)

    def test_shot_noise_rejects_transmission(self):
        for t_d in (-0.1, 1.2):
            with self.subTest(t_d=t_d):
                with self.assertRaises(DomainError):
                    shot_noise_sigma(t_d, 10.0)

    def test_transmitted_count_sigma(self):
        self.assertAlmostEqual(transmitted_count_sigma(0.2, 10), math.sqrt(1.6), delta=1e-15)


class TestLoadCalibrationTable(unittest.TestCase):
    def write(self, text: str) -> Path:
        handle = tempfile.NamedTemporaryFile("w", suffix=".csv", delete=False)
        handle.write(text)
        handle.close()
        self.addCleanup(Path(handle.name).unlink)
        return Path(handle.name)

    def test_loads_rows(self):
        header, rows = load_calibration_table(self.write("T_d,dT_d\n0.0,0.0\n0.5,0.04\n1.0,0.0\n"))
        self.assertEqual(header, ["T_d", "dT_d"])
        self.assertEqual(rows, ((0.0, 0.0), (0.5, 0.04), (1.0, 0.0)))

    def test_bad_header(self):
        with self.assertRaises(CalibrationTableError) as ctx:
            load_calibration_table(self.write("x,y\n0,0\n1,1\n"))
        self.assertEqual(ctx.exception.line, 1)

    def test_malformed_number_names_line(self):
        with self.assertRaises(CalibrationTableError) as ctx:
            load_calibration_table(self.write("v_g,T_d\n0.18,0.0\n0.19,abc\n"))
        self.assertEqual(ctx.exception.line, 3)

    def test_unsorted_rows(self):
        with self.assertRaises(CalibrationTableError) as ctx:
            load_calibration_table(self.write("v_g,T_d\n0.19,0.0\n0.18,1.0\n"))
        self.assertEqual(ctx.exception.line, 3)

    def test_too_few_rows(self):
        with self.assertRaises(CalibrationTableError):
            load_calibration_table(self.write("v_g,T_d\n0.19,0.0\n"))
