#!/usr/bin/python3
""" Unit tests for oracle.py """
import math
import unittest

import numpy as np

from wpdephasing.amplitudes import make_pair, sp_overlap
from wpdephasing.errors import DomainError, EnumerationLimitError
from wpdephasing.oracle import (
    BranchEnumeration,
    binomial_check,
    binomial_closed_form,
    branch_amplitudes,
    enumerate_coherence,
    run_oracle_check,
)

SEED = 20240917


def random_pairs(rng):
    return (
        make_pair(rng.uniform(0, math.pi / 2), rng.uniform(-math.pi, math.pi)),
        make_pair(rng.uniform(0, math.pi / 2), rng.uniform(-math.pi, math.pi)),
    )


class TestBranchEnumeration(unittest.TestCase):
    def test_limit(self):
        pair = make_pair(0.3, 0.1)
        with self.assertRaises(EnumerationLimitError):
            BranchEnumeration(n=21, left_pair=pair, right_pair=pair)
        with self.assertRaises(DomainError):
            BranchEnumeration(n=-1, left_pair=pair, right_pair=pair)

    def test_branch_count(self):
        pair = make_pair(0.3, 0.1)
        self.assertEqual(len(branch_amplitudes(BranchEnumeration(n=10, left_pair=pair, right_pair=pair))), 1024)


class TestEnumerateCoherence(unittest.TestCase):
    def test_empty_product(self):
        left, right = make_pair(0.2, 0.5), make_pair(1.1, -0.3)
        self.assertEqual(enumerate_coherence(BranchEnumeration(n=0, left_pair=left, right_pair=right)), 1 + 0j)

    def test_single_probe(self):
        left, right = make_pair(0.2, 0.5), make_pair(1.1, -0.3)
        value = enumerate_coherence(BranchEnumeration(n=1, left_pair=left, right_pair=right))
        self.assertAlmostEqual(abs(value - sp_overlap(right, left)), 0.0, delta=1e-16)

    def test_matches_closed_form(self):
        rng = np.random.default_rng(SEED)
        for _ in range(20):
            left, right = random_pairs(rng)
            value = enumerate_coherence(BranchEnumeration(n=12, left_pair=left, right_pair=right))
            self.assertLessEqual(abs(value - sp_overlap(right, left) ** 12), 1e-10, "seed={}".format(SEED))
            self.assertLessEqual(abs(value), 1.0 + 1e-12)

    def test_independent_of_workers(self):
        left, right = make_pair(0.7, 0.2), make_pair(0.4, 1.9)
        enumeration = BranchEnumeration(n=16, left_pair=left, right_pair=right)
        self.assertEqual(enumerate_coherence(enumeration, workers=1), enumerate_coherence(enumeration, workers=4))


class TestBinomial(unittest.TestCase):
    def test_examples(self):
        cases = [((1.0, 7), (7.0, 0.0)), ((0.5, 4), (2.0, 1.0)), ((0.2, 10), (2.0, math.sqrt(1.6)))]
        for (t_d, n), (mean, sigma) in cases:
            with self.subTest(t_d=t_d, n=n):
                moments = binomial_check(t_d, n)
                self.assertAlmostEqual(moments.mean, mean, delta=1e-12)
                self.assertAlmostEqual(moments.sigma, sigma, delta=1e-7)

    def test_agrees_with_closed_form(self):
        for t_d in np.linspace(0.0, 1.0, 21):
            for n in range(21):
                with self.subTest(t_d=t_d, n=n):
                    exact, closed = binomial_check(float(t_d), n), binomial_closed_form(float(t_d), n)
                    self.assertLessEqual(abs(exact.mean - closed.mean), 1e-12 * max(1.0, closed.mean))
                    self.assertLessEqual(abs(exact.sigma - closed.sigma), 1e-12 * max(1.0, closed.sigma))

    def test_limit(self):
        with self.assertRaises(EnumerationLimitError):
            binomial_check(0.5, 21)


class TestRunOracleCheck(unittest.TestCase):
    def test_factorization_holds(self):
        report = run_oracle_check(seed=SEED, draws=1000, max_probes=14, tolerance=1e-10)
        self.assertTrue(report.passed, report.to_lines())
        self.assertLessEqual(report.max_coherence_deviation, 1e-10)
        self.assertLessEqual(report.max_modulus, 1.0 + 1e-10)

    def test_report_is_reproducible(self):
        first = run_oracle_check(seed=7, draws=5, max_probes=6)
        second = run_oracle_check(seed=7, draws=5, max_probes=6, workers=3)
        self.assertEqual(first, second)
        self.assertIn("seed: 7", first.to_lines())

    def test_failure_reported(self):
        report = run_oracle_check(seed=1, draws=2, max_probes=3, tolerance=-1.0)
        self.assertFalse(report.passed)
        self.assertIn("status: FAIL", report.to_lines())

    def test_probe_limit(self):
        with self.assertRaises(EnumerationLimitError):
            run_oracle_check(draws=1, max_probes=21)
