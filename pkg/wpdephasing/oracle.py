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
"""Brute-force check of the factorized many-probe coherence.

The detector state after n probes is a product of single-probe states, one
per probe. Expanding the product over every transmit/reflect outcome string
and summing the 2^n branch amplitudes gives the coherence factor without
using the factorization, so it can be compared with sp_overlap(right, left)^n.
"""
import logging
import math
from typing import List, NamedTuple

import attr
import numpy as np
from scipy.stats import binom

from wpdephasing.amplitudes import ScatteringPair, make_pair, pair_from_transmission, sp_overlap
from wpdephasing.async_handlers import chunk_bounds, fill_slots
from wpdephasing.constants import (
    DEFAULT_ORACLE_DRAWS,
    DEFAULT_ORACLE_MAX_PROBES,
    DEFAULT_ORACLE_SEED,
    DEFAULT_ORACLE_TOLERANCE,
    MAX_ORACLE_PROBES,
)
from wpdephasing.errors import DomainError, EnumerationLimitError
from wpdephasing.utils import pairwise_tree_sum

logger = logging.getLogger(__name__)

BRANCH_CHUNK = 1024
BINOMIAL_GRID = np.linspace(0.0, 1.0, 21)


class BinomialMoments(NamedTuple):
    mean: float
    sigma: float


def _check_probe_count(instance, attribute, value):
    if value < 0:
        raise DomainError("probe count must be >= 0, got {}".format(value))
    if value > MAX_ORACLE_PROBES:
        raise EnumerationLimitError(value, MAX_ORACLE_PROBES)


@attr.s(frozen=True)
class BranchEnumeration:
    n: int = attr.ib(validator=[attr.validators.instance_of(int), _check_probe_count])
    left_pair: ScatteringPair = attr.ib(validator=attr.validators.instance_of(ScatteringPair))
    right_pair: ScatteringPair = attr.ib(validator=attr.validators.instance_of(ScatteringPair))


def branch_amplitudes(e: BranchEnumeration) -> np.ndarray:
    """conj(a_right(s)) * a_left(s) for every outcome string s, bit k of the index being probe k."""
    transmit = e.right_pair.t.conjugate() * e.left_pair.t
    reflect = e.right_pair.r.conjugate() * e.left_pair.r
    amplitudes = np.ones(1, dtype=complex)
    for _ in range(e.n):
        amplitudes = np.concatenate([amplitudes * transmit, amplitudes * reflect])
    return amplitudes


def enumerate_coherence(e: BranchEnumeration, workers: int = 1) -> complex:
    """Sum the 2^n branch amplitudes in a fixed chunk tree."""
    amplitudes = branch_amplitudes(e)
    chunks = chunk_bounds(len(amplitudes), math.ceil(len(amplitudes) / BRANCH_CHUNK))
    partial = fill_slots(lambda bounds: np.sum(amplitudes[bounds]), chunks, dtype=complex, workers=workers)
    return complex(pairwise_tree_sum(list(partial)))


def binomial_check(t_d: float, n: int) -> BinomialMoments:
    """Mean and spread of the transmitted count from the full binomial distribution of |t|^2."""
    if n > MAX_ORACLE_PROBES:
        raise EnumerationLimitError(n, MAX_ORACLE_PROBES)
    p = abs(pair_from_transmission(t_d).t) ** 2
    counts = np.arange(n + 1)
    weights = binom.pmf(counts, n, p)
    mean = float(np.sum(counts * weights))
    variance = float(np.sum((counts - mean) ** 2 * weights))
    return BinomialMoments(mean=mean, sigma=math.sqrt(max(variance, 0.0)))


def binomial_closed_form(t_d: float, n: int) -> BinomialMoments:
    return BinomialMoments(mean=n * t_d, sigma=math.sqrt(n * t_d * (1.0 - t_d)))


@attr.s(frozen=True)
class OracleReport:
    seed: int = attr.ib()
    draws: int = attr.ib()
    max_probes: int = attr.ib()
    tolerance: float = attr.ib()
    max_coherence_deviation: float = attr.ib()
    max_binomial_deviation: float = attr.ib()
    max_modulus: float = attr.ib()

    @property
    def max_deviation(self) -> float:
        return max(self.max_coherence_deviation, self.max_binomial_deviation)

    @property
    def passed(self) -> bool:
        return self.max_deviation <= self.tolerance and self.max_modulus <= 1.0 + self.tolerance

    def to_lines(self) -> List[str]:
        return [
            "seed: {}".format(self.seed),
            "draws: {}".format(self.draws),
            "max_probes: {}".format(self.max_probes),
            "max_coherence_deviation: {!r}".format(self.max_coherence_deviation),
            "max_binomial_deviation: {!r}".format(self.max_binomial_deviation),
            "max_modulus: {!r}".format(self.max_modulus),
            "tolerance: {!r}".format(self.tolerance),
            "status: {}".format("pass" if self.passed else "FAIL"),
        ]


def _random_pair(rng: np.random.Generator) -> ScatteringPair:
    return make_pair(rng.uniform(0.0, math.pi / 2), rng.uniform(-math.pi, math.pi))


def run_oracle_check(
    seed: int = DEFAULT_ORACLE_SEED,
    draws: int = DEFAULT_ORACLE_DRAWS,
    max_probes: int = DEFAULT_ORACLE_MAX_PROBES,
    tolerance: float = DEFAULT_ORACLE_TOLERANCE,
    workers: int = 1,
) -> OracleReport:
    """Compare enumeration with the closed forms on seeded random pairs and a binomial grid."""
    if max_probes > MAX_ORACLE_PROBES:
        raise EnumerationLimitError(max_probes, MAX_ORACLE_PROBES)
    rng = np.random.default_rng(seed)
    worst, modulus = 0.0, 0.0
    for _ in range(draws):
        left, right = _random_pair(rng), _random_pair(rng)
        single = sp_overlap(right, left)
        for n in range(1, max_probes + 1):
            value = enumerate_coherence(BranchEnumeration(n=n, left_pair=left, right_pair=right), workers=workers)
            worst = max(worst, abs(value - single**n))
            modulus = max(modulus, abs(value))
    binomial_worst = 0.0
    for t_d in BINOMIAL_GRID:
        for n in range(MAX_ORACLE_PROBES + 1):
            exact = binomial_check(float(t_d), n)
            closed = binomial_closed_form(float(t_d), n)
            binomial_worst = max(
                binomial_worst,
                abs(exact.mean - closed.mean) / max(1.0, abs(closed.mean)),
                abs(exact.sigma - closed.sigma) / max(1.0, abs(closed.sigma)),
            )
    report = OracleReport(
        seed=seed,
        draws=draws,
        max_probes=max_probes,
        tolerance=tolerance,
        max_coherence_deviation=worst,
        max_binomial_deviation=binomial_worst,
        max_modulus=modulus,
    )
    logger.info(
        "[oracle-check] seed {}: max deviation {!r} over {} draws.".format(seed, report.max_deviation, draws)
    )
    return report
