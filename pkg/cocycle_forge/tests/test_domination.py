"""
Copyright (c) 2026 The cocycle-forge Authors

SPDX-License-Identifier: Apache-2.0

"""

import math

import numpy as np

from cocycle_forge.cocycle import CyclicCocycle
from cocycle_forge import domination
from cocycle_forge import exceptions
from cocycle_forge.generators import generate
from cocycle_forge.generators import GeneratorSpec
from cocycle_forge.subspace import Subspace
from cocycle_forge.tests import base
from cocycle_forge.utils import rng
from cocycle_forge.utils import rotation


def triangular(period, seed=0):
    """Upper triangular 3 x 3 cocycle with diagonal rates 0.5, 1, 2."""
    gen = rng(seed)
    maps = []
    for _j in range(period):
        matrix = np.diag([0.5, 1.0, 2.0])
        matrix[np.triu_indices(3, 1)] = gen.uniform(-0.3, 0.3, 3)
        maps.append(matrix)
    return CyclicCocycle(maps)


class TestCheckDomination(base.TestCase):

    def test_constant_diagonal(self):
        cocycle = base.constant(np.diag([0.5, 2.0]), 4)
        report = domination.check_domination(cocycle, 1, 1)
        assert report.dominated
        assert abs(report.worst_ratio - 0.25) < 1e-12

    def test_threshold(self):
        cocycle = base.constant(np.diag([1.0 / 1.2, 1.2]), 8)
        assert not domination.check_domination(cocycle, 1, 1).dominated
        assert domination.domination_threshold(cocycle, 1) == 2

    def test_rotation_has_no_splitting(self):
        cocycle = CyclicCocycle([rotation(0.3), rotation(0.7)])
        report = domination.check_domination(cocycle, 1, 1)
        assert not report.dominated
        assert report.reason == domination.NO_SPLITTING
        assert report.as_dict()["reason"] == domination.NO_SPLITTING

    def test_requires_power_of_two(self):
        cocycle = base.constant(np.diag([0.5, 2.0]), 4)
        self.assertRaises(exceptions.ArgumentError,
                          domination.check_domination, cocycle, 1, 3)

    def test_index_range(self):
        cocycle = base.constant(np.diag([0.5, 2.0]), 4)
        self.assertRaises(exceptions.ArgumentError,
                          domination.check_domination, cocycle, 2, 1)

    def test_doubling_matches_definition(self):
        for seed in range(3):
            cocycle = generate(GeneratorSpec("random_bounded", 3, 6, 3.0,
                                             seed))
            finder = domination.SplittingFinder(cocycle)
            for i in (1, 2):
                splitting = finder.candidate(i)
                if splitting is None:
                    continue
                for ell in (1, 2, 8):
                    fast = domination.ratios(cocycle, splitting, ell)
                    raw = domination.raw_ratios(cocycle, splitting, ell)
                    assert np.allclose(fast, raw, rtol=1e-8)

    def test_generated_family_is_dominated(self):
        cocycle = generate(GeneratorSpec("dominated", 3, 6, 6.0, 4))
        assert domination.dominated_indices(cocycle, 1) == [1, 2]
        assert all(r["dominated"] for r in cocycle.metadata["domination"])

    def test_inverse_reverses_domination(self):
        for seed, kind in ((4, "dominated"), (5, "random_bounded")):
            cocycle = generate(GeneratorSpec(kind, 3, 6, 6.0, seed))
            inverse = cocycle.inverse()
            for ell in (1, 4):
                forward = domination.dominated_indices(cocycle, ell)
                backward = domination.dominated_indices(inverse, ell)
                assert sorted(3 - i for i in backward) == forward

    def test_domination_persists_at_longer_scales(self):
        cocycle = triangular(5, seed=2)
        for ell in (1, 2, 4):
            shorter = domination.dominated_indices(cocycle, ell)
            longer = domination.dominated_indices(cocycle, 2 * ell)
            assert set(shorter) <= set(longer)


class TestFinestSplitting(base.TestCase):

    def test_invariant(self):
        cocycle = triangular(5)
        splitting = domination.finest_splitting(cocycle, 4)
        assert splitting.indices == [1, 2]
        assert [b.dim for b in splitting.bundles[0]] == [1, 1, 1]
        assert splitting.residual(cocycle) <= 1e-8

    def test_slow_bundle_is_first_axis(self):
        cocycle = triangular(3, seed=2)
        splitting = domination.finest_splitting(cocycle, 4)
        slow = splitting.bundles[0][0].basis[:, 0]
        assert abs(abs(slow[0]) - 1.0) < 1e-10

    def test_no_domination(self):
        cocycle = CyclicCocycle([rotation(0.3), rotation(0.7)])
        splitting = domination.finest_splitting(cocycle, 1)
        assert splitting.indices == []
        assert len(splitting) == 1


class TestRestriction(base.TestCase):

    def _first_axis(self, period, dim=2):
        return [Subspace(np.eye(dim)[:, :1]) for _j in range(period)]

    def test_restrict_and_quotient(self):
        maps = [np.array([[2.0, 1.0], [0.0, 0.5]]),
                np.array([[3.0, -1.0], [0.0, 0.25]])]
        cocycle = CyclicCocycle(maps)
        restricted, quotient = domination.restrict_and_quotient(
            cocycle, self._first_axis(2))
        assert np.allclose(restricted.stack[:, 0, 0], [2.0, 3.0])
        assert np.allclose(quotient.stack[:, 0, 0], [0.5, 0.25])

    def test_not_invariant(self):
        cocycle = base.constant(np.array([[1.0, 0.0], [1.0, 1.0]]), 2)
        self.assertRaises(exceptions.InvarianceError,
                          domination.restrict_and_quotient, cocycle,
                          self._first_axis(2))

    def test_wrong_family_length(self):
        cocycle = base.constant(np.eye(2), 3)
        self.assertRaises(exceptions.ArgumentError,
                          domination.restrict_and_quotient, cocycle,
                          self._first_axis(2))

    def test_extend_over_restricted(self):
        maps = [np.array([[2.0, 1.0], [0.0, 0.5]])] * 3
        cocycle = CyclicCocycle(maps)
        family = self._first_axis(3)
        replacement = CyclicCocycle([[[4.0]], [[4.0]], [[4.0]]])
        extended = domination.extend_over(cocycle, family, replacement,
                                          domination.RESTRICTED)
        assert np.allclose(extended[0], [[4.0, 1.0], [0.0, 0.5]])
        restricted, quotient = domination.restrict_and_quotient(extended,
                                                                family)
        assert np.allclose(quotient.stack[:, 0, 0], 0.5)

    def test_extend_over_quotient(self):
        cocycle = base.constant(np.array([[2.0, 1.0], [0.0, 0.5]]), 2)
        replacement = CyclicCocycle([[[math.e]], [[math.e]]])
        extended = domination.extend_over(cocycle, self._first_axis(2),
                                          replacement, domination.QUOTIENT)
        assert np.allclose(extended[1], [[2.0, 1.0], [0.0, math.e]])

    def test_extend_over_checks_size(self):
        cocycle = base.constant(np.eye(2), 2)
        replacement = CyclicCocycle.identity(2, 2)
        self.assertRaises(exceptions.ArgumentError, domination.extend_over,
                          cocycle, self._first_axis(2), replacement,
                          domination.RESTRICTED)


class TestCandidateSplitting(base.TestCase):

    def test_diagonal(self):
        cocycle = base.constant(np.diag([0.5, 2.0]), 4)
        splitting = domination.candidate_splitting(cocycle, 1)
        assert splitting.indices == [1]
        assert splitting.period == 4
        for slow, fast in splitting.bundles:
            assert abs(abs(slow.basis[0, 0]) - 1.0) < 1e-8
            assert abs(abs(fast.basis[1, 0]) - 1.0) < 1e-8
        assert splitting.residual(cocycle) < 1e-8

    def test_rotation(self):
        cocycle = CyclicCocycle([rotation(0.3), rotation(0.7)])
        assert domination.candidate_splitting(cocycle, 1) is None

    def test_index_range(self):
        cocycle = base.constant(np.diag([0.5, 2.0]), 4)
        self.assertRaises(exceptions.ArgumentError,
                          domination.candidate_splitting, cocycle, 2)
