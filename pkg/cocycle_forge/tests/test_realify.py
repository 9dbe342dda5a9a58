"""
Copyright (c) 2026 The cocycle-forge Authors

SPDX-License-Identifier: Apache-2.0

"""

import numpy as np

from cocycle_forge.cocycle import CyclicCocycle
from cocycle_forge import exceptions
from cocycle_forge import realify
from cocycle_forge import spectrum
from cocycle_forge.tests import base
from cocycle_forge.utils import rotation


def barely_elliptic():
    # trace 2.5 cos(0.7) < 2: turning by about 0.06 makes it real
    return CyclicCocycle([rotation(0.7) @ np.diag([2.0, 0.5]), np.eye(2)])


class TestOrientation(base.TestCase):

    def test_signs_count_later_reflections(self):
        maps = np.array([np.eye(2), np.diag([1.0, -1.0]), np.eye(2)])
        assert list(realify.orientation_signs(maps)) == [-1.0, 1.0, 1.0]

    def test_discriminant_of_turned_product(self):
        maps = np.array([np.diag([2.0, 0.5])])
        signs = realify.orientation_signs(maps)
        disc = realify.product_discriminants(maps, signs, [0.0, np.pi / 2])
        assert abs(disc[0] - 2.25) < 1e-12
        assert disc[1] < 0.0


class TestMakeEigenvaluesReal(base.TestCase):

    def test_turns_product_real(self):
        cocycle = barely_elliptic()
        assert not spectrum.has_real_spectrum(cocycle)
        path = realify.make_eigenvalues_real(cocycle, 0.3)
        assert spectrum.has_real_spectrum(path.end)
        before = spectrum.lyapunov_graph(cocycle)
        after = spectrum.lyapunov_graph(path.end)
        assert after.distance(before) <= 1e-6
        assert float(path.deviations().max()) <= 0.3 + 1e-12

    def test_keeps_determinants(self):
        cocycle = barely_elliptic()
        path = realify.make_eigenvalues_real(cocycle, 0.3)
        assert np.allclose(np.linalg.det(path.end.stack),
                           np.linalg.det(cocycle.stack))

    def test_real_input_is_untouched(self):
        cocycle = base.constant(np.diag([2.0, 0.5]), 3)
        path = realify.make_eigenvalues_real(cocycle, 0.1)
        assert len(path) == 1

    def test_budget_too_small(self):
        cocycle = base.constant(rotation(1.0), 4)
        error = self.assertRaises(exceptions.CapabilityError,
                                  realify.make_eigenvalues_real, cocycle,
                                  1e-3)
        assert error.partial is not None

    def test_rejects_non_positive_eps(self):
        self.assertRaises(exceptions.ArgumentError,
                          realify.make_eigenvalues_real, barely_elliptic(),
                          0.0)
