"""
Copyright (c) 2026 The cocycle-forge Authors

SPDX-License-Identifier: Apache-2.0

"""

import math

import fixtures
import numpy as np

from cocycle_forge import exceptions
from cocycle_forge.graph import LyapunovGraph
from cocycle_forge import spectrum
from cocycle_forge.tests import base
from cocycle_forge.triangular import adjust_spectrum
from cocycle_forge.utils import rotation


class TestAdjustSpectrum(base.TestCase):

    def test_moves_every_exponent(self):
        cocycle = base.constant(np.diag([0.5, 2.0]), 4)
        target = LyapunovGraph([0.0, -math.log(2.0) + 0.01, 0.02])
        path = adjust_spectrum(cocycle, target, 0.1)
        assert spectrum.lyapunov_graph(path.end).distance(target) <= 1e-8
        assert float(path.deviations().max()) <= 0.1

    def test_samples_interpolate(self):
        cocycle = base.constant(np.array([[0.5, 0.3], [0.0, 2.0]]), 3)
        graph = spectrum.lyapunov_graph(cocycle)
        target = LyapunovGraph(graph.sigma + np.array([0.0, 0.02, 0.01]))
        path = adjust_spectrum(cocycle, target, 0.2)
        for sample, expected in zip(path.samples[1:], path.graphs[1:]):
            actual = spectrum.lyapunov_graph(sample)
            assert actual.distance(expected) <= 1e-8

    def test_same_graph(self):
        cocycle = base.constant(np.diag([0.5, 2.0]), 2)
        path = adjust_spectrum(cocycle, spectrum.lyapunov_graph(cocycle),
                               0.1)
        assert len(path) == 1

    def test_target_too_far(self):
        cocycle = base.constant(np.diag([0.5, 2.0]), 2)
        target = LyapunovGraph([0.0, -math.log(2.0) + 1.0, 2.0])
        self.assertRaises(exceptions.RangeError, adjust_spectrum, cocycle,
                          target, 0.1)

    def test_complex_spectrum(self):
        cocycle = base.constant(rotation(0.5), 2)
        target = LyapunovGraph([0.0, 0.01, 0.02])
        self.assertRaises(exceptions.PreconditionError, adjust_spectrum,
                          cocycle, target, 0.1)

    def test_dimension_mismatch(self):
        cocycle = base.constant(np.diag([0.5, 2.0]), 2)
        self.assertRaises(exceptions.ArgumentError, adjust_spectrum, cocycle,
                          LyapunovGraph([0.0, 0.0, 0.0, 0.0]), 0.1)

    def test_miss_tolerance_comes_from_caller(self):
        cocycle = base.constant(np.diag([0.5, 2.0]), 4)
        target = LyapunovGraph([0.0, -math.log(2.0) + 0.01, 0.0])
        exact = spectrum.lyapunov_graph

        def drifted(sample, sweep=None):
            # every adjusted sample reads 5e-8 off its true graph
            graph = exact(sample, sweep)
            if sample is cocycle:
                return graph
            return LyapunovGraph(graph.sigma + np.array([0.0, 5e-8, 0.0]))

        self.useFixture(fixtures.MockPatchObject(
            spectrum, "lyapunov_graph", side_effect=drifted))
        self.assertRaises(exceptions.NumericalError, adjust_spectrum,
                          cocycle, target, 0.1)
        path = adjust_spectrum(cocycle, target, 0.1, tol=1e-6)
        assert len(path) > 1
