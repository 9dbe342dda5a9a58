"""
Copyright (c) 2026 The cocycle-forge Authors

SPDX-License-Identifier: Apache-2.0

"""

import math

from hypothesis import given
from hypothesis import strategies as st
import numpy as np

from cocycle_forge import exceptions
from cocycle_forge.graph import area
from cocycle_forge.graph import LyapunovGraph
from cocycle_forge.graph import top_sums
from cocycle_forge.tests import base

exponent_lists = st.lists(
    st.floats(min_value=-50.0, max_value=50.0, allow_nan=False),
    min_size=1, max_size=7)


class TestLyapunovGraph(base.TestCase):

    def test_from_exponents_sorts(self):
        graph = LyapunovGraph.from_exponents([2.0, -1.0, 0.5])
        assert graph.dim == 3
        assert list(graph.exponents) == [-1.0, 0.5, 2.0]
        assert list(graph) == [0.0, -1.0, -0.5, 1.5]

    def test_rejects_non_convex(self):
        self.assertRaises(exceptions.ArgumentError,
                          LyapunovGraph, [0.0, 1.0, 0.0])

    def test_rejects_nonzero_start(self):
        self.assertRaises(exceptions.ArgumentError,
                          LyapunovGraph, [0.5, 0.0, 1.0])

    def test_rejects_non_finite(self):
        self.assertRaises(exceptions.ArgumentError,
                          LyapunovGraph, [0.0, math.inf, 1.0])

    def test_tolerates_rounding(self):
        graph = LyapunovGraph([0.0, -1.0, -2.0 - 1e-12, -3.0])
        assert graph.dim == 3

    def test_immutable(self):
        graph = LyapunovGraph([0.0, -1.0, 0.0])
        self.assertRaises(ValueError, graph.sigma.__setitem__, 1, 0.0)

    def test_replace(self):
        graph = LyapunovGraph([0.0, -1.0, 0.0])
        raised = graph.replace(1, -0.5)
        assert raised[1] == -0.5
        assert graph[1] == -1.0

    def test_distance(self):
        a = LyapunovGraph([0.0, -1.0, 0.0])
        b = LyapunovGraph([0.0, -0.25, 0.0])
        assert a.distance(b) == 0.75
        self.assertRaises(exceptions.ArgumentError, a.distance,
                          LyapunovGraph([0.0, 1.0]))

    def test_top_sums(self):
        graph = LyapunovGraph.from_exponents([-1.0, 0.0, 2.0])
        assert list(top_sums(graph)) == [0.0, 2.0, 2.0, 1.0]

    def test_area(self):
        a = LyapunovGraph([0.0, -2.0, -2.0, 0.0])
        b = LyapunovGraph([0.0, -1.0, -1.5, 0.0])
        assert area(a, b) == 1.5

    @given(exponent_lists)
    def test_exponents_give_convex_graph(self, exponents):
        graph = LyapunovGraph.from_exponents(exponents)
        assert graph[0] == 0.0
        assert np.all(graph.second_differences() >= -1e-9)
        assert abs(graph[graph.dim] - math.fsum(exponents)) <= 1e-9
