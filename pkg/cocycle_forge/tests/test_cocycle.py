"""
Copyright (c) 2026 The cocycle-forge Authors

SPDX-License-Identifier: Apache-2.0

"""

import math

import numpy as np
import scipy.linalg

from cocycle_forge.cocycle import accumulate
from cocycle_forge.cocycle import CyclicCocycle
from cocycle_forge.cocycle import exterior_power
from cocycle_forge.cocycle import finite_time_graph
from cocycle_forge.cocycle import graded_svd
from cocycle_forge.cocycle import log_singular_values
from cocycle_forge.cocycle import period_product
from cocycle_forge.cocycle import window_top_sums
from cocycle_forge import exceptions
from cocycle_forge.tests import base
from cocycle_forge.utils import rng


class TestCyclicCocycle(base.TestCase):

    def test_identity(self):
        cocycle = CyclicCocycle.identity(3, 5)
        assert cocycle.dim == 3
        assert cocycle.period == 5
        assert cocycle.bound == 1.0

    def test_phase_wraps(self):
        maps = [np.diag([k + 1.0, 1.0]) for k in range(3)]
        cocycle = CyclicCocycle(maps)
        assert np.array_equal(cocycle[4], maps[1])
        assert np.array_equal(cocycle[-1], maps[2])

    def test_bound(self):
        cocycle = CyclicCocycle([np.diag([3.0, 1.0]), np.diag([1.0, 0.2])])
        assert abs(cocycle.bound - 5.0) < 1e-12

    def test_rejects_singular(self):
        self.assertRaises(exceptions.ArgumentError, CyclicCocycle,
                          [np.eye(2), np.array([[1.0, 2.0], [2.0, 4.0]])])

    def test_rejects_non_square(self):
        self.assertRaises(exceptions.ArgumentError, CyclicCocycle,
                          np.ones((2, 2, 3)))

    def test_rejects_empty(self):
        self.assertRaises(exceptions.ArgumentError, CyclicCocycle,
                          np.ones((0, 2, 2)))

    def test_inverse_runs_backwards(self):
        gen = rng(3)
        cocycle = CyclicCocycle(gen.standard_normal((4, 3, 3)))
        inverse = cocycle.inverse()
        assert np.allclose(inverse[0], np.linalg.inv(cocycle[3]))
        assert np.allclose(inverse[3], np.linalg.inv(cocycle[0]))

    def test_replace_and_deviation(self):
        cocycle = CyclicCocycle.identity(2, 3)
        changed = cocycle.replace({4: 2.0 * np.eye(2)})
        assert np.array_equal(changed[1], 2.0 * np.eye(2))
        assert list(cocycle.deviation(changed)) == [0.0, 1.0, 0.0]
        assert np.array_equal(cocycle[1], np.eye(2))

    def test_log_det(self):
        cocycle = CyclicCocycle([np.diag([2.0, 3.0]), np.diag([-1.0, 1.0])])
        assert abs(cocycle.log_det() - math.log(6.0)) < 1e-12


class TestProducts(base.TestCase):

    def test_period_product(self):
        gen = rng(7)
        maps = gen.standard_normal((5, 3, 3))
        cocycle = CyclicCocycle(maps)
        expected = np.eye(3)
        for k in range(5):
            expected = maps[(2 + k) % 5] @ expected
        product = period_product(cocycle, 2).matrix()
        assert np.allclose(product, expected, rtol=1e-10, atol=1e-10)

    def test_period_product_phase(self):
        cocycle = CyclicCocycle.identity(2, 3)
        self.assertRaises(exceptions.ArgumentError, period_product,
                          cocycle, 3)

    def test_product_out_of_range(self):
        cocycle = CyclicCocycle(np.broadcast_to(np.diag([math.exp(10.0),
                                                         1.0]),
                                                (100, 2, 2)))
        product = period_product(cocycle)
        assert abs(product.logscale - 1000.0) < 1e-6
        self.assertRaises(exceptions.ProductRangeError, product.matrix)

    def test_graded_singular_values(self):
        matrices = [np.diag([2.0, 0.5])] * 40
        logs = log_singular_values(matrices)
        assert abs(logs[0] - 40 * math.log(2.0)) < 1e-9
        assert abs(logs[1] + 40 * math.log(2.0)) < 1e-9

    def test_graded_svd(self):
        matrices = [np.array([[2.0, 1.0], [0.0, 0.5]])] * 300
        _q, r, logscale = accumulate(matrices)
        u, logs, v = graded_svd(r)
        assert np.allclose(logs + logscale, log_singular_values(matrices),
                           atol=1e-8)
        assert np.allclose(u.T @ u, np.eye(2), atol=1e-12)
        assert np.allclose(v.T @ v, np.eye(2), atol=1e-12)
        # r^-1 u_2 = v_2 / s_2 recovers the smallest singular value
        back = scipy.linalg.solve_triangular(r, u[:, 1])
        assert abs(math.log(np.linalg.norm(back)) + logs[1]) < 1e-8

    def test_graded_svd_of_balanced_factor(self):
        r = np.array([[2.0, 1.0], [0.0, 1.0]])
        u, logs, v = graded_svd(r)
        rebuilt = u @ np.diag(np.exp(logs)) @ v.T
        assert np.allclose(rebuilt, r, atol=1e-12)


class TestExteriorPower(base.TestCase):

    def test_extreme_powers(self):
        matrix = rng(1).standard_normal((4, 4))
        assert np.allclose(exterior_power(matrix, 1), matrix)
        top = exterior_power(matrix, 4)
        assert top.shape == (1, 1)
        assert abs(top[0, 0] - np.linalg.det(matrix)) < 1e-10

    def test_norm_is_product_of_singular_values(self):
        gen = rng(11)
        for d in (2, 3, 4, 5):
            matrix = gen.standard_normal((d, d))
            sv = np.linalg.svd(matrix, compute_uv=False)
            for i in range(1, d + 1):
                norm = np.linalg.norm(exterior_power(matrix, i), 2)
                assert abs(norm / np.prod(sv[:i]) - 1.0) < 1e-10

    def test_multiplicative(self):
        gen = rng(5)
        a, b = gen.standard_normal((2, 4, 4))
        assert np.allclose(exterior_power(a @ b, 2),
                           exterior_power(a, 2) @ exterior_power(b, 2))

    def test_power_range(self):
        self.assertRaises(exceptions.ArgumentError, exterior_power,
                          np.eye(3), 0)
        self.assertRaises(exceptions.ArgumentError, exterior_power,
                          np.eye(3), 4)


class TestFiniteTime(base.TestCase):

    def test_window_top_sums(self):
        cocycle = CyclicCocycle([np.diag([2.0, 0.5]), np.diag([0.5, 2.0])])
        table = window_top_sums(cocycle, 1)
        assert table.shape == (2, 3)
        assert np.allclose(table[:, 1], math.log(2.0))
        assert np.allclose(table[:, 2], 0.0, atol=1e-12)

    def test_finite_time_graph_dominates_exponents(self):
        cocycle = base.constant(np.diag([2.0, 0.5]), 4)
        graph = finite_time_graph(cocycle, 2)
        assert np.allclose(graph, [0.0, math.log(2.0), 0.0], atol=1e-12)

    def test_scale_range(self):
        cocycle = CyclicCocycle.identity(2, 4)
        self.assertRaises(exceptions.ArgumentError, finite_time_graph,
                          cocycle, 5)
        self.assertRaises(exceptions.ArgumentError, finite_time_graph,
                          cocycle, 0)
