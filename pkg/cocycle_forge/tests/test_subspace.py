"""
Copyright (c) 2026 The cocycle-forge Authors

SPDX-License-Identifier: Apache-2.0

"""

import math

import numpy as np

from cocycle_forge import exceptions
from cocycle_forge import subspace
from cocycle_forge.subspace import InvariantSplitting
from cocycle_forge.subspace import Subspace
from cocycle_forge.tests import base
from cocycle_forge.utils import rng

E = np.eye(3)


class TestSubspace(base.TestCase):

    def test_rejects_non_orthonormal(self):
        self.assertRaises(exceptions.ArgumentError, Subspace,
                          [[1.0, 1.0], [0.0, 1.0], [0.0, 0.0]])

    def test_orthonormalize(self):
        plane = Subspace([[1.0, 1.0], [0.0, 1.0], [0.0, 0.0]],
                         orthonormalize=True)
        assert plane.dim == 2
        assert plane.ambient_dim == 3
        assert plane.distance(Subspace(E[:, :2])) < 1e-12

    def test_complement(self):
        line = Subspace.span(E[:, 2])
        plane = line.complement()
        assert plane.dim == 2
        assert np.allclose(plane.basis.T @ line.basis, 0.0, atol=1e-12)

    def test_image(self):
        line = Subspace.span(E[:, 0])
        image = line.image(np.array([[1.0, 0, 0], [1.0, 1, 0], [0, 0, 1]]))
        assert image.distance(Subspace.span(E[:, 0] + E[:, 1])) < 1e-12

    def test_quotient(self):
        line = Subspace.span(E[:, 0] + E[:, 2])
        quotient = line.quotient(Subspace.span(E[:, 2]))
        assert quotient.distance(Subspace.span(E[:, 0])) < 1e-12

    def test_distance_between_dimensions(self):
        assert Subspace.span(E[:, 0]).distance(Subspace(E[:, :2])) == 1.0


class TestAngles(base.TestCase):

    def test_principal_angle(self):
        f = Subspace.span(np.array([1.0, 0.0]))
        g = Subspace.span(np.array([math.cos(0.3), math.sin(0.3)]))
        assert abs(subspace.principal_angle(f, g) - 0.3) < 1e-12

    def test_intersecting_planes(self):
        assert subspace.principal_angle(Subspace(E[:, :2]),
                                        Subspace(E[:, [0, 2]])) < 1e-12

    def test_zero_subspace(self):
        self.assertRaises(exceptions.ArgumentError,
                          subspace.principal_angle,
                          Subspace(np.zeros((3, 0))), Subspace(E[:, :1]))

    def test_ambient_mismatch(self):
        self.assertRaises(exceptions.ArgumentError,
                          subspace.principal_angle,
                          Subspace(np.eye(2)[:, :1]), Subspace(E[:, :1]))

    def test_transversality(self):
        gen = rng(11)
        for _k in range(200):
            w, u, v = (Subspace(gen.standard_normal((4, 1)),
                                orthonormalize=True) for _i in range(3))
            assert subspace.transversality_gap(w, u, v) >= -1e-12

    def test_angle_product(self):
        # sin x >= 2x / pi bounds the ratio below on every splitting
        gen = rng(13)
        for _k in range(200):
            columns = gen.standard_normal((4, 4))
            h = Subspace(columns[:, :1], orthonormalize=True)
            f = Subspace(columns[:, 1:3], orthonormalize=True)
            g = Subspace(columns[:, 3:], orthonormalize=True)
            ratio = subspace.angle_product_ratio(h, f, g)
            assert ratio >= (2.0 / math.pi) ** 3 - 1e-12

    def test_jacobian_bound(self):
        gen = rng(12)
        for _k in range(200):
            matrix = gen.standard_normal((3, 3))
            f = Subspace(gen.standard_normal((3, 1)), orthonormalize=True)
            g = Subspace(gen.standard_normal((3, 2)), orthonormalize=True)
            gap = subspace.jacobian_gap(matrix, f, g)
            assert gap >= -1e-9 * abs(np.linalg.det(matrix))


class TestIntersect(base.TestCase):

    def test_planes(self):
        line = subspace.intersect(Subspace(E[:, :2]), Subspace(E[:, [0, 2]]))
        assert line.dim == 1
        assert line.distance(Subspace.span(E[:, 0])) < 1e-10

    def test_transverse(self):
        line = subspace.intersect(Subspace.span(E[:, 0]),
                                  Subspace.span(E[:, 1]))
        assert line.dim == 0

    def test_with_dimension(self):
        tilted = Subspace.span(E[:, 0] + 1e-3 * E[:, 2], E[:, 1])
        line = subspace.intersect(tilted, Subspace(E[:, [0, 2]]), dim=1)
        assert line.dim == 1
        assert line.distance(Subspace.span(E[:, 0])) < 1e-2

    def test_direct_sum(self):
        plane = subspace.direct_sum(Subspace.span(E[:, 0]),
                                    Subspace.span(E[:, 0] + E[:, 1]))
        assert plane.distance(Subspace(E[:, :2])) < 1e-12


class TestInvariantSplitting(base.TestCase):

    def test_invariant(self):
        cocycle = base.constant(np.diag([0.5, 1.0, 2.0]), 3)
        phase = [Subspace(E[:, :1]), Subspace(E[:, 1:])]
        splitting = InvariantSplitting([phase] * 3, [1])
        assert splitting.period == 3
        assert splitting.dim == 3
        assert len(splitting) == 2
        assert splitting.residual(cocycle) < 1e-12

    def test_not_invariant(self):
        cocycle = base.constant(np.array([[1.0, 0, 0], [1.0, 1, 0],
                                          [0, 0, 1]]), 2)
        phase = [Subspace(E[:, :1]), Subspace(E[:, 1:])]
        splitting = InvariantSplitting([phase] * 2, [1])
        assert splitting.residual(cocycle) > 0.1

    def test_dimension_mismatch(self):
        phase = [Subspace(E[:, :1]), Subspace(E[:, 1:])]
        self.assertRaises(exceptions.ArgumentError, InvariantSplitting,
                          [phase], [2])

    def test_empty(self):
        self.assertRaises(exceptions.ArgumentError, InvariantSplitting,
                          [], [1])
