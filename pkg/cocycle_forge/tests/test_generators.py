"""
Copyright (c) 2026 The cocycle-forge Authors

SPDX-License-Identifier: Apache-2.0

"""

import math

import numpy as np

from cocycle_forge import constants
from cocycle_forge import exceptions
from cocycle_forge import generators
from cocycle_forge.generators import generate
from cocycle_forge.generators import GeneratorSpec
from cocycle_forge import spectrum
from cocycle_forge.tests import base


class TestGeneratorSpec(base.TestCase):

    def test_unknown_kind(self):
        self.assertRaises(exceptions.ArgumentError, GeneratorSpec,
                          "lorenz", 2, 4, 2.0, 0)

    def test_bound_below_one(self):
        self.assertRaises(exceptions.ArgumentError, GeneratorSpec,
                          "random_bounded", 2, 4, 0.5, 0)

    def test_sizes(self):
        self.assertRaises(exceptions.ArgumentError, GeneratorSpec,
                          "random_bounded", 0, 4, 2.0, 0)
        self.assertRaises(exceptions.ArgumentError, GeneratorSpec,
                          "random_bounded", 2, 0, 2.0, 0)

    def test_dominant_range(self):
        self.assertRaises(exceptions.ArgumentError, GeneratorSpec,
                          "switching", 2, 4, 2.0, 0, dominant=2)

    def test_as_dict(self):
        spec = GeneratorSpec("switching", 3, 16, 2.0, 5, dominant=1)
        data = spec.as_dict()
        assert data["kind"] == "switching"
        assert data["dominant"] == 1
        assert data["seed"] == 5


class TestGenerate(base.TestCase):

    def test_same_seed_same_maps(self):
        for kind in constants.GENERATOR_KINDS:
            a = generate(GeneratorSpec(kind, 2, 8, 3.0, 11))
            b = generate(GeneratorSpec(kind, 2, 8, 3.0, 11))
            assert np.array_equal(a.stack, b.stack), kind

    def test_seeds_differ(self):
        a = generate(GeneratorSpec("random_bounded", 3, 4, 3.0, 1))
        b = generate(GeneratorSpec("random_bounded", 3, 4, 3.0, 2))
        assert not np.array_equal(a.stack, b.stack)

    def test_bound_is_respected(self):
        for kind in constants.GENERATOR_KINDS:
            cocycle = generate(GeneratorSpec(kind, 2, 8, 3.0, 4))
            assert cocycle.bound <= 3.0 * (1.0 + 1e-9), kind
            assert cocycle.metadata["spec"]["kind"] == kind

    def test_cancellation_maps(self):
        cocycle = generate(GeneratorSpec("cancellation", 2, 4, 2.0, 0))
        assert np.allclose(cocycle[0], np.diag([2.0, 0.5]))
        assert np.allclose(cocycle[1], np.diag([0.5, 2.0]))
        assert np.allclose(cocycle[2], np.diag([2.0, 0.5]))
        graph = spectrum.lyapunov_graph(cocycle)
        assert np.allclose(graph.sigma, 0.0, atol=1e-9)
        assert cocycle.metadata["z_1"] == math.log(2.0)

    def test_cancellation_segments(self):
        cocycle = generate(GeneratorSpec("cancellation", 2, 8, 2.0, 0,
                                         segment=2))
        assert np.allclose(cocycle[1], np.diag([2.0, 0.5]))
        assert np.allclose(cocycle[2], np.diag([0.5, 2.0]))
        self.assertRaises(exceptions.ArgumentError, generate,
                          GeneratorSpec("cancellation", 2, 6, 2.0, 0,
                                        segment=2))

    def test_dominated_is_certified(self):
        cocycle = generate(GeneratorSpec("dominated", 3, 6, 8.0, 2, ell=1))
        reports = cocycle.metadata["domination"]
        assert [r["index"] for r in reports] == [1, 2]
        assert all(r["dominated"] for r in reports)

    def test_dominated_needs_room(self):
        self.assertRaises(exceptions.ArgumentError, generate,
                          GeneratorSpec("dominated", 3, 6, 1.2, 0))

    def test_elliptic_has_complex_spectrum(self):
        cocycle = generate(GeneratorSpec("elliptic", 2, 8, 3.0, 6))
        assert not spectrum.has_real_spectrum(cocycle)

    def test_near_isometry_is_close_to_orthogonal(self):
        cocycle = generate(GeneratorSpec("near_isometry", 3, 5, 3.0, 1,
                                         rate=0.01))
        sv = np.linalg.svd(cocycle.stack, compute_uv=False)
        assert np.all(np.abs(np.log(sv)) <= 0.01 + 1e-12)

    def test_switching_dominant_axis(self):
        cocycle = generate(GeneratorSpec("switching", 3, 32, 3.0, 0,
                                         dominant=1))
        graph = spectrum.lyapunov_graph(cocycle)
        assert abs(graph.exponents[-1] - math.log(3.0)) < 1e-9
        assert cocycle.metadata["segment"] == 4

    def test_switching_spread_is_bounded(self):
        # the period product is O_0 (prod D_j) O_0^T, so its log-moduli
        # are n times the exponents
        bound = generators.SWITCH_SPREAD * (1.0 + 2 * generators.SWITCH_JITTER)
        for seed in range(3):
            cocycle = generate(GeneratorSpec("switching", 2, 256, 4.0, seed))
            graph = spectrum.lyapunov_graph(cocycle)
            assert 256 * np.max(np.abs(graph.exponents)) <= bound

    def test_switching_explicit_rate(self):
        cocycle = generate(GeneratorSpec("switching", 2, 64, 4.0, 0,
                                         rate=0.2))
        sv = np.linalg.svd(cocycle.stack, compute_uv=False)
        assert np.max(np.log(sv)) <= 0.2 * (1.0 + generators.SWITCH_JITTER)
        assert np.max(np.log(sv)) >= 0.2 * (1.0 - generators.SWITCH_JITTER)
