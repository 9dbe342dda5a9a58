"""
Copyright (c) 2026 The cocycle-forge Authors

SPDX-License-Identifier: Apache-2.0

"""

import json
import math
import os

from click.testing import CliRunner
import fixtures
import numpy as np

from cocycle_forge.cmd.shell import cli
from cocycle_forge.cocycle import CyclicCocycle
from cocycle_forge import constants
from cocycle_forge.graph import LyapunovGraph
from cocycle_forge import serialize
from cocycle_forge import spectrum
from cocycle_forge import suites
from cocycle_forge.tests import base
from cocycle_forge.utils import rotation


class TestForgeCLI(base.TestCase):

    def setUp(self):
        super(TestForgeCLI, self).setUp()
        self.tmp = self.useFixture(fixtures.TempDir()).path
        self.runner = CliRunner()

    def _path(self, name):
        return os.path.join(self.tmp, name)

    def _cocycle(self, name, cocycle):
        path = self._path(name)
        serialize.write_text(path, serialize.cocycle_to_json(cocycle))
        return path

    def _graph(self, name, sigma):
        path = self._path(name)
        serialize.write_text(path, serialize.graph_to_json(
            LyapunovGraph(sigma)))
        return path

    def _invoke(self, *args):
        return self.runner.invoke(cli, [str(a) for a in args])

    def _read(self, name):
        with open(self._path(name)) as f:
            return f.read()

    def test_version(self):
        result = self._invoke("version")
        assert result.exit_code == 0
        assert constants.VERSION in result.output

    def test_debug(self):
        result = self._invoke("--debug", "version")
        assert result.exit_code == 0

    def test_help(self):
        result = self._invoke("raise", "--help")
        assert result.exit_code == 0

    def test_gen_is_reproducible(self):
        for name in ("a.json", "b.json"):
            result = self._invoke("--seed", 5, "gen", "--kind",
                                  "random_bounded", "--dim", 3, "--period",
                                  6, "--bound", 2.0, "--out",
                                  self._path(name))
            assert result.exit_code == 0
        assert self._read("a.json") == self._read("b.json")
        cocycle = serialize.read_cocycle(self._path("a.json"))
        assert cocycle.dim == 3
        assert cocycle.period == 6

    def test_gen_unknown_kind(self):
        result = self._invoke("gen", "--kind", "lorenz", "--dim", 2,
                              "--period", 4, "--bound", 2.0)
        assert result.exit_code == 2

    def test_gen_invalid_bound(self):
        result = self._invoke("gen", "--kind", "random_bounded", "--dim", 2,
                              "--period", 4, "--bound", 0.5)
        assert result.exit_code == 2
        assert "error" in result.output

    def test_analyze(self):
        source = self._cocycle("c.json", base.constant(
            np.diag([2.0, 0.5]), 4))
        result = self._invoke("analyze", "--in", source, "--scale", 2,
                              "--out", self._path("a.json"))
        assert result.exit_code == 0
        report = json.loads(self._read("a.json"))
        assert np.allclose(report["exponents"],
                           [-math.log(2.0), math.log(2.0)], atol=1e-12)
        assert report["index"] == 1
        assert report["real_spectrum"] is True
        assert len(report["finite_time_top_sums"]) == 3

    def test_dominate(self):
        source = self._cocycle("c.json", base.constant(
            np.diag([2.0, 0.5]), 4))
        result = self._invoke("dominate", "--in", source, "--ell", 1,
                              "--out", self._path("d.json"))
        assert result.exit_code == 0
        report = json.loads(self._read("d.json"))
        assert report["finest_indices"] == [1]
        assert report["reports"][0]["dominated"] is True

    def test_zigzag(self):
        src = self._graph("src.json", [0.0, -2.0, 0.0])
        dst = self._graph("dst.json", [0.0, -1.0, 0.0])
        result = self._invoke("zigzag", "--src", src, "--dst", dst,
                              "--delta", 1e-3, "--out", self._path("p.csv"))
        assert result.exit_code == 0
        lines = self._read("p.csv").splitlines()
        assert lines[-1] == "1,1,0,-1,0"

    def test_zigzag_order_error(self):
        src = self._graph("src.json", [0.0, -1.0, 0.0])
        dst = self._graph("dst.json", [0.0, -2.0, 0.0])
        result = self._invoke("zigzag", "--src", src, "--dst", dst,
                              "--delta", 1e-3)
        assert result.exit_code == 2

    def test_mix(self):
        result = self._invoke("gen", "--kind", "switching", "--dim", 2,
                              "--period", 256, "--bound", 4.0, "--seed", 1,
                              "--out", self._path("c.json"))
        assert result.exit_code == 0
        result = self._invoke("mix", "--in", self._path("c.json"),
                              "--index", 1, "--eps", 0.5,
                              "--out", self._path("p.csv"),
                              "--end", self._path("end.json"))
        assert result.exit_code == 0
        header = self._read("p.csv").splitlines()[0]
        assert header == "sample,max_deviation,sigma_0,sigma_1,sigma_2"
        end = spectrum.lyapunov_graph(
            serialize.read_cocycle(self._path("end.json")))
        assert abs(end.exponents[1] - end.exponents[0]) <= 1e-6

    def test_realify(self):
        source = self._cocycle("c.json", CyclicCocycle(
            [rotation(0.7) @ np.diag([2.0, 0.5]), np.eye(2)]))
        result = self._invoke("realify", "--in", source, "--eps", 0.3,
                              "--out", self._path("p.csv"),
                              "--end", self._path("end.json"))
        assert result.exit_code == 0
        end = serialize.read_cocycle(self._path("end.json"))
        assert spectrum.has_real_spectrum(end)

    def test_separate(self):
        result = self._invoke("gen", "--kind", "cancellation", "--dim", 2,
                              "--period", 64, "--bound", 2.0,
                              "--segment", 32, "--out", self._path("c.json"))
        assert result.exit_code == 0
        result = self._invoke("separate", "--in", self._path("c.json"),
                              "--scale", 1, "--eps", 0.3,
                              "--report", self._path("z.csv"),
                              "--out", self._path("s.json"))
        assert result.exit_code == 0
        assert self._read("z.csv").startswith("phase,z_1,z_2,good\n")
        separated = spectrum.lyapunov_graph(
            serialize.read_cocycle(self._path("s.json")))
        assert separated.exponents[-1] >= math.log(2.0) - 0.1

    def test_raise_endpoint_mismatch(self):
        source = self._cocycle("c.json", base.constant(
            np.diag([2.0, 0.5]), 4))
        target = self._graph("t.json", [0.0, -0.5, 0.5])
        result = self._invoke("raise", "--in", source, "--target", target,
                              "--eps", 0.1)
        assert result.exit_code == 2

    def test_verify(self):
        result = self._invoke("verify", "--suite", "majorization",
                              "--seeds", 1, "--report", self._path("r.json"))
        assert result.exit_code == 0
        report = json.loads(self._read("r.json"))
        assert report["suite"] == "majorization"
        assert report["passed"] is True

    def test_verify_failure(self):
        def failing(seed):
            return [{"name": "value", "seed": seed, "value": 1.0,
                     "tolerance": 0.5, "passed": False}]

        self.useFixture(fixtures.MockPatchObject(
            suites, "TRIALS", {"core": failing}))
        result = self._invoke("--seed", 40, "verify", "--suite", "core",
                              "--seeds", 2)
        assert result.exit_code == 1
        assert "failed at seed 40" in result.output

    def test_missing_input(self):
        result = self._invoke("analyze", "--in", self._path("absent.json"))
        assert result.exit_code == 2

    def test_malformed_input(self):
        path = self._path("bad.json")
        serialize.write_text(path, "{\"dim\": 2}")
        result = self._invoke("analyze", "--in", path)
        assert result.exit_code == 2

    def test_bad_config(self):
        result = self._invoke("--config", self._path("absent.yaml"),
                              "version")
        assert result.exit_code == 2

    def test_config_override(self):
        path = self._path("forge.yaml")
        serialize.write_text(path, "engine:\n  discretization: 32\n")
        result = self._invoke("--config", path, "version")
        assert result.exit_code == 0
