"""
Copyright (c) 2026 The cocycle-forge Authors

SPDX-License-Identifier: Apache-2.0

"""

import os

import fixtures

from cocycle_forge import config
from cocycle_forge import constants
from cocycle_forge import exceptions
from cocycle_forge.tests import base


class TestLoadConfig(base.TestCase):

    def setUp(self):
        super(TestLoadConfig, self).setUp()
        self.tmp = self.useFixture(fixtures.TempDir()).path

    def _write(self, text):
        path = os.path.join(self.tmp, "forge.yaml")
        with open(path, "w") as f:
            f.write(text)
        return path

    def test_defaults(self):
        settings = config.load_config()
        assert settings["tolerances"]["convexity"] == constants.CONVEXITY_TOL
        assert settings["tolerances"]["invariance"] == \
            constants.INVARIANCE_TOL
        assert settings["engine"]["discretization"] == 16
        assert settings["engine"]["default_ell"] == 64

    def test_override_keeps_other_keys(self):
        path = self._write("engine:\n  discretization: 32\n")
        settings = config.load_config(path)
        assert settings["engine"]["discretization"] == 32
        assert settings["engine"]["default_ell"] == 64
        assert settings["separation"]["restarts"] == 48

    def test_empty_file(self):
        settings = config.load_config(self._write(""))
        assert settings == config.load_config()

    def test_unknown_section(self):
        path = self._write("plotting:\n  dpi: 300\n")
        error = self.assertRaises(exceptions.ConfigError,
                                  config.load_config, path)
        assert "plotting" in str(error)

    def test_malformed(self):
        path = self._write("engine: [1, 2\n")
        error = self.assertRaises(exceptions.ConfigError,
                                  config.load_config, path)
        assert "forge.yaml" in str(error)

    def test_not_a_mapping(self):
        path = self._write("- 1\n- 2\n")
        self.assertRaises(exceptions.ConfigError, config.load_config, path)

    def test_missing_file(self):
        self.assertRaises(exceptions.ConfigError, config.load_config,
                          os.path.join(self.tmp, "absent.yaml"))


class TestSettings(base.TestCase):

    def test_get_uses_current(self):
        settings = config.load_config()
        settings["engine"]["discretization"] = 8
        config.use_config(settings)
        assert config.get("engine", "discretization") == 8

    def test_get_missing(self):
        self.assertRaises(exceptions.ConfigError, config.get,
                          "engine", "warp_factor")


class TestThreads(base.TestCase):

    def test_unset(self):
        self.useFixture(fixtures.EnvironmentVariable(constants.THREADS_ENV))
        assert config.threads() >= 1

    def test_value(self):
        self.useFixture(
            fixtures.EnvironmentVariable(constants.THREADS_ENV, "3"))
        assert config.threads() == 3

    def test_not_an_integer(self):
        self.useFixture(
            fixtures.EnvironmentVariable(constants.THREADS_ENV, "abc"))
        self.assertRaises(exceptions.ConfigError, config.threads)

    def test_not_positive(self):
        self.useFixture(
            fixtures.EnvironmentVariable(constants.THREADS_ENV, "0"))
        self.assertRaises(exceptions.ConfigError, config.threads)
