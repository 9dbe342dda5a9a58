"""
Copyright (c) 2026 The cocycle-forge Authors

SPDX-License-Identifier: Apache-2.0

"""

import copy
import logging
import os
import pathlib

import yaml

from cocycle_forge import constants
from cocycle_forge import exceptions

LOG = logging.getLogger(__name__)

DEFAULTS = """
tolerances:
  convexity: 1.0e-9
  orthonormal: 1.0e-10
  invariance: 1.0e-8
  cluster: 1.0e-8
  contact: 1.0e-12
  decouple: 1.0e-10
  resolvable: 1.0e-5
iteration:
  max_sweeps: 200
  stable_sweeps: 2
engine:
  default_ell: 64
  discretization: 16
  max_retries: 4
  rotation_fraction: 0.9
  shear_target_fraction: 0.8
  scaling_fraction: 0.5
  realify_grid: 2048
  realify_share: 0.25
  adjust_share: 0.25
domination:
  threshold_cap: 4096
separation:
  alpha_floor: 1.0e-4
  accept_angle: 0.5
  restarts: 48
  ascent_steps: 60
  slack_floor: 1.0e-9
suites:
  seeds: 20
  base_seed: 20260101
"""

_current = None


def _merge(base, override):
    merged = copy.deepcopy(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key].update(value)
        else:
            merged[key] = value
    return merged


def _parse(text, origin):
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        if hasattr(exc, 'problem_mark'):
            mark = exc.problem_mark
            line = mark.line + 1
            col = mark.column + 1
            msg = f"Error in {origin} at ({line}:{col})"
            raise exceptions.ConfigError(msg)
        msg = f"Failed to parse {origin}: {exc}"
        raise exceptions.ConfigError(msg)
    if data is None:
        return {}
    if not isinstance(data, dict):
        raise exceptions.ConfigError(f"{origin} must be a mapping.")
    return data


def load_config(path=None):
    """Return the built-in settings overridden by the file at path."""
    config = _parse(DEFAULTS, "built-in defaults")
    if path is None:
        return config

    path = pathlib.Path(path)
    if not path.exists():
        raise exceptions.ConfigError(f"Unable to find {path}.")
    LOG.debug(f"Loading configuration from {path}")
    with open(path, "r") as f:
        override = _parse(f.read(), path.name)
    unknown = set(override) - set(config)
    if unknown:
        raise exceptions.ConfigError(
            f"Unknown configuration sections: {', '.join(sorted(unknown))}")
    return _merge(config, override)


def use_config(config):
    global _current
    _current = config


def settings():
    """Settings currently in effect."""
    global _current
    if _current is None:
        _current = load_config()
    return _current


def get(section, key):
    try:
        return settings()[section][key]
    except KeyError:
        raise exceptions.ConfigError(f"Missing setting {section}.{key}")


def threads():
    """Worker count, capped by COCYCLE_FORGE_THREADS."""
    value = os.environ.get(constants.THREADS_ENV)
    if not value:
        return os.cpu_count() or 1
    try:
        count = int(value)
    except ValueError:
        raise exceptions.ConfigError(
            f"{constants.THREADS_ENV} must be an integer, got {value!r}")
    if count < 1:
        raise exceptions.ConfigError(
            f"{constants.THREADS_ENV} must be positive")
    return count
