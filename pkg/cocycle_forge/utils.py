"""
Copyright (c) 2026 The cocycle-forge Authors

SPDX-License-Identifier: Apache-2.0

"""

import concurrent.futures
import logging

import numpy as np

from cocycle_forge import config

LOG = logging.getLogger(__name__)


def parallel_map(fn, items, workers=None):
    """Apply fn to every item, preserving order.

    The pool size is capped by COCYCLE_FORGE_THREADS.
    """
    items = list(items)
    workers = workers or config.threads()
    if workers <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def rng(seed):
    """Counter-based generator seeded by a 64-bit integer."""
    return np.random.Generator(np.random.Philox(int(seed) & (2**64 - 1)))


def rotation(theta):
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, -s], [s, c]])


def qr_positive(m):
    """QR factorization with a non-negative diagonal in R."""
    q, r = np.linalg.qr(m)
    signs = np.sign(np.diag(r))
    signs[signs == 0] = 1.0
    return q * signs, signs[:, None] * r


def power_of_two(value):
    return value >= 1 and (value & (value - 1)) == 0
