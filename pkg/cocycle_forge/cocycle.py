"""
Copyright (c) 2026 The cocycle-forge Authors

SPDX-License-Identifier: Apache-2.0

"""

import itertools
import logging
import math

import numpy as np
import scipy.linalg

from cocycle_forge import constants
from cocycle_forge import exceptions
from cocycle_forge.utils import qr_positive

LOG = logging.getLogger(__name__)


class CyclicCocycle:
    """Period-n sequence of invertible d x d maps over a cyclic orbit.

    maps[j] sends the fiber over x_j to the fiber over x_{j+1 mod n}.
    """

    def __init__(self, maps, validate=True):
        stack = np.array(maps, dtype=float)
        if stack.ndim == 2:
            stack = stack[None]
        if stack.ndim != 3 or stack.shape[0] < 1:
            raise exceptions.ArgumentError(
                "A cocycle needs a non-empty list of square matrices.")
        if stack.shape[1] != stack.shape[2] or stack.shape[1] < 1:
            raise exceptions.ArgumentError(
                f"Maps must be square, got shape {stack.shape[1:]}")
        if not np.all(np.isfinite(stack)):
            raise exceptions.ArgumentError("Maps must have finite entries.")
        stack.setflags(write=False)
        self.stack = stack
        self._bound = None
        self.metadata = {}
        if validate:
            self.validate()

    @classmethod
    def identity(cls, dim, period):
        return cls(np.broadcast_to(np.eye(dim), (period, dim, dim)))

    @property
    def dim(self):
        return self.stack.shape[1]

    @property
    def period(self):
        return self.stack.shape[0]

    @property
    def maps(self):
        return list(self.stack)

    def __getitem__(self, phase):
        return self.stack[phase % self.period]

    def __len__(self):
        return self.period

    def validate(self):
        sv = np.linalg.svd(self.stack, compute_uv=False)
        smallest = sv[:, -1]
        # numerical rank, as numpy.linalg.matrix_rank decides it
        rank_tol = sv[:, 0] * self.dim * np.finfo(float).eps
        bad = np.flatnonzero(smallest <= rank_tol)
        if bad.size:
            raise exceptions.ArgumentError(
                f"Map at phase {int(bad[0])} is not invertible.")
        self._bound = float(max(sv[:, 0].max(), (1.0 / smallest).max()))

    @property
    def bound(self):
        """K = max over maps of max(||A||, 1/m(A))."""
        if self._bound is None:
            self.validate()
        return self._bound

    def inverse(self):
        """Cocycle of inverses over the reversed orbit.

        Phase k of the inverse is phase (n - k) mod n of this cocycle.
        """
        return CyclicCocycle(np.linalg.inv(self.stack[::-1]), validate=False)

    def replace(self, changes):
        """Copy with the maps at the given phases replaced."""
        stack = self.stack.copy()
        for phase, matrix in changes.items():
            stack[phase % self.period] = matrix
        return CyclicCocycle(stack, validate=False)

    def deviation(self, other):
        """Per-phase operator-norm distance to another cocycle."""
        if other.stack.shape != self.stack.shape:
            raise exceptions.ArgumentError("Cocycle shapes differ.")
        diff = other.stack - self.stack
        return np.linalg.norm(diff, ord=2, axis=(1, 2))

    def log_det(self):
        """Sum over phases of log|det A(x_j)|."""
        _sign, logdet = np.linalg.slogdet(self.stack)
        return float(np.sum(logdet))

    def __repr__(self):
        return f"CyclicCocycle(dim={self.dim}, period={self.period})"


class PeriodProduct:
    """A^n at a phase, stored as exp(logscale) * q @ r."""

    def __init__(self, q, r, logscale):
        self.q = q
        self.r = r
        self.logscale = logscale

    def normalized(self):
        return self.q @ self.r

    def matrix(self):
        if abs(self.logscale) > constants.MAX_LOG_SCALE:
            raise exceptions.ProductRangeError(
                f"Product log-scale {self.logscale:.1f} exceeds the "
                "representable range")
        return self.normalized() * math.exp(self.logscale)


def accumulate(matrices, start=None):
    """Running QR of a product of matrices with log-scaling.

    Returns (q, r, logscale) with product @ start = exp(logscale) q @ r.
    """
    q = np.eye(matrices[0].shape[0]) if start is None else start
    r = np.eye(q.shape[1])
    logscale = 0.0
    for matrix in matrices:
        q, step = qr_positive(matrix @ q)
        r = step @ r
        scale = np.abs(r).max()
        if scale == 0.0 or not np.isfinite(scale):
            raise exceptions.NumericalError(
                "Degenerate factor in product accumulation")
        r /= scale
        logscale += math.log(scale)
    return q, r, logscale


def period_product(cocycle, phase=0):
    if not 0 <= phase < cocycle.period:
        raise exceptions.ArgumentError(
            f"Phase {phase} outside 0..{cocycle.period - 1}")
    n = cocycle.period
    matrices = [cocycle[phase + k] for k in range(n)]
    q, r, logscale = accumulate(matrices)
    return PeriodProduct(q, r, logscale)


def exterior_power(matrix, i):
    """Induced map on i-vectors, lexicographic wedge basis."""
    matrix = np.asarray(matrix, dtype=float)
    d = matrix.shape[0]
    if not 1 <= i <= d:
        raise exceptions.ArgumentError(f"Exterior power {i} outside 1..{d}")
    combos = list(itertools.combinations(range(d), i))
    rows = np.array(combos)
    # minors[a, b] = det(matrix[combos[a]][:, combos[b]])
    minors = matrix[rows[:, None, :, None], rows[None, :, None, :]]
    return np.linalg.det(minors)


def _log_svals_forward(matrices):
    _q, r, logscale = accumulate(matrices)
    sv = np.linalg.svd(r, compute_uv=False)
    with np.errstate(divide="ignore"):
        return np.log(sv) + logscale, sv / sv[0]


def log_singular_values(matrices, rel=1e-8):
    """Log singular values (descending) of the product of matrices.

    Large values come from the forward product and small ones from the
    product of inverses, so graded products keep full accuracy.
    """
    forward, rel_forward = _log_svals_forward(matrices)
    if rel_forward[-1] >= rel:
        return forward
    inverses = [np.linalg.inv(m) for m in reversed(matrices)]
    backward, rel_backward = _log_svals_forward(inverses)
    backward = -backward[::-1]
    rel_backward = rel_backward[::-1]
    return np.where(rel_forward >= rel_backward, forward, backward)


def graded_svd(r, rel=1e-8):
    """SVD (u, log s, v) of an invertible upper triangular factor.

    Leading pairs come from r and trailing ones from its inverse, so a
    graded r keeps its small singular directions; both frames are then
    orthonormalized in descending order.
    """
    u, s, vt = np.linalg.svd(r)
    with np.errstate(divide="ignore"):
        logs = np.log(s)
    rel_forward = s / s[0]
    if rel_forward[-1] >= rel:
        return u, logs, vt.T
    inverse = scipy.linalg.solve_triangular(r, np.eye(r.shape[0]))
    bu, bs, bvt = np.linalg.svd(inverse)
    # r^-1 = v s^-1 u^T, so its singular pairs arrive smallest s first
    use = rel_forward >= (bs / bs[0])[::-1]
    logs = np.where(use, logs, -np.log(bs)[::-1])
    right = np.where(use[None, :], vt.T, bu[:, ::-1])
    left = np.where(use[None, :], u, bvt.T[:, ::-1])
    left, _r = qr_positive(left)
    right, _r = qr_positive(right)
    return left, logs, right


def window_top_sums(cocycle, m):
    """Table of log ||wedge^i A^m(x)|| for every phase x and 0 <= i <= d."""
    if not 1 <= m:
        raise exceptions.ArgumentError(f"Scale must be positive, got {m}")
    n = cocycle.period
    table = np.zeros((n, cocycle.dim + 1))
    for x in range(n):
        logs = log_singular_values([cocycle[x + k] for k in range(m)])
        table[x, 1:] = np.cumsum(logs)
    return table


def finite_time_graph(cocycle, m):
    """Phase average of (1/m) log ||wedge^i A^m(x)||, indexed by i."""
    if not 1 <= m <= cocycle.period:
        raise exceptions.ArgumentError(
            f"Scale {m} outside 1..{cocycle.period}")
    return window_top_sums(cocycle, m).mean(axis=0) / m
