"""
Copyright (c) 2026 The cocycle-forge Authors

SPDX-License-Identifier: Apache-2.0

"""

import enum
import logging
import math

import numpy as np

from cocycle_forge import constants
from cocycle_forge import exceptions
from cocycle_forge.graph import area
from cocycle_forge.graph import LyapunovGraph

LOG = logging.getLogger(__name__)


class Order(enum.Enum):
    A_BELOW = "a_below"
    A_ABOVE = "a_above"
    EQUAL = "equal"
    INCOMPARABLE = "incomparable"
    ENDPOINT_MISMATCH = "endpoint_mismatch"


def majorization_cmp(a, b, tol=constants.CONTACT_TOL):
    if a.dim != b.dim:
        raise exceptions.ArgumentError(
            f"Dimension mismatch: {a.dim} != {b.dim}")
    if abs(a.sigma[-1] - b.sigma[-1]) > tol:
        return Order.ENDPOINT_MISMATCH
    below = bool(np.all(a.sigma <= b.sigma + tol))
    above = bool(np.all(a.sigma >= b.sigma - tol))
    if below and above:
        return Order.EQUAL
    if below:
        return Order.A_BELOW
    if above:
        return Order.A_ABOVE
    return Order.INCOMPARABLE


def graph_index(graph, tol=constants.CONTACT_TOL):
    """Unique strict minimizer of sigma, or None."""
    sigma = graph.sigma
    p = int(np.argmin(sigma))
    others = np.delete(sigma, p)
    if np.all(others > sigma[p] + tol):
        return p
    return None


class GraphPathPlan:
    """Vertices of a zigzag path; step j moves coordinate moved_index[j]."""

    def __init__(self, vertices, moved_index):
        self.vertices = list(vertices)
        self.moved_index = list(moved_index)

    def __len__(self):
        return len(self.moved_index)

    @property
    def start(self):
        return self.vertices[0]

    @property
    def end(self):
        return self.vertices[-1]

    def steps(self):
        """(moved_index, before, after) for every step."""
        return [(i, self.vertices[k], self.vertices[k + 1])
                for k, i in enumerate(self.moved_index)]


def step_bound(d, c, delta):
    """Plan length bound for |src_i| <= c i.

    The area between plan and target contracts by 1 - 2/d^3 on every
    non-splitting step; at most d - 1 steps end in contact.
    """
    if d < 2:
        return 0
    initial = c * d * (d - 1)
    contracting = 0
    if initial > delta:
        contracting = math.ceil(math.log(delta / initial)
                                / math.log(1.0 - 2.0 / d ** 3))
    return contracting + d - 1


def _check_pair(src, dst):
    order = majorization_cmp(src, dst)
    if order == Order.ENDPOINT_MISMATCH:
        raise exceptions.OrderError(
            f"Endpoints differ: {src.sigma[-1]!r} != {dst.sigma[-1]!r}")
    if order not in (Order.A_BELOW, Order.EQUAL):
        raise exceptions.OrderError(
            "Source graph is not majorized by the destination.")


def _zigzag(sigma, dst, delta, lo, hi, vertices, moved, tol):
    """Move sigma[lo..hi] toward dst[lo..hi] in place, appending vertices.

    Contact coordinates are frozen, which splits the problem into the
    segments between them.
    """
    free = [i for i in range(lo + 1, hi) if dst[i] - sigma[i] > tol]
    while free and np.max(dst[lo:hi + 1] - sigma[lo:hi + 1]) > delta:
        second = [sigma[i - 1] - 2.0 * sigma[i] + sigma[i + 1] for i in free]
        i = free[int(np.argmax(second))]
        midpoint = 0.5 * (sigma[i - 1] + sigma[i + 1])
        value = min(dst[i], midpoint)
        if dst[i] - value <= tol:
            value = dst[i]
        if value <= sigma[i]:
            break
        sigma[i] = value
        vertices.append(LyapunovGraph(sigma.copy()))
        moved.append(i)
        if value == dst[i]:
            free.remove(i)


def _envelope(dst, p, value):
    """Largest convex graph below dst passing through (p, value)."""
    points = dst.copy()
    points[p] = value
    hull = []
    for k in range(points.size):
        while len(hull) >= 2:
            a, b = hull[-2], hull[-1]
            # drop b when it lies above the chord from a to k
            if (points[b] - points[a]) * (k - a) >= \
                    (points[k] - points[a]) * (b - a):
                hull.pop()
            else:
                break
        hull.append(k)
    return np.interp(np.arange(points.size), hull, points[hull])


def _zigzag_index(sigma, dst, delta, p, vertices, moved, tol):
    d = sigma.size - 1
    inner = delta / (4.0 * d)
    for _round in range(10000):
        if np.max(dst - sigma) <= delta:
            return
        bar = _envelope(dst, p, sigma[p])
        _zigzag(sigma, bar, inner, 0, p, vertices, moved, tol)
        _zigzag(sigma, bar, inner, p, d, vertices, moved, tol)
        if np.max(dst - sigma) <= delta:
            return
        gap = min(sigma[p - 1] - sigma[p], sigma[p + 1] - sigma[p])
        value = min(dst[p], sigma[p] + 0.9 * gap)
        if value <= sigma[p] + tol:
            return
        sigma[p] = value
        vertices.append(LyapunovGraph(sigma.copy()))
        moved.append(p)
    raise exceptions.NumericalError("Index-preserving zigzag did not settle")


def zigzag_path(src, dst, delta, preserve_index=False,
                tol=constants.CONTACT_TOL):
    """Plan of single-coordinate raises from src up to within delta of dst."""
    _check_pair(src, dst)
    if delta <= 0:
        raise exceptions.ArgumentError("delta must be positive")
    sigma = src.sigma.copy()
    target = dst.sigma
    vertices = [src]
    moved = []
    if preserve_index:
        p = graph_index(src)
        if p is None or p != graph_index(dst):
            raise exceptions.GraphIndexError(
                f"Index mismatch: {p} != {graph_index(dst)}")
        if 0 < p < src.dim:
            _zigzag_index(sigma, target, delta, p, vertices, moved, tol)
        else:
            _zigzag(sigma, target, delta, 0, src.dim, vertices, moved, tol)
    else:
        _zigzag(sigma, target, delta, 0, src.dim, vertices, moved, tol)
    plan = GraphPathPlan(vertices, moved)
    LOG.debug(f"Zigzag plan with {len(plan)} steps, "
              f"final gap {plan.end.distance(dst):.3e}")
    return plan


def step_ratios(plan, dst, tol=constants.CONTACT_TOL):
    """Area ratios of the steps that did not end in contact."""
    ratios = []
    for i, before, after in plan.steps():
        if dst.sigma[i] - after.sigma[i] <= tol:
            continue
        previous = area(before, dst)
        if previous > 0:
            ratios.append(area(after, dst) / previous)
    return ratios


def nearly_affine_bound(y):
    """Largest gap below the chord of a convex sequence, and k^2 gamma / 4."""
    y = np.asarray(y, dtype=float)
    k = y.size - 1
    if k < 1:
        return 0.0, 0.0
    second = np.diff(y, 2)
    if second.size and second.min() < -constants.CONVEXITY_TOL:
        raise exceptions.ArgumentError("Sequence is not convex.")
    gamma = float(second.max()) if second.size else 0.0
    chord = y[0] + (y[-1] - y[0]) * np.arange(k + 1) / k
    deviation = float(np.max(chord - y))
    bound = k * k * gamma / 4.0
    assert deviation <= bound + constants.CONVEXITY_TOL
    return deviation, bound


def admissible_indices(graph, splitting_indices):
    """{k : sigma_k <= min_j sigma_{i_j}}, an integer interval."""
    given = list(splitting_indices)
    if any(int(i) != i for i in given) or \
            any(b <= a for a, b in zip(given, given[1:])):
        raise exceptions.ArgumentError(
            f"Splitting indices {given} must be strictly increasing integers")
    indices = sorted({int(i) for i in given} | {0, graph.dim})
    if indices[0] < 0 or indices[-1] > graph.dim:
        raise exceptions.ArgumentError(
            f"Splitting indices must lie in 0..{graph.dim}")
    floor = min(graph.sigma[i] for i in indices)
    ks = [k for k in range(graph.dim + 1)
          if graph.sigma[k] <= floor + constants.CONTACT_TOL]
    assert ks == list(range(ks[0], ks[-1] + 1))
    assert any(indices[j - 1] <= ks[0] and ks[-1] <= indices[j]
               for j in range(1, len(indices)))
    return range(ks[0], ks[-1] + 1)
