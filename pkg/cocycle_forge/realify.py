"""
Copyright (c) 2026 The cocycle-forge Authors

SPDX-License-Identifier: Apache-2.0

"""

import logging
import math

import numpy as np

from cocycle_forge import config
from cocycle_forge import exceptions
from cocycle_forge.flags import FAST_FIRST
from cocycle_forge.flags import FlagFrame
from cocycle_forge.path import PerturbationPath
from cocycle_forge.path import sample_count
from cocycle_forge import spectrum

LOG = logging.getLogger(__name__)


def _rotations(angles):
    c, s = np.cos(angles), np.sin(angles)
    return np.stack([np.stack([c, -s], axis=-1),
                     np.stack([s, c], axis=-1)], axis=-2)


def orientation_signs(maps):
    """+1 or -1 per phase so that a common angle turns the product coherently.

    A reflection reverses the sense of every rotation applied before it,
    so phase j is turned by (-1)^(reflections after j).
    """
    negative = np.linalg.det(maps) < 0.0
    after = np.concatenate((np.cumsum(negative[::-1])[::-1][1:], [0]))
    return np.where(after % 2 == 0, 1.0, -1.0)


def product_discriminants(maps, signs, thetas):
    """Scaled discriminant of the turned product for every angle."""
    thetas = np.atleast_1d(np.asarray(thetas, dtype=float))
    mats = np.broadcast_to(np.eye(2), (thetas.size, 2, 2)).copy()
    for block, sign in zip(maps, signs):
        mats = _rotations(sign * thetas) @ (block @ mats)
        mats /= np.abs(mats).max(axis=(1, 2))[:, None, None]
    det = np.linalg.det(mats)
    trace = np.trace(mats, axis1=1, axis2=2)
    with np.errstate(divide="ignore", invalid="ignore"):
        disc = trace * trace / np.abs(det) - 4.0 * np.sign(det)
    return np.where(np.isfinite(disc), disc, -np.inf)


class PlaneRealifier:
    """Turns every map of a planar cocycle by a common small angle.

    The determinant is untouched, so while the product stays elliptic
    both exponents equal half the mean log-determinant; the angle stops
    at the first parameter where the discriminant reaches zero.
    """

    def __init__(self, maps, budget, eps_bound):
        self.maps = np.array(maps, dtype=float)
        self.budget = np.array(budget, dtype=float)
        self.eps_bound = eps_bound
        self.signs = orientation_signs(self.maps)
        self.norms = np.linalg.norm(self.maps, ord=2, axis=(1, 2))

    def limit(self):
        ratio = np.clip(self.budget / (2.0 * self.norms), 0.0, 1.0)
        return float(np.min(2.0 * np.arcsin(ratio)))

    def solve(self, grid=None, retries=None):
        grid = grid or config.get("engine", "realify_grid")
        retries = retries or config.get("engine", "max_retries")
        theta_max = 0.999 * self.limit()
        best = -np.inf
        for attempt in range(retries + 1):
            thetas = np.linspace(-theta_max, theta_max, 2 * grid + 1)
            disc = product_discriminants(self.maps, self.signs, thetas)
            best = max(best, float(disc.max()))
            real = np.flatnonzero(disc >= 0.0)
            if real.size:
                center = grid
                pick = real[np.argmin(np.abs(real - center))]
                return self._boundary(thetas[center], thetas[pick])
            LOG.debug(f"No real product on a {2 * grid + 1}-point grid; "
                      "refining")
            grid *= 2
        raise exceptions.CapabilityError(
            f"Product stays elliptic within the angle budget "
            f"{theta_max:.3e}", residual=best)

    def _boundary(self, inside, outside):
        """Bisect toward the first real parameter, ending on the real side."""
        if product_discriminants(self.maps, self.signs, inside)[0] >= 0.0:
            return inside
        for _step in range(60):
            middle = 0.5 * (inside + outside)
            if product_discriminants(self.maps, self.signs, middle)[0] >= 0.0:
                outside = middle
            else:
                inside = middle
        return outside

    def changes(self, theta, t):
        turns = _rotations(self.signs * t * theta)
        return dict(enumerate(turns @ self.maps))


def _plane_blocks(frame):
    blocks = []
    for start, stop in frame.partition:
        if stop - start == 1:
            continue
        if not frame.is_complex(start, stop):
            continue
        if stop - start != 2:
            raise exceptions.CapabilityError(
                f"Complex cluster [{start}, {stop}) is wider than a plane")
        blocks.append((start, stop))
    return blocks


def make_eigenvalues_real(cocycle, eps, budget=None):
    """Path to a cocycle with real spectrum and the same exponents."""
    if eps <= 0.0:
        raise exceptions.ArgumentError("eps must be positive")
    n = cocycle.period
    graph = spectrum.lyapunov_graph(cocycle)
    path = PerturbationPath(cocycle, eps, graph)
    if spectrum.has_real_spectrum(cocycle):
        return path
    budget = np.full(n, float(eps)) if budget is None \
        else np.array(budget, dtype=float)

    frame = FlagFrame.build(cocycle, FAST_FIRST)
    planes = []
    for start, stop in _plane_blocks(frame):
        realifier = PlaneRealifier(frame.subquotient(start, stop).stack,
                                   budget, eps)
        try:
            theta = realifier.solve()
        except exceptions.CapabilityError as error:
            error.partial = path
            raise
        LOG.debug(f"Plane [{start}, {stop}) turns real at angle "
                  f"{theta:+.3e}")
        planes.append((start, stop, realifier, theta))
    if not planes:
        raise exceptions.CapabilityError(
            "Complex eigenvalues are not carried by any invariant plane",
            partial=path)

    deviation = max(2.0 * abs(math.sin(0.5 * theta)) * realifier.norms.max()
                    for _s, _e, realifier, theta in planes)
    for t in np.linspace(0.0, 1.0, sample_count(deviation, eps))[1:]:
        changes = {phase: frame.blocks[phase].copy() for phase in range(n)}
        for start, stop, realifier, theta in planes:
            for phase, block in realifier.changes(theta, t).items():
                changes[phase][start:stop, start:stop] = block
        path.append(frame.replace_diagonal(changes), graph)

    if not spectrum.has_real_spectrum(path.end):
        residual = min(float(product_discriminants(
            r.maps, r.signs, theta)[0]) for _s, _e, r, theta in planes)
        raise exceptions.CapabilityError(
            "Endpoint still has complex eigenvalues", partial=path,
            residual=residual)
    path.verify()
    LOG.info(f"Realified {len(planes)} plane(s) in {len(path)} samples")
    return path
