"""
Copyright (c) 2026 The cocycle-forge Authors

SPDX-License-Identifier: Apache-2.0

"""

import logging

import numpy as np

from cocycle_forge import exceptions
from cocycle_forge.flags import FAST_FIRST
from cocycle_forge.flags import FlagFrame
from cocycle_forge.graph import LyapunovGraph
from cocycle_forge.path import PerturbationPath
from cocycle_forge.path import sample_count
from cocycle_forge import spectrum
from cocycle_forge.utils import rng

LOG = logging.getLogger(__name__)

# flag residual above which the cocycle is nudged before adjusting
JITTER_RESIDUAL = 1e-10
JITTER_SIZE = 1e-9
# default endpoint accuracy of an adjustment
MISS_TOL = 1e-8


def _jitter(cocycle):
    noise = rng(cocycle.period * 7919 + cocycle.dim).standard_normal(
        cocycle.stack.shape)
    noise /= np.linalg.norm(noise, ord=2, axis=(1, 2))[:, None, None]
    return cocycle.replace(dict(enumerate(
        cocycle.stack + JITTER_SIZE * noise @ cocycle.stack)))


def _triangular_frame(cocycle):
    frame = FlagFrame.build(cocycle, FAST_FIRST)
    if any(stop - start != 1 for start, stop in frame.partition):
        raise exceptions.PreconditionError(
            "Adjusting the spectrum needs real eigenvalues")
    return frame


def adjust_spectrum(cocycle, target, eps, budget=None, tol=MISS_TOL):
    """Path moving every exponent linearly to the target graph.

    In an invariant triangular frame each diagonal entry is multiplied
    by exp(t delta_k); eigenvalues stay real and the graph of sample t
    is the affine interpolation toward the target. The endpoint must
    land within tol of the target.
    """
    if eps <= 0.0:
        raise exceptions.ArgumentError("eps must be positive")
    if target.dim != cocycle.dim:
        raise exceptions.ArgumentError(
            f"Target has dimension {target.dim}, cocycle {cocycle.dim}")
    graph = spectrum.lyapunov_graph(cocycle)
    path = PerturbationPath(cocycle, eps, graph)
    if target.distance(graph) == 0.0:
        return path
    if not spectrum.has_real_spectrum(cocycle):
        raise exceptions.PreconditionError(
            "Adjusting the spectrum needs real eigenvalues")
    n = cocycle.period
    budget = np.full(n, float(eps)) if budget is None \
        else np.array(budget, dtype=float)

    current = cocycle
    frame = _triangular_frame(current)
    if frame.residual > JITTER_RESIDUAL:
        LOG.debug(f"Flag residual {frame.residual:.3e}; jittering by "
                  f"{JITTER_SIZE:g}")
        current = _jitter(current)
        graph = spectrum.lyapunov_graph(current)
        path.append(current, graph)
        budget = budget - path.usage()
        frame = _triangular_frame(current)

    # fast-first position k carries the (d - 1 - k)-th smallest exponent
    delta = (target.exponents - graph.exponents)[::-1]
    blocks = np.array(frame.blocks)

    def changes(t):
        scale = np.exp(t * delta)
        return dict(enumerate(scale[None, :, None] * blocks))

    final = np.array(list(changes(1.0).values()))
    deviation = np.linalg.norm(final - blocks, ord=2, axis=(1, 2))
    if np.any(deviation > budget + 1e-15):
        worst = int(np.argmax(deviation - budget))
        raise exceptions.RangeError(
            f"Target is too far: phase {worst} needs "
            f"{deviation[worst]:.3e} with {budget[worst]:.3e} left")

    for t in np.linspace(0.0, 1.0, sample_count(deviation.max(), eps))[1:]:
        sigma = graph.sigma + t * (target.sigma - graph.sigma)
        path.append(frame.replace_diagonal(changes(t)), LyapunovGraph(sigma))

    actual = spectrum.lyapunov_graph(path.end)
    if actual.distance(target) > tol:
        raise exceptions.NumericalError(
            f"Adjusted graph misses the target by "
            f"{actual.distance(target):.3e}")
    path.verify()
    return path
