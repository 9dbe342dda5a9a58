"""
Copyright (c) 2026 The cocycle-forge Authors

SPDX-License-Identifier: Apache-2.0

"""

import logging
import math

import numpy as np
import scipy.linalg
from scipy.stats import ortho_group

from cocycle_forge.cocycle import CyclicCocycle
from cocycle_forge import constants
from cocycle_forge import domination
from cocycle_forge import exceptions
from cocycle_forge import spectrum
from cocycle_forge.utils import rng
from cocycle_forge.utils import rotation

LOG = logging.getLogger(__name__)

ELLIPTIC_TRIES = 200
# relative spread of the per-phase rates of a switching cocycle
SWITCH_JITTER = 0.05
# bound on the log-moduli of a switching period product with default rates
SWITCH_SPREAD = 6.0


class GeneratorSpec:
    """Recipe for a seeded cocycle family."""

    def __init__(self, kind, dim, period, bound, seed, segment=None, ell=1,
                 rate=None, dominant=0):
        if kind not in constants.GENERATOR_KINDS:
            raise exceptions.ArgumentError(
                f"Unknown generator {kind!r}; expected one of "
                f"{', '.join(constants.GENERATOR_KINDS)}")
        if dim < 1 or period < 1:
            raise exceptions.ArgumentError(
                "Dimension and period must be positive")
        if not bound >= 1.0:
            raise exceptions.ArgumentError(
                f"Bound must be at least 1, got {bound}")
        if not 0 <= dominant < dim:
            raise exceptions.ArgumentError(
                f"Dominant axes must lie in 0..{dim - 1}")
        self.kind = kind
        self.dim = int(dim)
        self.period = int(period)
        self.bound = float(bound)
        self.seed = int(seed)
        self.segment = segment
        self.ell = int(ell)
        self.rate = rate
        self.dominant = int(dominant)

    def as_dict(self):
        return {
            "kind": self.kind,
            "dim": self.dim,
            "period": self.period,
            "bound": self.bound,
            "seed": self.seed,
            "segment": self.segment,
            "ell": self.ell,
            "rate": self.rate,
            "dominant": self.dominant,
        }

    def __repr__(self):
        return (f"GeneratorSpec({self.kind}, d={self.dim}, n={self.period}, "
                f"K={self.bound:g}, seed={self.seed})")


def _orthogonal(gen, d):
    if d == 1:
        return np.array([[1.0 if gen.random() < 0.5 else -1.0]])
    return ortho_group.rvs(d, random_state=gen)


def _ladder(d, log_bound):
    """Ascending log-rates spread evenly over [-log K, log K]."""
    if d == 1:
        return np.zeros(1)
    return log_bound * (2.0 * np.arange(d) / (d - 1) - 1.0)


def _random_bounded(spec, gen):
    log_k = math.log(spec.bound)
    maps = []
    for _j in range(spec.period):
        logs = gen.uniform(-log_k, log_k, spec.dim)
        maps.append(_orthogonal(gen, spec.dim) @ np.diag(np.exp(logs))
                    @ _orthogonal(gen, spec.dim))
    return CyclicCocycle(maps)


def _near_isometry(spec, gen):
    size = spec.rate if spec.rate is not None \
        else min(math.log(spec.bound), 0.1)
    maps = []
    for _j in range(spec.period):
        noise = gen.standard_normal((spec.dim, spec.dim))
        sym = noise + noise.T
        norm = np.linalg.norm(sym, 2)
        sym = sym * (size / norm) if norm > 0 else sym
        maps.append(_orthogonal(gen, spec.dim) @ scipy.linalg.expm(sym))
    return CyclicCocycle(maps)


def _dominated(spec, gen):
    d = spec.dim
    rates = _ladder(d, math.log(spec.bound))
    if d > 1 and (rates[1] - rates[0]) * spec.ell <= math.log(2.0):
        raise exceptions.ArgumentError(
            f"Bound {spec.bound:g} cannot separate {d} rates by a factor 2 "
            f"over {spec.ell} steps")
    frames = [_orthogonal(gen, d) for _j in range(spec.period)]
    n = spec.period
    scale = np.diag(np.exp(rates))
    cocycle = CyclicCocycle([frames[(j + 1) % n] @ scale @ frames[j].T
                             for j in range(n)])
    finder = domination.SplittingFinder(cocycle)
    reports = [domination.check_domination(cocycle, i, spec.ell, finder)
               for i in range(1, d)]
    if not all(report.dominated for report in reports):
        raise exceptions.NumericalError(
            "Generated cocycle failed its domination certificate")
    cocycle.metadata["domination"] = [r.as_dict() for r in reports]
    return cocycle


def _quarter_turn(d):
    if d == 2:
        return np.array([[0.0, -1.0], [1.0, 0.0]])
    return np.eye(d)[::-1]


def _cancellation(spec, gen):
    d = spec.dim
    segment = spec.segment or 1
    if spec.period % (2 * segment):
        raise exceptions.ArgumentError(
            f"Period {spec.period} is not a multiple of 2 x {segment}")
    rates = _ladder(d, math.log(spec.bound))[::-1]
    hyperbolic = np.diag(np.exp(rates))
    turn = _quarter_turn(d)
    conjugate = turn @ hyperbolic @ turn.T
    maps = [hyperbolic if (j // segment) % 2 == 0 else conjugate
            for j in range(spec.period)]
    cocycle = CyclicCocycle(maps)
    cocycle.metadata["z_1"] = math.log(spec.bound)
    return cocycle


def _elliptic_block(gen, n, scale, spread):
    for _try in range(ELLIPTIC_TRIES):
        angles = gen.uniform(0.0, 2.0 * math.pi, n)
        stretch = np.exp(gen.uniform(0.0, spread, n))
        blocks = [scale * rotation(a) @ np.diag([s, 1.0 / s])
                  for a, s in zip(angles, stretch)]
        product = np.eye(2)
        for block in blocks:
            product = block @ product
            product /= np.abs(product).max()
        if spectrum.discriminant(product) < 0.0:
            return blocks
    raise exceptions.NumericalError("Could not draw an elliptic product")


def _elliptic(spec, gen):
    d, n = spec.dim, spec.period
    log_k = math.log(spec.bound)
    planes = d // 2
    scales = np.exp(0.5 * _ladder(planes + d % 2, log_k))
    frame = _orthogonal(gen, d)
    stack = np.zeros((n, d, d))
    for k in range(planes):
        blocks = _elliptic_block(gen, n, scales[k], 0.5 * log_k)
        stack[:, 2 * k:2 * k + 2, 2 * k:2 * k + 2] = blocks
    if d % 2:
        stack[:, -1, -1] = scales[-1]
    return CyclicCocycle(frame @ stack @ frame.T)


def _switching_order(period, segment):
    """+1 on phases with the forward rate order, -1 on reversed ones."""
    return np.where((np.arange(period) // segment) % 3 < 2, 1.0, -1.0)


def _switching(spec, gen):
    d, n = spec.dim, spec.period
    log_k = math.log(spec.bound)
    segment = spec.segment or max(1, n // 8)
    free = d - spec.dominant
    rates = 0.5 * _ladder(free, log_k)
    order = _switching_order(n, segment)
    top = max(abs(rates).max(), 1e-300)
    if spec.rate is not None:
        rates = rates * (spec.rate / top)
    else:
        # the free part of the period product stays within e^+-SWITCH_SPREAD
        net = max(abs(float(order.sum())), 1.0)
        rates = rates * min(1.0, SWITCH_SPREAD / (net * top))
    size = float(abs(rates).max())
    fast = log_k * (1.0 - SWITCH_JITTER * np.arange(spec.dominant)[::-1])
    frames = [_orthogonal(gen, d) for _j in range(n)]
    maps = []
    for j in range(n):
        logs = rates if order[j] > 0 else rates[::-1]
        jitter = SWITCH_JITTER * size * gen.uniform(-1.0, 1.0, free)
        maps.append(frames[(j + 1) % n]
                    @ np.diag(np.exp(np.concatenate((logs + jitter, fast))))
                    @ frames[j].T)
    cocycle = CyclicCocycle(maps)
    cocycle.metadata["segment"] = segment
    return cocycle


_GENERATORS = {
    "random_bounded": _random_bounded,
    "dominated": _dominated,
    "cancellation": _cancellation,
    "elliptic": _elliptic,
    "near_isometry": _near_isometry,
    "switching": _switching,
}


def generate(spec):
    """Cocycle described by a GeneratorSpec; same seed, same maps."""
    gen = rng(spec.seed)
    cocycle = _GENERATORS[spec.kind](spec, gen)
    cocycle.metadata["spec"] = spec.as_dict()
    LOG.debug(f"Generated {cocycle} from {spec}")
    return cocycle
