"""
Copyright (c) 2026 The cocycle-forge Authors

SPDX-License-Identifier: Apache-2.0

"""

import logging
import math

import numpy as np

from cocycle_forge import config
from cocycle_forge import domination
from cocycle_forge import exceptions
from cocycle_forge.graph import LyapunovGraph
from cocycle_forge import majorization
from cocycle_forge.mixing import default_ell
from cocycle_forge.mixing import mix_two_exponents
from cocycle_forge.path import EngineSchedule
from cocycle_forge.path import PerturbationPath
from cocycle_forge.realify import make_eigenvalues_real
from cocycle_forge import spectrum
from cocycle_forge.triangular import adjust_spectrum

LOG = logging.getLogger(__name__)

# drift allowed on coordinates that must not move
PIN_TOL = 1e-8
ENDPOINT_TOL = 1e-9
MONOTONE_TOL = 1e-9
FINAL_TOL = 1e-6


def _check_target(graph, target):
    if target.dim != graph.dim:
        raise exceptions.ArgumentError(
            f"Target has dimension {target.dim}, cocycle {graph.dim}")
    order = majorization.majorization_cmp(graph, target, tol=ENDPOINT_TOL)
    if order == majorization.Order.ENDPOINT_MISMATCH:
        raise exceptions.OrderError(
            f"Target endpoint {target.sigma[-1]!r} differs from "
            f"sigma_d = {graph.sigma[-1]!r}")
    if order not in (majorization.Order.A_BELOW, majorization.Order.EQUAL):
        raise exceptions.OrderError(
            "Target does not lie above the current graph")


def pinned_indices(cocycle, graph, target, ell, finder=None):
    """Indices of the finest ell-dominated splitting; target must keep them."""
    indices = domination.dominated_indices(cocycle, ell, finder)
    for i in indices:
        if abs(target.sigma[i] - graph.sigma[i]) > PIN_TOL:
            raise exceptions.PinningError(
                f"sigma_{i} is pinned by the {ell}-dominated splitting "
                f"({graph.sigma[i]!r} -> {target.sigma[i]!r})")
    return indices


def _check_index(graph, target):
    p = majorization.graph_index(graph)
    q = majorization.graph_index(target)
    if p is None or p != q:
        raise exceptions.GraphIndexError(
            f"Graph index {p} cannot be preserved toward a target of "
            f"index {q}")
    return p


def _segment_moves(graph, target, delta, lo, hi, preserve):
    base = graph.sigma[lo]
    low = graph.sigma[lo:hi + 1] - base
    high = np.maximum(target.sigma[lo:hi + 1] - base, low)
    # pinned ends agree up to PIN_TOL; plan between identical ends
    high[0], high[-1] = low[0], low[-1]
    src = LyapunovGraph(low, validate=False)
    dst = LyapunovGraph(high, validate=False)
    if dst.distance(src) <= ENDPOINT_TOL:
        return []
    plan = majorization.zigzag_path(src, dst, delta, preserve_index=preserve)
    return [(lo + i, base + after.sigma[i])
            for i, _before, after in plan.steps()]


def plan_moves(graph, target, delta, pinned=(), preserve_index=False):
    """(index, new sigma_index) moves, one bundle after another."""
    cuts = sorted(set(pinned) | {0, graph.dim})
    p = majorization.graph_index(graph) if preserve_index else None
    moves = []
    for lo, hi in zip(cuts[:-1], cuts[1:]):
        if hi - lo < 2:
            continue
        preserve = p is not None and lo < p < hi
        moves.extend(_segment_moves(graph, target, delta, lo, hi, preserve))
    return moves


def _monotone(path):
    graphs = path.graphs
    for k, (before, after) in enumerate(zip(graphs, graphs[1:])):
        if np.any(after.sigma < before.sigma - MONOTONE_TOL):
            raise exceptions.NumericalError(
                f"Graph decreased between samples {k} and {k + 1}")


class _Raise:
    """One attempt of the realify, zigzag, mix, adjust pipeline."""

    def __init__(self, cocycle, target, eps, fraction, ell, pinned,
                 preserve_index, schedule):
        self.cocycle = cocycle
        self.target = target
        self.eps = eps
        self.fraction = fraction
        self.ell = ell
        self.pinned = pinned
        self.preserve_index = preserve_index
        self.schedule = schedule
        engine = config.settings()["engine"]
        self.reserve = engine["adjust_share"] * eps
        self.realify_cap = engine["realify_share"] * eps

    def _check_pins(self, graph, current):
        actual = spectrum.lyapunov_graph(current)
        for i in self.pinned:
            if abs(actual.sigma[i] - graph.sigma[i]) > PIN_TOL:
                raise exceptions.PinningError(
                    f"Pinned sigma_{i} drifted by "
                    f"{abs(actual.sigma[i] - graph.sigma[i]):.3e}")

    def run(self):
        graph = spectrum.lyapunov_graph(self.cocycle)
        n = self.cocycle.period
        path = PerturbationPath(self.cocycle, self.eps, graph)
        budget = np.full(n, float(self.eps))

        real = make_eigenvalues_real(self.cocycle, self.eps,
                                     budget=np.minimum(budget,
                                                       self.realify_cap))
        path.extend(real)
        budget = budget - real.usage()
        current = real.end

        direct = self._direct(current, budget)
        if direct is not None:
            LOG.info("Target within reach of the triangular adjustment")
            if self.pinned:
                self._check_pins(graph, direct.end)
            path.extend(direct)
            return path

        delta = 0.5 * math.log1p(self.reserve / current.bound)
        moves = plan_moves(graph, self.target, delta, self.pinned,
                           self.preserve_index)
        LOG.info(f"Raising through {len(moves)} moves (delta={delta:.3e})")
        for i, value in moves:
            spare = np.maximum(budget - self.reserve, 0.0) * self.fraction
            step = mix_two_exponents(current, i, self.eps, ell=self.ell,
                                     stop_at=self._stop(path, i, value),
                                     budget=spare)
            used = step.usage()
            self.schedule.rung(float(spare.max()), self.ell,
                               float(used.max()))
            path.extend(step)
            budget = budget - used
            current = step.end
            if self.pinned:
                self._check_pins(graph, current)

        final = adjust_spectrum(current, self.target, self.eps,
                                budget=np.maximum(budget, 0.0),
                                tol=FINAL_TOL)
        path.extend(final)
        return path

    def _direct(self, current, budget):
        """Adjustment straight to the target, or None if out of reach."""
        try:
            return adjust_spectrum(current, self.target, self.eps,
                                   budget=np.maximum(budget, 0.0),
                                   tol=FINAL_TOL)
        except exceptions.RangeError:
            return None

    @staticmethod
    def _stop(path, i, value):
        sigma = path.graphs[-1].sigma
        return min(value, 0.5 * (sigma[i - 1] + sigma[i + 1]))


def _raise_in_subbundle(cocycle, target, eps, subbundle, **options):
    restricted, quotient = domination.restrict_and_quotient(cocycle,
                                                           subbundle)
    inner = raise_graph(restricted, target, eps, **options)
    outer = spectrum.lyapunov_graph(quotient).exponents
    path = PerturbationPath(cocycle, eps)
    for sample, graph in zip(inner.samples[1:], inner.graphs[1:]):
        path.append(domination.extend_over(cocycle, subbundle, sample,
                                           domination.RESTRICTED),
                    LyapunovGraph.from_exponents(
                        np.concatenate((graph.exponents, outer))))
    path.schedule = getattr(inner, "schedule", None)
    path.verify()
    return path


def raise_graph(cocycle, target, eps, respect_finest=None, subbundle=None,
                preserve_index=False):
    """Path raising the Lyapunov graph of cocycle up to target.

    respect_finest=ell keeps the finest ell-dominated splitting's
    coordinates fixed; subbundle=F (an invariant subspace family)
    changes only the restriction to F, with target the graph wanted for
    that restriction; preserve_index keeps the index of every sample.
    """
    if eps <= 0.0:
        raise exceptions.ArgumentError("eps must be positive")
    if subbundle is not None:
        return _raise_in_subbundle(cocycle, target, eps, subbundle,
                                   respect_finest=respect_finest,
                                   preserve_index=preserve_index)
    graph = spectrum.lyapunov_graph(cocycle)
    _check_target(graph, target)
    finder = domination.SplittingFinder(cocycle) if respect_finest else None
    pinned = pinned_indices(cocycle, graph, target, respect_finest,
                            finder) if respect_finest else []
    if preserve_index:
        _check_index(graph, target)
    if target.distance(graph) <= ENDPOINT_TOL:
        return PerturbationPath(cocycle, eps, graph)

    ell = respect_finest or default_ell(cocycle.period)
    fraction = 1.0
    failure = None
    for attempt in range(config.get("engine", "max_retries") + 1):
        schedule = EngineSchedule(eps)
        try:
            path = _Raise(cocycle, target, eps, fraction, ell, pinned,
                          preserve_index, schedule).run()
        except exceptions.CapabilityError as error:
            failure = error
            fraction *= 0.5
            LOG.info(f"Attempt {attempt + 1} ran out of budget ({error}); "
                     f"retrying with per-step share {fraction:g}")
            continue
        final = spectrum.lyapunov_graph(path.end)
        if final.distance(target) > FINAL_TOL:
            raise exceptions.NumericalError(
                f"Raised graph misses the target by "
                f"{final.distance(target):.3e}")
        _monotone(path)
        if preserve_index:
            p = majorization.graph_index(graph)
            if any(majorization.graph_index(g, tol=0.0) != p
                   for g in path.graphs):
                raise exceptions.NumericalError("Graph index changed")
        path.verify()
        path.schedule = schedule
        return path
    raise failure
