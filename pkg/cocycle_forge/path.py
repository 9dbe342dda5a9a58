"""
Copyright (c) 2026 The cocycle-forge Authors

SPDX-License-Identifier: Apache-2.0

"""

import logging
import math

import numpy as np

from cocycle_forge import config
from cocycle_forge import exceptions
from cocycle_forge.spectrum import lyapunov_graph

LOG = logging.getLogger(__name__)


class PerturbationPath:
    """Discretized family A_t starting at base, with per-sample graphs."""

    def __init__(self, base, eps_bound, graph=None):
        self.base = base
        self.eps_bound = eps_bound
        self.samples = [base]
        self._graphs = [graph]

    def append(self, cocycle, graph=None):
        self.samples.append(cocycle)
        self._graphs.append(graph)

    def extend(self, other):
        """Append the samples of a path that starts where this one ends."""
        drift = np.max(self.end.deviation(other.base))
        if drift > 1e-12 * max(1.0, self.end.bound):
            raise exceptions.ArgumentError(
                f"Paths do not join (gap {drift:.3e})")
        for sample, graph in zip(other.samples[1:], other._graphs[1:]):
            self.append(sample, graph)

    @property
    def end(self):
        return self.samples[-1]

    @property
    def graphs(self):
        for k, graph in enumerate(self._graphs):
            if graph is None:
                self._graphs[k] = lyapunov_graph(self.samples[k])
        return self._graphs

    def __len__(self):
        return len(self.samples)

    def deviations(self):
        """Max over phases of ||A_t - A_0|| for every sample."""
        return np.array([np.max(self.base.deviation(s))
                         for s in self.samples])

    def usage(self):
        """Per-phase max deviation from the base over all samples."""
        used = np.zeros(self.base.period)
        for sample in self.samples:
            used = np.maximum(used, self.base.deviation(sample))
        return used

    def steps(self):
        """Max over phases of the change between consecutive samples."""
        return np.array([np.max(a.deviation(b)) for a, b
                         in zip(self.samples, self.samples[1:])])

    def verify(self, slack=1e-12):
        worst = float(np.max(self.deviations()))
        if worst > self.eps_bound + slack:
            raise exceptions.CapabilityError(
                f"Path leaves the {self.eps_bound:g} budget "
                f"(max deviation {worst:.6g})", partial=self)
        division = config.get("engine", "discretization")
        if len(self) > 1:
            step = float(np.max(self.steps()))
            if step > self.eps_bound / division + slack:
                raise exceptions.CapabilityError(
                    f"Consecutive samples differ by {step:.3e}",
                    partial=self)
        return worst


def sample_count(deviation, eps):
    """Samples needed so consecutive ones differ by at most eps/16."""
    division = config.get("engine", "discretization")
    if deviation <= 0.0:
        return 1
    return max(2, math.ceil(1.5 * division * deviation / eps) + 1)


class EngineSchedule:
    """Budgets and domination scales used by one engine run."""

    def __init__(self, eps):
        self.eps = eps
        self.eps_ladder = []
        self.ell_ladder = []
        self.stability_margins = []

    def rung(self, eps, ell, eta=None):
        if self.eps_ladder and eps > self.eps_ladder[-1]:
            eps = self.eps_ladder[-1]
        if self.ell_ladder and ell < self.ell_ladder[-1]:
            ell = self.ell_ladder[-1]
        self.eps_ladder.append(eps)
        self.ell_ladder.append(ell)
        self.stability_margins.append(eta)
        LOG.debug(f"Schedule rung {len(self.eps_ladder)}: eps={eps:.3g} "
                  f"ell={ell} eta={eta}")
