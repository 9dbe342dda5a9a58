"""
Copyright (c) 2026 The cocycle-forge Authors

SPDX-License-Identifier: Apache-2.0

"""

import numpy as np

from cocycle_forge import config
from cocycle_forge import exceptions


class LyapunovGraph:
    """Convex graph of partial sums of ascending Lyapunov exponents.

    sigma[0] is always 0 and sigma[i] is the sum of the i smallest
    exponents, so sigma[d] is the mean log-determinant.
    """

    def __init__(self, sigma, tol=None, validate=True):
        sigma = np.array(sigma, dtype=float)
        if sigma.ndim != 1 or sigma.size < 2:
            raise exceptions.ArgumentError(
                "A graph needs at least two coordinates.")
        if not np.all(np.isfinite(sigma)):
            raise exceptions.ArgumentError("Graph coordinates must be finite.")
        if validate:
            if tol is None:
                tol = config.get("tolerances", "convexity")
            if abs(sigma[0]) > tol:
                raise exceptions.ArgumentError(
                    f"Graph must start at 0, got {sigma[0]!r}")
            second = np.diff(sigma, 2)
            if second.size and second.min() < -tol:
                worst = int(np.argmin(second))
                raise exceptions.ArgumentError(
                    f"Graph is not convex at {worst + 1} "
                    f"(second difference {second[worst]:.3e})")
        sigma[0] = 0.0
        sigma.setflags(write=False)
        self.sigma = sigma

    @classmethod
    def from_exponents(cls, exponents, **kwargs):
        exponents = np.sort(np.asarray(exponents, dtype=float))
        return cls(np.concatenate(([0.0], np.cumsum(exponents))), **kwargs)

    @property
    def dim(self):
        return self.sigma.size - 1

    @property
    def exponents(self):
        return np.diff(self.sigma)

    def second_differences(self):
        return np.diff(self.sigma, 2)

    def replace(self, index, value):
        sigma = self.sigma.copy()
        sigma[index] = value
        return LyapunovGraph(sigma)

    def distance(self, other):
        """Sup-norm distance."""
        if self.dim != other.dim:
            raise exceptions.ArgumentError(
                f"Dimension mismatch: {self.dim} != {other.dim}")
        return float(np.max(np.abs(self.sigma - other.sigma)))

    def __len__(self):
        return self.sigma.size

    def __getitem__(self, i):
        return float(self.sigma[i])

    def __iter__(self):
        return iter(self.sigma.tolist())

    def __repr__(self):
        values = ", ".join(f"{v:.6g}" for v in self.sigma)
        return f"LyapunovGraph({values})"


def top_sums(graph):
    """L_i = sigma_d - sigma_{d-i}: the sum of the i largest exponents."""
    sigma = graph.sigma
    return sigma[-1] - sigma[::-1]


def area(graph, other):
    """Sum of coordinate gaps other - graph over the interior."""
    return float(np.sum(other.sigma[1:-1] - graph.sigma[1:-1]))
