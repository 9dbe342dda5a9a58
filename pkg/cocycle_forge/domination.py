"""
Copyright (c) 2026 The cocycle-forge Authors

SPDX-License-Identifier: Apache-2.0

"""

import logging

import numpy as np

from cocycle_forge.cocycle import CyclicCocycle
from cocycle_forge import config
from cocycle_forge import constants
from cocycle_forge import exceptions
from cocycle_forge import spectrum
from cocycle_forge.subspace import intersect
from cocycle_forge.subspace import InvariantSplitting
from cocycle_forge.subspace import Subspace
from cocycle_forge.utils import power_of_two

LOG = logging.getLogger(__name__)

NO_SPLITTING = "no_invariant_splitting"


class DominationReport:
    def __init__(self, index, ell, worst_ratio, worst_phase, dominated,
                 reason=None):
        self.index = index
        self.ell = ell
        self.worst_ratio = worst_ratio
        self.worst_phase = worst_phase
        self.dominated = dominated
        self.reason = reason

    def as_dict(self):
        data = {
            "index": self.index,
            "ell": self.ell,
            "worst_ratio": self.worst_ratio,
            "worst_phase": self.worst_phase,
            "dominated": self.dominated,
        }
        if self.reason:
            data["reason"] = self.reason
        return data

    def __repr__(self):
        return (f"DominationReport(index={self.index}, ell={self.ell}, "
                f"worst_ratio={self.worst_ratio}, "
                f"dominated={self.dominated})")


class SplittingFinder:
    """Candidate splittings of a cocycle at every index.

    The fast flag comes from orthogonal iteration on the cocycle and the
    slow flag from the same iteration on its inverse; the slow bundle at
    index i is spanned by the first i slow frame vectors and the fast
    bundle by the first d - i fast ones.
    """

    def __init__(self, cocycle):
        self.cocycle = cocycle
        self.fast = spectrum.converge(cocycle)
        self.slow = spectrum.converge(cocycle.inverse())
        self.logmoduli = spectrum.period_logmoduli(self.fast)

    def _cut_state(self, i):
        d = self.cocycle.dim
        tol = config.get("tolerances", "cluster")
        # logmoduli are fastest first; the cut leaves i slow values below
        if abs(self.logmoduli[d - i - 1] - self.logmoduli[d - i]) <= tol:
            return False
        if (d - i) not in self.fast.cuts() or i not in self.slow.cuts():
            raise exceptions.NumericalError(
                f"Invariant subspaces at index {i} did not separate; "
                "moduli are distinct but too close to resolve",
                condition=float(np.exp(
                    self.logmoduli[d - i - 1] - self.logmoduli[d - i])))
        return True

    def slow_frame(self, phase):
        n = self.cocycle.period
        return self.slow.frames[(n - phase) % n]

    def fast_frame(self, phase):
        return self.fast.frames[phase % self.cocycle.period]

    def candidate(self, i):
        d = self.cocycle.dim
        if not 0 < i < d:
            raise exceptions.ArgumentError(f"Index {i} outside 1..{d - 1}")
        if not self._cut_state(i):
            return None
        bundles = []
        for j in range(self.cocycle.period):
            F = Subspace(self.slow_frame(j)[:, :i])
            G = Subspace(self.fast_frame(j)[:, :d - i])
            bundles.append([F, G])
        return InvariantSplitting(bundles, [i])


def candidate_splitting(cocycle, i):
    return SplittingFinder(cocycle).candidate(i)


def _restricted_blocks(cocycle, bundle):
    """Maps of the cocycle restricted to a per-phase invariant family."""
    n = cocycle.period
    return np.array([bundle[(j + 1) % n].basis.T @ cocycle[j]
                     @ bundle[j].basis for j in range(n)])


def _doubled(blocks, ell, inverse=False):
    """Log-norms of length-ell products starting at every phase."""
    n = blocks.shape[0]
    index = np.arange(n)
    mats = np.linalg.inv(blocks) if inverse else blocks.copy()
    scales = np.zeros(n)
    length = 1
    while length < ell:
        shifted = (index + length) % n
        if inverse:
            mats = np.matmul(mats, mats[shifted])
        else:
            mats = np.matmul(mats[shifted], mats)
        scales = scales + scales[shifted]
        peak = np.abs(mats).max(axis=(1, 2))
        mats = mats / peak[:, None, None]
        scales = scales + np.log(peak)
        length *= 2
    norms = np.linalg.norm(mats, ord=2, axis=(1, 2))
    return np.log(norms) + scales


def ratios(cocycle, splitting, ell):
    """Per-phase ||A^ell|F|| / m(A^ell|G) for a two-bundle splitting."""
    F = [phase[0] for phase in splitting.bundles]
    G = [phase[1] for phase in splitting.bundles]
    log_norm = _doubled(_restricted_blocks(cocycle, F), ell)
    log_conorm = -_doubled(_restricted_blocks(cocycle, G), ell, inverse=True)
    return np.exp(log_norm - log_conorm)


def raw_ratios(cocycle, splitting, ell):
    """Same ratios evaluated straight from the definition."""
    n = cocycle.period
    values = np.empty(n)
    for x in range(n):
        F = splitting.bundles[x][0].basis
        G = splitting.bundles[x][1].basis
        for k in range(ell):
            F = cocycle[x + k] @ F
            G = cocycle[x + k] @ G
        top = np.linalg.svd(F, compute_uv=False)[0]
        bottom = np.linalg.svd(G, compute_uv=False)[-1]
        values[x] = top / bottom
    return values


def check_domination(cocycle, i, ell, finder=None):
    if not power_of_two(ell):
        raise exceptions.ArgumentError(f"ell must be a power of two: {ell}")
    finder = finder or SplittingFinder(cocycle)
    splitting = finder.candidate(i)
    if splitting is None:
        return DominationReport(i, ell, None, None, False, NO_SPLITTING)
    values = ratios(cocycle, splitting, ell)
    worst = int(np.argmax(values))
    report = DominationReport(
        i, ell, float(values[worst]), worst,
        bool(values[worst] < constants.DOMINATION_THRESHOLD))
    LOG.debug(f"{report}")
    return report


def dominated_indices(cocycle, ell, finder=None):
    finder = finder or SplittingFinder(cocycle)
    return [i for i in range(1, cocycle.dim)
            if check_domination(cocycle, i, ell, finder).dominated]


def finest_splitting(cocycle, ell, finder=None):
    """Bundles cut at exactly the dominated indices, slowest first."""
    finder = finder or SplittingFinder(cocycle)
    d = cocycle.dim
    indices = dominated_indices(cocycle, ell, finder)
    cuts = [0] + indices + [d]
    bundles = []
    for j in range(cocycle.period):
        slow = finder.slow_frame(j)
        fast = finder.fast_frame(j)
        phase = []
        for lo, hi in zip(cuts[:-1], cuts[1:]):
            F = Subspace(slow[:, :hi])
            G = Subspace(fast[:, :d - lo])
            phase.append(intersect(F, G, dim=hi - lo))
        bundles.append(phase)
    LOG.debug(f"Finest {ell}-dominated splitting cuts at {indices}")
    return InvariantSplitting(bundles, indices, ell=ell)


def domination_threshold(cocycle, i, ell=1, cap=None, finder=None):
    """Smallest power of two L >= ell at which index i is dominated."""
    cap = cap or config.get("domination", "threshold_cap")
    finder = finder or SplittingFinder(cocycle)
    length = ell
    while length <= cap:
        if check_domination(cocycle, i, length, finder).dominated:
            return length
        length *= 2
    return None


def _complements(F):
    return [f.complement() for f in F]


def _check_family(cocycle, F):
    if len(F) != cocycle.period:
        raise exceptions.ArgumentError(
            f"Expected {cocycle.period} subspaces, got {len(F)}")
    dims = {f.dim for f in F}
    if len(dims) != 1 or F[0].ambient_dim != cocycle.dim:
        raise exceptions.ArgumentError("Subspace family has mixed dimensions.")


def invariance_residual(cocycle, F):
    """Largest relative component of A_j F(j) outside F(j+1)."""
    n = cocycle.period
    worst = 0.0
    for j in range(n):
        image = cocycle[j] @ F[j].basis
        outside = image - F[(j + 1) % n].projector() @ image
        worst = max(worst, np.linalg.norm(outside, 2)
                    / np.linalg.norm(cocycle[j], 2))
    return worst


def restrict_and_quotient(cocycle, F):
    """(A|F, A/F) in orthonormal coordinates of F and its complement."""
    _check_family(cocycle, F)
    residual = invariance_residual(cocycle, F)
    if residual > config.get("tolerances", "invariance"):
        raise exceptions.InvarianceError(
            f"Subspace family is not invariant (residual {residual:.3e})")
    complements = _complements(F)
    restricted = _restricted_blocks(cocycle, F)
    quotient = _restricted_blocks(cocycle, complements)
    return (CyclicCocycle(restricted, validate=False),
            CyclicCocycle(quotient, validate=False))


RESTRICTED = "restricted"
QUOTIENT = "quotient"


def extend_over(cocycle, F, replacement, which):
    """Replace the restricted or quotient block, keeping the coupling."""
    _check_family(cocycle, F)
    k = F[0].dim
    size = k if which == RESTRICTED else cocycle.dim - k
    if which not in (RESTRICTED, QUOTIENT):
        raise exceptions.ArgumentError(f"Unknown block {which!r}")
    if replacement.period != cocycle.period or replacement.dim != size:
        raise exceptions.ArgumentError(
            f"Replacement must have period {cocycle.period} and "
            f"dimension {size}")
    n = cocycle.period
    frames = [np.column_stack([f.basis, c.basis])
              for f, c in zip(F, _complements(F))]
    maps = []
    for j in range(n):
        block = frames[(j + 1) % n].T @ cocycle[j] @ frames[j]
        block[k:, :k] = 0.0
        if which == RESTRICTED:
            block[:k, :k] = replacement[j]
        else:
            block[k:, k:] = replacement[j]
        maps.append(frames[(j + 1) % n] @ block @ frames[j].T)
    return CyclicCocycle(maps)
