"""
Copyright (c) 2026 The cocycle-forge Authors

SPDX-License-Identifier: Apache-2.0

"""

import logging
import math

import numpy as np
import scipy.linalg

from cocycle_forge.cocycle import accumulate
from cocycle_forge.cocycle import period_product
from cocycle_forge import config
from cocycle_forge import exceptions
from cocycle_forge.graph import LyapunovGraph
from cocycle_forge.utils import qr_positive

LOG = logging.getLogger(__name__)


def _initial_frame(cocycle):
    """Orthonormal basis adapted to the eigenvectors of A^n, fastest first.

    Only a starting guess; the sweeps make it exact.
    """
    product = period_product(cocycle)
    with np.errstate(all="ignore"):
        values, vectors = np.linalg.eig(product.normalized())
    if not np.all(np.isfinite(vectors)):
        return np.eye(cocycle.dim)
    order = np.argsort(-np.abs(values), kind="stable")
    columns = []
    skip = set()
    for k in order:
        if k in skip:
            continue
        v = vectors[:, k]
        if abs(values[k].imag) > 0.0:
            columns.extend([v.real, v.imag])
            partner = np.argmin(np.abs(values - np.conj(values[k])))
            skip.add(int(partner))
        else:
            columns.append(v.real)
    basis = np.column_stack(columns[:cocycle.dim])
    q, r = np.linalg.qr(basis)
    if np.min(np.abs(np.diag(r))) < 1e-12:
        return np.eye(cocycle.dim)
    return q


def _partition(u, tol):
    """Blocks [start, stop) of u that are decoupled from the rest."""
    d = u.shape[0]
    cuts = [0]
    for c in range(1, d):
        if np.max(np.abs(u[c:, :c])) < tol:
            cuts.append(c)
    cuts.append(d)
    return list(zip(cuts[:-1], cuts[1:]))


class Sweep:
    """One converged pass of orthogonal iteration around the orbit.

    frames[j] is the orthonormal frame at phase j (frames[n] is the
    frame reached after a full turn) and A_j frames[j] =
    frames[j+1] factors[j] with factors upper triangular.
    """

    def __init__(self, cocycle, frames, factors, blocks, logmoduli):
        self.cocycle = cocycle
        self.frames = frames
        self.factors = factors
        self.blocks = blocks
        self.logmoduli = logmoduli

    @property
    def turn(self):
        """frames[0]^T frames[n], block diagonal at convergence."""
        return self.frames[0].T @ self.frames[-1]

    def block_product(self, start, stop):
        """Normalized product of the diagonal blocks and its log-scale."""
        blocks = [f[start:stop, start:stop] for f in self.factors]
        q, r, logscale = accumulate(blocks)
        return q @ r, logscale

    def cuts(self):
        return [start for start, _stop in self.blocks[1:]]

    def resolution(self):
        """Estimated worst exponent error and worst ||block|| / |eigenvalue|.

        First-order eigenvalue perturbation at machine precision, capped
        by the Hoelder bound of a Jordan block of the same size.
        """
        machine = np.finfo(float).eps
        u = self.turn
        error, condition = 0.0, 1.0
        for start, stop in self.blocks:
            size = stop - start
            if size == 1:
                continue
            product, _scale = self.block_product(start, stop)
            matrix = u[start:stop, start:stop] @ product
            values, left, right = scipy.linalg.eig(matrix, left=True,
                                                   right=True)
            moduli = np.abs(values)
            if not np.all(moduli > 0.0):
                return math.inf, math.inf
            ratio = np.linalg.norm(matrix, 2) / moduli
            overlap = np.abs(np.einsum("ij,ij->j", left.conj(), right))
            with np.errstate(divide="ignore"):
                first = machine * ratio / overlap
            holder = machine ** (1.0 / size) * ratio
            error = max(error, float(np.max(np.minimum(first, holder))))
            condition = max(condition, float(np.max(ratio)))
        return error / self.cocycle.period, condition


def _block_logmoduli(sweep_frames, factors, blocks):
    u = sweep_frames[0].T @ sweep_frames[-1]
    values = []
    for start, stop in blocks:
        q, r, logscale = accumulate(
            [f[start:stop, start:stop] for f in factors])
        turn = u[start:stop, start:stop]
        try:
            eigs = np.linalg.eigvals(turn @ q @ r)
        except np.linalg.LinAlgError as error:
            raise exceptions.NumericalError(
                f"Eigenvalue computation failed on block "
                f"[{start}, {stop}): {error}",
                condition=float(np.linalg.cond(r)))
        with np.errstate(divide="ignore"):
            values.append(np.sort(np.log(np.abs(eigs)))[::-1] + logscale)
    return values


def converge(cocycle, max_sweeps=None, stable_sweeps=None, tol=None):
    """Run orthogonal iteration until the block structure settles."""
    max_sweeps = max_sweeps or config.get("iteration", "max_sweeps")
    stable_sweeps = stable_sweeps or config.get("iteration", "stable_sweeps")
    tol = tol or config.get("tolerances", "decouple")
    n = cocycle.period

    q = _initial_frame(cocycle)
    previous = None
    stable = 0
    for sweep in range(max_sweeps):
        frames = [q]
        factors = []
        for j in range(n):
            q, r = qr_positive(cocycle[j] @ q)
            frames.append(q)
            factors.append(r)
        blocks = _partition(frames[0].T @ frames[-1], tol)
        logmoduli = _block_logmoduli(frames, factors, blocks)
        flat = np.concatenate(logmoduli)
        if previous is not None and previous[0] == blocks and \
                np.max(np.abs(previous[1] - flat)) <= \
                1e-12 * max(1.0, np.max(np.abs(flat))):
            stable += 1
            if stable >= stable_sweeps:
                break
        else:
            stable = 0
        previous = (blocks, flat)
    else:
        LOG.debug(f"Orthogonal iteration stopped after {max_sweeps} sweeps "
                  f"with blocks {blocks}")
    if not np.all(np.isfinite(flat)):
        raise exceptions.NumericalError(
            "Non-finite eigenvalue modulus in period product")
    result = Sweep(cocycle, frames, factors, blocks, logmoduli)
    error, condition = result.resolution()
    limit = config.get("tolerances", "resolvable")
    if error > limit:
        raise exceptions.NumericalError(
            f"Period product is too non-normal to resolve its exponents "
            f"(estimated error {error:.2e} above {limit:.1e})",
            condition=condition)
    return result


def clusters(logmoduli, tol=None):
    """Group sorted (descending) log-moduli within tol as (start, stop)."""
    tol = tol or config.get("tolerances", "cluster")
    groups = []
    start = 0
    for k in range(1, len(logmoduli) + 1):
        if k == len(logmoduli) or \
                abs(logmoduli[k] - logmoduli[k - 1]) > tol:
            groups.append((start, k))
            start = k
    return groups


def period_logmoduli(sweep):
    """All log-moduli of A^n, fastest first, clustered values averaged."""
    values = np.sort(np.concatenate(sweep.logmoduli))[::-1]
    for start, stop in clusters(values):
        values[start:stop] = values[start:stop].mean()
    return values


def lyapunov_spectrum(cocycle, sweep=None):
    """Ascending Lyapunov exponents."""
    sweep = sweep or converge(cocycle)
    return period_logmoduli(sweep)[::-1] / cocycle.period


def lyapunov_graph(cocycle, sweep=None):
    exponents = lyapunov_spectrum(cocycle, sweep)
    sigma = np.concatenate(([0.0], np.cumsum(exponents)))
    sigma[-1] = cocycle.log_det() / cocycle.period
    return LyapunovGraph(sigma)


def has_real_spectrum(cocycle, sweep=None, tol=1e-12):
    """True if every eigenvalue of the period product is real."""
    sweep = sweep or converge(cocycle)
    u = sweep.turn
    for start, stop in sweep.blocks:
        if stop - start == 1:
            continue
        product, _scale = sweep.block_product(start, stop)
        matrix = u[start:stop, start:stop] @ product
        if stop - start == 2:
            if discriminant(matrix) < -tol:
                return False
            continue
        eigs = np.linalg.eigvals(matrix / np.abs(matrix).max())
        if np.any(np.abs(eigs.imag) > 1e-6 * np.abs(eigs).max()):
            return False
    return True


def discriminant(matrix):
    """tr^2 - 4 det of a 2 x 2 matrix scaled to |det| = 1."""
    det = np.linalg.det(matrix)
    if det == 0.0:
        return 0.0
    scaled = matrix / math.sqrt(abs(det))
    return float(np.trace(scaled) ** 2 - 4.0 * math.copysign(1.0, det))


def spectral_radius_log(matrix):
    """log rho(matrix), or -inf for nilpotent input."""
    rho = np.max(np.abs(np.linalg.eigvals(matrix)))
    return math.log(rho) if rho > 0 else -math.inf
