"""
Copyright (c) 2026 The cocycle-forge Authors

SPDX-License-Identifier: Apache-2.0

"""

import logging

import numpy as np

from cocycle_forge.cocycle import accumulate
from cocycle_forge.cocycle import CyclicCocycle
from cocycle_forge import exceptions
from cocycle_forge import spectrum
from cocycle_forge.subspace import Subspace
from cocycle_forge.utils import qr_positive

LOG = logging.getLogger(__name__)

FAST_FIRST = "fast_first"
SLOW_FIRST = "slow_first"


def _triangularizer(matrix, descending=True):
    """Orthogonal Z with Z^T matrix Z upper triangular.

    matrix must have real spectrum; eigenvalues are deflated one at a
    time in order of modulus.
    """
    k = matrix.shape[0]
    z = np.eye(k)
    work = matrix.copy()
    for s in range(k - 1):
        sub = work[s:, s:]
        values, vectors = np.linalg.eig(sub)
        key = np.abs(values) if descending else -np.abs(values)
        pick = int(np.lexsort((values.real, key))[-1])
        v = vectors[:, pick].real
        norm = np.linalg.norm(v)
        if norm == 0.0:
            raise exceptions.NumericalError(
                "Degenerate eigenvector while triangularizing a cluster")
        v = v / norm
        basis, _r = np.linalg.qr(np.column_stack([v, np.eye(k - s)]))
        step = np.eye(k)
        step[s:, s:] = basis
        work = step.T @ work @ step
        z = z @ step
    return z


class FlagFrame:
    """Orthonormal frames in which the cocycle is block upper triangular.

    blocks[j] = frames[j+1]^T A_j frames[j] (frames wrap around the
    orbit). Diagonal blocks are 1 x 1 for real eigenvalues and 2 x 2 for
    complex pairs; positions are ordered fastest first or slowest first.
    """

    def __init__(self, cocycle, frames, blocks, partition, logmoduli,
                 order, residual=0.0):
        self.cocycle = cocycle
        self.frames = frames
        self.blocks = blocks
        self.partition = partition
        self.logmoduli = logmoduli
        self.order = order
        self.residual = residual

    @classmethod
    def build(cls, cocycle, order=FAST_FIRST, sweep=None):
        if order == FAST_FIRST:
            frame = cls._fast_first(cocycle, sweep)
        elif order == SLOW_FIRST:
            frame = cls._slow_first(cocycle)
        else:
            raise exceptions.ArgumentError(f"Unknown flag order {order!r}")
        frame._triangularize_clusters()
        return frame

    @classmethod
    def _fast_first(cls, cocycle, sweep=None):
        sweep = sweep or spectrum.converge(cocycle)
        n = cocycle.period
        frames = list(sweep.frames[:n])
        blocks = [f.copy() for f in sweep.factors]
        blocks[-1] = sweep.turn @ sweep.factors[-1]
        logmoduli = np.concatenate(sweep.logmoduli)
        return cls(cocycle, frames, blocks, list(sweep.blocks), logmoduli,
                   FAST_FIRST)

    @classmethod
    def _slow_first(cls, cocycle):
        # the inverse cocycle runs the orbit backwards; its fastest
        # directions are our slowest
        sweep = spectrum.converge(cocycle.inverse())
        n = cocycle.period
        frames = [sweep.frames[(n - j) % n] for j in range(n)]
        blocks = [None] * n
        for j in range(1, n):
            blocks[j] = np.linalg.inv(sweep.factors[n - 1 - j])
        blocks[0] = np.linalg.inv(sweep.factors[n - 1]) @ sweep.turn.T
        logmoduli = -np.concatenate(sweep.logmoduli)
        return cls(cocycle, frames, blocks, list(sweep.blocks), logmoduli,
                   SLOW_FIRST)

    @property
    def dim(self):
        return self.cocycle.dim

    @property
    def period(self):
        return self.cocycle.period

    def block_product(self, start, stop):
        """Normalized product of one diagonal block over a full turn."""
        q, r, logscale = accumulate(
            [b[start:stop, start:stop] for b in self.blocks])
        return q @ r, logscale

    def is_complex(self, start, stop):
        if stop - start == 1:
            return False
        product, _scale = self.block_product(start, stop)
        if stop - start == 2:
            return spectrum.discriminant(product) < -1e-12
        eigs = np.linalg.eigvals(product)
        return bool(np.any(np.abs(eigs.imag) > 1e-6 * np.abs(eigs).max()))

    def _triangularize_clusters(self):
        n = self.period
        partition = []
        for start, stop in self.partition:
            if stop - start == 1 or self.is_complex(start, stop):
                partition.append((start, stop))
                continue
            product, _scale = self.block_product(start, stop)
            z = _triangularizer(product, descending=self.order == FAST_FIRST)
            zs = [z]
            for j in range(n - 1):
                zj, _r = qr_positive(self.blocks[j][start:stop, start:stop]
                                     @ zs[-1])
                zs.append(zj)
            for j in range(n):
                left = np.eye(self.dim)
                right = np.eye(self.dim)
                left[start:stop, start:stop] = zs[(j + 1) % n]
                right[start:stop, start:stop] = zs[j]
                self.blocks[j] = left.T @ self.blocks[j] @ right
                frame = self.frames[j].copy()
                frame[:, start:stop] = frame[:, start:stop] @ zs[j]
                self.frames[j] = frame
            LOG.debug(f"Triangularized real cluster [{start}, {stop})")
            partition.extend((k, k + 1) for k in range(start, stop))
        self.partition = partition
        self._clean()

    def _clean(self):
        """Zero everything below the block diagonal, recording the size."""
        owner = np.empty(self.dim, dtype=int)
        for number, (start, stop) in enumerate(self.partition):
            owner[start:stop] = number
        mask = owner[:, None] > owner[None, :]
        residual = 0.0
        for j, block in enumerate(self.blocks):
            scale = np.abs(block).max()
            residual = max(residual, np.abs(block[mask]).max(initial=0.0)
                           / scale)
            block = block.copy()
            block[mask] = 0.0
            self.blocks[j] = block
        self.residual = float(residual)

    def exponents(self):
        """Per-position Lyapunov exponents, in frame order."""
        values = np.empty(self.dim)
        for start, stop in self.partition:
            product, logscale = self.block_product(start, stop)
            moduli = np.abs(np.linalg.eigvals(product))
            values[start:stop] = np.log(moduli).mean() + logscale
        return values / self.period

    def pair_position(self, i):
        """First frame position of the plane carrying lambda_i, lambda_i+1."""
        if not 0 < i < self.dim:
            raise exceptions.ArgumentError(
                f"Index {i} outside 1..{self.dim - 1}")
        if self.order == FAST_FIRST:
            return self.dim - i - 1
        return i - 1

    def subspace(self, phase, k):
        """Span of the first k frame vectors at the phase."""
        return Subspace(self.frames[phase % self.period][:, :k])

    def subquotient(self, start, stop):
        """Cocycle induced on span(k < stop) / span(k < start)."""
        return CyclicCocycle([b[start:stop, start:stop] for b in self.blocks],
                             validate=False)

    def replace_block(self, start, stop, changes):
        """Cocycle whose diagonal block [start, stop) is replaced.

        changes maps a phase to its new block; other phases keep their
        original maps untouched.
        """
        n = self.period
        updated = {}
        for phase, matrix in changes.items():
            phase %= n
            delta = np.zeros((self.dim, self.dim))
            delta[start:stop, start:stop] = \
                matrix - self.blocks[phase][start:stop, start:stop]
            updated[phase] = self.cocycle[phase] + \
                self.frames[(phase + 1) % n] @ delta @ self.frames[phase].T
        return self.cocycle.replace(updated)

    def replace_diagonal(self, changes):
        """Cocycle whose full triangular blocks are replaced at phases."""
        n = self.period
        updated = {}
        for phase, matrix in changes.items():
            phase %= n
            delta = matrix - self.blocks[phase]
            updated[phase] = self.cocycle[phase] + \
                self.frames[(phase + 1) % n] @ delta @ self.frames[phase].T
        return self.cocycle.replace(updated)
