"""
Copyright (c) 2026 The cocycle-forge Authors

SPDX-License-Identifier: Apache-2.0

"""

import numpy as np
import scipy.linalg

from cocycle_forge import config
from cocycle_forge import exceptions


class Subspace:
    """Linear subspace of R^d held by an orthonormal basis."""

    def __init__(self, basis, orthonormalize=False, tol=None):
        basis = np.array(basis, dtype=float)
        if basis.ndim == 1:
            basis = basis[:, None]
        if orthonormalize:
            basis = scipy.linalg.orth(basis)
        if basis.shape[1] > basis.shape[0]:
            raise exceptions.ArgumentError(
                "Subspace basis has more columns than rows.")
        gram = basis.T @ basis
        error = np.max(np.abs(gram - np.eye(basis.shape[1]))) \
            if basis.shape[1] else 0.0
        if error > (tol or config.get("tolerances", "orthonormal")):
            raise exceptions.ArgumentError(
                f"Subspace basis is not orthonormal (error {error:.3e})")
        basis.setflags(write=False)
        self.basis = basis

    @classmethod
    def span(cls, *vectors):
        return cls(np.column_stack(vectors), orthonormalize=True)

    @property
    def ambient_dim(self):
        return self.basis.shape[0]

    @property
    def dim(self):
        return self.basis.shape[1]

    def projector(self):
        return self.basis @ self.basis.T

    def complement(self):
        if self.dim == 0:
            return Subspace(np.eye(self.ambient_dim))
        return Subspace(scipy.linalg.null_space(self.basis.T))

    def image(self, matrix):
        """The subspace matrix @ self."""
        return Subspace(matrix @ self.basis, orthonormalize=True)

    def quotient(self, other):
        """self / other, as the projection of self onto other's complement."""
        projected = other.complement().projector() @ self.basis
        return Subspace(projected, orthonormalize=True)

    def distance(self, other):
        """Gap metric: norm of the projector difference."""
        if self.dim != other.dim:
            return 1.0
        return float(np.linalg.norm(self.projector() - other.projector(), 2))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"


def principal_angle(F, G):
    """Smallest principal angle between F and G, in radians."""
    if F.dim == 0 or G.dim == 0:
        raise exceptions.ArgumentError("Angle with the zero subspace.")
    if F.ambient_dim != G.ambient_dim:
        raise exceptions.ArgumentError(
            f"Ambient dimension mismatch: {F.ambient_dim} "
            f"!= {G.ambient_dim}")
    return float(np.min(scipy.linalg.subspace_angles(F.basis, G.basis)))


def direct_sum(*subspaces):
    return Subspace(np.column_stack([s.basis for s in subspaces]),
                    orthonormalize=True)


def intersect(F, G, dim=None, tol=1e-8):
    """Orthonormal basis of F ∩ G.

    With dim given, the dim directions of F closest to G are returned,
    which is the intersection when the sum is known to be transverse.
    """
    if F.ambient_dim != G.ambient_dim:
        raise exceptions.ArgumentError("Ambient dimension mismatch.")
    if F.dim == 0 or G.dim == 0 or dim == 0:
        return Subspace(np.zeros((F.ambient_dim, 0)))
    # directions of F whose component outside G vanishes
    outside = G.complement().basis.T @ F.basis
    if outside.shape[0] == 0:
        return F
    _u, s, vt = np.linalg.svd(outside)
    s = np.concatenate((s, np.zeros(F.dim - s.size)))
    if dim is None:
        null = vt[s <= tol].T
    else:
        null = vt[F.dim - dim:].T
    return Subspace(F.basis @ null, orthonormalize=True)


def jacobian(matrix, subspace):
    """Product of the singular values of matrix restricted to subspace."""
    return float(np.prod(np.linalg.svd(matrix @ subspace.basis,
                                       compute_uv=False)))


def transversality_gap(w, u, v):
    """sin angle(W, U + V) minus sin angle(W, U) sin angle(U + W, V)."""
    left = np.sin(principal_angle(w, direct_sum(u, v)))
    right = np.sin(principal_angle(w, u)) * \
        np.sin(principal_angle(direct_sum(u, w), v))
    return float(left - right)


def angle_product_ratio(h, f, g):
    """angle(H, F + G) over angle(H, F) angle(H, G) angle(F / H, G / H)."""
    product = principal_angle(h, f) * principal_angle(h, g) * \
        principal_angle(f.quotient(h), g.quotient(h))
    return principal_angle(h, direct_sum(f, g)) / product


def jacobian_gap(matrix, f, g):
    """(sin alpha)^-d jac(M|F) jac(M|G) - jac M, alpha the angle of F and G."""
    d = matrix.shape[0]
    alpha = principal_angle(f, g)
    bound = jacobian(matrix, f) * jacobian(matrix, g) / np.sin(alpha) ** d
    return float(bound - abs(np.linalg.det(matrix)))


class InvariantSplitting:
    """Per-phase direct sum E_1 + ... + E_m, slowest bundle first."""

    def __init__(self, bundles, indices, ell=None):
        self.bundles = [list(phase) for phase in bundles]
        self.indices = list(indices)
        self.ell = ell
        if not self.bundles:
            raise exceptions.ArgumentError("Splitting needs one phase.")
        dims = [b.dim for b in self.bundles[0]]
        expected = np.diff([0] + self.indices + [sum(dims)]).tolist()
        if dims != expected:
            raise exceptions.ArgumentError(
                f"Bundle dimensions {dims} do not match indices "
                f"{self.indices}")

    @property
    def period(self):
        return len(self.bundles)

    @property
    def dim(self):
        return sum(b.dim for b in self.bundles[0])

    def __len__(self):
        return len(self.bundles[0])

    def residual(self, cocycle):
        """Largest invariance defect over phases and bundles."""
        worst = 0.0
        for j in range(self.period):
            for k, bundle in enumerate(self.bundles[j]):
                image = bundle.image(cocycle[j])
                target = self.bundles[(j + 1) % self.period][k]
                worst = max(worst, image.distance(target))
        return worst
