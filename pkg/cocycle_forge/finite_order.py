"""
Copyright (c) 2026 The cocycle-forge Authors

SPDX-License-Identifier: Apache-2.0

"""

import fractions
import logging
import math

import numpy as np
import scipy.linalg

from cocycle_forge import exceptions

LOG = logging.getLogger(__name__)

UNIT_TOL = 1e-8
POWER_TOL = 1e-8
SCALAR_TOL = 1e-12
DOUBLINGS = 10


def _selector(test):
    # gees passes (re, im) for real input and one complex value otherwise
    def select(re, im=0.0):
        return bool(test(complex(re, im)))
    return select


def _schur(matrix, test):
    try:
        return scipy.linalg.schur(matrix, output="real",
                                  sort=_selector(test))
    except (np.linalg.LinAlgError, ValueError) as error:
        raise exceptions.NumericalError(f"Real Schur form failed: {error}")


def ordered_schur(matrix):
    """Real Schur form with the +1 cluster first and the -1 cluster next.

    Returns (T, Z, plus, minus) with matrix = Z T Z^T; T[:plus, :plus]
    carries the eigenvalues near +1, T[plus:minus, plus:minus] those near
    -1 and the rest are 2 x 2 blocks of non-real pairs.
    """
    t, z, plus = _schur(matrix, lambda w: w.imag == 0.0 and w.real > 0.0)
    if plus < matrix.shape[0]:
        tail, u, count = _schur(t[plus:, plus:],
                                lambda w: w.imag == 0.0 and w.real < 0.0)
        t[plus:, plus:] = tail
        t[:plus, plus:] = t[:plus, plus:] @ u
        z[:, plus:] = z[:, plus:] @ u
        minus = plus + count
    else:
        minus = plus
    return t, z, plus, minus


class _Angles:
    """Upper half plane slots 2 pi k / q, 0 < k < q/2, each used once."""

    def __init__(self, q):
        self.q = q
        self.used = set()

    def take(self, wanted):
        half = self.q // 2
        for offset in range(half):
            for k in (wanted - offset, wanted + offset):
                if 0 < k < half and k not in self.used:
                    self.used.add(k)
                    return k
        raise exceptions.CapabilityError(
            f"No free root of unity of order {self.q}")

    def angle(self, k):
        return 2.0 * math.pi * k / self.q


def _order(k, q):
    return fractions.Fraction(k, q).denominator


def _pair_block(a, psi):
    """[[1 - e, a'], [-e / a', 1]] with eigenvalues exp(+-i psi)."""
    e = 2.0 * (1.0 - math.cos(psi))
    size = max(abs(a), math.sqrt(e))
    a = math.copysign(size, a) if a != 0.0 else size
    return np.array([[1.0 - e, a], [-e / a, 1.0]])


def _cluster(t, result, start, stop, sign, slots, orders):
    if stop == start:
        return
    block = t[start:stop, start:stop]
    if np.max(np.abs(block - sign * np.eye(stop - start))) <= SCALAR_TOL:
        result[start:stop, start:stop] = sign * np.eye(stop - start)
        orders.append(1 if sign > 0 else 2)
        return
    q = slots.q
    for k in range(start, stop - 1, 2):
        # the -1 pair sits at angle pi - psi
        slot = slots.take(1 if sign > 0 else q // 2 - 1)
        psi = slots.angle(slot if sign > 0 else q // 2 - slot)
        result[k:k + 2, k:k + 2] = sign * _pair_block(t[k, k + 1], psi)
        orders.append(_order(slot, q))
    if (stop - start) % 2:
        result[stop - 1, stop - 1] = sign
        orders.append(1 if sign > 0 else 2)


def _rotation_block(block, slots):
    alpha = 0.5 * (block[0, 0] + block[1, 1])
    theta = math.atan2(math.sqrt(max(-block[0, 1] * block[1, 0], 0.0)),
                       alpha)
    slot = slots.take(round(theta * slots.q / (2.0 * math.pi)))
    psi = slots.angle(slot)
    result = np.empty((2, 2))
    result[0, 0] = result[1, 1] = math.cos(psi)
    if abs(block[0, 1]) >= abs(block[1, 0]):
        b = block[0, 1]
        result[0, 1], result[1, 0] = b, -math.sin(psi) ** 2 / b
    else:
        b = block[1, 0]
        result[1, 0], result[0, 1] = b, -math.sin(psi) ** 2 / b
    return result, _order(slot, slots.q)


def _rational(t, plus, minus, q):
    result = t.copy()
    slots = _Angles(q)
    orders = []
    _cluster(t, result, 0, plus, 1.0, slots, orders)
    _cluster(t, result, plus, minus, -1.0, slots, orders)
    d = t.shape[0]
    k = minus
    while k < d:
        if k + 1 >= d or t[k + 1, k] == 0.0:
            raise exceptions.NumericalError(
                f"Expected a non-real 2 x 2 block at position {k}")
        result[k:k + 2, k:k + 2], order = _rotation_block(
            t[k:k + 2, k:k + 2], slots)
        orders.append(order)
        k += 2
    return result, orders


def finite_order_perturbation(matrix, eps):
    """Nearby diagonalizable matrix with roots of unity as eigenvalues.

    Returns (perturbed, order) with perturbed^order = identity. Clusters
    at +1 and -1 are split into pairs of conjugate roots of unity and
    each rotation block is snapped to the nearest free root; eigenvalues
    end up distinct except for scalar clusters, which are kept.
    """
    matrix = np.array(matrix, dtype=float)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise exceptions.ArgumentError("Expected a square matrix")
    if eps <= 0.0:
        raise exceptions.ArgumentError("eps must be positive")
    moduli = np.abs(np.linalg.eigvals(matrix))
    if np.any(np.abs(moduli - 1.0) > UNIT_TOL):
        raise exceptions.PreconditionError(
            f"Eigenvalues off the unit circle (moduli {moduli})")
    d = matrix.shape[0]
    t, z, plus, minus = ordered_schur(matrix)

    q = 2 * max(2, math.ceil(2.0 * math.pi / eps))
    for _attempt in range(DOUBLINGS):
        try:
            block, orders = _rational(t, plus, minus, q)
        except exceptions.CapabilityError:
            q *= 2
            continue
        perturbed = z @ block @ z.T
        change = float(np.linalg.norm(perturbed - matrix, 2))
        if change <= eps:
            break
        LOG.debug(f"Roots of order {q} move the matrix by {change:.3e}; "
                  "refining")
        q *= 2
    else:
        raise exceptions.CapabilityError(
            f"No finite-order matrix within {eps:g} at order {q}")

    order = math.lcm(*orders) if orders else 1
    residual = float(np.linalg.norm(
        np.linalg.matrix_power(perturbed, order) - np.eye(d), 2))
    if residual > POWER_TOL:
        raise exceptions.NumericalError(
            f"Perturbed matrix to the power {order} misses the identity",
            condition=residual)
    LOG.info(f"Finite-order perturbation of size {change:.3e}, "
             f"order {order}")
    return perturbed, order
