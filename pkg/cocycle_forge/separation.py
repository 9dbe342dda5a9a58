"""
Copyright (c) 2026 The cocycle-forge Authors

SPDX-License-Identifier: Apache-2.0

"""

import functools
import logging
import math

import numpy as np
import scipy.linalg

from cocycle_forge.cocycle import accumulate
from cocycle_forge.cocycle import CyclicCocycle
from cocycle_forge.cocycle import graded_svd
from cocycle_forge.cocycle import log_singular_values
from cocycle_forge import config
from cocycle_forge import exceptions
from cocycle_forge.flags import FAST_FIRST
from cocycle_forge.flags import FlagFrame
from cocycle_forge.graph import top_sums
from cocycle_forge import majorization
from cocycle_forge.raising import pinned_indices
from cocycle_forge.raising import raise_graph
from cocycle_forge import spectrum
from cocycle_forge.utils import parallel_map
from cocycle_forge.utils import qr_positive
from cocycle_forge.utils import rng

LOG = logging.getLogger(__name__)

FINAL_TOL = 1e-5


class ZScoreTable:
    """Finite-scale functionals Z_i(y) for every phase y.

    rows[y, i] = (1/n) sum over p < n // m of log ||wedge^i A^m||
    evaluated at phase y + p m; column 0 is zero.
    """

    def __init__(self, scale, rows, good_phase, slack):
        self.scale = scale
        self.rows = rows
        self.good_phase = good_phase
        self.slack = slack
        self.averages = rows.mean(axis=0)

    @property
    def dim(self):
        return self.rows.shape[1] - 1

    @property
    def period(self):
        return self.rows.shape[0]

    def good(self, slack):
        """Phases within slack of the phase average for every i."""
        floor = self.averages[1:] - slack - 1e-12
        return np.flatnonzero(np.all(self.rows[:, 1:] >= floor, axis=1))

    def bad_fractions(self, slack):
        floor = self.averages[1:] - slack - 1e-12
        return np.mean(self.rows[:, 1:] < floor, axis=0)

    def deficit(self):
        return float(max(0.0, np.max(self.averages[1:] - self.rows[:, 1:])))

    def pigeonhole_slack(self):
        """Smallest ladder slack at which each bad fraction is below 1/d."""
        chosen = None
        for slack in slack_ladder(self.deficit()):
            if np.all(self.bad_fractions(slack) < 1.0 / self.dim):
                chosen = slack
            else:
                break
        return chosen


def slack_ladder(deficit, floor=None):
    floor = floor or config.get("separation", "slack_floor")
    ladder = [deficit]
    while ladder[-1] / 2.0 >= floor:
        ladder.append(ladder[-1] / 2.0)
    return ladder


def _window(cocycle, m, phase):
    logs = log_singular_values([cocycle[phase + k] for k in range(m)])
    return np.concatenate(([0.0], np.cumsum(logs)))


def z_scores(cocycle, m):
    n = cocycle.period
    if not 1 <= m <= n // 2:
        raise exceptions.ArgumentError(f"Scale {m} outside 1..{n // 2}")
    windows = np.array(parallel_map(functools.partial(_window, cocycle, m),
                                    range(n)))
    q = n // m
    rows = np.zeros_like(windows)
    for y in range(n):
        rows[y] = windows[(y + m * np.arange(q)) % n].sum(axis=0) / n

    table = ZScoreTable(m, rows, 0, 0.0)
    ladder = slack_ladder(table.deficit())
    chosen, slack = table.good(ladder[0]), ladder[0]
    for value in ladder[1:]:
        good = table.good(value)
        if not good.size:
            break
        chosen, slack = good, value
        if good.size == 1:
            break
    table.good_phase = int(chosen[0])
    table.slack = slack
    LOG.debug(f"Good phase {table.good_phase} at slack {slack:.3e}")
    return table


def flag_angle(matrix, flag_f, flag_g):
    """min over i of the angle between matrix F_i and G_{d-i}."""
    q, _r = np.linalg.qr(matrix @ flag_f)
    d = q.shape[0]
    worst = 0.5 * math.pi
    for i in range(1, d):
        cosine = np.linalg.svd(q[:, :i].T @ flag_g[:, :d - i],
                               compute_uv=False)[0]
        worst = min(worst, math.acos(min(1.0, cosine)))
    return worst


def _random_skew(gen, d):
    a = gen.standard_normal((d, d))
    skew = a - a.T
    return skew / np.linalg.norm(skew, 2)


def _clip(skew, radius):
    size = np.linalg.norm(skew, 2)
    return skew * (radius / size) if size > radius else skew


def _ascend(objective, skew, radius, steps, gen):
    best = objective(skew)
    step = 0.25 * radius
    for _step in range(steps):
        trial = _clip(skew + step * _random_skew(gen, skew.shape[0]), radius)
        value = objective(trial)
        if value > best:
            skew, best = trial, value
        else:
            step *= 0.7
    return skew, best


def align_flags(matrix, flag_f, flag_g, eps, seed=0):
    """Rotation R with ||R - I|| < eps making R matrix F transverse to G.

    Returns (R, alpha) where alpha is the smallest angle reached between
    R matrix F_i and G_{d-i}.
    """
    if eps <= 0.0:
        raise exceptions.ArgumentError("eps must be positive")
    matrix = np.asarray(matrix, dtype=float)
    flag_f = np.asarray(flag_f, dtype=float)
    flag_g = np.asarray(flag_g, dtype=float)
    d = matrix.shape[0]
    options = config.settings()["separation"]
    alpha = flag_angle(matrix, flag_f, flag_g)
    if d < 2 or alpha >= options["accept_angle"]:
        return np.eye(d), alpha

    radius = 0.999 * 2.0 * math.asin(min(1.0, 0.5 * eps))
    gen = rng(seed)

    def objective(skew):
        return flag_angle(scipy.linalg.expm(skew) @ matrix, flag_f, flag_g)

    best_skew = np.zeros((d, d))
    for _restart in range(options["restarts"]):
        skew, value = _ascend(objective, radius * _random_skew(gen, d),
                              radius, options["ascent_steps"], gen)
        if value > alpha:
            best_skew, alpha = skew, value
        if alpha >= options["accept_angle"]:
            break
    if alpha < options["alpha_floor"]:
        raise exceptions.CapabilityError(
            f"Rotations within {eps:.3e} reach an angle of only "
            f"{alpha:.3e}", residual=alpha)
    LOG.debug(f"Aligned flags at angle {alpha:.4f}")
    return scipy.linalg.expm(best_skew), alpha


class FactoredProduct:
    """Product of maps kept as exp(logscale) q @ r, never formed densely."""

    def __init__(self, dim):
        self.q = np.eye(dim)
        self.r = np.eye(dim)
        self.logscale = 0.0

    @classmethod
    def of(cls, matrix):
        matrix = np.asarray(matrix, dtype=float)
        q, r = qr_positive(matrix)
        if not np.all(np.abs(np.diag(r)) > 0.0):
            raise exceptions.ArgumentError("Matrix must be invertible")
        product = cls(matrix.shape[0])
        scale = np.abs(r).max()
        product.q, product.r = q, r / scale
        product.logscale = math.log(scale)
        return product

    def advance(self, matrices):
        """Multiply the product on the left by matrices, first one first."""
        q, r, logscale = accumulate(list(matrices), start=self.q)
        r = r @ self.r
        scale = np.abs(r).max()
        self.q, self.r = q, r / scale
        self.logscale += logscale + math.log(scale)
        return self

    def singular(self):
        """Image flag, log singular values and right singular flag."""
        u, logs, v = graded_svd(self.r)
        return self.q @ u, logs + self.logscale, v

    def log_moduli(self, rotation):
        """Descending log-moduli of the eigenvalues of rotation @ product."""
        pair = CyclicCocycle([self.r, rotation @ self.q], validate=False)
        exponents = spectrum.lyapunov_spectrum(pair)
        return 2.0 * exponents[::-1] + self.logscale


def radius_constant(logs, moduli):
    """max over i of ||wedge^i M|| / rho(wedge^i R M) from log values."""
    gaps = np.cumsum(logs) - np.cumsum(moduli)
    return float(np.exp(np.max(gaps)))


def _radius_rotation(product, eps, seed):
    image, logs, flag = product.singular()
    rotation, _alpha = align_flags(np.eye(flag.shape[0]), image,
                                   flag[:, ::-1], eps, seed)
    constant = radius_constant(logs, product.log_moduli(rotation))
    LOG.debug(f"Norm-to-radius constant {constant:.4g}")
    return rotation, constant


def norm_to_radius(matrix, eps, seed=0):
    """Rotation R close to the identity with rho(wedge^i RM) ~ ||wedge^i M||.

    Returns (R, C) where C is the worst ratio ||wedge^i M|| / rho(wedge^i RM).
    """
    return _radius_rotation(FactoredProduct.of(matrix), eps, seed)


def _segment(cocycle, start, length):
    return FactoredProduct(cocycle.dim).advance(
        cocycle[start + k] for k in range(length))


class _Separator:
    """Rotations inserted at the ends of consecutive m-blocks."""

    def __init__(self, cocycle, m, eps, seed):
        self.cocycle = cocycle
        self.m = m
        self.eps = eps
        self.seed = seed
        self.changes = {}
        self.angles = []

    def _junction(self, product, following, phase):
        original = self.cocycle[phase]
        image, _logs, _flag = product.singular()
        _image, _logs, contracted = following.singular()
        rotation, alpha = align_flags(
            np.eye(self.cocycle.dim), image, contracted[:, ::-1],
            self.eps / np.linalg.norm(original, 2), self.seed + phase)
        self.angles.append(alpha)
        if not np.array_equal(rotation, np.eye(rotation.shape[0])):
            self.changes[phase] = rotation @ original
        return rotation

    def run(self, y):
        n, m = self.cocycle.period, self.m
        q = n // m
        product = _segment(self.cocycle, y, m)
        stops = [(y + p * m, m) for p in range(1, q)]
        if n - q * m:
            stops.append((y + q * m, n - q * m))
        for start, length in stops:
            phase = (start - 1) % n
            following = _segment(self.cocycle, start, length)
            try:
                rotation = self._junction(product, following, phase)
            except exceptions.CapabilityError as error:
                raise exceptions.CapabilityError(
                    f"Phase {phase}: {error}", residual=error.residual)
            product.advance([rotation] + [self.cocycle[start + k]
                                          for k in range(length)])

        phase = (y - 1) % n
        original = self.cocycle[phase]
        rotation, constant = _radius_rotation(
            product, self.eps / np.linalg.norm(original, 2), self.seed)
        self.changes[phase] = rotation @ original
        return self.cocycle.replace(self.changes), constant


def separate_exponents(cocycle, m, eps, seed=0, tolerance=None):
    """Cocycle whose top sums of exponents reach the Z scores at scale m.

    Small rotations keep the images of consecutive m-blocks transverse
    to what the next block contracts, so finite-time growth survives to
    the period product. The result carries the table, the angles and
    the empirical slack in its metadata.
    """
    if eps <= 0.0:
        raise exceptions.ArgumentError("eps must be positive")
    table = z_scores(cocycle, m)
    y = table.good_phase
    separator = _Separator(cocycle, m, eps, seed)
    result, constant = separator.run(y)

    achieved = top_sums(spectrum.lyapunov_graph(result))
    slack = float(max(0.0, np.max(table.rows[y, 1:] - achieved[1:])))
    LOG.info(f"Separated at phase {y} with {len(separator.changes)} "
             f"rotations; slack {slack:.4g}, C {constant:.4g}")
    result.metadata.update({
        "good_phase": y,
        "z_scores": table.rows[y].tolist(),
        "slack": slack,
        "radius_constant": constant,
        "min_angle": min(separator.angles, default=0.5 * math.pi),
        "table": table,
    })
    if tolerance is not None and slack > tolerance:
        raise exceptions.CapabilityError(
            f"Separation slack {slack:.3e} exceeds {tolerance:.3e}",
            residual=slack)
    return result


def _separate_bundles(cocycle, cuts, m, eps, seed):
    """Separate each bundle between cuts inside an invariant flag."""
    d = cocycle.dim
    frame = FlagFrame.build(cocycle, FAST_FIRST)
    current = cocycle
    for lo, hi in zip(cuts[:-1], cuts[1:]):
        start, stop = d - hi, d - lo
        if stop - start < 2:
            continue
        # each bundle is separated against the original flag
        block = frame.subquotient(start, stop)
        separated = separate_exponents(block, m, eps, seed)
        replaced = frame.replace_block(start, stop,
                                       dict(enumerate(separated.stack)))
        changes = {j: current[j] + replaced[j] - cocycle[j]
                   for j in range(cocycle.period)}
        current = current.replace(changes)
    return current


def realize_graph(cocycle, target, m, eps, ell=None, seed=0):
    """Lower the graph by separation, then raise it to target.

    The coordinates at the finest ell-dominated splitting are pinned
    (ell defaults to no pinning). Half of eps goes to each stage.
    """
    if eps <= 0.0:
        raise exceptions.ArgumentError("eps must be positive")
    graph = spectrum.lyapunov_graph(cocycle)
    if target.dim != graph.dim:
        raise exceptions.ArgumentError(
            f"Target has dimension {target.dim}, cocycle {graph.dim}")
    if abs(target.sigma[-1] - graph.sigma[-1]) > 1e-9:
        raise exceptions.OrderError(
            f"Target endpoint {target.sigma[-1]!r} differs from "
            f"sigma_d = {graph.sigma[-1]!r}")
    pinned = pinned_indices(cocycle, graph, target, ell) if ell else []

    cuts = [0] + list(pinned) + [graph.dim]
    if pinned:
        separated = _separate_bundles(cocycle, cuts, m, 0.5 * eps, seed)
    else:
        separated = separate_exponents(cocycle, m, 0.5 * eps, seed)
    lowered = spectrum.lyapunov_graph(separated)
    order = majorization.majorization_cmp(lowered, target, tol=1e-9)
    if order not in (majorization.Order.A_BELOW, majorization.Order.EQUAL):
        raise exceptions.OrderError(
            f"Target is not above the separated graph {lowered!r}")

    path = raise_graph(separated, target, 0.5 * eps,
                       respect_finest=ell if pinned else None)
    result = path.end
    final = spectrum.lyapunov_graph(result)
    if final.distance(target) > FINAL_TOL:
        raise exceptions.NumericalError(
            f"Realized graph misses the target by "
            f"{final.distance(target):.3e}")
    result.metadata.update({"separated": lowered.sigma.tolist(),
                            "pinned": list(pinned)})
    return result

