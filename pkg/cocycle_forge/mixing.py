"""
Copyright (c) 2026 The cocycle-forge Authors

SPDX-License-Identifier: Apache-2.0

"""

import logging
import math

import numpy as np

from cocycle_forge.cocycle import accumulate
from cocycle_forge import config
from cocycle_forge import domination
from cocycle_forge import exceptions
from cocycle_forge.flags import FAST_FIRST
from cocycle_forge.flags import FlagFrame
from cocycle_forge.flags import SLOW_FIRST
from cocycle_forge.graph import LyapunovGraph
from cocycle_forge.path import PerturbationPath
from cocycle_forge.path import sample_count
from cocycle_forge import spectrum
from cocycle_forge.utils import rotation

LOG = logging.getLogger(__name__)

# candidate shear phases examined per search
MAX_STARTS = 512
# largest log of a unit-determinant planar product a rotation may merge
MAX_MERGE_SPREAD = 18.0


def merge_angle(log_rho, sign, alpha, log_target=0.0):
    """Rotation angle bringing a planar product to the target moduli.

    The product, scaled to |det| = 1, has eigenvalue moduli
    exp(+-log_rho), determinant sign `sign` and eigenlines at angle
    alpha. The returned angle moves the moduli to exp(+-log_target).
    """
    if alpha <= 0.0 or log_rho <= log_target:
        return 0.0
    inv = math.exp(-2.0 * log_rho)
    a = 1.0 + sign * inv
    c = abs(1.0 - sign * inv) * math.cos(alpha) / math.sin(alpha)
    target = math.exp(log_target - log_rho) + \
        sign * math.exp(-log_target - log_rho)
    phi = math.atan2(c, a)
    return max(0.0, math.acos(min(1.0, target / math.hypot(a, c))) - phi)


def unit_determinant(matrix):
    """matrix / sqrt|det|, negated if needed so the trace is >= 0."""
    matrix = np.asarray(matrix, dtype=float)
    det = np.linalg.det(matrix)
    if det == 0.0:
        raise exceptions.NumericalError("Singular planar product")
    m = matrix / math.sqrt(abs(det))
    if np.trace(m) < 0.0:
        m = -m
    return m, math.copysign(1.0, det)


def merge_rotation(matrix, log_target=0.0):
    """(s, beta) with trace(R_{s theta} matrix) decreasing on [0, beta].

    At theta = beta the eigenvalue moduli of the rotated matrix, scaled
    to unit determinant, are exp(+-log_target); log_target = 0 merges
    them.
    """
    m, sign = unit_determinant(matrix)
    a = m[0, 0] + m[1, 1]
    b = m[0, 1] - m[1, 0]
    s = -1.0 if b > 0.0 else 1.0
    target = math.exp(log_target) + sign * math.exp(-log_target)
    return s, _solve_trace(a, b, target)


def check_merge_spread(m, phase=0):
    """Reject a unit-determinant planar product too spread to merge.

    Returns (a, b) = (m00 + m11, m01 - m10), the coefficients of the
    trace of rotation(theta) @ m.
    """
    a = m[0, 0] + m[1, 1]
    b = m[0, 1] - m[1, 0]
    size = math.hypot(a, b)
    if size > math.exp(MAX_MERGE_SPREAD):
        raise exceptions.NumericalError(
            f"Planar product at phase {phase} has log-spread "
            f"{math.log(size):.1f}, beyond the {MAX_MERGE_SPREAD:g} a "
            "rotation can resolve", condition=size)
    return a, b


def _solve_trace(a, b, target):
    # a cos t - |b| sin t = target
    h = math.hypot(a, b)
    phi = math.atan2(abs(b), a)
    return max(0.0, math.acos(min(1.0, target / h)) - phi)


def log_modulus(trace, sign):
    """log of the larger eigenvalue modulus of a unit-determinant 2 x 2."""
    trace = abs(trace)
    if trace > 1e150:
        return math.log(trace)
    disc = trace * trace - 4.0 * sign
    if disc <= 0.0:
        return 0.0
    return math.log(0.5 * (trace + math.sqrt(disc)))


def _capacity(budget, norms):
    """Largest left rotation angle whose deviation stays within budget."""
    return 2.0 * np.arcsin(np.clip(budget / (2.0 * norms), 0.0, 1.0))


def _turn_product(maps, start):
    """Unit-determinant product over a full turn starting at a phase."""
    n = len(maps)
    q, r, _logscale = accumulate([maps[(start + k) % n] for k in range(n)])
    diag = np.diag(r)
    if np.any(diag <= 0.0):
        raise exceptions.ProductRangeError(
            "Planar product lost rank during accumulation")
    half = 0.5 * float(np.sum(np.log(diag)))
    if -half > 700.0:
        raise exceptions.ProductRangeError(
            f"Planar product spread {-2 * half:.1f} is out of range")
    m = q @ (r * math.exp(-half))
    sign = math.copysign(1.0, np.linalg.det(q))
    if np.trace(m) < 0.0:
        m = -m
    return m, sign


class EigenLines:
    """Invariant lines of a planar cyclic cocycle with distinct moduli.

    fast[j] and slow[j] are unit vectors with A_j fast[j] =
    exp(grow_fast[j]) fast[j + 1], likewise for slow; the lines close up
    after one turn up to the signs wrap_fast and wrap_slow.
    """

    def __init__(self, maps):
        n = len(maps)
        self.n = n
        q, r, _scale = accumulate(list(maps))
        values, vectors = np.linalg.eig(q @ r)
        if np.iscomplexobj(values) and np.any(values.imag != 0.0):
            raise exceptions.PreconditionError(
                "Planar product has complex eigenvalues")
        values = values.real
        h0 = vectors[:, int(np.argmax(np.abs(values)))].real

        iq, ir, _scale = accumulate([np.linalg.inv(m) for m in maps[::-1]])
        ivalues, ivectors = np.linalg.eig(iq @ ir)
        f0 = ivectors[:, int(np.argmax(np.abs(ivalues)))].real

        self.fast = np.empty((n + 1, 2))
        self.grow_fast = np.empty(n)
        self.fast[0] = h0 / np.linalg.norm(h0)
        for j in range(n):
            v = maps[j] @ self.fast[j]
            norm = np.linalg.norm(v)
            self.grow_fast[j] = math.log(norm)
            self.fast[j + 1] = v / norm

        self.slow = np.empty((n + 1, 2))
        self.grow_slow = np.empty(n)
        self.slow[n] = f0 / np.linalg.norm(f0)
        for j in range(n - 1, -1, -1):
            v = np.linalg.solve(maps[j], self.slow[j + 1])
            norm = np.linalg.norm(v)
            self.grow_slow[j] = -math.log(norm)
            self.slow[j] = v / norm

        self.wrap_fast = math.copysign(1.0, self.fast[n] @ self.fast[0])
        self.wrap_slow = math.copysign(1.0, self.slow[0] @ self.slow[n])
        self.sign = self.wrap_fast * self.wrap_slow
        self.log_rho = 0.5 * float(np.sum(self.grow_fast)
                                   - np.sum(self.grow_slow))
        self.cos = np.einsum("ij,ij->i", self.slow[:n], self.fast[:n])
        self.alpha = np.arccos(np.clip(np.abs(self.cos), 0.0, 1.0))

    def ratio(self):
        """Signed mu_slow / mu_fast."""
        return self.sign * math.exp(-2.0 * self.log_rho)

    def functional(self, z):
        """Row psi with psi(fast[z]) = 1 and psi(slow[z]) = 0."""
        f = self.slow[z]
        perp = np.array([-f[1], f[0]])
        return perp / (perp @ self.fast[z])

    def scaling(self, z, gamma):
        """Right factor stretching the slow line by e^gamma at phase z."""
        v = np.column_stack([self.slow[z], self.fast[z]])
        w = np.linalg.inv(v)
        return math.exp(gamma) * np.outer(v[:, 0], w[0]) + \
            math.exp(-gamma) * np.outer(v[:, 1], w[1])


class PlaneMixResult:
    """Samples as (changed maps by phase, gain of the slow log-modulus)."""

    def __init__(self, samples, usage, route):
        self.samples = samples
        self.usage = usage
        self.route = route


class PlaneMixer:
    """Moves the two moduli of a planar cyclic cocycle toward each other.

    Every change is a determinant-one factor next to one map: a shear
    pair tilting the fast line toward the slow one, optionally preceded
    by paired scalings that lengthen the tilt, and finally a rotation at
    a single phase.
    """

    def __init__(self, maps, budget, eps_bound):
        self.maps = np.array(maps, dtype=float)
        self.n = self.maps.shape[0]
        self.budget = np.array(budget, dtype=float)
        self.eps_bound = eps_bound
        self.engine = config.settings()["engine"]
        self.norms = np.linalg.norm(self.maps, ord=2, axis=(1, 2))

    def _starts(self):
        if self.n <= MAX_STARTS:
            return np.arange(self.n)
        return np.unique(np.linspace(0, self.n - 1, MAX_STARTS).astype(int))

    def _tau_limits(self, lines):
        """Largest shear size allowed by the budget at z and z - 1."""
        n = self.n
        psi = np.array([lines.functional(z) for z in range(n)])
        dev_s = np.exp(lines.grow_slow) * np.linalg.norm(psi, axis=1)
        before = np.roll(self.maps, 1, axis=0)
        dev_u = math.exp(-2.0 * lines.log_rho) * np.linalg.norm(
            np.einsum("zji,zj->zi", before, psi), axis=1)
        with np.errstate(divide="ignore", invalid="ignore"):
            limit = np.minimum(self.budget / dev_s,
                               np.roll(self.budget, 1) / dev_u)
        return np.where(np.isfinite(limit), limit, 0.0)

    def _needed_tau(self, lines, x0, log_gain, cap):
        n = self.n
        phase = x0 % n
        c = lines.cos[phase] * np.where(x0 >= n, lines.sign, 1.0)
        alpha_t = self.engine["shear_target_fraction"] * cap
        sin_a = np.sqrt(np.clip(1.0 - c * c, 0.0, 1.0))
        with np.errstate(all="ignore"):
            need = (sin_a / np.tan(alpha_t) - np.abs(c)) * np.exp(-log_gain)
        need = np.where(alpha_t > 0.0, np.maximum(need, 0.0), np.inf)
        need = np.where(np.isnan(need), np.inf, need)
        return need, np.where(c < 0.0, -1.0, 1.0)

    def _growth_gaps(self, lines):
        gaps = np.tile(lines.grow_slow - lines.grow_fast, 2)
        return np.concatenate(([0.0], np.cumsum(gaps)))

    def _shear_plan(self, lines, limits):
        n = self.n
        if n < 3:
            return None
        cum = self._growth_gaps(lines)
        zs = self._starts()[:, None]
        ks = np.arange(2, n)[None, :]
        x0 = zs + ks
        rot = (x0 - 1) % n
        cap = _capacity(self.engine["rotation_fraction"] * self.budget[rot],
                        self.norms[rot])
        need, sign = self._needed_tau(lines, x0, cum[x0] - cum[zs], cap)
        with np.errstate(divide="ignore", invalid="ignore"):
            score = need / limits[zs]
        score = np.where(np.isnan(score), np.inf, score)
        best = np.unravel_index(int(np.argmin(score)), score.shape)
        if not score[best] <= 0.999:
            return None
        z = int(zs[best[0], 0])
        return z, int(x0[best] % n), float(sign[best] * need[best])

    def _scaling_plan(self, lines, limits):
        n = self.n
        if n < 4:
            return None
        share = self.engine["scaling_fraction"]
        sin_a = np.sin(lines.alpha)
        gammas = np.log1p(share * self.budget * sin_a / (2.0 * self.norms))
        extended = np.tile(gammas, 3)
        cum = self._growth_gaps(lines)
        zs = self._starts()
        for length in range(1, (n - 2) // 2 + 1):
            windows = np.lib.stride_tricks.sliding_window_view(
                extended, 2 * length)
            gamma = windows[zs + 1].min(axis=1)
            x0 = zs + length + 1
            rot = (x0 - 1) % n
            cap = _capacity(self.engine["rotation_fraction"] * (1.0 - share)
                            * self.budget[rot], self.norms[rot])
            gain = cum[x0] - cum[zs] + 2.0 * length * gamma
            need, sign = self._needed_tau(lines, x0, gain, cap)
            with np.errstate(divide="ignore", invalid="ignore"):
                score = need / limits[zs]
            score = np.where(np.isnan(score), np.inf, score)
            best = int(np.argmin(score))
            if score[best] <= 0.999 and gamma[best] > 0.0:
                LOG.debug(f"Paired scaling over 2 x {length} phases, "
                          f"gamma={gamma[best]:.3e}")
                return (int(zs[best]), length, float(gamma[best]),
                        int(x0[best] % n), float(sign[best] * need[best]))
        return None

    def _stage(self, maps, current, samples, updates, deviation):
        """Append samples moving the given phases linearly in t."""
        count = sample_count(deviation, self.eps_bound)
        for t in np.linspace(0.0, 1.0, count)[1:]:
            for phase, build in updates.items():
                current[phase] = build(t)
            samples.append((dict(current), 0.0))
        for phase in updates:
            maps[phase] = current[phase]

    def run(self, log_shift=None):
        lines = EigenLines(self.maps)
        log_target = 0.0 if log_shift is None \
            else max(0.0, lines.log_rho - log_shift)
        samples = [({}, 0.0)]
        if lines.log_rho - log_target <= 0.0:
            return PlaneMixResult(samples, np.zeros(self.n), "none")

        rf = self.engine["rotation_fraction"]
        cap = _capacity(rf * np.roll(self.budget, 1), np.roll(self.norms, 1))
        betas = np.array([merge_angle(lines.log_rho, lines.sign, a,
                                      log_target) for a in lines.alpha])
        with np.errstate(divide="ignore", invalid="ignore"):
            load = np.where(cap > 0.0, betas / cap, np.inf)
        maps = self.maps.copy()
        current = {}
        route = "direct"
        x0 = int(np.argmin(load))
        if not load[x0] <= 1.0:
            limits = self._tau_limits(lines)
            plan = self._shear_plan(lines, limits)
            route = "shear"
            if plan is None:
                scaled = self._scaling_plan(lines, limits)
                if scaled is None:
                    raise exceptions.CapabilityError(
                        "Rotation budget cannot close the angle at any "
                        f"phase (best load {float(load[x0]):.3g})")
                route = "scaling"
                z, length, gamma, x0, tau = scaled
                self._apply_scaling(lines, maps, current, samples,
                                    z, length, gamma)
            else:
                z, x0, tau = plan
            LOG.debug(f"Shear at phase {z} with tau={tau:.3e}, "
                      f"rotation at {x0}")
            self._apply_shear(lines, maps, current, samples, z, tau)

        self._apply_rotation(lines, maps, current, samples, x0, log_target)
        usage = np.linalg.norm(maps - self.maps, ord=2, axis=(1, 2))
        if np.any(usage > self.budget + 1e-12):
            raise exceptions.CapabilityError(
                f"Planar mix used {float(np.max(usage - self.budget)):.3e} "
                "beyond its budget")
        return PlaneMixResult(samples, usage, route)

    def _apply_scaling(self, lines, maps, current, samples, z, length,
                       gamma):
        n = self.n
        updates = {}
        worst = 0.0
        for step in range(2 * length):
            phase = (z + 1 + step) % n
            sign = 1.0 if step < length else -1.0
            base = maps[phase].copy()

            def build(t, base=base, phase=phase, sign=sign):
                return base @ lines.scaling(phase, sign * t * gamma)
            updates[phase] = build
            worst = max(worst, np.linalg.norm(build(1.0) - base, 2))
        self._stage(maps, current, samples, updates, math.exp(gamma) * worst)

    def _apply_shear(self, lines, maps, current, samples, z, tau):
        if tau == 0.0:
            return
        n = self.n
        shear = np.outer(lines.slow[z], lines.functional(z))
        ratio = lines.ratio()
        after = maps[z].copy()
        before = maps[(z - 1) % n].copy()
        updates = {
            z: lambda t: after @ (np.eye(2) + t * tau * shear),
            (z - 1) % n: lambda t: (np.eye(2) - t * tau * ratio * shear)
            @ before,
        }
        worst = max(np.linalg.norm(after @ shear, 2),
                    abs(ratio) * np.linalg.norm(shear @ before, 2)) * abs(tau)
        self._stage(maps, current, samples, updates, worst)

    def _apply_rotation(self, lines, maps, current, samples, x0, log_target):
        n = self.n
        phase = (x0 - 1) % n
        m, sign = _turn_product(maps, x0)
        a, b = check_merge_spread(m, x0)
        s = -1.0 if b > 0.0 else 1.0
        target = math.exp(log_target) + sign * math.exp(-log_target)
        if sign > 0.0 and log_target == 0.0:
            # stay on the real side of the double eigenvalue
            target += 4e-14
        theta = _solve_trace(a, b, target)
        base = maps[phase].copy()
        used = np.linalg.norm(base - self.maps[phase], 2)
        norm = np.linalg.norm(base, 2)
        if 2.0 * math.sin(0.5 * theta) * norm > \
                self.budget[phase] - used + 1e-15:
            raise exceptions.CapabilityError(
                f"Rotation of {theta:.3e} at phase {x0} exceeds its budget")
        start = log_modulus(a, sign)
        count = sample_count(theta * norm, self.eps_bound)
        for t in np.linspace(0.0, 1.0, count)[1:]:
            angle = t * theta
            current[phase] = rotation(s * angle) @ base
            trace = a * math.cos(angle) - abs(b) * math.sin(angle)
            samples.append((dict(current), start - log_modulus(trace, sign)))
        maps[phase] = current.get(phase, base)
        LOG.debug(f"Rotation {s * theta:+.3e} at phase {x0} "
                  f"closes {start - log_target:.3e} of log-modulus")


def default_ell(period):
    ell = config.get("engine", "default_ell")
    while ell > 1 and ell > period:
        ell //= 2
    return ell


def _shifted_graph(graph, i, shift):
    sigma = graph.sigma.copy()
    sigma[i] += shift
    return LyapunovGraph(sigma)


def _pair_is_split(frame, p):
    return (p, p + 1) in frame.partition and (p + 1, p + 2) in frame.partition


def _mix_in_frame(cocycle, graph, i, order, log_shift, budget, eps):
    frame = FlagFrame.build(cocycle, order)
    p = frame.pair_position(i)
    if not _pair_is_split(frame, p):
        raise exceptions.CapabilityError(
            f"Exponents {i}, {i + 1} do not sit on real lines of the "
            f"{order} flag")
    plane = frame.subquotient(p, p + 2)
    result = PlaneMixer(plane.stack, budget, eps).run(log_shift)
    n = cocycle.period
    path = PerturbationPath(cocycle, eps, graph)
    for changes, gain in result.samples[1:]:
        path.append(frame.replace_block(p, p + 2, changes),
                    _shifted_graph(graph, i, gain / n))
    LOG.debug(f"Mixed index {i} in the {order} flag by the "
              f"{result.route} route ({len(path)} samples)")
    return path


def _backward_line(blocks):
    """Slowest invariant line of a triangular block cocycle per phase."""
    n = len(blocks)
    iq, ir, _scale = accumulate([np.linalg.inv(b) for b in blocks[::-1]])
    values, vectors = np.linalg.eig(iq @ ir)
    v = vectors[:, int(np.argmax(np.abs(values)))].real
    lines = np.empty((n, blocks.shape[1]))
    v = v / np.linalg.norm(v)
    for j in range(n - 1, -1, -1):
        v = np.linalg.solve(blocks[j], v)
        v = v / np.linalg.norm(v)
        lines[j] = v
    return lines


def _reroute(cocycle, graph, i, log_shift, budget, eps):
    """Tilt the next faster line toward the pair, then mix again.

    At one phase the fast line h is sheared to h + t g, with g the
    faster line of the pair, and compensated one phase earlier so all
    eigenvalues stay put; only the quotient by the faster bundle
    changes.
    """
    frame = FlagFrame.build(cocycle, FAST_FIRST)
    p = frame.pair_position(i)
    if cocycle.period < 2 or p == 0 or not _pair_is_split(frame, p) or \
            (p - 1, p) not in frame.partition:
        raise exceptions.CapabilityError("No real faster line to tilt")
    lo, hi = p - 1, p + 2
    blocks = np.array([b[lo:hi, lo:hi] for b in frame.blocks])
    n = cocycle.period
    slow = _backward_line(blocks)
    lead = _backward_line(blocks[:, :2, :2])
    diag = np.abs(np.array([np.diag(b) for b in blocks]))
    signs = np.prod(np.sign(np.array([np.diag(b) for b in blocks])), axis=0)
    ratio = signs[1] * signs[0] * math.exp(
        float(np.sum(np.log(diag[:, 1]) - np.log(diag[:, 0]))))

    for x1 in np.unique(np.linspace(0, n - 1, min(n, 8)).astype(int)):
        x1 = int(x1)
        g = np.array([lead[x1][0], lead[x1][1], 0.0])
        frame3 = np.column_stack([np.eye(3)[:, 0], g, slow[x1]])
        try:
            psi = np.linalg.inv(frame3)[0]
        except np.linalg.LinAlgError:
            continue
        tilt = np.outer(g, psi)
        after = blocks[x1]
        before = blocks[(x1 - 1) % n]
        dev_s = np.linalg.norm(after @ tilt, 2)
        dev_u = abs(ratio) * np.linalg.norm(tilt @ before, 2)
        if dev_s == 0.0 or dev_u == 0.0:
            continue
        t = 0.5 * min(budget[x1] / dev_s, budget[(x1 - 1) % n] / dev_u)
        for size in (t, -t):
            first = PerturbationPath(cocycle, eps, graph)
            count = sample_count(max(dev_s, dev_u) * abs(size), eps)
            for u in np.linspace(0.0, 1.0, count)[1:]:
                first.append(frame.replace_block(lo, hi, {
                    x1: after @ (np.eye(3) + u * size * tilt),
                    x1 - 1: (np.eye(3) - u * size * ratio * tilt) @ before,
                }), graph)
            remaining = budget - first.usage()
            try:
                rest = _mix_in_frame(first.end, graph, i, FAST_FIRST,
                                     log_shift, remaining, eps)
            except exceptions.CapabilityError:
                continue
            LOG.info(f"Tilted the faster line at phase {x1} by {size:.3e}")
            first.extend(rest)
            return first
    raise exceptions.CapabilityError("Tilting the faster line did not help")


def mix_two_exponents(cocycle, i, eps, ell=None, stop_at=None, budget=None,
                      finder=None):
    """Path raising sigma_i, at most to the midpoint of its neighbours.

    stop_at halts at a given sigma_i value; budget gives the per-phase
    deviation still available (eps everywhere by default).
    """
    d = cocycle.dim
    n = cocycle.period
    if not 0 < i < d:
        raise exceptions.ArgumentError(f"Index {i} outside 1..{d - 1}")
    if eps <= 0.0:
        raise exceptions.ArgumentError("eps must be positive")
    graph = spectrum.lyapunov_graph(cocycle)
    path = PerturbationPath(cocycle, eps, graph)
    low, high = graph.exponents[i - 1], graph.exponents[i]
    goal = 0.5 * (high - low)
    if stop_at is not None:
        shift = stop_at - graph.sigma[i]
        tol = config.get("tolerances", "contact")
        if shift < -tol or shift > goal + 1e-9:
            raise exceptions.RangeError(
                f"Stop value {stop_at!r} outside [{graph.sigma[i]!r}, "
                f"{graph.sigma[i] + goal!r}]")
        goal = min(max(shift, 0.0), goal)
    if goal * n <= config.get("tolerances", "cluster"):
        return path

    if not spectrum.has_real_spectrum(cocycle):
        raise exceptions.PreconditionError(
            "Mixing needs a cocycle with real eigenvalues")
    ell = ell or default_ell(n)
    report = domination.check_domination(cocycle, i, ell, finder)
    if report.dominated:
        raise exceptions.DominationError(
            f"Index {i} is {ell}-dominated (worst ratio "
            f"{report.worst_ratio:.3g} at phase {report.worst_phase})",
            report=report)
    budget = np.full(n, float(eps)) if budget is None \
        else np.array(budget, dtype=float)
    log_shift = None if stop_at is None else goal * n

    failures = []
    for order in (FAST_FIRST, SLOW_FIRST):
        try:
            mixed = _mix_in_frame(cocycle, graph, i, order, log_shift,
                                  budget, eps)
            break
        except exceptions.CapabilityError as error:
            failures.append(f"{order}: {error}")
    else:
        try:
            if d < 3:
                raise exceptions.CapabilityError("no faster line in 2-D")
            mixed = _reroute(cocycle, graph, i, log_shift, budget, eps)
        except exceptions.CapabilityError as error:
            failures.append(f"tilt: {error}")
            raise exceptions.CapabilityError(
                f"Could not mix index {i}: " + "; ".join(failures),
                partial=path)

    expected = graph.sigma[i] + goal
    actual = spectrum.lyapunov_graph(mixed.end)
    if abs(actual.sigma[i] - expected) > 1e-6:
        raise exceptions.NumericalError(
            f"Mixed graph misses sigma_{i} by "
            f"{abs(actual.sigma[i] - expected):.3e}")
    mixed.verify()
    return mixed
