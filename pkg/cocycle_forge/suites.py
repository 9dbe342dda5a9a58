"""
Copyright (c) 2026 The cocycle-forge Authors

SPDX-License-Identifier: Apache-2.0

"""

import functools
import logging
import math

import numpy as np

from cocycle_forge.cocycle import CyclicCocycle
from cocycle_forge.cocycle import exterior_power
from cocycle_forge.cocycle import finite_time_graph
from cocycle_forge import config
from cocycle_forge import constants
from cocycle_forge import domination
from cocycle_forge import exceptions
from cocycle_forge.finite_order import finite_order_perturbation
from cocycle_forge.generators import generate
from cocycle_forge.generators import GeneratorSpec
from cocycle_forge.graph import LyapunovGraph
from cocycle_forge.graph import top_sums
from cocycle_forge import majorization
from cocycle_forge.mixing import merge_rotation
from cocycle_forge.mixing import mix_two_exponents
from cocycle_forge.raising import raise_graph
from cocycle_forge.separation import separate_exponents
from cocycle_forge.separation import z_scores
from cocycle_forge import spectrum
from cocycle_forge.subspace import angle_product_ratio
from cocycle_forge.subspace import direct_sum
from cocycle_forge.subspace import jacobian_gap
from cocycle_forge.subspace import Subspace
from cocycle_forge.subspace import transversality_gap
from cocycle_forge.utils import parallel_map
from cocycle_forge.utils import rng
from cocycle_forge.utils import rotation

LOG = logging.getLogger(__name__)

ANGLE_SWEEP = 2000
ANGLE_SWEEP_SEED = 0
ANGLE_DRAWS = 100
SEMICONTINUITY_ETA = 1e-3
SEMICONTINUITY_DRAWS = 10
# allowed shortfall of the separated top sums below the Z scores
SEPARATION_SLACK = 0.1


class SuiteReport:
    """Pass/fail record of one suite run."""

    def __init__(self, name, seeds):
        self.name = name
        self.seeds = list(seeds)
        self.checks = []
        self.constants = {}

    def add(self, check):
        self.checks.append(check)

    @property
    def passed(self):
        return all(c["passed"] for c in self.checks)

    def failures(self):
        return [c for c in self.checks if not c["passed"]]

    def skipped(self):
        return [c for c in self.checks if c.get("skipped")]

    def first_failing_seed(self):
        failures = self.failures()
        return failures[0]["seed"] if failures else None

    def as_dict(self):
        return {
            "suite": self.name,
            "passed": self.passed,
            "seeds": self.seeds,
            "failing_seed": self.first_failing_seed(),
            "skipped": len(self.skipped()),
            "constants": self.constants,
            "checks": self.checks,
        }


def _check(name, seed, value, tolerance, passed=None):
    if passed is None:
        passed = bool(value <= tolerance)
    return {"name": name, "seed": seed, "value": float(value),
            "tolerance": float(tolerance), "passed": bool(passed)}


def _spectrum_gap(graph, other):
    return float(np.max(np.abs(graph.exponents - other.exponents)))


def _unit_spectrum_matrix(gen, d):
    """Random conjugate of a block matrix with unit-modulus spectrum."""
    blocks = np.zeros((d, d))
    k = 0
    while k < d:
        if k + 1 < d and gen.random() < 0.6:
            blocks[k:k + 2, k:k + 2] = rotation(gen.uniform(0.1, 3.0))
            k += 2
        else:
            blocks[k, k] = 1.0 if gen.random() < 0.5 else -1.0
            k += 1
    basis = np.eye(d) + 0.3 * gen.standard_normal((d, d))
    return basis @ blocks @ np.linalg.inv(basis)


def _splitting(gen, d):
    """Random splitting of R^d into three non-zero subspaces H, F, G."""
    columns = gen.standard_normal((d, d))
    first, second = sorted(gen.choice(np.arange(1, d), 2, replace=False))
    return (Subspace(columns[:, :first], orthonormalize=True),
            Subspace(columns[:, first:second], orthonormalize=True),
            Subspace(columns[:, second:], orthonormalize=True))


@functools.lru_cache(maxsize=None)
def angle_product_constant(samples=ANGLE_SWEEP):
    """c_0 of the angle product inequality: half the smallest ratio met
    by one seeded sweep, computed once per process."""
    gen = rng(ANGLE_SWEEP_SEED)
    worst = min(angle_product_ratio(*_splitting(gen, 3 + k % 4))
                for k in range(samples))
    LOG.info(f"Angle product constant c_0 = {0.5 * worst:.4g}")
    return 0.5 * worst


def _perturbed(gen, cocycle, eta):
    noise = gen.standard_normal(cocycle.stack.shape)
    noise /= np.linalg.norm(noise, ord=2, axis=(1, 2))[:, None, None]
    return CyclicCocycle(cocycle.stack + eta * noise, validate=False)


def _semicontinuity_gap(gen, cocycle, m, eta=SEMICONTINUITY_ETA,
                        draws=SEMICONTINUITY_DRAWS):
    """Largest rise of the scale-m top sums over the allowed d m eta K."""
    base = finite_time_graph(cocycle, m)
    allowed = cocycle.dim * m * eta * cocycle.bound
    rise = max(float(np.max(finite_time_graph(_perturbed(gen, cocycle, eta),
                                              m)[1:] - base[1:]))
               for _k in range(draws))
    return rise - allowed


def core_trial(seed):
    gen = rng(seed)
    d = 2 + seed % 3
    spec = GeneratorSpec("random_bounded", d, 3 + seed % 5, 3.0, seed)
    cocycle = generate(spec)
    checks = []

    wide = gen.standard_normal((2 + seed % 5,) * 2)
    sv = np.linalg.svd(wide, compute_uv=False)
    worst = max(abs(np.linalg.norm(exterior_power(wide, i), 2)
                    / np.prod(sv[:i]) - 1.0)
                for i in range(1, wide.shape[0] + 1))
    checks.append(_check("exterior_norm", seed, worst, 1e-10))
    matrix = gen.standard_normal((d, d))

    graph = spectrum.lyapunov_graph(cocycle)
    product = np.eye(d)
    for j in range(cocycle.period):
        product = cocycle[j] @ product
    eigen = np.sort(np.log(np.abs(np.linalg.eigvals(product))))
    direct = LyapunovGraph.from_exponents(eigen / cocycle.period,
                                          validate=False)
    checks.append(_check("eigen_oracle", seed,
                         _spectrum_gap(graph, direct), 1e-8))

    inverse = spectrum.lyapunov_graph(cocycle.inverse())
    checks.append(_check("inverse_reversal", seed, float(np.max(np.abs(
        inverse.exponents + graph.exponents[::-1]))), 1e-8))

    upper = finite_time_graph(cocycle, cocycle.period)
    checks.append(_check("finite_time_upper", seed, float(np.max(
        top_sums(graph)[1:] - upper[1:])), 1e-9))

    second = graph.second_differences()
    checks.append(_check("convexity", seed,
                         float(-second.min()) if second.size else 0.0,
                         constants.CONVEXITY_TOL))

    if d >= 3:
        w, u, v = (Subspace(gen.standard_normal((d, 1)), orthonormalize=True)
                   for _k in range(3))
        checks.append(_check("transversality", seed,
                             -transversality_gap(w, u, v), 1e-12))
    f = Subspace(gen.standard_normal((d, 1)), orthonormalize=True)
    g = Subspace(gen.standard_normal((d, d - 1)), orthonormalize=True)
    checks.append(_check("jacobian_bound", seed,
                         -jacobian_gap(matrix, f, g)
                         / abs(np.linalg.det(matrix)), 1e-9))

    constant = angle_product_constant()
    smallest = min(angle_product_ratio(*_splitting(gen, 3 + k % 4))
                   for k in range(ANGLE_DRAWS))
    checks.append(_check("angle_product", seed, constant - smallest, 0.0))

    m = 1 + seed % cocycle.period
    checks.append(_check("semicontinuity", seed,
                         _semicontinuity_gap(gen, cocycle, m), 0.0))
    return checks


def _above(gen, graph):
    """Random convex graph above graph with the same endpoint."""
    exponents = graph.exponents
    t = gen.uniform(0.2, 0.9)
    mixed = (1.0 - t) * exponents + t * exponents.mean()
    sigma = np.concatenate(([0.0], np.cumsum(mixed)))
    sigma[-1] = graph.sigma[-1]
    return LyapunovGraph(np.maximum(sigma, graph.sigma))


def majorization_trial(seed):
    gen = rng(seed)
    d = 2 + seed % 5
    src = LyapunovGraph.from_exponents(gen.uniform(-5.0, 5.0, d))
    dst = _above(gen, src)
    delta = 1e-3
    plan = majorization.zigzag_path(src, dst, delta)
    ratios = majorization.step_ratios(plan, dst)
    contraction = 1.0 - 2.0 / d ** 3
    return [
        _check("area_contraction", seed,
               max(ratios, default=0.0) - contraction, 1e-12),
        _check("plan_length", seed, len(plan),
               majorization.step_bound(d, 5.0, delta)),
        _check("plan_reaches_target", seed, plan.end.distance(dst), delta),
    ]


def _brute_dominated(cocycle, ell, finder):
    indices = []
    for i in range(1, cocycle.dim):
        splitting = finder.candidate(i)
        if splitting is None:
            continue
        raw = domination.raw_ratios(cocycle, splitting, ell)
        if np.all(raw < constants.DOMINATION_THRESHOLD):
            indices.append(i)
    return indices


def _skipped(name, seed, error):
    LOG.debug(f"Seed {seed}: {name} skipped ({error})")
    return {"name": name, "seed": seed, "value": None, "tolerance": None,
            "passed": True, "skipped": True, "error": str(error)}


def _composite_domination(cocycle, seed, ell=1):
    """Slowest bundle F against the rest, from F < H inside F + H and
    F / H < F' / H modulo the middle bundle H."""
    splitting = domination.finest_splitting(cocycle, ell)
    if len(splitting) != 3:
        return _skipped("composite_domination", seed,
                        f"{len(splitting)} bundles")
    inner = [direct_sum(phase[0], phase[1]) for phase in splitting.bundles]
    middle = [phase[1] for phase in splitting.bundles]
    restricted, _quotient = domination.restrict_and_quotient(cocycle, inner)
    _restricted, quotient = domination.restrict_and_quotient(cocycle, middle)
    premises = (domination.check_domination(restricted, 1, ell).dominated
                and domination.check_domination(quotient, 1, ell).dominated)
    cap = config.get("domination", "threshold_cap")
    threshold = domination.domination_threshold(cocycle, 1, ell)
    LOG.debug(f"Seed {seed}: composite domination threshold {threshold}")
    return _check("composite_domination", seed,
                  2 * cap if threshold is None else threshold, cap,
                  passed=not premises or threshold is not None)


def domination_trial(seed):
    d = 2 + seed % 3
    n = 4 + seed % 8
    if seed % 2:
        spec = GeneratorSpec("dominated", d, n, 6.0, seed)
    else:
        spec = GeneratorSpec("random_bounded", d, n, 3.0, seed)
    cocycle = generate(spec)
    checks = []
    for ell in (1, 4):
        try:
            finder = domination.SplittingFinder(cocycle)
            fast = domination.dominated_indices(cocycle, ell, finder)
            brute = _brute_dominated(cocycle, ell, finder)
            longer = domination.dominated_indices(cocycle, 4 * ell, finder)
            reverse = domination.dominated_indices(cocycle.inverse(), ell)
        except exceptions.NumericalError as error:
            checks.append(_skipped(f"oracle_ell_{ell}", seed, error))
            continue
        checks.append(_check(f"oracle_ell_{ell}", seed, 0.0, 0.0,
                             passed=fast == brute))
        checks.append(_check(f"monotone_ell_{ell}", seed, 0.0, 0.0,
                             passed=set(fast) <= set(longer)))
        checks.append(_check(f"inverse_ell_{ell}", seed, 0.0, 0.0,
                             passed=sorted(d - i for i in reverse) == fast))
        if fast:
            splitting = domination.finest_splitting(cocycle, ell, finder)
            checks.append(_check(f"invariance_ell_{ell}", seed,
                                 splitting.residual(cocycle),
                                 config.get("tolerances", "invariance")))
    if spec.kind == "dominated":
        checks.append(_check("certified_bundles", seed, 0.0, 0.0,
                             passed=len(cocycle.metadata["domination"])
                             == d - 1))
        thresholds = [domination.domination_threshold(cocycle, i)
                      for i in range(1, d)]
        checks.append(_check("threshold", seed, 0.0, 0.0,
                             passed=thresholds == [1] * (d - 1)))
        if d == 3:
            checks.append(_composite_domination(cocycle, seed))
    return checks


def _monotone_gap(path):
    graphs = path.graphs
    return max((float(np.max(a.sigma - b.sigma))
                for a, b in zip(graphs, graphs[1:])), default=0.0)


def perturb_trial(seed):
    gen = rng(seed)
    checks = []
    spec = GeneratorSpec("switching", 2, 256, 4.0, seed)
    cocycle = generate(spec)
    path = mix_two_exponents(cocycle, 1, 0.5)
    start, end = path.graphs[0], spectrum.lyapunov_graph(path.end)
    checks.append(_check("mixed_exponents", seed,
                         abs(end.exponents[1] - end.exponents[0]), 1e-6))
    checks.append(_check("endpoint_drift", seed,
                         abs(end.sigma[-1] - start.sigma[-1]), 1e-9))
    checks.append(_check("monotone", seed, _monotone_gap(path), 1e-9))
    checks.append(_check("eps_respected", seed,
                         float(path.deviations().max()), 0.5))

    s, beta = merge_rotation(np.diag([2.0, 0.5]))
    checks.append(_check("closed_form_angle", seed,
                         abs(beta - math.acos(0.8)), 1e-9))
    radii = [np.max(np.abs(np.linalg.eigvals(
        rotation(s * t) @ np.diag([2.0, 0.5]))))
        for t in np.linspace(0.0, beta, 1000)]
    checks.append(_check("radius_decreasing", seed, 0.0, 0.0,
                         passed=bool(np.all(np.diff(radii) < 0.0))))

    d = 1 + seed % 4
    matrix = _unit_spectrum_matrix(gen, d)
    perturbed, order = finite_order_perturbation(matrix, 0.1)
    checks.append(_check("finite_order_size", seed,
                         np.linalg.norm(perturbed - matrix, 2), 0.1))
    checks.append(_check("finite_order_power", seed, np.linalg.norm(
        np.linalg.matrix_power(perturbed, order) - np.eye(d), 2), 1e-8))
    return checks


def separation_trial(seed):
    checks = []
    spec = GeneratorSpec("cancellation", 2, 64, 2.0, seed, segment=32)
    cocycle = generate(spec)
    separated = separate_exponents(cocycle, 1, 0.3, seed=seed)
    before = spectrum.lyapunov_graph(cocycle)
    after = spectrum.lyapunov_graph(separated)
    checks.append(_check("anti_cancellation", seed,
                         math.log(2.0) - 0.1 - after.exponents[-1], 0.0))
    z = np.array(separated.metadata["z_scores"])
    checks.append(_check("z_scores_reached", seed, float(np.max(
        z[1:] - top_sums(after)[1:])), SEPARATION_SLACK))
    checks.append(_check("determinant_kept", seed,
                         abs(after.sigma[-1] - before.sigma[-1]), 1e-12))
    checks.append(_check("eps_respected", seed,
                         float(cocycle.deviation(separated).max()), 0.3))

    random = generate(GeneratorSpec("random_bounded", 3, 24, 3.0, seed))
    table = z_scores(random, 3)
    slack = table.pigeonhole_slack()
    fractions = table.bad_fractions(slack)
    checks.append(_check("pigeonhole", seed, float(fractions.max()),
                         1.0 / random.dim, passed=bool(
                             fractions.max() < 1.0 / random.dim
                             and table.good(slack).size)))
    return checks


def end_to_end_trial(seed):
    gen = rng(seed)
    checks = []
    cocycle = generate(GeneratorSpec("switching", 3, 128, 3.0, seed))
    graph = spectrum.lyapunov_graph(cocycle)
    target = _above(gen, graph)
    path = raise_graph(cocycle, target, 0.5)
    final = spectrum.lyapunov_graph(path.end)
    checks.append(_check("target_reached", seed, final.distance(target),
                         1e-6))
    checks.append(_check("eps_respected", seed,
                         float(path.deviations().max()), 0.5))
    checks.append(_check("monotone", seed, _monotone_gap(path), 1e-9))

    pinned = generate(GeneratorSpec("switching", 3, 128, 3.0, seed,
                                    dominant=1))
    graph = spectrum.lyapunov_graph(pinned)
    sigma = graph.sigma.copy()
    sigma[1] += gen.uniform(0.3, 0.8) * (0.5 * sigma[2] - sigma[1])
    target = LyapunovGraph(sigma)
    path = raise_graph(pinned, target, 0.5, respect_finest=4)
    drift = max(abs(g.sigma[2] - graph.sigma[2]) for g in
                (spectrum.lyapunov_graph(s) for s in path.samples[::8]))
    checks.append(_check("pinned_drift", seed, drift, 1e-8))
    checks.append(_check("pinned_target", seed, spectrum.lyapunov_graph(
        path.end).distance(target), 1e-6))
    return checks


TRIALS = {
    "core": core_trial,
    "majorization": majorization_trial,
    "domination": domination_trial,
    "perturb": perturb_trial,
    "separation": separation_trial,
    "end_to_end": end_to_end_trial,
}


def _guarded(trial, seed):
    try:
        return trial(seed)
    except exceptions.ForgeError as error:
        LOG.info(f"Seed {seed} raised {type(error).__name__}: {error}")
        return [{"name": type(error).__name__, "seed": seed,
                 "value": None, "tolerance": None, "passed": False,
                 "error": str(error)}]


def run_suite(name, seeds=None, base_seed=None):
    """Run a named suite over consecutive seeds and collect its checks."""
    if name not in TRIALS:
        raise exceptions.ArgumentError(
            f"Unknown suite {name!r}; expected one of "
            f"{', '.join(constants.SUITES)}")
    seeds = seeds or config.get("suites", "seeds")
    base_seed = config.get("suites", "base_seed") if base_seed is None \
        else base_seed
    trial = TRIALS[name]
    seed_list = [base_seed + k for k in range(seeds)]
    report = SuiteReport(name, seed_list)
    results = parallel_map(lambda seed: _guarded(trial, seed), seed_list)
    for checks in results:
        for check in checks:
            report.add(check)
    for check_name in sorted({c["name"] for c in report.checks}):
        values = [c["value"] for c in report.checks
                  if c["name"] == check_name and c["value"] is not None]
        if values:
            report.constants[check_name] = max(values)
    LOG.info(f"Suite {name}: {len(report.checks)} checks, "
             f"{len(report.failures())} failed, "
             f"{len(report.skipped())} skipped")
    return report
