"""Seeded verification suites, shared by the CLI and the test suite.

Each suite draws its inputs from per-trial seeds, records the worst defect
of every metric it tracks, and keeps the seeds of failing trials so they can
be replayed with ``generate_instance`` or the same suite at ``trials=1``.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .circle import CircleGrid, FourierSeries
from .disk import BlaschkeProduct
from .instances import (CONSTRUCTIONS, generate_instance, random_disk_points,
                        rng_for, trial_seed)
from .model_space import TMBasis, crofoot_matrix, reproducing_kernel
from .normality import (classify_normal, commutator_defect, probe_points,
                        verify_intertwining, verify_kernel_identity,
                        verify_moment_identities, verify_modulus_equality,
                        verify_norm_identity)
from .operators import build_tto, classical_toeplitz, tto_membership

__all__ = ["SUITES", "DEFAULT_TRIALS", "SuiteResult", "run_suite"]

TOLERANCES = {
    "norm_identity": 1e-9,
    "modulus_grid": 1e-8,
    "modulus_poisson": 1e-8,
    "intertwining": 1e-9,
    "kernel_identity": 1e-9,
    "moments": 1e-8,
    "crofoot_isometry": 1e-10,
    "crofoot_membership": 1e-8,
    "crofoot_verdict": 0,
    "toeplitz_entries": 1e-10,
    "toeplitz_verdict": 0,
    "classify_disagreements": 0,
    "classify_ambiguous": 0,
    "gram": 1e-10,
    "reproducing": 1e-10,
    "kernel_factorization": 1e-10,
}
NORMAL_TOL = 1e-8
SEPARATION = 1e-4


@dataclass
class SuiteResult:
    name: str
    trials: int
    seed: int
    metrics: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)
    elapsed: float = 0.0

    def record(self, metric: str, value: float, seed: int):
        self.metrics[metric] = max(self.metrics.get(metric, 0.0), float(value))
        if value > TOLERANCES[metric]:
            self.failures.append({"metric": metric, "seed": seed, "value": float(value)})

    @property
    def passed(self) -> bool:
        return not self.failures

    @property
    def max_defect(self) -> float:
        return max(self.metrics.values(), default=0.0)

    def to_json(self) -> dict:
        return {
            "suite": self.name,
            "trials": self.trials,
            "seed": self.seed,
            "passed": self.passed,
            "max_defect": self.max_defect,
            "metrics": {k: {"max": v, "tolerance": TOLERANCES[k]} for k, v in self.metrics.items()},
            "failures": self.failures,
            "elapsed": round(self.elapsed, 4),
        }


def _degree(rng, lo=1, hi=8) -> int:
    return int(rng.integers(lo, hi + 1))


def _random_theta(rng, degree: int) -> BlaschkeProduct:
    return BlaschkeProduct(tuple(random_disk_points(rng, degree)), np.exp(2j * np.pi * rng.random()))


def _random_analytic(rng, band: int) -> FourierSeries:
    c = rng.standard_normal(band + 1) + 1j * rng.standard_normal(band + 1)
    return FourierSeries(np.concatenate([np.zeros(band), c]))


def _suite_L1(res: SuiteResult, seeds):
    for i, seed in enumerate(seeds):
        rng = rng_for(seed)
        inst = generate_instance(_degree(rng), seed, CONSTRUCTIONS[i % 4])
        basis = inst.basis
        u = basis.vector(rng.standard_normal(basis.dim) + 1j * rng.standard_normal(basis.dim))
        lhs, rhs = verify_norm_identity(inst.symbol, u)
        res.record("norm_identity", abs(lhs - rhs) / (1 + abs(lhs)), seed)


def _suite_L2(res: SuiteResult, seeds):
    for i, seed in enumerate(seeds):
        rng = rng_for(seed)
        inst = generate_instance(_degree(rng), seed, ("propor", "conj_linked")[i % 2])
        if not classify_normal(inst.symbol).is_normal:
            res.failures.append({"metric": "classification", "seed": seed, "value": 1.0})
            continue
        check = verify_modulus_equality(inst.symbol)
        res.record("modulus_grid", check.grid_defect, seed)
        res.record("modulus_poisson", check.poisson_defect, seed)


def _suite_L3(res: SuiteResult, seeds):
    grid = CircleGrid(2048)
    for seed in seeds:
        rng = rng_for(seed)
        theta = _random_theta(rng, _degree(rng))
        g = _random_analytic(rng, int(rng.integers(0, 9)))
        f = _random_analytic(rng, int(rng.integers(0, 9)))
        left, right = verify_intertwining(theta, g, f, grid)
        res.record("intertwining", abs(left - right) / (1 + left), seed)


def _suite_kernel(res: SuiteResult, seeds):
    grid = CircleGrid(2048)
    for seed in seeds:
        rng = rng_for(seed)
        f = _random_analytic(rng, int(rng.integers(0, 9)))
        w = random_disk_points(rng, 1)[0]
        res.record("kernel_identity", verify_kernel_identity(f, w, grid), seed)


def _suite_moments(res: SuiteResult, seeds):
    probes = probe_points()
    for i, seed in enumerate(seeds):
        rng = rng_for(seed)
        inst = generate_instance(_degree(rng), seed, ("propor", "conj_linked")[i % 2])
        if not classify_normal(inst.symbol).is_normal:
            res.failures.append({"metric": "classification", "seed": seed, "value": 1.0})
            continue
        worst = max(max(verify_moment_identities(inst.symbol, w)) for w in probes)
        res.record("moments", worst, seed)


def _suite_crofoot(res: SuiteResult, seeds):
    for i, seed in enumerate(seeds):
        rng = rng_for(seed)
        inst = generate_instance(_degree(rng), seed, CONSTRUCTIONS[i % 4])
        basis = inst.basis
        a = random_disk_points(rng, 1, radius=0.5)[0]
        J, target = crofoot_matrix(basis, a)
        res.record("crofoot_isometry", np.max(np.abs(J.conj().T @ J - np.eye(basis.dim))), seed)
        A = build_tto(basis, inst.symbol).entries
        B = J @ A @ J.conj().T
        residual, _ = tto_membership(B, target)
        res.record("crofoot_membership", residual, seed)
        normal = classify_normal(inst.symbol).is_normal
        res.record("crofoot_verdict", float(normal != (commutator_defect(B) < NORMAL_TOL)), seed)


def _suite_toeplitz(res: SuiteResult, seeds):
    for i, seed in enumerate(seeds):
        rng = rng_for(seed)
        inst = generate_instance(_degree(rng), seed, CONSTRUCTIONS[i % 4], zeros_at_origin=True)
        A = build_tto(inst.basis, inst.symbol).entries
        T = classical_toeplitz(inst.symbol)
        res.record("toeplitz_entries", np.max(np.abs(A - T)), seed)
        verdict = classify_normal(inst.symbol).is_normal
        res.record("toeplitz_verdict", float(verdict != (commutator_defect(T) < NORMAL_TOL)), seed)


def _suite_classify(res: SuiteResult, seeds):
    for i, seed in enumerate(seeds):
        rng = rng_for(seed)
        inst = generate_instance(_degree(rng), seed, CONSTRUCTIONS[i % 4])
        d = commutator_defect(build_tto(inst.basis, inst.symbol))
        verdict = classify_normal(inst.symbol)
        res.record("classify_ambiguous", float(NORMAL_TOL <= d <= SEPARATION), seed)
        res.record("classify_disagreements", float(verdict.is_normal != (d < NORMAL_TOL)), seed)


def _suite_basis(res: SuiteResult, seeds):
    for i, seed in enumerate(seeds):
        rng = rng_for(seed)
        degree = 1 + i % 10
        theta = _random_theta(rng, degree)
        basis = TMBasis(theta)
        res.record("gram", basis.gram_defect(), seed)
        z = basis.grid.nodes
        for w in random_disk_points(rng, 4):
            f = basis.vector(rng.standard_normal(degree) + 1j * rng.standard_normal(degree))
            f = f * (1 / f.norm())
            kw = (1 - np.conj(theta(w)) * basis.theta_samples) / (1 - np.conj(w) * z)
            by_quadrature = np.mean(f.samples() * np.conj(kw))
            by_formula = np.sum(f.coeffs * basis.evaluate(w))
            res.record("reproducing", abs(by_quadrature - by_formula), seed)
            kernel = reproducing_kernel(basis, w).samples()
            res.record("kernel_factorization", np.max(np.abs(kernel - kw)), seed)


SUITES = {
    "L1": _suite_L1,
    "L2": _suite_L2,
    "L3": _suite_L3,
    "kernel": _suite_kernel,
    "moments": _suite_moments,
    "crofoot": _suite_crofoot,
    "toeplitz": _suite_toeplitz,
    "classify": _suite_classify,
    "basis": _suite_basis,
}

DEFAULT_TRIALS = {
    "L1": 200,
    "L2": 50,
    "L3": 50,
    "kernel": 50,
    "moments": 50,
    "crofoot": 50,
    "toeplitz": 200,
    "classify": 800,
    "basis": 50,
}


def run_suite(name: str, trials: int | None = None, seed: int = 0) -> SuiteResult:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    if trials is None:
        trials = DEFAULT_TRIALS[name]
    if trials < 1:
        raise ValueError("trials must be >= 1")
    res = SuiteResult(name, trials, seed)
    start = time.perf_counter()
    SUITES[name](res, [trial_seed(seed, i) for i in range(trials)])
    res.elapsed = time.perf_counter() - start
    return res
