"""Seeded random instances ``(theta, symbol)`` with known normality ground truth.

Randomness comes from numpy's PCG64.  A batch derives one 64-bit seed per
trial from ``SeedSequence([root_seed, index])``, so every row of a report
can be regenerated on its own from the stored seed.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field

import numpy as np

from .circle import CircleGrid
from .disk import BlaschkeProduct
from .model_space import ModelVector, TMBasis, theta_conj
from .normality import commutator_defect
from .operators import SymbolPair, build_tto

__all__ = [
    "CONSTRUCTIONS",
    "Instance",
    "generate_instance",
    "random_centered",
    "random_disk_points",
    "rng_for",
    "trial_seed",
]

log = logging.getLogger(__name__)

SCHEMA = "tto-report/1"
CONSTRUCTIONS = ("random", "propor", "conj_linked", "perturbed")
MAX_ZERO = 0.9
NORMAL_TOL = 1e-8
SEPARATION = 1e-4
MAX_ATTEMPTS = 64


def rng_for(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(int(seed)))


def trial_seed(root: int, index: int) -> int:
    """Independent 64-bit seed for trial ``index`` of a batch rooted at ``root``."""
    ss = np.random.SeedSequence([int(root), int(index)])
    return int(ss.generate_state(1, np.uint64)[0])


def random_disk_points(rng: np.random.Generator, count: int, radius: float = MAX_ZERO) -> np.ndarray:
    """Uniform points in the disk of the given radius."""
    r = radius * np.sqrt(rng.random(count))
    return r * np.exp(2j * np.pi * rng.random(count))


def random_centered(basis: TMBasis, rng: np.random.Generator) -> ModelVector:
    """Unit vector of ``K_theta`` vanishing at 0 (zero if that subspace is trivial)."""
    v = basis.vector(rng.standard_normal(basis.dim) + 1j * rng.standard_normal(basis.dim))
    one = basis.one
    v = v - one * v.inner(one)
    nv = v.norm()
    return v * (1 / nv) if nv > 1e-12 else basis.zero()


@dataclass
class Instance:
    theta: BlaschkeProduct
    symbol: SymbolPair
    seed: int
    construction: str
    params: dict = field(default_factory=dict)

    @property
    def basis(self) -> TMBasis:
        return self.symbol.basis

    @property
    def degree(self) -> int:
        return self.theta.degree

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "type": "instance",
            "seed": self.seed,
            "degree": self.degree,
            "construction": {"kind": self.construction, **self.params},
            "grid": self.basis.grid.size,
            "theta": self.theta.to_json(),
            "theta_ref": self.theta.ref,
            "symbol": self.symbol.to_json(),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, data) -> Instance:
        if isinstance(data, str):
            data = json.loads(data)
        theta = BlaschkeProduct.from_json(data["theta"])
        basis = TMBasis(theta, CircleGrid(int(data["grid"])))
        symbol = SymbolPair.from_json(data["symbol"], basis)
        params = {k: v for k, v in data["construction"].items() if k != "kind"}
        return cls(theta, symbol, int(data["seed"]), data["construction"]["kind"], params)


def _draw_theta(rng, degree: int, zeros_at_origin: bool) -> BlaschkeProduct:
    if zeros_at_origin:
        return BlaschkeProduct.monomial(degree)
    zeros = np.concatenate([[0j], random_disk_points(rng, degree - 1)])
    return BlaschkeProduct(tuple(zeros), np.exp(2j * np.pi * rng.random()))


def _normal_phi2(kind: str, phi1: ModelVector, alpha: complex) -> ModelVector:
    if kind == "propor":
        return phi1 * alpha
    return theta_conj(phi1) * alpha


def generate_instance(degree: int, seed: int, construction: str = "random", *,
                      alpha_angle: float | None = None, epsilon: float = 0.1,
                      zeros_at_origin: bool = False, grid_size: int | None = None) -> Instance:
    """Deterministic instance for ``(degree, seed, construction, ...)``.

    ``theta`` always has a zero at the origin, the remaining zeros are drawn
    uniformly from ``|a| <= 0.9``.  ``random`` and ``perturbed`` instances
    whose commutator defect falls in the ambiguous band ``[1e-8, 1e-4]``
    are redrawn.
    """
    if not 1 <= degree <= 12:
        raise ValueError(f"degree must be in 1..12, got {degree}")
    if construction not in CONSTRUCTIONS:
        raise ValueError(f"unknown construction {construction!r}")
    if alpha_angle is not None and not np.isfinite(alpha_angle):
        raise ValueError("alpha angle must be finite")
    rng = rng_for(seed)
    theta = _draw_theta(rng, degree, zeros_at_origin)
    basis = TMBasis(theta, CircleGrid(grid_size) if grid_size else None)
    if alpha_angle is None:
        alpha_angle = float(2 * np.pi * rng.random())
    alpha = np.exp(1j * alpha_angle)
    c0 = complex(rng.standard_normal(), rng.standard_normal())
    params = {"alpha_angle": alpha_angle, "zeros_at_origin": zeros_at_origin}

    if construction in ("propor", "conj_linked"):
        phi1 = random_centered(basis, rng)
        s = SymbolPair(c0, phi1, _normal_phi2(construction, phi1, alpha))
        return Instance(theta, s, seed, construction, params)

    if construction == "perturbed":
        params["epsilon"] = epsilon
        base = "propor" if rng.random() < 0.5 else "conj_linked"
        params["base"] = base
        phi1 = random_centered(basis, rng)
        normal_phi2 = _normal_phi2(base, phi1, alpha)

    for attempt in range(MAX_ATTEMPTS):
        if construction == "random":
            phi1 = random_centered(basis, rng)
            phi2 = random_centered(basis, rng)
        else:
            phi2 = normal_phi2 + random_centered(basis, rng) * epsilon
        s = SymbolPair(c0, phi1, phi2)
        d = commutator_defect(build_tto(basis, s))
        if not NORMAL_TOL <= d <= SEPARATION:
            return Instance(theta, s, seed, construction, params)
        log.info("seed %d attempt %d: defect %.3g in ambiguous band, redrawing", seed, attempt, d)
    raise RuntimeError(f"seed {seed}: no unambiguous instance after {MAX_ATTEMPTS} draws")
