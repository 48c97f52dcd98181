"""Normality of truncated Toeplitz operators.

For ``theta(0) = 0`` and a centered symbol ``phi = c0 + phi1 + conj(phi2)``,
``A_phi`` is normal exactly when either

    (A)  phi2 = alpha * phi1, or
    (B)  phi2 = alpha * theta * conj(phi1)

for a unimodular ``alpha``.  ``classify_normal`` decides this on the symbol;
``commutator_defect`` is the independent matrix-level oracle.  The
``verify_*`` functions evaluate both sides of each identity used in the
proof of the characterization, by separate numerical routes.

Branch (A) is the "self-adjoint plus identity" case: with ``gamma**2 =
alpha`` one has ``gamma * (phi1 + conj(alpha phi1)) = gamma phi1 +
conj(gamma phi1)``, which is real, so ``A_phi = c0 I + conj(gamma) A_real``.
Branch (B) is the Sedlock class: ``phi2 = alpha theta conj(phi1)`` is the
same as ``theta conj(phi2) = conj(alpha) phi1``, so the ``alpha`` reported by
``sedlock_condition`` is the conjugate of the branch (B) ``alpha``.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import NamedTuple

import numpy as np

from .circle import (CircleGrid, FourierSeries, poisson_extend, szego_kernel,
                     u_operator, v_theta)
from .disk import BlaschkeProduct
from .model_space import ModelVector, theta_conj
from .operators import SymbolPair, build_tto

__all__ = [
    "NORMAL_KINDS",
    "ModulusCheck",
    "NormalityVerdict",
    "classify_normal",
    "commutator_defect",
    "probe_points",
    "sedlock_condition",
    "verify_intertwining",
    "verify_kernel_identity",
    "verify_moment_identities",
    "verify_modulus_equality",
    "verify_norm_identity",
    "verify_poisson_mechanism",
]

NOT_NORMAL = "NotNormal"
PROPOR = "NormalPropor"
CONJ_LINKED = "NormalConjLinked"
DEGENERATE = "NormalDegenerate"
NORMAL_KINDS = (PROPOR, CONJ_LINKED, DEGENERATE)

ZERO_TOL = 1e-10


def commutator_defect(A) -> float:
    """Frobenius norm of ``A* A - A A*``."""
    M = np.asarray(getattr(A, "entries", A), dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError("commutator_defect needs a square matrix")
    H = M.conj().T
    return float(np.linalg.norm(H @ M - M @ H))


@dataclass
class NormalityVerdict:
    kind: str
    alpha: complex | None
    residual_a: float
    residual_b: float
    commutator_defect: float | None = None
    # second branch when (A) and (B) both hold
    overlap: tuple[str, complex] | None = None
    tolerances: dict = field(default_factory=dict)

    @property
    def is_normal(self) -> bool:
        return self.kind in NORMAL_KINDS

    def to_json(self) -> dict:
        d = asdict(self)
        d["alpha"] = None if self.alpha is None else [self.alpha.real, self.alpha.imag]
        if self.overlap is not None:
            k, a = self.overlap
            d["overlap"] = {"kind": k, "alpha": [a.real, a.imag]}
        return d

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def _fit_unimodular(target: ModelVector, ref: ModelVector):
    """Unimodular ``alpha`` minimizing ``||target - alpha ref||`` and the relative residual."""
    rn = ref.norm()
    tn = target.norm()
    if rn < ZERO_TOL or tn < ZERO_TOL:
        return None, 1.0
    alpha = target.inner(ref) / rn**2
    if abs(alpha) < 1e-300:
        return None, 1.0
    alpha /= abs(alpha)
    return alpha, (target - ref * alpha).norm() / tn


def classify_normal(s: SymbolPair, tol: float = 1e-8, with_oracle: bool = False) -> NormalityVerdict:
    """Decide normality of ``A_phi`` from its centered symbol.

    ``c0`` plays no role.  If exactly one of ``phi1``, ``phi2`` vanishes the
    operator is (co-)analytic and never normal, since both branches force
    ``||phi1|| = ||phi2||``.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    basis = s.basis
    if abs(basis.theta(0)) > ZERO_TOL:
        raise ValueError("classify_normal requires theta(0) = 0")
    phi1, phi2 = s.phi1, s.phi2
    n1, n2 = phi1.norm(), phi2.norm()
    tols = {"match": tol, "zero": ZERO_TOL}
    defect = commutator_defect(build_tto(basis, s)) if with_oracle else None

    if n1 < ZERO_TOL and n2 < ZERO_TOL:
        return NormalityVerdict(DEGENERATE, None, 0.0, 0.0, defect, tolerances=tols)

    alpha_a, res_a = _fit_unimodular(phi2, phi1)
    if n1 < ZERO_TOL or n2 < ZERO_TOL:
        alpha_b, res_b = None, 1.0
    else:
        alpha_b, res_b = _fit_unimodular(phi2, theta_conj(phi1))

    hits = []
    if alpha_a is not None and res_a < tol:
        hits.append((PROPOR, alpha_a))
    if alpha_b is not None and res_b < tol:
        hits.append((CONJ_LINKED, alpha_b))
    if not hits:
        return NormalityVerdict(NOT_NORMAL, None, res_a, res_b, defect, tolerances=tols)
    kind, alpha = hits[0]
    overlap = hits[1] if len(hits) > 1 else None
    return NormalityVerdict(kind, alpha, res_a, res_b, defect, overlap, tols)


def sedlock_condition(s: SymbolPair, tol: float = 1e-8):
    """Unimodular ``alpha`` with ``theta conj(phi2) = alpha phi1``, or ``None``.

    Returns ``(alpha, degenerate)``; ``degenerate`` is set when both parts
    vanish, in which case every ``alpha`` works and 1 is returned.
    """
    phi1, phi2 = s.phi1, s.phi2
    if phi1.norm() < ZERO_TOL and phi2.norm() < ZERO_TOL:
        return 1.0 + 0j, True
    if phi1.norm() < ZERO_TOL or phi2.norm() < ZERO_TOL:
        return None, False
    alpha, res = _fit_unimodular(theta_conj(phi2), phi1)
    return (alpha if res < tol else None), False


def verify_norm_identity(s: SymbolPair, u: ModelVector):
    """Both sides of ``||A u||^2 - ||A* u||^2 = (identity in the analytic parts)``.

    Left side from the matrix, right side from boundary Fourier coefficients:
    ``||P_perp(conj(theta) phi1 u)||^2 - ||P(conj(phi1) u)||^2`` minus the
    same expression for ``phi2``.
    """
    basis = s.basis
    A = build_tto(basis, s).entries
    x = u.coeffs
    lhs = np.linalg.norm(A @ x) ** 2 - np.linalg.norm(A.conj().T @ x) ** 2

    th = basis.theta_samples
    us = u.samples()

    def side(phi: ModelVector) -> float:
        ps = phi.samples()
        outer = FourierSeries.from_samples(np.conj(th) * ps * us).coanalytic().norm()
        inner = FourierSeries.from_samples(np.conj(ps) * us).analytic().norm()
        return outer**2 - inner**2

    rhs = side(s.phi1) - side(s.phi2)
    return float(lhs), float(rhs)


class ModulusCheck(NamedTuple):
    grid_defect: float
    poisson_defect: float


def probe_points(count: int = 16, radius: float = 0.85) -> np.ndarray:
    """Deterministic interior probes on a spiral out to ``radius``."""
    k = np.arange(count)
    r = radius * np.sqrt((k + 0.5) / count)
    return r * np.exp(2j * np.pi * 0.618033988749895 * k)


def verify_modulus_equality(s: SymbolPair, probes=None) -> ModulusCheck:
    """``max | |phi1| - |phi2| |`` on the grid and the gap between the
    harmonic extensions of ``|phi1|^2`` and ``|phi2|^2`` at the probes."""
    if probes is None:
        probes = probe_points()
    a1 = np.abs(s.phi1.samples())
    a2 = np.abs(s.phi2.samples())
    grid_defect = float(np.max(np.abs(a1 - a2)))
    poisson_defect = max(abs(poisson_extend(a1**2, w) - poisson_extend(a2**2, w)) for w in probes)
    return ModulusCheck(grid_defect, float(poisson_defect))


def verify_poisson_mechanism(phi: ModelVector, w) -> tuple[float, float]:
    """``Re <P_perp(conj(theta) phi k_w^theta), conj(theta) phi>`` against
    ``(||phi||^2 + harmonic extension of |phi|^2 at w) / 2``."""
    basis = phi.basis
    z = basis.grid.nodes
    w = complex(w)
    kw = (1 - np.conj(basis.theta(w)) * basis.theta_samples) / (1 - np.conj(w) * z)
    h = np.conj(basis.theta_samples) * phi.samples()
    ph = FourierSeries.from_samples(h * kw).coanalytic()
    lhs = np.vdot(FourierSeries.from_samples(h).coeffs, ph.with_band(basis.grid.band_limit).coeffs).real
    rhs = 0.5 * (phi.norm() ** 2 + poisson_extend(np.abs(phi.samples()) ** 2, w))
    return float(lhs), float(rhs)


def verify_intertwining(theta: BlaschkeProduct, g: FourierSeries, f: FourierSeries,
                        grid: CircleGrid | None = None):
    """``(||P(conj(g) V_theta U f)||, ||P_perp(conj(theta) g f*)||)``."""
    for name, h in (("g", g), ("f", f)):
        if h.coanalytic().norm() > 0:
            raise ValueError(f"{name} must be analytic")
    if grid is None:
        grid = CircleGrid(2048)
    vu = v_theta(u_operator(f), theta, grid)
    left = FourierSeries.from_samples(np.conj(g.samples(grid)) * vu.samples(grid)).analytic()
    right_samples = np.conj(theta(grid.nodes)) * g.samples(grid) * f.star().samples(grid)
    right = FourierSeries.from_samples(right_samples).coanalytic()
    return left.norm(), right.norm()


def verify_kernel_identity(f: FourierSeries, w, grid: CircleGrid | None = None) -> float:
    """``||P(conj(f) k_w) - conj(f(w)) k_w||`` over the working band."""
    if f.coanalytic().norm() > 0:
        raise ValueError("f must be analytic")
    w = complex(w)
    if not abs(w) < 1:
        raise ValueError("need |w| < 1")
    if grid is None:
        grid = CircleGrid(2048)
    z = grid.nodes
    kw = 1 / (1 - np.conj(w) * z)
    lhs = FourierSeries.from_samples(np.conj(f.samples(grid)) * kw).analytic()
    rhs = szego_kernel(w, grid.band_limit) * np.conj(f(w))
    return (lhs - rhs).norm()


def _analytic_value(samples, w, grid: CircleGrid) -> complex:
    """``<h, k_w>`` by quadrature: the value at ``w`` of the analytic part of ``h``."""
    return complex(np.mean(samples * (1 - w * np.conj(grid.nodes)) ** -1))


def verify_moment_identities(s: SymbolPair, w) -> tuple[float, float]:
    """Defects of the two pointwise identities at ``w``:

    ``|phi1|^2 + |(theta conj phi1)|^2 = |phi2|^2 + |(theta conj phi2)|^2`` and
    ``phi1 (theta conj phi1) = phi2 (theta conj phi2)``, all evaluated at ``w``.
    """
    basis = s.basis
    w = complex(w)
    grid = basis.grid
    th = basis.theta_samples
    v1, v2 = s.phi1(w), s.phi2(w)
    t1 = _analytic_value(th * np.conj(s.phi1.samples()), w, grid)
    t2 = _analytic_value(th * np.conj(s.phi2.samples()), w, grid)
    m1 = abs(abs(v1) ** 2 + abs(t1) ** 2 - abs(v2) ** 2 - abs(t2) ** 2)
    m2 = abs(v1 * t1 - v2 * t2)
    return float(m1), float(m2)
