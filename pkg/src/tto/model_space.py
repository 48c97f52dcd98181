"""The model space ``K_theta = H^2 (-) theta H^2`` for a finite Blaschke product.

``K_theta`` has dimension ``deg theta`` and is spanned by the
Takenaka-Malmquist functions

    e_k(z) = sqrt(1 - |a_k|^2)/(1 - conj(a_k) z) * prod_{j<k} (z - a_j)/(1 - conj(a_j) z),

which are orthonormal.  Elements are stored as coordinates in that basis
(``ModelVector``); boundary computations go through grid samples.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .circle import CircleGrid, FourierSeries, default_grid_size
from .disk import BlaschkeProduct, MobiusTransform, mobius_compose

__all__ = [
    "ExpansionError",
    "ModelVector",
    "TMBasis",
    "conjugation",
    "crofoot",
    "crofoot_matrix",
    "p_theta",
    "project_model",
    "reproducing_kernel",
    "theta_conj",
    "tm_basis",
]

GRAM_TOL = 1e-10
RESIDUAL_TOL = 1e-8


class ExpansionError(RuntimeError):
    """A boundary function that should lie in ``K_theta`` does not."""


class TMBasis:
    """Orthonormal Takenaka-Malmquist basis of ``K_theta`` sampled on a grid."""

    def __init__(self, theta: BlaschkeProduct, grid: CircleGrid | None = None):
        if grid is None:
            grid = CircleGrid(default_grid_size(theta.degree, theta.max_zero_modulus))
        self.theta = theta
        self.grid = grid
        self.samples = self._eval(grid.nodes)
        self.samples.setflags(write=False)
        self.theta_samples = theta(grid.nodes)
        self.theta_samples.setflags(write=False)
        defect = self.gram_defect()
        if defect > GRAM_TOL:
            raise ValueError(f"Takenaka-Malmquist basis not orthonormal: Gram defect {defect:.3g}")

    @property
    def dim(self) -> int:
        return self.theta.degree

    @property
    def ref(self) -> str:
        return self.theta.ref

    def _eval(self, z) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        rows = []
        prefix = np.ones(z.shape, dtype=complex)
        for a in self.theta.zeros:
            rows.append(np.sqrt(1 - abs(a) ** 2) / (1 - np.conj(a) * z) * prefix)
            prefix = prefix * (z - a) / (1 - np.conj(a) * z)
        return np.array(rows)

    def evaluate(self, w) -> np.ndarray:
        """Closed-form values ``e_k(w)`` for ``|w| <= 1``."""
        return self._eval(complex(w))

    def gram(self) -> np.ndarray:
        """``G[i, j] = <e_j, e_i>`` by quadrature."""
        E = self.samples
        return np.conj(E) @ E.T / self.grid.size

    def gram_defect(self) -> float:
        return float(np.max(np.abs(self.gram() - np.eye(self.dim))))

    @cached_property
    def series(self) -> list[FourierSeries]:
        return [FourierSeries.from_samples(row) for row in self.samples]

    def coords(self, values) -> np.ndarray:
        """``<f, e_i>`` for boundary samples of ``f``."""
        return np.conj(self.samples) @ np.asarray(values) / self.grid.size

    def synthesize(self, coeffs) -> np.ndarray:
        return np.asarray(coeffs) @ self.samples

    def expand(self, values, what: str = "function", tol: float = RESIDUAL_TOL) -> ModelVector:
        """Coordinates of samples that must lie in ``K_theta``; checks the residual."""
        values = np.asarray(values, dtype=complex)
        c = self.coords(values)
        residual = np.sqrt(np.mean(np.abs(values - self.synthesize(c)) ** 2))
        if residual > tol * max(1.0, np.sqrt(np.mean(np.abs(values) ** 2))):
            raise ExpansionError(f"{what} is not in K_theta: residual {residual:.3g}")
        return ModelVector(self, c)

    def vector(self, coeffs) -> ModelVector:
        return ModelVector(self, np.asarray(coeffs, dtype=complex))

    def zero(self) -> ModelVector:
        return ModelVector(self, np.zeros(self.dim, dtype=complex))

    @cached_property
    def one(self) -> ModelVector:
        """Constant function 1 (in ``K_theta`` exactly when ``theta(0) = 0``)."""
        return self.expand(np.ones(self.grid.size), "constant 1")

    def __repr__(self):
        return f"TMBasis(degree={self.dim}, grid={self.grid.size}, theta_ref={self.ref})"


def tm_basis(theta: BlaschkeProduct, grid: CircleGrid | None = None) -> TMBasis:
    return TMBasis(theta, grid)


@dataclass(frozen=True, eq=False)
class ModelVector:
    """Element of ``K_theta`` given by coordinates in a ``TMBasis``."""

    basis: TMBasis
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex)
        if c.shape != (self.basis.dim,):
            raise ValueError(f"expected {self.basis.dim} coordinates, got shape {c.shape}")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    def _check(self, other: ModelVector):
        if other.basis is not self.basis and other.basis.ref != self.basis.ref:
            raise ValueError("model vectors live in different model spaces")

    def __add__(self, other: ModelVector) -> ModelVector:
        self._check(other)
        return ModelVector(self.basis, self.coeffs + other.coeffs)

    def __sub__(self, other: ModelVector) -> ModelVector:
        self._check(other)
        return ModelVector(self.basis, self.coeffs - other.coeffs)

    def __neg__(self) -> ModelVector:
        return ModelVector(self.basis, -self.coeffs)

    def __mul__(self, scalar) -> ModelVector:
        return ModelVector(self.basis, self.coeffs * complex(scalar))

    __rmul__ = __mul__

    def inner(self, other: ModelVector) -> complex:
        """``<self, other>``, linear in the first slot."""
        self._check(other)
        return complex(np.vdot(other.coeffs, self.coeffs))

    def norm(self) -> float:
        return float(np.linalg.norm(self.coeffs))

    def samples(self) -> np.ndarray:
        return self.basis.synthesize(self.coeffs)

    def series(self) -> FourierSeries:
        return FourierSeries.from_samples(self.samples())

    def __call__(self, w) -> complex:
        """``f(w) = <f, k_w^theta>``."""
        return self.inner(reproducing_kernel(self.basis, w))

    def to_json(self) -> dict:
        return {"theta_ref": self.basis.ref,
                "coeffs": [[float(c.real), float(c.imag)] for c in self.coeffs]}

    @classmethod
    def from_json(cls, data, basis: TMBasis) -> ModelVector:
        if isinstance(data, str):
            data = json.loads(data)
        if data["theta_ref"] != basis.ref:
            raise ValueError("theta_ref does not match the basis")
        return cls(basis, [complex(re, im) for re, im in data["coeffs"]])


def p_theta(f: FourierSeries, basis: TMBasis) -> FourierSeries:
    """``P_theta f = P f - theta P(conj(theta) f)`` computed on the boundary."""
    grid = basis.grid
    th = basis.theta_samples
    pf = f.analytic()
    inner = FourierSeries.from_samples(np.conj(th) * f.samples(grid)).analytic()
    outer = FourierSeries.from_samples(th * inner.samples(grid))
    return pf.with_band(grid.band_limit) - outer


def project_model(f: FourierSeries, basis: TMBasis) -> ModelVector:
    """Coordinates of ``P_theta f``; equal to ``<f, e_i>`` since ``e_i`` span ``K_theta``."""
    if 2 * f.band_limit >= basis.grid.size:
        raise ValueError("series band too large for the basis grid")
    return ModelVector(basis, basis.coords(f.samples(basis.grid)))


def reproducing_kernel(basis: TMBasis, w) -> ModelVector:
    """``k_w^theta = (1 - conj(theta(w)) theta)/(1 - conj(w) z)`` in basis coordinates.

    In an orthonormal basis the kernel has coordinates ``conj(e_i(w))``.
    """
    w = complex(w)
    if not abs(w) < 1:
        raise ValueError("reproducing kernels need |w| < 1")
    return ModelVector(basis, np.conj(basis.evaluate(w)))


def conjugation(f: ModelVector) -> ModelVector:
    """``C f = theta conj(z) conj(f)`` on the circle; antiunitary involution of ``K_theta``."""
    basis = f.basis
    g = basis.theta_samples * np.conj(basis.grid.nodes) * np.conj(f.samples())
    return basis.expand(g, "conjugation image")


def theta_conj(f: ModelVector) -> ModelVector:
    """The analytic function ``theta conj(f)`` for ``f(0) = 0``.

    On the circle ``theta conj(f) = C(conj(z) f)`` and ``conj(z) f`` is in
    ``K_theta`` when ``f(0) = 0`` and ``theta(0) = 0``.
    """
    basis = f.basis
    shifted = basis.expand(np.conj(basis.grid.nodes) * f.samples(), "backward shift")
    return conjugation(shifted)


def crofoot(f: ModelVector, a, target: TMBasis | None = None) -> ModelVector:
    """``J f = sqrt(1 - |a|^2)/(1 - conj(a) theta) f``, landing in ``K_{u_a o theta}``."""
    u = a if isinstance(a, MobiusTransform) else MobiusTransform(a)
    basis = f.basis
    if target is None:
        target = TMBasis(mobius_compose(basis.theta, u), basis.grid)
    factor = np.sqrt(1 - abs(u.a) ** 2) / (1 - np.conj(u.a) * basis.theta_samples)
    return target.expand(factor * f.samples(), "Crofoot image")


def crofoot_matrix(basis: TMBasis, a, target: TMBasis | None = None):
    """Matrix of ``J`` from the basis of ``K_theta`` to that of ``K_{u_a o theta}``.

    Returns ``(J, target)``; columns are the images of the basis vectors.
    """
    u = a if isinstance(a, MobiusTransform) else MobiusTransform(a)
    if target is None:
        target = TMBasis(mobius_compose(basis.theta, u), basis.grid)
    cols = [crofoot(basis.vector(np.eye(basis.dim)[k]), u, target).coeffs
            for k in range(basis.dim)]
    return np.array(cols).T, target
