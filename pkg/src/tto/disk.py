"""Finite Blaschke products and disk automorphisms."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass

import numpy as np

__all__ = [
    "BlaschkeProduct",
    "MobiusTransform",
    "RootRecoveryError",
    "blaschke_eval",
    "companion_roots",
    "mobius_compose",
]

ROOT_GUARD = 1e-10


class RootRecoveryError(ValueError):
    """A recovered zero of a composed product is not inside the disk."""


@dataclass(frozen=True)
class BlaschkeProduct:
    """``theta(z) = const * prod_j (z - a_j)/(1 - conj(a_j) z)``.

    Repeated zeros encode multiplicity.  ``const`` is unimodular.
    """

    zeros: tuple[complex, ...]
    const: complex = 1.0 + 0j

    def __post_init__(self):
        zeros = tuple(complex(a) for a in self.zeros)
        if not zeros:
            raise ValueError("a Blaschke product needs at least one zero (non-constant)")
        if any(not abs(a) < 1 for a in zeros):
            raise ValueError("all zeros must lie strictly inside the unit disk")
        const = complex(self.const)
        if abs(abs(const) - 1) > 1e-12:
            raise ValueError(f"|const| must be 1, got {abs(const)}")
        object.__setattr__(self, "zeros", zeros)
        object.__setattr__(self, "const", const)

    @classmethod
    def monomial(cls, n: int) -> BlaschkeProduct:
        """``z**n``."""
        return cls((0j,) * n)

    @property
    def degree(self) -> int:
        return len(self.zeros)

    @property
    def max_zero_modulus(self) -> float:
        return max(abs(a) for a in self.zeros)

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        out = np.full(z.shape, self.const, dtype=complex)
        for a in self.zeros:
            out = out * (z - a) / (1 - np.conj(a) * z)
        return out[()] if out.ndim == 0 else out

    def partial(self, k: int, z):
        """Product of the first ``k`` Blaschke factors (no constant)."""
        z = np.asarray(z, dtype=complex)
        out = np.ones(z.shape, dtype=complex)
        for a in self.zeros[:k]:
            out = out * (z - a) / (1 - np.conj(a) * z)
        return out

    def numerator(self) -> np.ndarray:
        """``const * prod (z - a_j)``, coefficients highest degree first."""
        return self.const * np.poly(np.array(self.zeros))

    def denominator(self) -> np.ndarray:
        """``prod (1 - conj(a_j) z)``, coefficients highest degree first."""
        p = np.array([1.0 + 0j])
        for a in self.zeros:
            p = np.convolve(p, [-np.conj(a), 1.0])
        return p

    def to_json(self) -> dict:
        return {"zeros": [[a.real, a.imag] for a in self.zeros],
                "const": [self.const.real, self.const.imag]}

    @classmethod
    def from_json(cls, data) -> BlaschkeProduct:
        if isinstance(data, str):
            data = json.loads(data)
        const = data.get("const", [1.0, 0.0])
        return cls(tuple(complex(re, im) for re, im in data["zeros"]), complex(*const))

    @property
    def ref(self) -> str:
        """Content hash of the serialized product; tags vectors and matrices."""
        blob = json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()[:16]


def blaschke_eval(theta: BlaschkeProduct, z):
    if np.any(np.abs(np.asarray(z)) > 1 + 1e-12):
        raise ValueError("blaschke_eval is defined on the closed unit disk")
    return theta(z)


@dataclass(frozen=True)
class MobiusTransform:
    """``u_a(z) = (z - a)/(1 - conj(a) z)``."""

    a: complex

    def __post_init__(self):
        a = complex(self.a)
        if not abs(a) < 1:
            raise ValueError(f"|a| must be < 1, got {abs(a)}")
        object.__setattr__(self, "a", a)

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        out = (z - self.a) / (1 - np.conj(self.a) * z)
        return out[()] if out.ndim == 0 else out

    def inverse(self) -> MobiusTransform:
        return MobiusTransform(-self.a)


def companion_roots(coeffs) -> np.ndarray:
    """Roots of a polynomial (highest degree first) as companion-matrix eigenvalues."""
    c = np.trim_zeros(np.asarray(coeffs, dtype=complex), "f")
    n = c.size - 1
    if n < 1:
        return np.zeros(0, dtype=complex)
    comp = np.zeros((n, n), dtype=complex)
    comp[1:, :-1] = np.eye(n - 1)
    comp[:, -1] = -c[::-1][:-1] / c[0]
    return np.linalg.eigvals(comp)


def mobius_compose(theta: BlaschkeProduct, a) -> BlaschkeProduct:
    """The Blaschke product ``u_a o theta``.

    Its zeros solve ``theta(z) = a``, i.e. they are the roots of
    ``numerator - a * denominator``.  The unimodular constant is matched
    against ``u_a(theta(1))``.
    """
    u = a if isinstance(a, MobiusTransform) else MobiusTransform(a)
    if u.a == 0:
        return theta
    poly = theta.numerator() - u.a * theta.denominator()
    roots = companion_roots(poly)
    if roots.size != theta.degree:
        raise RootRecoveryError("degree dropped during composition")
    worst = np.max(np.abs(roots))
    if worst >= 1 - ROOT_GUARD:
        raise RootRecoveryError(f"recovered zero with modulus {worst:.12g}")
    bare = BlaschkeProduct(tuple(roots))
    probe = 1.0 + 0j
    ratio = u(theta(probe)) / bare(probe)
    return BlaschkeProduct(tuple(roots), ratio / abs(ratio))
