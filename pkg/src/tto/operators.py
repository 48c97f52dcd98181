"""Truncated Toeplitz operators ``A_phi u = P_theta(phi u)`` as matrices."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .circle import FourierSeries
from .model_space import ModelVector, TMBasis, project_model

__all__ = [
    "SymbolPair",
    "TTOMatrix",
    "adjoint",
    "build_tto",
    "build_tto_samples",
    "build_tto_series",
    "canonicalize_symbol",
    "classical_toeplitz",
    "is_zero_tto",
    "tto_membership",
]

CENTER_TOL = 1e-10
VERIFY_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class SymbolPair:
    """Symbol ``phi = c0 + phi1 + conj(phi2)`` with ``phi1(0) = phi2(0) = 0``."""

    c0: complex
    phi1: ModelVector
    phi2: ModelVector

    def __post_init__(self):
        object.__setattr__(self, "c0", complex(self.c0))
        self.phi1._check(self.phi2)
        for name in ("phi1", "phi2"):
            v = getattr(self, name)
            at0 = abs(v(0))
            if at0 > CENTER_TOL * max(1.0, v.norm()):
                raise ValueError(f"{name}(0) = {at0:.3g}; symbol parts must vanish at 0")

    @property
    def basis(self) -> TMBasis:
        return self.phi1.basis

    def samples(self) -> np.ndarray:
        return self.c0 + self.phi1.samples() + np.conj(self.phi2.samples())

    def swapped(self) -> SymbolPair:
        """Symbol of the adjoint, ``conj(phi)``."""
        return SymbolPair(np.conj(self.c0), self.phi2, self.phi1)

    def __add__(self, other: SymbolPair) -> SymbolPair:
        return SymbolPair(self.c0 + other.c0, self.phi1 + other.phi1, self.phi2 + other.phi2)

    def rotated(self, beta) -> SymbolPair:
        """``(c0, beta phi1, beta phi2)``."""
        return SymbolPair(self.c0, self.phi1 * beta, self.phi2 * beta)

    def to_json(self) -> dict:
        return {"c0": [self.c0.real, self.c0.imag],
                "phi1": self.phi1.to_json(), "phi2": self.phi2.to_json()}

    @classmethod
    def from_json(cls, data, basis: TMBasis) -> SymbolPair:
        return cls(complex(*data["c0"]),
                   ModelVector.from_json(data["phi1"], basis),
                   ModelVector.from_json(data["phi2"], basis))


@dataclass(frozen=True, eq=False)
class TTOMatrix:
    """Matrix ``entries[i, j] = <A_phi e_j, e_i>`` in the Takenaka-Malmquist basis."""

    entries: np.ndarray
    theta_ref: str
    symbol: SymbolPair | None = None

    def __post_init__(self):
        m = np.array(self.entries, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError("TTO matrix must be square")
        m.setflags(write=False)
        object.__setattr__(self, "entries", m)

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        for row in self.entries:
            writer.writerow([f"{float(c.real)!r},{float(c.imag)!r}" for c in row])
        return buf.getvalue()

    def to_json(self) -> dict:
        return {
            "schema": "tto-report/1",
            "theta_ref": self.theta_ref,
            "n": self.n,
            "entries": [[[c.real, c.imag] for c in row] for row in self.entries],
            "symbol": None if self.symbol is None else self.symbol.to_json(),
        }

    @classmethod
    def from_json(cls, data, basis: TMBasis | None = None) -> TTOMatrix:
        if isinstance(data, str):
            data = json.loads(data)
        entries = [[complex(re, im) for re, im in row] for row in data["entries"]]
        symbol = None
        if data.get("symbol") is not None and basis is not None:
            symbol = SymbolPair.from_json(data["symbol"], basis)
        return cls(np.array(entries), data["theta_ref"], symbol)


def build_tto_samples(basis: TMBasis, values) -> np.ndarray:
    """Matrix of the compression of multiplication by the sampled symbol.

    ``P_theta`` drops out because each ``e_i`` is already in ``K_theta``.
    """
    E = basis.samples
    return (np.conj(E) * np.asarray(values)) @ E.T / basis.grid.size


def build_tto(basis: TMBasis, s: SymbolPair) -> TTOMatrix:
    if s.basis.ref != basis.ref:
        raise ValueError("symbol and basis belong to different model spaces")
    return TTOMatrix(build_tto_samples(basis, s.samples()), basis.ref, s)


def build_tto_series(basis: TMBasis, raw: FourierSeries) -> TTOMatrix:
    """Matrix for a symbol given as a banded Fourier series."""
    return TTOMatrix(build_tto_samples(basis, raw.samples(basis.grid)), basis.ref)


def adjoint(A: TTOMatrix) -> TTOMatrix:
    sym = None if A.symbol is None else A.symbol.swapped()
    return TTOMatrix(A.entries.conj().T, A.theta_ref, sym)


def _require_origin_zero(basis: TMBasis):
    t0 = abs(basis.theta(0))
    if t0 > CENTER_TOL:
        raise ValueError(f"theta(0) = {t0:.3g}; reduce with the Crofoot transform first")


def canonicalize_symbol(raw: FourierSeries, basis: TMBasis) -> SymbolPair:
    """The unique symbol in ``C + K_theta + conj(K_theta)`` giving the same operator.

    Requires ``theta(0) = 0``.  The analytic part of ``raw`` is compressed to
    ``K_theta``, the co-analytic part likewise after conjugation; both are
    centered and the removed constants merged into ``c0``.  The result is
    checked against the operator built from ``raw`` directly.
    """
    _require_origin_zero(basis)
    analytic = raw.analytic()
    # conj of the strictly negative frequencies: an analytic series with zero mean
    anti = raw.coanalytic().conj()
    p1 = project_model(analytic, basis)
    p2 = project_model(anti, basis)
    one = basis.one
    m1, m2 = p1(0), p2(0)
    s = SymbolPair(m1 + np.conj(m2), p1 - one * m1, p2 - one * m2)
    direct = build_tto_series(basis, raw).entries
    err = np.max(np.abs(build_tto(basis, s).entries - direct))
    if err > VERIFY_TOL * max(1.0, np.max(np.abs(direct))):
        raise RuntimeError(f"canonical symbol does not reproduce the operator (error {err:.3g})")
    return s


def is_zero_tto(raw: FourierSeries, basis: TMBasis, tol: float = 1e-9) -> bool:
    """Sarason test: ``A_phi = 0`` iff ``phi`` is in ``theta H^2 + conj(theta H^2)``."""
    s = canonicalize_symbol(raw, basis)
    by_symbol = max(abs(s.c0), s.phi1.norm(), s.phi2.norm()) < tol
    by_operator = np.linalg.norm(build_tto_series(basis, raw).entries, 2) < VERIFY_TOL
    if by_symbol != by_operator:
        raise RuntimeError("symbol and operator zero tests disagree")
    return by_symbol


def _generators(basis: TMBasis) -> np.ndarray:
    """Matrices ``A_{e_k}`` then ``A_{conj e_k}``, flattened as columns."""
    E = basis.samples
    analytic = [build_tto_samples(basis, e) for e in E]
    cols = analytic + [m.conj().T for m in analytic]
    return np.array([m.ravel() for m in cols]).T


def tto_membership(M, basis: TMBasis):
    """Least-squares distance (Frobenius) from ``M`` to the TTO space of ``basis``.

    The ``2n`` generators span a space of dimension ``2n - 1``: the identity
    is reachable from both the analytic and the co-analytic side.  Returns
    ``(residual, symbol)``; ``symbol`` is the centered best-fit
    ``SymbolPair`` when ``theta(0) = 0`` and ``None`` otherwise.
    """
    M = np.asarray(getattr(M, "entries", M), dtype=complex)
    n = basis.dim
    G = _generators(basis)
    x, _, rank, _ = np.linalg.lstsq(G, M.ravel(), rcond=1e-10)
    assert rank == 2 * n - 1, f"TTO span has rank {rank}, expected {2 * n - 1}"
    residual = float(np.linalg.norm(G @ x - M.ravel()))
    symbol = None
    if abs(basis.theta(0)) <= CENTER_TOL:
        p1 = basis.vector(x[:n])
        p2 = basis.vector(np.conj(x[n:]))
        one = basis.one
        m1, m2 = p1(0), p2(0)
        symbol = SymbolPair(m1 + np.conj(m2), p1 - one * m1, p2 - one * m2)
    return residual, symbol


def classical_toeplitz(s: SymbolPair) -> np.ndarray:
    """``T[i, j] = phi_hat(i - j)`` for ``theta = z**n``, read off the monomial coordinates."""
    c = np.empty(s.basis.dim, dtype=complex)
    r = np.empty(s.basis.dim, dtype=complex)
    c[0] = r[0] = s.c0
    c[1:] = s.phi1.coeffs[1:]
    r[1:] = np.conj(s.phi2.coeffs[1:])
    return scipy.linalg.toeplitz(c, r)
