"""Function arithmetic on the unit circle.

Boundary functions are handled two ways: as samples on an equispaced grid of
roots of unity, and as banded Fourier coefficient sequences.  The FFT moves
between the two.  The Szego projection ``P`` keeps the nonnegative
frequencies (the ``H^2`` part) and ``P_perp`` keeps the negative ones.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Mapping

import numpy as np

__all__ = [
    "BandLimitError",
    "CircleGrid",
    "DiskPoint",
    "FourierSeries",
    "default_grid_size",
    "inner_product",
    "poisson_extend",
    "szego_kernel",
    "szego_project",
    "u_operator",
    "v_theta",
]

MIN_GRID = 1024
POISSON_GUARD = 1e-6
# Zeros beyond this modulus converge too slowly for the default grid.
ZERO_GUARD = 0.95


class BandLimitError(ValueError):
    """Raised when a result does not fit in the requested band."""


def _is_pow2(n: int) -> bool:
    return n > 0 and n & (n - 1) == 0


def default_grid_size(degree: int, max_zero_modulus: float = 0.0) -> int:
    """Grid size used for a Blaschke product of the given degree.

    Returns ``max(1024, 64 * (degree + 1))`` rounded up to a power of two.
    Raises ``ValueError`` when a zero lies outside the ``0.95`` guard band,
    since the default grid no longer resolves such a product to ``1e-12``;
    callers may still pass a larger grid explicitly.
    """
    if max_zero_modulus > ZERO_GUARD:
        raise ValueError(
            f"zero modulus {max_zero_modulus:.6g} exceeds {ZERO_GUARD}; "
            "pass an explicit (larger) CircleGrid")
    n = max(MIN_GRID, 64 * (degree + 1))
    return 1 << (n - 1).bit_length()


@dataclass(frozen=True)
class CircleGrid:
    """The ``size``-th roots of unity, counterclockwise from 1."""

    size: int

    def __post_init__(self):
        if not _is_pow2(self.size) or self.size < 8:
            raise ValueError(f"grid size must be a power of two >= 8, got {self.size}")

    @cached_property
    def angles(self) -> np.ndarray:
        return 2 * np.pi * np.arange(self.size) / self.size

    @cached_property
    def nodes(self) -> np.ndarray:
        return np.exp(1j * self.angles)

    @property
    def band_limit(self) -> int:
        """Largest band that round-trips through this grid."""
        return self.size // 2 - 1

    def mean(self, values) -> complex:
        """Trapezoid rule for ``int f dt/2pi`` (spectrally accurate)."""
        return np.mean(values)


@dataclass(frozen=True)
class DiskPoint:
    value: complex

    def __post_init__(self):
        if not abs(self.value) < 1:
            raise ValueError(f"|w| must be < 1, got {abs(self.value)}")

    def __complex__(self):
        return complex(self.value)


def _as_disk(w) -> complex:
    return complex(DiskPoint(complex(w)))


class FourierSeries:
    """Banded coefficient sequence ``{k: c_k}`` for ``-K <= k <= K``.

    Coefficients are stored densely; ``coeffs[k + K]`` is frequency ``k``.
    Instances are immutable.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs):
        c = np.array(coeffs, dtype=complex)
        if c.ndim != 1 or c.size % 2 != 1:
            raise ValueError("coefficient array must be 1-D with odd length 2K+1")
        c.setflags(write=False)
        self._c = c

    # construction ---------------------------------------------------------

    @classmethod
    def zeros(cls, band_limit: int) -> FourierSeries:
        return cls(np.zeros(2 * band_limit + 1, dtype=complex))

    @classmethod
    def from_dict(cls, coeffs: Mapping[int, complex], band_limit: int | None = None):
        if band_limit is None:
            band_limit = max((abs(k) for k in coeffs), default=0)
        c = np.zeros(2 * band_limit + 1, dtype=complex)
        for k, v in coeffs.items():
            if abs(k) > band_limit:
                raise BandLimitError(f"frequency {k} outside band {band_limit}")
            c[k + band_limit] += v
        return cls(c)

    @classmethod
    def monomial(cls, k: int, scale: complex = 1.0) -> FourierSeries:
        return cls.from_dict({k: scale})

    @classmethod
    def from_samples(cls, values, band_limit: int | None = None) -> FourierSeries:
        """Recover coefficients from samples on the ``len(values)`` grid.

        Exact for series of band ``< N/2``; otherwise frequencies alias.
        The Nyquist frequency ``N/2`` is discarded.
        """
        values = np.asarray(values, dtype=complex)
        n = values.size
        if band_limit is None:
            band_limit = n // 2 - 1
        if 2 * band_limit >= n:
            raise BandLimitError(f"band {band_limit} needs a grid larger than {n}")
        raw = np.fft.fft(values) / n
        k = np.arange(-band_limit, band_limit + 1)
        return cls(raw[k % n])

    # access ---------------------------------------------------------------

    @property
    def band_limit(self) -> int:
        return self._c.size // 2

    @property
    def coeffs(self) -> np.ndarray:
        return self._c

    @property
    def frequencies(self) -> np.ndarray:
        K = self.band_limit
        return np.arange(-K, K + 1)

    def __getitem__(self, k: int) -> complex:
        K = self.band_limit
        return complex(self._c[k + K]) if abs(k) <= K else 0j

    def as_dict(self, tol: float = 0.0) -> dict[int, complex]:
        return {int(k): complex(c) for k, c in zip(self.frequencies, self._c) if abs(c) > tol}

    def __repr__(self):
        terms = self.as_dict(tol=1e-14)
        return f"FourierSeries(band_limit={self.band_limit}, {terms})"

    # band handling --------------------------------------------------------

    def with_band(self, band_limit: int) -> FourierSeries:
        """Pad with zeros or truncate to ``band_limit``."""
        K = self.band_limit
        if band_limit >= K:
            pad = band_limit - K
            return FourierSeries(np.pad(self._c, (pad, pad)))
        cut = K - band_limit
        return FourierSeries(self._c[cut:-cut])

    def _aligned(self, other: FourierSeries):
        K = max(self.band_limit, other.band_limit)
        return self.with_band(K)._c, other.with_band(K)._c

    # arithmetic -----------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, FourierSeries):
            return self + FourierSeries([other])
        a, b = self._aligned(other)
        return FourierSeries(a + b)

    __radd__ = __add__

    def __neg__(self):
        return FourierSeries(-self._c)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, FourierSeries):
            # exact Cauchy product of Laurent polynomials
            return FourierSeries(np.convolve(self._c, other._c))
        return FourierSeries(self._c * complex(other))

    __rmul__ = __mul__

    def conj(self) -> FourierSeries:
        """Boundary conjugate: ``conj(f)`` has coefficients ``conj(c_{-k})``."""
        return FourierSeries(np.conj(self._c[::-1]))

    def star(self) -> FourierSeries:
        """``f*(z) = conj(f(conj z))``; conjugates coefficients in place."""
        return FourierSeries(np.conj(self._c))

    def analytic(self) -> FourierSeries:
        c = self._c.copy()
        c[: self.band_limit] = 0
        return FourierSeries(c)

    def coanalytic(self) -> FourierSeries:
        c = self._c.copy()
        c[self.band_limit:] = 0
        return FourierSeries(c)

    def norm(self) -> float:
        return float(np.linalg.norm(self._c))

    def mean(self) -> complex:
        return self[0]

    # evaluation -----------------------------------------------------------

    def __call__(self, z):
        """Evaluate the Laurent polynomial at ``z`` (``z != 0`` if negative part)."""
        z = np.asarray(z, dtype=complex)
        K = self.band_limit
        out = np.zeros_like(z)
        # Horner on the analytic part, then the negative powers
        for c in self._c[K:][::-1]:
            out = out * z + c
        if K and np.any(self._c[:K]):
            zi = 1 / z
            neg = np.zeros_like(z)
            for c in self._c[:K]:
                neg = (neg + c) * zi
            out = out + neg
        return out[()] if out.ndim == 0 else out

    def samples(self, grid: CircleGrid) -> np.ndarray:
        """Values at the grid nodes, via inverse FFT (aliases if band >= N/2)."""
        n = grid.size
        buf = np.zeros(n, dtype=complex)
        np.add.at(buf, self.frequencies % n, self._c)
        return np.fft.ifft(buf) * n

    def allclose(self, other: FourierSeries, atol: float = 1e-12) -> bool:
        a, b = self._aligned(other)
        return bool(np.max(np.abs(a - b), initial=0.0) <= atol)

    # serialization --------------------------------------------------------

    def to_json(self) -> dict:
        rows = [[int(k), float(c.real), float(c.imag)]
                for k, c in zip(self.frequencies, self._c) if c != 0]
        return {"band_limit": self.band_limit, "coeffs": rows}

    @classmethod
    def from_json(cls, data) -> FourierSeries:
        if isinstance(data, str):
            data = json.loads(data)
        return cls.from_dict({int(k): complex(re, im) for k, re, im in data["coeffs"]},
                             band_limit=int(data["band_limit"]))


def inner_product(f: FourierSeries, g: FourierSeries) -> complex:
    """``<f, g> = sum_k f_k conj(g_k)``, the ``L^2(dt/2pi)`` pairing."""
    a, b = f._aligned(g)
    return complex(np.vdot(b, a))


def szego_project(f: FourierSeries, part: str = "analytic") -> FourierSeries:
    """``P f`` (``part="analytic"``) or ``P_perp f`` (``part="coanalytic"``)."""
    if part == "analytic":
        return f.analytic()
    if part == "coanalytic":
        return f.coanalytic()
    raise ValueError(f"part must be 'analytic' or 'coanalytic', got {part!r}")


def szego_kernel(w, band_limit: int) -> FourierSeries:
    """``k_w(z) = 1/(1 - conj(w) z)`` truncated to ``band_limit``."""
    w = _as_disk(w)
    c = np.zeros(2 * band_limit + 1, dtype=complex)
    c[band_limit:] = np.conj(w) ** np.arange(band_limit + 1)
    return FourierSeries(c)


def poisson_extend(boundary_values, w) -> float:
    """Harmonic extension of real boundary samples, evaluated at ``w``.

    Direct trapezoid sum of the Poisson kernel
    ``Re[(1 + conj(w) z)/(1 - conj(w) z)]`` over the grid nodes.
    """
    values = np.asarray(boundary_values)
    n = values.size
    if n < 8:
        raise ValueError("need at least 8 boundary samples")
    w = complex(w)
    if abs(w) > 1 - POISSON_GUARD:
        raise ValueError(f"|w| = {abs(w)} too close to the circle for quadrature")
    x = np.conj(w) * np.exp(2j * np.pi * np.arange(n) / n)
    kernel = ((1 + x) / (1 - x)).real
    return float(np.mean(np.real(values) * kernel))


def u_operator(h: FourierSeries) -> FourierSeries:
    """``(Uh)(z) = conj(z) h(conj z)``; on coefficients ``(Uh)_k = h_{-k-1}``."""
    K = h.band_limit
    c = np.zeros(2 * (K + 1) + 1, dtype=complex)
    # source frequency j lands on -j-1, i.e. the array is reversed and shifted down by one
    c[:-2] = h.coeffs[::-1]
    return FourierSeries(c)


def v_theta(h: FourierSeries, theta, grid: CircleGrid | None = None,
            band_limit: int | None = None, tol: float = 1e-9) -> FourierSeries:
    """``V_theta h = P(theta h)`` for a Blaschke product ``theta``.

    The product is formed on ``grid`` (default: twice the theta default
    grid) and returned with ``band_limit`` (default ``grid.band_limit``).
    Raises ``BandLimitError`` when the discarded tail is above ``tol``
    relative to the result norm.
    """
    if grid is None:
        grid = CircleGrid(2 * max(default_grid_size(theta.degree), _next_pow2(4 * h.band_limit + 8)))
    if 2 * h.band_limit >= grid.size:
        raise BandLimitError("grid too small for the input band; increase grid size")
    prod = FourierSeries.from_samples(theta(grid.nodes) * h.samples(grid))
    out = prod.analytic()
    if band_limit is not None and band_limit < out.band_limit:
        tail = out.coeffs[out.band_limit + band_limit + 1:]
        if np.linalg.norm(tail) > tol * max(out.norm(), 1.0):
            raise BandLimitError(
                f"output band {band_limit} drops a tail of norm {np.linalg.norm(tail):.3g}")
        out = out.with_band(band_limit)
    else:
        edge = out.coeffs[-max(1, out.band_limit // 10):]
        if np.linalg.norm(edge) > tol * max(out.norm(), 1.0):
            raise BandLimitError("result not resolved on this grid; increase grid size")
    return out


def _next_pow2(n: int) -> int:
    return 1 << max(3, (n - 1).bit_length())
