"""Uniform periodic grids on the unit circle.

All integrals over the circle in this package are trapezoid sums on an
``AngleGrid`` and all derivatives are spectral (FFT based).  For smooth
2π-periodic integrands the trapezoid rule converges geometrically, and it is
exact for trigonometric polynomials of degree < n/2.
"""

import logging
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import InvalidParameter

logger = logging.getLogger(__name__)

DEFAULT_GRID_N = 256
MIN_GRID_N = 8


def _check_n(n: int) -> int:
    if int(n) != n or n < MIN_GRID_N or n % 2:
        raise InvalidParameter(f"grid size must be an even integer >= {MIN_GRID_N}, got {n}")
    return int(n)


@dataclass(frozen=True)
class AngleGrid:
    n: int = DEFAULT_GRID_N

    def __post_init__(self):
        object.__setattr__(self, "n", _check_n(self.n))

    @property
    def spacing(self) -> float:
        return 2.0 * np.pi / self.n

    @cached_property
    def nodes(self) -> np.ndarray:
        theta = self.spacing * np.arange(self.n)
        theta.flags.writeable = False
        return theta

    @cached_property
    def normals(self) -> np.ndarray:
        """(n, 2) array of unit normals u(θ_j) = (cos θ_j, sin θ_j)."""
        u = np.column_stack((np.cos(self.nodes), np.sin(self.nodes)))
        u.flags.writeable = False
        return u

    def sample(self, func) -> "PeriodicSamples":
        return PeriodicSamples(self, func(self.nodes))


@dataclass(frozen=True, eq=False)
class PeriodicSamples:
    """Values of a 2π-periodic function at the nodes of ``grid``."""

    grid: AngleGrid
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        values = np.array(self.values, dtype=float)
        if values.shape != (self.grid.n,):
            raise InvalidParameter(
                f"expected {self.grid.n} samples, got shape {values.shape}"
            )
        values.flags.writeable = False
        object.__setattr__(self, "values", values)

    @property
    def n(self) -> int:
        return self.grid.n

    def with_values(self, values) -> "PeriodicSamples":
        return PeriodicSamples(self.grid, values)

    def min(self) -> float:
        return float(self.values.min())

    def max(self) -> float:
        return float(self.values.max())

    def argmin_angle(self) -> float:
        return float(self.grid.nodes[int(np.argmin(self.values))])


def integrate(s: PeriodicSamples) -> float:
    """Trapezoid rule over one period: (2π/n)·Σ values."""
    return float(s.grid.spacing * np.sum(s.values))


def fourier_derivatives(s: PeriodicSamples) -> tuple[PeriodicSamples, PeriodicSamples]:
    """First and second derivatives by multiplying mode k by ik and -k²."""
    n = s.n
    coeffs = np.fft.rfft(s.values)
    k = np.arange(coeffs.size)
    first = 1j * k * coeffs
    # Nyquist mode of an odd derivative has no real representative.
    first[-1] = 0.0
    second = -(k.astype(float) ** 2) * coeffs
    return (
        s.with_values(np.fft.irfft(first, n)),
        s.with_values(np.fft.irfft(second, n)),
    )


def resample(s: PeriodicSamples, n_new: int) -> PeriodicSamples:
    """Trigonometric interpolation onto an ``n_new``-node grid.

    The spectrum is zero-padded when refining and truncated when coarsening.
    The shared Nyquist mode is split (refining) or folded (coarsening) so that
    a refine-then-coarsen round trip is the identity.
    """
    n_new = _check_n(n_new)
    n = s.n
    if n_new == n:
        return s
    coeffs = np.fft.rfft(s.values)
    out = np.zeros(n_new // 2 + 1, dtype=complex)
    ratio = n_new / n
    m = min(n, n_new) // 2
    out[:m] = coeffs[:m] * ratio
    if n_new > n:
        out[m] = coeffs[m] * ratio / 2.0
    else:
        out[m] = 2.0 * coeffs[m].real * ratio
    return PeriodicSamples(AngleGrid(n_new), np.fft.irfft(out, n_new))
