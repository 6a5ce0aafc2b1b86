"""Scalar and density functionals of planar bodies.

In the plane det(h_ij + h δ_ij) reduces to the curvature radius f = h + h''
and the Gauss curvature to the curve curvature κ = 1/f, so every functional
here is a trapezoid sum of pointwise products of h and f.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np

from .body import Body, common_grid
from .config import DEFAULT_TOLERANCES, Tolerances
from .errors import NegativeDiscriminant
from .grid import PeriodicSamples, integrate

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class ConeVolumeDensity:
    """Density of a (mixed) cone-volume measure w.r.t. dθ, and its total mass."""

    density: PeriodicSamples
    total: float


@dataclass(frozen=True)
class SteinerRoots:
    """Roots t1 >= t2 of V(K) + 2t·V(K,L) + t²·V(L) = 0."""

    t1: float
    t2: float
    discriminant: float


def volume(K: Body) -> float:
    return 0.5 * integrate(K.h.with_values(K.h.values * K.f.values))


def _half_mixed(K: Body, L: Body) -> float:
    return 0.5 * integrate(K.h.with_values(K.h.values * L.f.values))


def mixed_volume(K: Body, L: Body) -> float:
    """V(K, L), averaged over both integration orders."""
    K, L = common_grid(K, L)
    a, b = _half_mixed(K, L), _half_mixed(L, K)
    logger.debug("mixed volume %s,%s asymmetry %.3g", K.name, L.name, abs(a - b))
    return 0.5 * (a + b)


def mixed_volume_asymmetry(K: Body, L: Body) -> float:
    """|½∫h_K f_L − ½∫h_L f_K|: zero in exact arithmetic, a quadrature health check."""
    K, L = common_grid(K, L)
    return abs(_half_mixed(K, L) - _half_mixed(L, K))


def curvature(K: Body) -> PeriodicSamples:
    return K.f.with_values(1.0 / K.f.values)


def relative_curvature_radius(K: Body, L: Body) -> PeriodicSamples:
    """ρ_{K,L} = κ_L/κ_K = f_K/f_L."""
    K, L = common_grid(K, L)
    return K.f.with_values(K.f.values / L.f.values)


def cone_volume(K: Body) -> ConeVolumeDensity:
    density = K.h.with_values(0.5 * K.h.values * K.f.values)
    return ConeVolumeDensity(density, integrate(density))


def mixed_cone_volume(K: Body, L: Body) -> ConeVolumeDensity:
    """V_{K,L}: density ½·h_L·f_K, total mass V(K, L)."""
    K, L = common_grid(K, L)
    density = K.h.with_values(0.5 * L.h.values * K.f.values)
    return ConeVolumeDensity(density, integrate(density))


def cone_volume_distance(K: Body, L: Body) -> float:
    K, L = common_grid(K, L)
    dk = cone_volume(K).density.values
    dl = cone_volume(L).density.values
    return float(np.abs(dk - dl).max())


def surface_area(K: Body) -> float:
    """Perimeter: ∫ ds with ds = (h + h'') dθ."""
    return integrate(K.f)


def steiner_polynomial(K: Body, L: Body, t: float) -> float:
    return volume(K) + 2.0 * t * mixed_volume(K, L) + t * t * volume(L)


def steiner_roots(
    K: Body, L: Body, tolerances: Tolerances = DEFAULT_TOLERANCES
) -> SteinerRoots:
    K, L = common_grid(K, L)
    vk, vl, vkl = volume(K), volume(L), mixed_volume(K, L)
    disc = vkl * vkl - vk * vl
    tol = tolerances.discriminant_rel * vk * vl
    if disc < -tol:
        raise NegativeDiscriminant(
            f"V(K,L)² − V(K)V(L) = {disc:.6g} below −{tol:.3g} for {K.name}, {L.name}"
        )
    if abs(disc) <= tol:
        disc = 0.0
    root = math.sqrt(disc)
    return SteinerRoots((-vkl + root) / vl, (-vkl - root) / vl, disc)
