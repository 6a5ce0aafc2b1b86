"""Planar convex bodies represented by sampled support functions.

A ``Body`` stores h(θ) on an ``AngleGrid``; the curvature radius
f = h + h'' is derived from h spectrally and never set independently.
``PolygonBody`` carries the polygonal Wulff bodies produced by
``log_combination`` where smoothness is lost.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import numpy as np

from .config import DEFAULT_TOLERANCES, Tolerances
from .errors import (
    DegeneratePolygon,
    InvalidBody,
    InvalidParameter,
    NotConvex,
    OriginOutside,
)
from .grid import DEFAULT_GRID_N, AngleGrid, PeriodicSamples, fourier_derivatives, resample

logger = logging.getLogger(__name__)

# Keeps rescaled random bodies strictly above the requested margin after rounding.
_RESCALE_SAFETY = 1.0 - 1e-9


@dataclass(frozen=True)
class Vector2:
    x: float = 0.0
    y: float = 0.0

    def __post_init__(self):
        x, y = float(self.x), float(self.y)
        if not (math.isfinite(x) and math.isfinite(y)):
            raise InvalidParameter(f"vector components must be finite, got ({x}, {y})")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    @classmethod
    def from_array(cls, a) -> "Vector2":
        return cls(float(a[0]), float(a[1]))

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y])

    @property
    def norm(self) -> float:
        return math.hypot(self.x, self.y)

    def support(self, grid: AngleGrid) -> np.ndarray:
        """v·u(θ_j) at every node."""
        return grid.normals @ self.as_array()

    def __add__(self, other: "Vector2") -> "Vector2":
        return Vector2(self.x + other.x, self.y + other.y)

    def __neg__(self) -> "Vector2":
        return Vector2(-self.x, -self.y)

    def __mul__(self, t: float) -> "Vector2":
        return Vector2(self.x * t, self.y * t)

    __rmul__ = __mul__


@dataclass(frozen=True)
class TrigSeries:
    """h(θ) = a0 + Σ_k a_k cos kθ + b_k sin kθ, k = 1..K."""

    a0: float
    cos_coeffs: tuple = ()
    sin_coeffs: tuple = ()

    def __post_init__(self):
        a = tuple(float(c) for c in self.cos_coeffs)
        b = tuple(float(c) for c in self.sin_coeffs)
        if len(a) != len(b):
            raise InvalidParameter(
                f"cos and sin coefficient lists differ in length: {len(a)} != {len(b)}"
            )
        object.__setattr__(self, "a0", float(self.a0))
        object.__setattr__(self, "cos_coeffs", a)
        object.__setattr__(self, "sin_coeffs", b)

    @property
    def degree(self) -> int:
        return len(self.cos_coeffs)

    def evaluate(self, theta: np.ndarray) -> np.ndarray:
        values = np.full_like(theta, self.a0, dtype=float)
        if self.degree:
            k = np.arange(1, self.degree + 1)
            phase = np.outer(theta, k)
            values += np.cos(phase) @ np.asarray(self.cos_coeffs)
            values += np.sin(phase) @ np.asarray(self.sin_coeffs)
        return values


@dataclass(frozen=True, eq=False)
class Body:
    """Smooth strictly convex body with the origin in its interior."""

    h: PeriodicSamples
    name: str = "K"
    convexity_margin: float = DEFAULT_TOLERANCES.convexity_margin
    f: PeriodicSamples = field(init=False, repr=False)

    def __post_init__(self):
        self._require_finite()
        _, second = fourier_derivatives(self.h)
        f = self.h.with_values(self.h.values + second.values)
        object.__setattr__(self, "f", f)
        self._validate()

    def _require_finite(self):
        bad = np.flatnonzero(~np.isfinite(self.h.values))
        if bad.size:
            angle = float(self.grid.nodes[bad[0]])
            logger.warning("%s: non-finite support value at θ = %.6f", self.name, angle)
            raise InvalidBody(
                f"{self.name}: non-finite support value {self.h.values[bad[0]]} at angle {angle:.6f}",
                angle=angle,
                value=float(self.h.values[bad[0]]),
            )

    def _validate(self):
        threshold = self.convexity_margin * max(self.h.max(), 0.0)
        if self.f.min() < threshold:
            angle = self.f.argmin_angle()
            logger.warning(
                "%s: min(h+h'') = %.6g < %.3g at θ = %.6f", self.name, self.f.min(), threshold, angle
            )
            raise NotConvex(
                f"{self.name}: min(h+h'') = {self.f.min():.6g} < {threshold:.3g} "
                f"at angle {angle:.6f}",
                angle=angle,
                value=self.f.min(),
            )
        if self.h.min() <= 0.0:
            angle = self.h.argmin_angle()
            logger.warning("%s: min(h) = %.6g at θ = %.6f", self.name, self.h.min(), angle)
            raise OriginOutside(
                f"{self.name}: origin not interior, min(h) = {self.h.min():.6g} "
                f"at angle {angle:.6f}",
                angle=angle,
                value=self.h.min(),
            )

    @classmethod
    def from_samples(cls, values, name: str = "K", **kw) -> "Body":
        values = np.asarray(values, dtype=float)
        return cls(PeriodicSamples(AngleGrid(values.size), values), name=name, **kw)

    @property
    def grid(self) -> AngleGrid:
        return self.h.grid

    @property
    def n(self) -> int:
        return self.h.n

    def with_support(self, values, name: Optional[str] = None) -> "Body":
        return Body(
            self.h.with_values(values),
            name=self.name if name is None else name,
            convexity_margin=self.convexity_margin,
        )

    def at(self, n: int) -> "Body":
        """The same body sampled on an n-node grid."""
        if n == self.n:
            return self
        return Body(resample(self.h, n), name=self.name, convexity_margin=self.convexity_margin)


def common_grid(K: Body, L: Body) -> tuple[Body, Body]:
    n = max(K.n, L.n)
    return K.at(n), L.at(n)


def from_trig(series: TrigSeries, n: int = DEFAULT_GRID_N, name: str = "K", **kw) -> Body:
    grid = AngleGrid(n)
    return Body(PeriodicSamples(grid, series.evaluate(grid.nodes)), name=name, **kw)


def disk(
    radius: float = 1.0, center: Vector2 = Vector2(), n: int = DEFAULT_GRID_N, name: str = "disk"
) -> Body:
    if not radius > 0:
        raise InvalidParameter(f"radius must be positive, got {radius}")
    if center.norm >= radius:
        angle = math.atan2(-center.y, -center.x) % (2 * math.pi)
        raise OriginOutside(
            f"{name}: center {center.x, center.y} at distance {center.norm:.6g} >= radius {radius}",
            angle=angle,
            value=radius - center.norm,
        )
    grid = AngleGrid(n)
    return Body(PeriodicSamples(grid, radius + center.support(grid)), name=name)


def ellipse(
    a: float, b: float, center: Vector2 = Vector2(), n: int = DEFAULT_GRID_N, name: str = "ellipse"
) -> Body:
    if not (a > 0 and b > 0):
        raise InvalidParameter(f"semi-axes must be positive, got a={a}, b={b}")
    if (center.x / a) ** 2 + (center.y / b) ** 2 >= 1.0:
        raise OriginOutside(f"{name}: center {center.x, center.y} puts the origin outside")
    grid = AngleGrid(n)
    theta = grid.nodes
    h = np.sqrt((a * np.cos(theta)) ** 2 + (b * np.sin(theta)) ** 2) + center.support(grid)
    return Body(PeriodicSamples(grid, h), name=name)


def random_body(
    seed: int,
    harmonics: int = 8,
    decay: float = 2.0,
    margin: float = 0.2,
    n: int = DEFAULT_GRID_N,
    even_only: bool = False,
    name: Optional[str] = None,
) -> Body:
    """Seeded smooth body h = 1 + s·Σ_{k=2..K} (a_k cos kθ + b_k sin kθ).

    Coefficients are uniform in [-1, 1]·k^(-decay); the first harmonic is
    left out so the Steiner point stays at the origin.  The scale s ≤ 1 is
    the largest keeping min(h + h'') and min(h) at least ``margin``.
    """
    if not decay > 1:
        raise InvalidParameter(f"decay must exceed 1, got {decay}")
    if not 0 < margin < 1:
        raise InvalidParameter(f"margin must lie in (0, 1), got {margin}")
    grid = AngleGrid(n)
    rng = np.random.default_rng(seed)
    ks = np.arange(2, max(int(harmonics), 1) + 1)
    weights = ks.astype(float) ** (-decay)
    a = rng.uniform(-1.0, 1.0, ks.size) * weights
    b = rng.uniform(-1.0, 1.0, ks.size) * weights
    if even_only:
        odd = ks % 2 == 1
        a[odd] = 0.0
        b[odd] = 0.0

    phase = np.outer(grid.nodes, ks)
    wave = np.cos(phase) @ a + np.sin(phase) @ b
    curvature_wave = np.cos(phase) @ (a * (1 - ks**2)) + np.sin(phase) @ (b * (1 - ks**2))

    s = 1.0
    for g in (curvature_wave, wave):
        worst = -float(g.min()) if g.size else 0.0
        if worst > 0 and 1.0 - worst < margin:
            s = min(s, (1.0 - margin) / worst * _RESCALE_SAFETY)
    label = name if name is not None else f"random[{seed}]"
    return Body(PeriodicSamples(grid, 1.0 + s * wave), name=label)


def translate(K: Body, v: Vector2) -> Body:
    return K.with_support(K.h.values + v.support(K.grid))


def scale(K: Body, t: float) -> Body:
    if not t > 0:
        raise InvalidParameter(f"scale factor must be positive, got {t}")
    return K.with_support(t * K.h.values)


def minkowski_sum(K: Body, L: Body) -> Body:
    K, L = common_grid(K, L)
    return K.with_support(K.h.values + L.h.values, name=f"{K.name}+{L.name}")


class HomothetyFit(NamedTuple):
    homothetic: bool
    t: float
    v: Vector2


def _fit_homothety(K: Body, L: Body) -> tuple[float, Vector2, float]:
    K, L = common_grid(K, L)
    u = K.grid.normals
    design = np.column_stack((L.h.values, u))
    coeffs, *_ = np.linalg.lstsq(design, K.h.values, rcond=None)
    residual = float(np.abs(design @ coeffs - K.h.values).max())
    return float(coeffs[0]), Vector2.from_array(coeffs[1:]), residual


def homothety_detect(K: Body, L: Body, tol: float = DEFAULT_TOLERANCES.homothety) -> HomothetyFit:
    """Least-squares fit h_K ≈ t·h_L + v·u; homothetic iff the worst residual is small."""
    t, v, residual = _fit_homothety(K, L)
    ok = t > 0 and residual <= tol * K.h.max()
    logger.debug("homothety fit %s~%s: t=%.12g residual=%.3g", K.name, L.name, t, residual)
    return HomothetyFit(bool(ok), t, v)


@dataclass(frozen=True, eq=False)
class PolygonBody:
    """Strictly convex polygon, vertices counterclockwise, origin inside."""

    vertices: np.ndarray

    def __post_init__(self):
        v = np.array(self.vertices, dtype=float).reshape(-1, 2)
        if len(v) < 3:
            raise DegeneratePolygon(f"polygon needs at least 3 vertices, got {len(v)}")
        edges = np.roll(v, -1, axis=0) - v
        turn = _cross(edges, np.roll(edges, -1, axis=0))
        if not (turn > 0).all():
            raise DegeneratePolygon("polygon is not strictly convex and counterclockwise")
        if not (_cross(v, np.roll(v, -1, axis=0)) > 0).all():
            raise OriginOutside("origin is not strictly inside the polygon")
        v.flags.writeable = False
        object.__setattr__(self, "vertices", v)

    def __len__(self) -> int:
        return len(self.vertices)


def _cross(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a[:, 0] * b[:, 1] - a[:, 1] * b[:, 0]


def polygon_volume(P: PolygonBody) -> float:
    v = P.vertices
    return 0.5 * abs(float(np.sum(_cross(v, np.roll(v, -1, axis=0)))))


def _clip_halfplane(vertices: np.ndarray, normal: np.ndarray, offset: float) -> np.ndarray:
    """Sutherland–Hodgman step: keep the part of a convex polygon with x·normal <= offset."""
    d = vertices @ normal - offset
    inside = d <= 0.0
    if inside.all():
        return vertices
    if not inside.any():
        return vertices[:0]
    d_next = np.roll(d, -1)
    crossing = inside != np.roll(inside, -1)
    t = np.where(crossing, d / np.where(crossing, d - d_next, 1.0), 0.0)
    cut = vertices + t[:, None] * (np.roll(vertices, -1, axis=0) - vertices)
    # per edge: its start vertex if kept, then the crossing point if any
    points = np.stack((vertices, cut), axis=1).reshape(-1, 2)
    keep = np.column_stack((inside, crossing)).reshape(-1)
    return points[keep]


def _drop_flat_vertices(vertices: np.ndarray, rel_tol: float = 1e-14) -> np.ndarray:
    scale2 = float(np.max(np.sum(vertices**2, axis=1)))
    while len(vertices) >= 3:
        before = vertices - np.roll(vertices, 1, axis=0)
        after = np.roll(vertices, -1, axis=0) - vertices
        flat = _cross(before, after) <= rel_tol * scale2
        if not flat.any():
            break
        # drop one vertex per run so a flat stretch keeps its endpoints
        first = int(np.argmax(flat))
        vertices = np.delete(vertices, first, axis=0)
    return vertices


def wulff_polygon(normals: np.ndarray, offsets: np.ndarray) -> PolygonBody:
    """Intersection of the halfplanes {x : x·u_i <= c_i}, clipped from a bounding box."""
    bound = 4.0 * float(np.max(offsets))
    poly = np.array([[-bound, -bound], [bound, -bound], [bound, bound], [-bound, bound]])
    for u, c in zip(normals, offsets):
        poly = _clip_halfplane(poly, u, float(c))
        if len(poly) < 3:
            raise DegeneratePolygon("halfplane intersection collapsed")
    return PolygonBody(_drop_flat_vertices(poly))


def log_combination(
    K: Body,
    L: Body,
    lam: float,
    m: Optional[int] = None,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> PolygonBody:
    """Polygonal Wulff body of h_K^(1-λ)·h_L^λ over m uniform directions.

    The result circumscribes the true logarithmic combination, so its area
    is an upper bound that decreases to the exact value as m grows.
    """
    if not 0.0 <= lam <= 1.0:
        raise InvalidParameter(f"λ must lie in [0, 1], got {lam}")
    K, L = common_grid(K, L)
    if m is None:
        m = tolerances.wulff_factor * K.n
    if m < 64 or m % 2:
        raise InvalidParameter(f"need an even number m >= 64 of directions, got {m}")
    hk = resample(K.h, m)
    hl = resample(L.h, m)
    if min(hk.min(), hl.min()) <= 0.0:
        raise OriginOutside("interpolated support function is not positive")
    g = hk.values ** (1.0 - lam) * hl.values**lam
    return wulff_polygon(hk.grid.normals, g)


def wulff_excess_bound(K: Body, L: Body, lam: float, m: int) -> float:
    """Area by which an m-direction Wulff polygon may exceed the smooth body."""
    K, L = common_grid(K, L)
    g_max = K.h.max() ** (1.0 - lam) * L.h.max() ** lam
    return g_max**2 * (m * math.tan(math.pi / m) - math.pi)


def support_distance(K: Body, L: Body) -> float:
    K, L = common_grid(K, L)
    return float(np.abs(K.h.values - L.h.values).max())
