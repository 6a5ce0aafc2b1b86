"""Curvature entropy, the log-Minkowski functional, and inequality checkers.

Every checker returns an ``InequalityReport`` whose slack is nonnegative
exactly when the inequality holds: rhs − lhs for "<=" inequalities and
lhs − rhs for ">=" ones.  Tolerances scale with max(1, V(K)) because all
functionals are volume-weighted.
"""

import logging
import math
from dataclasses import dataclass
from functools import partial
from typing import Callable, Optional

import numpy as np

from .body import (
    Body,
    common_grid,
    disk,
    homothety_detect,
    log_combination,
    polygon_volume,
    support_distance,
    wulff_excess_bound,
)
from .config import DEFAULT_TOLERANCES, Tolerances
from .errors import (
    ConvexEntropyError,
    DomainError,
    InvalidParameter,
    NotDilationPosition,
    QuadratureMismatch,
)
from .grid import integrate
from .measures import (
    cone_volume,
    cone_volume_distance,
    mixed_cone_volume,
    mixed_volume,
    relative_curvature_radius,
    steiner_roots,
    volume,
)
from .position import is_dilation_position

logger = logging.getLogger(__name__)

LE = "<="
GE = ">="


@dataclass(frozen=True)
class InequalityReport:
    name: str
    lhs: float
    rhs: float
    slack: float
    holds: bool
    equality_case: bool
    kind: str = LE


def _report(
    name: str,
    lhs: float,
    rhs: float,
    kind: str,
    volume_scale: float,
    homothetic: Callable[[], bool],
    tolerances: Tolerances,
    bias: float = 0.0,
) -> InequalityReport:
    """``bias`` bounds how far the measured slack can exceed the true one."""
    slack = rhs - lhs if kind == LE else lhs - rhs
    if not math.isfinite(slack):
        raise ConvexEntropyError(f"{name}: non-finite slack (lhs={lhs}, rhs={rhs})")
    unit = max(1.0, volume_scale)
    holds = slack >= -tolerances.slack_rel * unit
    band = tolerances.equality_rel * unit
    equality = -band <= slack <= band + bias and homothetic()
    if not holds:
        logger.warning("%s violated: lhs=%.12g rhs=%.12g slack=%.3g", name, lhs, rhs, slack)
    return InequalityReport(name, float(lhs), float(rhs), float(slack), holds, equality, kind)


def _homothets(K: Body, L: Body, tolerances: Tolerances) -> Callable[[], bool]:
    return lambda: homothety_detect(K, L, tolerances.homothety).homothetic


def _require_position(K: Body, L: Body, tolerances: Tolerances, positioned: bool):
    if positioned:
        return
    if not is_dilation_position(K, L, tolerances=tolerances):
        raise NotDilationPosition(f"{K.name} and {L.name} are not at a dilation position")


@dataclass(frozen=True)
class ConvexTestFunction:
    """Strictly convex F on (lo, hi), certified on a log-spaced probe grid."""

    name: str
    fn: Callable[[np.ndarray], np.ndarray]
    domain: tuple = (0.0, math.inf)

    def __post_init__(self):
        lo, hi = self.domain
        probes = np.geomspace(1e-3, 1e3, 61)
        probes = probes[(probes > lo) & (probes < hi)]
        if probes.size < 3:
            raise InvalidParameter(f"{self.name}: domain {self.domain} leaves too few probes")
        slopes = np.diff(self.fn(probes)) / np.diff(probes)
        if not np.all(np.diff(slopes) > 0):
            raise InvalidParameter(f"{self.name}: not strictly convex on the probe grid")

    def __call__(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        lo, hi = self.domain
        if np.any(x <= lo) or np.any(x >= hi):
            raise DomainError(
                f"{self.name}: argument range [{x.min():.6g}, {x.max():.6g}] "
                f"leaves the domain {self.domain}"
            )
        return self.fn(x)


TEST_FUNCTIONS = {
    f.name: f
    for f in (
        ConvexTestFunction("neglog", lambda x: -np.log(x)),
        ConvexTestFunction("square", lambda x: x * x),
        ConvexTestFunction("xlogx", lambda x: x * np.log(x)),
        ConvexTestFunction("reciprocal", lambda x: 1.0 / x),
    )
}


def curvature_entropy(K: Body, L: Body) -> float:
    """E(K, L) = −∫ log(κ_L/κ_K) dV_K = −∫ log(f_K/f_L)·½h_K f_K dθ."""
    K, L = common_grid(K, L)
    log_ratio = np.log(K.f.values) - np.log(L.f.values)
    return integrate(K.h.with_values(-log_ratio * cone_volume(K).density.values))


def log_minkowski_functional(K: Body, L: Body) -> float:
    """∫ log(h_L/h_K) dV_K."""
    K, L = common_grid(K, L)
    log_ratio = np.log(L.h.values) - np.log(K.h.values)
    return integrate(K.h.with_values(log_ratio * cone_volume(K).density.values))


def green_osher(
    K: Body,
    L: Body,
    F: ConvexTestFunction,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
    positioned: bool = False,
) -> InequalityReport:
    """(1/V(L))∫F(ρ)h_L f_L dθ >= F(−t1) + F(−t2) at a dilation position."""
    K, L = common_grid(K, L)
    _require_position(K, L, tolerances, positioned)
    rho = relative_curvature_radius(K, L)
    vl = volume(L)
    lhs = integrate(rho.with_values(F(rho.values) * L.h.values * L.f.values)) / vl
    roots = steiner_roots(K, L, tolerances)
    rhs = float(np.sum(F(np.array([-roots.t1, -roots.t2]))))
    return _report(
        f"green_osher:{F.name}", lhs, rhs, GE, volume(K), _homothets(K, L, tolerances), tolerances
    )


def check_entropy_inequality(
    K: Body, L: Body, tolerances: Tolerances = DEFAULT_TOLERANCES, positioned: bool = False
) -> InequalityReport:
    """E(K, L) <= (V(K)/2)·log(V(L)/V(K)) at a dilation position."""
    K, L = common_grid(K, L)
    _require_position(K, L, tolerances, positioned)
    vk, vl = volume(K), volume(L)
    lhs = curvature_entropy(K, L)
    rhs = 0.5 * vk * math.log(vl / vk)
    return _report("entropy", lhs, rhs, LE, vk, _homothets(K, L, tolerances), tolerances)


def check_entropy_reverse(
    K: Body, L: Body, tolerances: Tolerances = DEFAULT_TOLERANCES, positioned: bool = False
) -> InequalityReport:
    """E(L, K) <= (V(L)/2)·log(V(K)/V(L)): the Green–Osher bound with F = −log x."""
    K, L = common_grid(K, L)
    _require_position(K, L, tolerances, positioned)
    vk, vl = volume(K), volume(L)
    lhs = curvature_entropy(L, K)
    rhs = 0.5 * vl * math.log(vk / vl)
    return _report("entropy_reverse", lhs, rhs, LE, vl, _homothets(K, L, tolerances), tolerances)


def check_log_minkowski(
    K: Body, L: Body, tolerances: Tolerances = DEFAULT_TOLERANCES, positioned: bool = False
) -> InequalityReport:
    """∫ log(h_L/h_K) dV_K >= (V(K)/2)·log(V(L)/V(K)) at a dilation position.

    The report's lhs is the functional and its rhs the volume bound.
    """
    K, L = common_grid(K, L)
    _require_position(K, L, tolerances, positioned)
    vk, vl = volume(K), volume(L)
    functional = log_minkowski_functional(K, L)
    bound = 0.5 * vk * math.log(vl / vk)
    return _report("logmink", functional, bound, GE, vk, _homothets(K, L, tolerances), tolerances)


def check_entropy_nd(K: Body, L: Body, tolerances: Tolerances = DEFAULT_TOLERANCES) -> InequalityReport:
    """E(K, L) <= V(K)·log(V(L, K)/V(K)); needs no positioning."""
    K, L = common_grid(K, L)
    vk = volume(K)
    lhs = curvature_entropy(K, L)
    rhs = vk * math.log(mixed_volume(L, K) / vk)
    return _report("entropy_nd", lhs, rhs, LE, vk, _homothets(K, L, tolerances), tolerances)


def check_jensen_chain(K: Body, L: Body, tolerances: Tolerances = DEFAULT_TOLERANCES) -> InequalityReport:
    """∫log(h_L/h_K)dV_K + E(K, L) <= V(K)·log(V(L)/V(K)), by Jensen."""
    K, L = common_grid(K, L)
    vk, vl = volume(K), volume(L)
    lhs = log_minkowski_functional(K, L) + curvature_entropy(K, L)
    rhs = vk * math.log(vl / vk)
    return _report("jensen", lhs, rhs, LE, vk, _homothets(K, L, tolerances), tolerances)


def _ball_entropy_lhs(K: Body) -> float:
    # κ·log κ·ds = −log f dθ since κ·f = 1
    return integrate(K.f.with_values(-np.log(K.f.values))) + math.pi * math.log(
        volume(K) / math.pi
    )


def _is_disk(K: Body, tolerances: Tolerances) -> Callable[[], bool]:
    return _homothets(K, disk(1.0, n=K.n), tolerances)


def check_ball_entropy(
    K: Body, tolerances: Tolerances = DEFAULT_TOLERANCES
) -> InequalityReport:
    """∫_∂K κ log κ ds + π·log(V(K)/π) >= 0, with equality only for disks."""
    vk = volume(K)
    return _report("ball", _ball_entropy_lhs(K), 0.0, GE, vk, _is_disk(K, tolerances), tolerances)


def check_ball_entropy_combined(
    K: Body, tolerances: Tolerances = DEFAULT_TOLERANCES
) -> InequalityReport:
    """∫_∂K κ·log(κ·√(V(K)/π)) ds >= 0, evaluated in that form.

    Raises QuadratureMismatch when it disagrees with ``check_ball_entropy``'s
    left side, the two being the same integral rearranged.
    """
    vk = volume(K)
    kappa = 1.0 / K.f.values
    integrand = kappa * np.log(kappa * math.sqrt(vk / math.pi)) * K.f.values
    lhs = integrate(K.f.with_values(integrand))
    reference = _ball_entropy_lhs(K)
    if abs(lhs - reference) > 1e-10 * max(1.0, abs(reference)):
        raise QuadratureMismatch(
            f"{K.name}: combined form {lhs:.15g} differs from {reference:.15g}"
        )
    return _report("ball_combined", lhs, 0.0, GE, vk, _is_disk(K, tolerances), tolerances)


def check_log_bm(
    K: Body,
    L: Body,
    lam: float = 0.5,
    m: Optional[int] = None,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
    positioned: bool = False,
) -> InequalityReport:
    """V((1−λ)K +₀ λL) >= V(K)^(1−λ)·V(L)^λ at a dilation position.

    The left side is the area of the circumscribed Wulff polygon, which
    overestimates by O(m^−2), so the measured slack only errs upward and
    ``holds`` needs no allowance.  The equality band widens by the larger of
    the disk-exact excess bound and twice the drop in area when m doubles.
    """
    K, L = common_grid(K, L)
    _require_position(K, L, tolerances, positioned)
    if m is None:
        m = tolerances.wulff_factor * K.n
    vk, vl = volume(K), volume(L)
    lhs = polygon_volume(log_combination(K, L, lam, m, tolerances))
    finer = polygon_volume(log_combination(K, L, lam, 2 * m, tolerances))
    rhs = vk ** (1.0 - lam) * vl**lam
    logger.debug("log_bm uses V(K)^(1-λ)·V(L)^λ on the right, λ=%s", lam)
    excess = max(wulff_excess_bound(K, L, lam, m), 2.0 * (lhs - finer))
    return _report(
        "log_bm", lhs, rhs, GE, vk, _homothets(K, L, tolerances), tolerances, bias=excess
    )


def holder_profile(K: Body, L: Body, p: float) -> float:
    """φ(p) = (p+2)·log((1/V(K))·∫ρ^(p/(p+2)) dV_{L,K}), ρ = f_K/f_L."""
    if not p >= 1:
        raise InvalidParameter(f"p must be >= 1, got {p}")
    K, L = common_grid(K, L)
    rho = relative_curvature_radius(K, L).values
    weight = mixed_cone_volume(L, K).density
    mean = integrate(weight.with_values(rho ** (p / (p + 2.0)) * weight.values)) / volume(K)
    return (p + 2.0) * math.log(mean)


def entropy_from_holder_limit(K: Body, L: Body, p: float) -> float:
    """V(K)·φ(p)/2, which tends to E(K, L) as p grows."""
    return 0.5 * volume(K) * holder_profile(K, L, p)


def check_holder_bound(
    K: Body,
    L: Body,
    p: float = 16.0,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> InequalityReport:
    """φ(p) <= 2·log(V(L, K)/V(K)) for every p >= 1."""
    K, L = common_grid(K, L)
    vk = volume(K)
    lhs = holder_profile(K, L, p)
    rhs = 2.0 * math.log(mixed_cone_volume(L, K).total / vk)
    return _report("holder", lhs, rhs, LE, vk, _homothets(K, L, tolerances), tolerances)


def check_uniqueness_diagnostic(K: Body, L: Body) -> tuple[float, float]:
    """(max |dV_K − dV_L|, max |h_K − h_L|) over the grid.

    Coinciding support functions force coinciding cone-volume measures; a
    violation of that means the quadrature itself is broken.
    """
    K, L = common_grid(K, L)
    cv = cone_volume_distance(K, L)
    sd = support_distance(K, L)
    scale = max(K.h.max(), L.h.max())
    if sd <= 1e-14 * scale and cv > 1e-12 * scale * scale:
        raise QuadratureMismatch(f"equal support functions but cone-volume distance {cv:.3g}")
    return cv, sd


@dataclass(frozen=True)
class Checker:
    name: str
    run: Callable[..., InequalityReport]
    needs_position: bool = True
    pair: bool = True


def _single(fn):
    def run(K: Body, L: Body, tolerances: Tolerances = DEFAULT_TOLERANCES):
        return fn(K, tolerances)

    return run


def _green_osher_checker(F: ConvexTestFunction) -> Checker:
    return Checker(f"green_osher:{F.name}", partial(green_osher, F=F))


CHECKERS = {
    c.name: c
    for c in (
        Checker("entropy", check_entropy_inequality),
        Checker("entropy_reverse", check_entropy_reverse),
        Checker("logmink", check_log_minkowski),
        Checker("entropy_nd", check_entropy_nd, needs_position=False),
        Checker("jensen", check_jensen_chain, needs_position=False),
        Checker("holder", check_holder_bound, needs_position=False),
        Checker("ball", _single(check_ball_entropy), needs_position=False, pair=False),
        Checker(
            "ball_combined", _single(check_ball_entropy_combined), needs_position=False, pair=False
        ),
        Checker("log_bm", check_log_bm),
        *(_green_osher_checker(F) for F in TEST_FUNCTIONS.values()),
    )
}


def get_checker(name: str) -> Checker:
    """Look up a registered checker; ``log_bm:<λ>`` and ``holder:<p>`` take a parameter."""
    if name in CHECKERS:
        return CHECKERS[name]
    base, _, arg = name.partition(":")
    try:
        if base == "log_bm" and arg:
            return Checker(name, partial(check_log_bm, lam=float(arg)))
        if base == "holder" and arg:
            return Checker(name, partial(check_holder_bound, p=float(arg)), needs_position=False)
    except ValueError:
        pass
    raise InvalidParameter(f"unknown check {name!r}; known: {', '.join(sorted(CHECKERS))}")


def run_check(
    name: str,
    K: Body,
    L: Body,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
    positioned: bool = False,
) -> InequalityReport:
    checker = get_checker(name)
    extra = {"positioned": positioned} if checker.needs_position else {}
    report = checker.run(K, L, tolerances=tolerances, **extra)
    if report.name != name:
        report = InequalityReport(
            name, report.lhs, report.rhs, report.slack, report.holds, report.equality_case, report.kind
        )
    return report
