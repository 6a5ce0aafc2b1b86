"""Inradius, outradius and dilation position of one body relative to another.

Containment x + tL ⊂ K is the linear condition t·h_L + x·u <= h_K at every
normal u, so both radii are three-variable linear programs over the grid
normals.  They are solved with HiGHS through ``scipy.optimize.linprog`` and
then tightened: the radius is recomputed exactly from the optimal translation
so reported containments hold at the nodes up to rounding.
"""

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.optimize import linprog

from .body import Body, Vector2, common_grid, translate
from .config import DEFAULT_TOLERANCES, Tolerances
from .errors import Infeasible, OriginOutside, SolverFailure
from .grid import resample

logger = logging.getLogger(__name__)

_HIGHS_OPTIONS = {
    "primal_feasibility_tolerance": 1e-10,
    "dual_feasibility_tolerance": 1e-10,
}
_FREE = (None, None)


@dataclass(frozen=True)
class RadiusSolution:
    value: float
    witness: Vector2
    active_angles: tuple


@dataclass(frozen=True)
class DilationReport:
    r: float
    R: float
    v: Vector2
    max_violation: float
    origin_margin: float
    origin_shift: Vector2 = Vector2()


@dataclass(frozen=True)
class _Constraints:
    hk: np.ndarray
    hl: np.ndarray
    normals: np.ndarray
    nodes: np.ndarray


def _constraints(K: Body, L: Body, oversample: int) -> _Constraints:
    K, L = common_grid(K, L)
    n = K.n * max(int(oversample), 1)
    hk = resample(K.h, n)
    hl = resample(L.h, n)
    return _Constraints(hk.values, hl.values, hk.grid.normals, hk.grid.nodes)


def _solve(what: str, seed: int, c, A_ub, b_ub, bounds) -> np.ndarray:
    # HiGHS is deterministic; the seed only tags the log line
    res = linprog(
        c, A_ub=A_ub, b_ub=b_ub, bounds=bounds, method="highs", options=_HIGHS_OPTIONS
    )
    logger.debug("%s LP (seed %d): status=%s (%s)", what, seed, res.status, res.message)
    if res.status != 0 or res.x is None:
        raise SolverFailure(f"{what}: {res.message}")
    return res.x


def _active(gap: np.ndarray, c: _Constraints, tol: float) -> tuple:
    return tuple(float(a) for a in c.nodes[gap <= tol * c.hk.max()])


def inradius(
    K: Body,
    L: Body,
    oversample: int = 1,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
    seed: int = 0,
) -> RadiusSolution:
    """r(K, L) = max{t : x + tL ⊂ K}: maximize t s.t. t·h_L + x·u <= h_K."""
    c = _constraints(K, L, oversample)
    A = np.column_stack((c.hl, c.normals))
    sol = _solve("inradius", seed, [-1.0, 0.0, 0.0], A, c.hk, [(0, None), _FREE, _FREE])
    shift = sol[1:]
    offset = c.normals @ shift
    value = float(np.min((c.hk - offset) / c.hl))
    gap = c.hk - (value * c.hl + offset)
    return RadiusSolution(value, Vector2.from_array(shift), _active(gap, c, tolerances.active))


def outradius(
    K: Body,
    L: Body,
    oversample: int = 1,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
    seed: int = 0,
) -> RadiusSolution:
    """R(K, L) = min{s : y + sL ⊃ K}: minimize s s.t. h_K <= s·h_L + y·u."""
    c = _constraints(K, L, oversample)
    A = -np.column_stack((c.hl, c.normals))
    sol = _solve("outradius", seed, [1.0, 0.0, 0.0], A, -c.hk, [(0, None), _FREE, _FREE])
    shift = sol[1:]
    offset = c.normals @ shift
    value = float(np.max((c.hk - offset) / c.hl))
    gap = value * c.hl + offset - c.hk
    return RadiusSolution(value, Vector2.from_array(shift), _active(gap, c, tolerances.active))


def _violation(c: _Constraints, r: float, R: float, v: np.ndarray) -> float:
    hl = c.hl + c.normals @ v
    return float(max(np.max(r * hl - c.hk), np.max(c.hk - R * hl)))


def _minmax_translation(c: _Constraints, r: float, R: float, seed: int = 0) -> tuple[np.ndarray, float]:
    """Translation v of L minimizing the worst violation of r(L+v) ⊂ K ⊂ R(L+v)."""
    ones = np.ones((c.hk.size, 1))
    A = np.vstack(
        (
            np.hstack((r * c.normals, -ones)),
            np.hstack((-R * c.normals, -ones)),
        )
    )
    b = np.concatenate((c.hk - r * c.hl, R * c.hl - c.hk))
    sol = _solve("dilation", seed, [0.0, 0.0, 1.0], A, b, [_FREE, _FREE, _FREE])
    return sol[:2], float(sol[2])


def is_dilation_position(
    K: Body,
    L: Body,
    tol: Optional[float] = None,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> bool:
    """Origin interior to both and r·h_L <= h_K <= R·h_L pointwise (within tol)."""
    if tol is None:
        tol = tolerances.feasibility
    K, L = common_grid(K, L)
    if K.h.min() <= 0 or L.h.min() <= 0:
        return False
    over = tolerances.position_oversample
    r = inradius(K, L, over, tolerances).value
    R = outradius(K, L, over, tolerances).value
    c = _constraints(K, L, over)
    return bool(np.all(r * c.hl <= c.hk + tol) and np.all(c.hk <= R * c.hl + tol))


def dilation_position(
    K: Body, L: Body, tolerances: Tolerances = DEFAULT_TOLERANCES, seed: int = 0
) -> tuple[Body, Body, DilationReport]:
    """Place K and L at a dilation position.

    A pair that already satisfies the containments is returned untouched.
    Otherwise L alone is translated when some v achieves
    r(L+v) ⊂ K ⊂ R(L+v); failing that the origin moves to the homothety
    center of the optimal inner and outer copies of L, which lies inside K.
    """
    K, L = common_grid(K, L)
    over = tolerances.position_oversample
    tol = tolerances.feasibility
    inner = inradius(K, L, over, tolerances, seed)
    outer = outradius(K, L, over, tolerances, seed)
    r, R = inner.value, outer.value
    c = _constraints(K, L, over)

    zero = np.zeros(2)
    v, w = zero, zero
    if _violation(c, r, R, zero) > tol:
        v, worst = _minmax_translation(c, r, R, seed)
        if worst > tol or np.min(c.hl + c.normals @ v) <= 0:
            x, y = inner.witness.as_array(), outer.witness.as_array()
            if R - r <= 1e-12 * R:
                raise Infeasible(
                    f"{K.name}, {L.name}: equal radii but no common translation (violation {worst:.3g})"
                )
            w = (r * y - R * x) / (R - r)
            v = (x - (r - 1.0) * w) / r
            logger.info(
                "%s, %s: moving the origin by (%.6g, %.6g) to the homothety center",
                K.name,
                L.name,
                *w,
            )

    shift_k = Vector2.from_array(w)
    shift_l = Vector2.from_array(v + w)
    try:
        K2 = translate(K, shift_k) if np.any(w) else K
        L2 = translate(L, shift_l) if np.any(v + w) else L
    except OriginOutside as e:
        raise OriginOutside(f"dilation position leaves the origin outside: {e}") from e

    placed = _constraints(K2, L2, over)
    max_violation = max(_violation(placed, r, R, zero), 0.0)
    margin = float(min(placed.hk.min(), placed.hl.min()))
    report = DilationReport(r, R, shift_l, max_violation, margin, shift_k)
    if margin <= 0:
        raise OriginOutside(f"origin margin {margin:.3g} after positioning")
    if max_violation > tol:
        raise Infeasible(f"{K.name}, {L.name}: containment violated by {max_violation:.3g}")
    logger.debug("dilation position %s, %s: %s", K.name, L.name, report)
    return K2, L2, report
