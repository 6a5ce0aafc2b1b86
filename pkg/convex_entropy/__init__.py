"""Curvature entropy and log-Minkowski inequalities for planar convex bodies."""

from .body import (
    Body,
    PolygonBody,
    TrigSeries,
    Vector2,
    disk,
    ellipse,
    from_trig,
    homothety_detect,
    log_combination,
    minkowski_sum,
    random_body,
    scale,
    translate,
)
from .config import DEFAULT_TOLERANCES, Tolerances
from .errors import ConvexEntropyError
from .grid import AngleGrid, PeriodicSamples
from .inequality import InequalityReport, curvature_entropy, run_check
from .measures import mixed_volume, volume
from .position import dilation_position, inradius, outradius

__version__ = "0.1.0"
