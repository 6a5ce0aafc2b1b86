"""Seeded fuzz campaigns over random body pairs.

Trial ``i`` draws K from seed + 2i and L from seed + 2i + 1, places the
pair at a dilation position (unless disabled), runs every configured
checker, and yields one ``CsvRow`` per check.  Rows are collected in trial
order whatever the worker count, so a campaign's CSV is reproducible
byte for byte.
"""

import csv
import json
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, fields
from functools import partial
from typing import Optional

from .body import random_body
from .config import Tolerances
from .errors import BodyFileError, ConvexEntropyError, InvalidBody, InvalidParameter, PositioningError
from .grid import DEFAULT_GRID_N
from .inequality import get_checker, run_check
from .position import dilation_position, inradius, outradius

logger = logging.getLogger(__name__)

CSV_COLUMNS = (
    "trial",
    "check",
    "lhs",
    "rhs",
    "slack",
    "holds",
    "equality_case",
    "r",
    "R",
    "seed_K",
    "seed_L",
)
DEFAULT_CHECKS = ("entropy", "logmink", "green_osher:xlogx", "entropy_nd", "jensen")
POSITIONING_BUDGET = 0.01


@dataclass(frozen=True)
class FuzzConfig:
    trials: int = 100
    seed: int = 0
    grid_n: int = DEFAULT_GRID_N
    harmonics: int = 8
    decay: float = 2.0
    margin: float = 0.2
    checks: tuple = DEFAULT_CHECKS
    tol_override: Optional[float] = None
    position: bool = True
    symmetric: bool = False
    workers: int = 1

    def __post_init__(self):
        object.__setattr__(self, "checks", tuple(self.checks))
        if int(self.trials) != self.trials or self.trials < 1:
            raise InvalidParameter(f"trials must be a positive integer, got {self.trials}")
        if not self.checks:
            raise InvalidParameter("at least one check is required")
        for name in self.checks:
            checker = get_checker(name)
            if checker.needs_position and not self.position:
                raise InvalidParameter(f"check {name!r} needs a dilation position")

    @classmethod
    def from_mapping(cls, data: dict) -> "FuzzConfig":
        data = dict(data)
        if "K" in data:
            data["harmonics"] = data.pop("K")
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise BodyFileError(f"unknown fuzz config fields: {', '.join(unknown)}")
        return cls(**data)

    @classmethod
    def from_json(cls, filepath: str) -> "FuzzConfig":
        try:
            with open(filepath, "r", encoding="utf-8") as f:
                data = json.load(f)
        except (OSError, UnicodeDecodeError, json.JSONDecodeError) as e:
            raise BodyFileError(f"cannot read fuzz config {filepath}: {e}") from e
        if not isinstance(data, dict):
            raise BodyFileError(f"{filepath}: fuzz config must be a JSON object")
        try:
            return cls.from_mapping(data)
        except TypeError as e:
            raise BodyFileError(f"{filepath}: {e}") from e

    def tolerances(self, base: Tolerances) -> Tolerances:
        if self.tol_override is None:
            return base
        return base.replace(slack_rel=float(self.tol_override))


@dataclass(frozen=True)
class CsvRow:
    trial: int
    check: str
    lhs: float
    rhs: float
    slack: float
    holds: bool
    equality_case: bool
    r: float
    R: float
    seed_K: int
    seed_L: int

    def as_record(self) -> list:
        return [_fmt(getattr(self, name)) for name in CSV_COLUMNS]


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


@dataclass
class TrialResult:
    trial: int
    rows: list = field(default_factory=list)
    positioning_error: Optional[str] = None
    check_errors: list = field(default_factory=list)


def run_trial(trial: int, config: FuzzConfig, tolerances: Tolerances) -> TrialResult:
    seed_k = config.seed + 2 * trial
    seed_l = seed_k + 1
    result = TrialResult(trial)
    make = partial(
        random_body,
        harmonics=config.harmonics,
        decay=config.decay,
        margin=config.margin,
        n=config.grid_n,
        even_only=config.symmetric,
    )
    K, L = make(seed_k, name="K"), make(seed_l, name="L")
    try:
        if config.position:
            K, L, report = dilation_position(K, L, tolerances)
            r, R = report.r, report.R
        else:
            over = tolerances.position_oversample
            r = inradius(K, L, over, tolerances).value
            R = outradius(K, L, over, tolerances).value
    except (PositioningError, InvalidBody) as e:
        logger.warning("trial %d: positioning failed: %s", trial, e)
        result.positioning_error = str(e)
        return result

    for name in config.checks:
        try:
            rep = run_check(name, K, L, tolerances, positioned=config.position)
        except ConvexEntropyError as e:
            logger.warning("trial %d: %s failed: %s", trial, name, e)
            result.check_errors.append(f"{name}: {e}")
            continue
        result.rows.append(
            CsvRow(
                trial, name, rep.lhs, rep.rhs, rep.slack, rep.holds, rep.equality_case,
                r, R, seed_k, seed_l,
            )
        )
    return result


@dataclass
class CheckSummary:
    rows: int = 0
    min_slack: float = math.inf
    equality_cases: int = 0
    violations: int = 0


@dataclass
class CampaignResult:
    config: FuzzConfig
    rows: list
    per_check: dict
    positioning_failures: int
    check_errors: int

    @property
    def violations(self) -> int:
        return sum(s.violations for s in self.per_check.values())

    @property
    def exit_code(self) -> int:
        if self.positioning_failures > POSITIONING_BUDGET * self.config.trials:
            return PositioningError.exit_code
        if self.violations:
            return 6
        if self.check_errors:
            return ConvexEntropyError.exit_code
        return 0

    def summary_lines(self) -> list:
        lines = []
        for name in self.config.checks:
            s = self.per_check[name]
            lines.append(
                f"check={name} rows={s.rows} min_slack={s.min_slack:.12g} "
                f"equality_cases={s.equality_cases} violations={s.violations}"
            )
        lines.append(
            f"trials={self.config.trials} positioning_failures={self.positioning_failures} "
            f"check_errors={self.check_errors}"
        )
        return lines


def run_campaign(config: FuzzConfig, base: Optional[Tolerances] = None) -> CampaignResult:
    tolerances = config.tolerances(base or Tolerances.from_config())
    job = partial(run_trial, config=config, tolerances=tolerances)
    trials = range(config.trials)
    if config.workers > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            results = list(pool.map(job, trials, chunksize=8))
    else:
        results = []
        for i in trials:
            results.append(job(i))
            if (i + 1) % 100 == 0:
                logger.info("fuzz: %d/%d trials done", i + 1, config.trials)

    per_check = {name: CheckSummary() for name in config.checks}
    rows = []
    positioning_failures = check_errors = 0
    for res in results:
        positioning_failures += res.positioning_error is not None
        check_errors += len(res.check_errors)
        for row in res.rows:
            s = per_check[row.check]
            s.rows += 1
            s.min_slack = min(s.min_slack, row.slack)
            s.equality_cases += row.equality_case
            s.violations += not row.holds
            rows.append(row)
    return CampaignResult(config, rows, per_check, positioning_failures, check_errors)


def write_csv(rows, filepath: str):
    with open(filepath, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for row in rows:
            writer.writerow(row.as_record())
