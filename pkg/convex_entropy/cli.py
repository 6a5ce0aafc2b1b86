"""Command-line front end.

Values go to stdout with 12 significant digits; diagnostics go to stderr.
Exit codes: 0 ok, 2 usage/parse, 3 invalid body, 4 computation error,
5 positioning failure, 6 inequality violated.
"""

import dataclasses
import functools
import json
import logging
import os
from dataclasses import dataclass
from typing import Optional

import click

from . import measures
from .body import Body, common_grid
from .bodyfile import BodyFileParser, write_body
from .config import Tolerances, load_config, save_config
from .errors import ConvexEntropyError, InvalidBody, PositioningError
from .fuzz import FuzzConfig, run_campaign, write_csv
from .inequality import curvature_entropy, get_checker, log_minkowski_functional, run_check
from .position import dilation_position, inradius, outradius

logger = logging.getLogger(__name__)

VIOLATED_EXIT = 6
QUANTITIES = (
    "volume",
    "surface",
    "mixed",
    "entropy",
    "logmink",
    "steiner",
    "conevol",
    "inradius",
    "outradius",
)
PAIR_QUANTITIES = {"mixed", "entropy", "logmink", "steiner", "inradius", "outradius"}


@dataclass
class Settings:
    grid_n: Optional[int]
    tolerances: Tolerances


def fmt(x: float) -> str:
    x = float(x)
    if x == 0.0:
        x = 0.0  # no "-0"
    return f"{x:.12g}"


def handle_errors(positioning_exit: Optional[int] = None):
    """Turn library errors into their exit codes, printing the cause on stderr."""

    def decorate(fn):
        @functools.wraps(fn)
        def wrapper(*args, **kwargs):
            try:
                return fn(*args, **kwargs)
            except ConvexEntropyError as e:
                click.echo(f"error: {type(e).__name__}: {e}", err=True)
                if isinstance(e, InvalidBody) and e.angle is not None:
                    click.echo(f"offending angle: {fmt(e.angle)} rad", err=True)
                code = e.exit_code
                if isinstance(e, PositioningError) and positioning_exit is not None:
                    code = positioning_exit
                raise click.exceptions.Exit(code)

        return wrapper

    return decorate


def default_k_path(out_l: str) -> str:
    """``l2.json`` -> ``l2.K.json``: where K goes when the origin moves."""
    stem, ext = os.path.splitext(out_l)
    return f"{stem}.K{ext or '.json'}"


def _load(settings: Settings, path: str) -> Body:
    return BodyFileParser.load(path, settings.grid_n)


def _load_pair(settings: Settings, path_k: str, path_l: Optional[str]):
    K = _load(settings, path_k)
    if path_l is None:
        return K, None
    return common_grid(K, _load(settings, path_l))


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.option("--grid-n", type=int, default=None, help="Resample every body to this grid size.")
@click.option("--tol", type=float, default=None, help="Relative slack tolerance override.")
@click.pass_context
def cli(ctx, grid_n, tol):
    """Convex-geometry functionals and log-Minkowski inequality checks."""
    tolerances = Tolerances.from_config()
    if tol is not None:
        tolerances = tolerances.replace(slack_rel=tol)
    ctx.obj = Settings(grid_n, tolerances)


@cli.command("make-body")
@click.argument("definition_file", type=click.Path(dir_okay=False))
@click.argument("out_file", type=click.Path(dir_okay=False))
@click.pass_obj
@handle_errors()
def make_body(settings: Settings, definition_file, out_file):
    """Write the canonical sampled form of a body definition."""
    body = _load(settings, definition_file)
    write_body(body, out_file)
    logger.info("Wrote %s (n=%d) to %s", body.name, body.n, out_file)


@cli.command()
@click.argument("quantity", type=click.Choice(QUANTITIES))
@click.argument("body_file", type=click.Path(dir_okay=False))
@click.argument("body2_file", type=click.Path(dir_okay=False), required=False)
@click.pass_obj
@handle_errors(positioning_exit=ConvexEntropyError.exit_code)
def compute(settings: Settings, quantity, body_file, body2_file):
    """Print a functional of one body or of a pair."""
    if quantity in PAIR_QUANTITIES and body2_file is None:
        raise click.UsageError(f"{quantity} needs two body files")
    K, L = _load_pair(settings, body_file, body2_file)
    tol = settings.tolerances
    if quantity == "volume":
        out = fmt(measures.volume(K))
    elif quantity == "surface":
        out = fmt(measures.surface_area(K))
    elif quantity == "mixed":
        out = fmt(measures.mixed_volume(K, L))
    elif quantity == "entropy":
        out = fmt(curvature_entropy(K, L))
    elif quantity == "logmink":
        out = fmt(log_minkowski_functional(K, L))
    elif quantity == "steiner":
        roots = measures.steiner_roots(K, L, tol)
        out = f"t1={fmt(roots.t1)} t2={fmt(roots.t2)} disc={fmt(roots.discriminant)}"
    elif quantity == "conevol":
        cone = measures.cone_volume(K)
        out = (
            f"total={fmt(cone.total)} min={fmt(cone.density.min())} "
            f"max={fmt(cone.density.max())}"
        )
        if L is not None:
            out += f" distance={fmt(measures.cone_volume_distance(K, L))}"
    else:
        solve = inradius if quantity == "inradius" else outradius
        sol = solve(K, L, tolerances=tol)
        label = "r" if quantity == "inradius" else "R"
        out = f"{label}={fmt(sol.value)} x={fmt(sol.witness.x)} y={fmt(sol.witness.y)}"
    click.echo(out)


@cli.command()
@click.argument("body_k", type=click.Path(dir_okay=False))
@click.argument("body_l", type=click.Path(dir_okay=False))
@click.argument("out_l", type=click.Path(dir_okay=False))
@click.option("--out-k", type=click.Path(dir_okay=False), default=None,
              help="Where to write K when the origin moves; defaults to OUT_L with .K "
              "inserted before the extension.")
@click.pass_obj
@handle_errors()
def position(settings: Settings, body_k, body_l, out_l, out_k):
    """Translate L (and the origin if needed) to a dilation position."""
    K, L = _load_pair(settings, body_k, body_l)
    K2, L2, report = dilation_position(K, L, settings.tolerances)
    write_body(L2, out_l)
    shift = report.origin_shift
    if shift.norm > 0 and not out_k:
        out_k = default_k_path(out_l)
    if out_k:
        write_body(K2, out_k)
    if shift.norm > 0:
        click.echo(
            f"origin moved by ({fmt(shift.x)}, {fmt(shift.y)}); translated K written to {out_k}",
            err=True,
        )
    click.echo(
        f"r={fmt(report.r)} R={fmt(report.R)} v=({fmt(report.v.x)},{fmt(report.v.y)}) "
        f"max_violation={fmt(report.max_violation)} "
        f"origin_shift=({fmt(shift.x)},{fmt(shift.y)})"
    )
    if report.max_violation > settings.tolerances.feasibility:
        raise click.exceptions.Exit(PositioningError.exit_code)


@cli.command()
@click.argument("check")
@click.argument("body_k", type=click.Path(dir_okay=False))
@click.argument("body_l", type=click.Path(dir_okay=False), required=False)
@click.option("--position", "do_position", is_flag=True,
              help="Place the pair at a dilation position first.")
@click.pass_obj
@handle_errors(positioning_exit=ConvexEntropyError.exit_code)
def verify(settings: Settings, check, body_k, body_l, do_position):
    """Run one inequality checker and print its report as a CSV row."""
    checker = get_checker(check)
    if checker.pair and body_l is None:
        raise click.UsageError(f"{check} needs two body files")
    K, L = _load_pair(settings, body_k, body_l)
    if L is None:
        L = K
    if do_position and checker.pair:
        K, L, _ = dilation_position(K, L, settings.tolerances)
    report = run_check(check, K, L, settings.tolerances)
    click.echo(
        ",".join(
            (
                report.name,
                fmt(report.lhs),
                fmt(report.rhs),
                fmt(report.slack),
                str(report.holds).lower(),
                str(report.equality_case).lower(),
            )
        )
    )
    if not report.holds:
        raise click.exceptions.Exit(VIOLATED_EXIT)


@cli.command()
@click.argument("config_file", type=click.Path(dir_okay=False))
@click.option("--out", "out_csv", type=click.Path(dir_okay=False), required=True,
              help="CSV report path.")
@click.option("--seed", type=int, default=None, help="Override the config's base seed.")
@click.pass_obj
@handle_errors()
def fuzz(settings: Settings, config_file, out_csv, seed):
    """Run a seeded fuzz campaign and write one CSV row per (trial, check)."""
    config = FuzzConfig.from_json(config_file)
    if seed is not None:
        config = dataclasses.replace(config, seed=seed)
    if settings.grid_n is not None:
        config = dataclasses.replace(config, grid_n=settings.grid_n)
    result = run_campaign(config, settings.tolerances)
    write_csv(result.rows, out_csv)
    for line in result.summary_lines():
        click.echo(line)
    if result.exit_code:
        raise click.exceptions.Exit(result.exit_code)


@cli.command("config")
@click.option("--save", is_flag=True, help="Persist the effective tolerances.")
@click.pass_obj
def show_config(settings: Settings, save):
    """Print the effective tolerances as JSON."""
    values = settings.tolerances.as_dict()
    click.echo(json.dumps(values, indent=2, sort_keys=True))
    if save:
        data = load_config()
        data["tolerances"] = values
        save_config(data)
