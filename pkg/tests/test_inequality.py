import math

import numpy as np
import pytest

from convex_entropy.body import (
    Vector2,
    disk,
    log_combination,
    polygon_volume,
    random_body,
    scale,
    translate,
    wulff_excess_bound,
)
from convex_entropy.errors import DomainError, InvalidParameter, NotDilationPosition, QuadratureMismatch
from convex_entropy.inequality import (
    CHECKERS,
    GE,
    LE,
    TEST_FUNCTIONS,
    ConvexTestFunction,
    check_ball_entropy,
    check_ball_entropy_combined,
    check_entropy_inequality,
    check_entropy_nd,
    check_entropy_reverse,
    check_holder_bound,
    check_jensen_chain,
    check_log_bm,
    check_log_minkowski,
    check_uniqueness_diagnostic,
    curvature_entropy,
    entropy_from_holder_limit,
    get_checker,
    green_osher,
    holder_profile,
    log_minkowski_functional,
    run_check,
)
from convex_entropy.measures import volume
from convex_entropy.position import dilation_position

LOG2 = math.log(2.0)


def test_entropy_of_body_with_itself(ellipse21):
    assert curvature_entropy(ellipse21, ellipse21) == pytest.approx(0.0, abs=1e-14)


def test_entropy_of_concentric_disks(big_disk, unit_disk):
    assert curvature_entropy(big_disk, unit_disk) == pytest.approx(-4 * math.pi * LOG2, rel=1e-12)


def test_entropy_against_quadrature(p01, unit_disk, p01_entropy):
    value = curvature_entropy(p01, unit_disk)
    assert value == pytest.approx(p01_entropy, rel=1e-9)
    assert -0.03 < value < -0.02


def test_entropy_of_disk_against_body(ellipse21, unit_disk):
    # E(B, K) = −½∫ κ log κ ds = ½∫ log f dθ; for the ellipse ∫ log f = 2π(log 4 − 3 log 1.5)
    expected = math.pi * (math.log(4.0) - 3 * math.log(1.5))
    assert curvature_entropy(unit_disk, ellipse21) == pytest.approx(expected, rel=1e-9)


def test_entropy_inequality_equality_for_homothets(big_disk, unit_disk):
    report = check_entropy_inequality(big_disk, unit_disk)
    assert report.kind == LE
    assert report.lhs == pytest.approx(-4 * math.pi * LOG2)
    assert report.rhs == pytest.approx(-4 * math.pi * LOG2)
    assert report.holds and report.equality_case


def test_entropy_inequality_strict_for_ellipse(ellipse21, unit_disk):
    report = check_entropy_inequality(ellipse21, unit_disk)
    assert report.holds
    assert report.slack > 1e-3
    assert not report.equality_case
    assert report.rhs == pytest.approx(-math.pi * LOG2)


def test_entropy_inequality_requires_position(big_disk, shifted_disk):
    with pytest.raises(NotDilationPosition):
        check_entropy_inequality(big_disk, shifted_disk)


def test_log_minkowski(big_disk, unit_disk, ellipse21):
    report = check_log_minkowski(big_disk, unit_disk)
    assert report.kind == GE
    assert report.lhs == pytest.approx(log_minkowski_functional(big_disk, unit_disk))
    assert report.holds and report.equality_case
    strict = check_log_minkowski(ellipse21, unit_disk)
    assert strict.holds and not strict.equality_case


def test_entropy_reverse(ellipse21, unit_disk, big_disk):
    assert check_entropy_reverse(ellipse21, unit_disk).holds
    assert check_entropy_reverse(big_disk, unit_disk).equality_case


@pytest.mark.parametrize("name", sorted(TEST_FUNCTIONS))
def test_green_osher_disks(name, big_disk, unit_disk):
    F = TEST_FUNCTIONS[name]
    report = green_osher(big_disk, unit_disk, F)
    # ρ ≡ 2 and both Steiner roots are −2
    assert report.lhs == pytest.approx(2 * float(F(np.array([2.0]))[0]), rel=1e-10, abs=1e-12)
    assert report.holds and report.equality_case


@pytest.mark.parametrize("name", sorted(TEST_FUNCTIONS))
def test_green_osher_ellipse(name, ellipse21, unit_disk):
    report = green_osher(ellipse21, unit_disk, TEST_FUNCTIONS[name])
    assert report.name == f"green_osher:{name}"
    assert report.holds
    assert not report.equality_case


def test_test_functions_are_certified():
    with pytest.raises(InvalidParameter):
        ConvexTestFunction("log", np.log)
    with pytest.raises(InvalidParameter):
        ConvexTestFunction("sin", np.sin)
    with pytest.raises(DomainError):
        TEST_FUNCTIONS["neglog"](np.array([1.0, -1.0]))


def test_entropy_nd_and_jensen_need_no_position(big_disk, shifted_disk, unit_disk):
    assert check_entropy_nd(big_disk, shifted_disk).holds
    assert check_jensen_chain(big_disk, shifted_disk).holds
    nd = check_entropy_nd(big_disk, unit_disk)
    assert nd.rhs == pytest.approx(-4 * math.pi * LOG2)
    assert nd.equality_case
    jensen = check_jensen_chain(big_disk, unit_disk)
    assert jensen.lhs == pytest.approx(-8 * math.pi * LOG2)
    assert jensen.equality_case


def test_ball_entropy_of_disks():
    for radius in (0.5, 1.0, 3.0):
        report = check_ball_entropy(disk(radius))
        assert report.lhs == pytest.approx(0.0, abs=1e-12)
        assert report.holds and report.equality_case


def test_ball_entropy_closed_form(p01):
    expected = -2 * math.pi * math.log((1 + math.sqrt(0.91)) / 2) + math.pi * math.log(0.985)
    report = check_ball_entropy(p01)
    assert report.lhs == pytest.approx(expected, rel=1e-10)
    assert report.lhs == pytest.approx(0.0989, abs=1e-4)
    assert report.holds and not report.equality_case


def test_ball_entropy_forms_agree(p01, ellipse21):
    for K in (p01, ellipse21, random_body(8)):
        combined = check_ball_entropy_combined(K)
        assert combined.lhs == pytest.approx(check_ball_entropy(K).lhs, rel=1e-10)


def test_ball_entropy_mismatch_is_detected(monkeypatch, p01):
    from convex_entropy import inequality

    monkeypatch.setattr(inequality, "_ball_entropy_lhs", lambda K: 1.0)
    with pytest.raises(QuadratureMismatch):
        check_ball_entropy_combined(p01)


def test_log_bm_disks(big_disk, unit_disk):
    report = check_log_bm(big_disk, unit_disk)
    assert report.rhs == pytest.approx(2 * math.pi)
    assert report.slack > 0
    assert report.holds and report.equality_case


def test_log_bm_ellipse(ellipse21, unit_disk):
    for lam in (0.25, 0.5, 0.75):
        report = check_log_bm(ellipse21, unit_disk, lam=lam, m=256)
        assert report.holds
        assert not report.equality_case


def test_log_bm_requires_position(big_disk, shifted_disk):
    with pytest.raises(NotDilationPosition):
        check_log_bm(big_disk, shifted_disk)


def test_holder_profile_for_homothets(big_disk, unit_disk):
    for p in (1.0, 4.0, 50.0):
        assert holder_profile(big_disk, unit_disk, p) == pytest.approx(-2 * LOG2, rel=1e-12)
    report = check_holder_bound(big_disk, unit_disk)
    assert report.holds and report.equality_case
    with pytest.raises(InvalidParameter):
        holder_profile(big_disk, unit_disk, 0.5)


def test_holder_bound_and_limit(ellipse21, unit_disk):
    for p in (1.0, 16.0, 200.0):
        assert check_holder_bound(ellipse21, unit_disk, p=p).holds
    entropy = curvature_entropy(ellipse21, unit_disk)
    far = abs(entropy_from_holder_limit(ellipse21, unit_disk, 10.0) - entropy)
    near = abs(entropy_from_holder_limit(ellipse21, unit_disk, 1000.0) - entropy)
    assert near < far
    assert near < 1e-2 * abs(entropy)


def test_uniqueness_diagnostic(ellipse21, unit_disk):
    cv, sd = check_uniqueness_diagnostic(ellipse21, ellipse21)
    assert cv == 0.0 and sd == 0.0
    cv, sd = check_uniqueness_diagnostic(ellipse21, unit_disk)
    assert cv > 0 and sd > 0


def test_equal_volume_homothets_at_dilation_position_coincide():
    K = random_body(12)
    L = translate(K, Vector2(0.05, 0.03))
    K2, L2, report = dilation_position(K, L)
    assert report.r == pytest.approx(1.0, abs=1e-8)
    cv, sd = check_uniqueness_diagnostic(K2, L2)
    assert sd < 1e-8
    assert cv < 1e-7


HOMOTHET_CHECKS = [
    "entropy",
    "entropy_reverse",
    "logmink",
    "entropy_nd",
    "jensen",
    "holder",
    "log_bm",
    "green_osher:neglog",
    "green_osher:square",
    "green_osher:xlogx",
    "green_osher:reciprocal",
]


@pytest.mark.parametrize("seed", [0, 1, 2])
@pytest.mark.parametrize("t", [0.5, 1.0, 2.0])
def test_homothets_are_equality_cases(seed, t):
    K = random_body(seed, n=128)
    L = scale(translate(K, Vector2(0.04, -0.03)), t)
    K2, L2, _ = dilation_position(K, L)
    unit = max(1.0, volume(K2))
    for name in HOMOTHET_CHECKS:
        report = run_check(name, K2, L2, positioned=True)
        assert report.holds, name
        assert report.equality_case, name
        if name != "log_bm":
            assert abs(report.slack) <= 1e-6 * unit, name


@pytest.mark.parametrize("seed", [3, 4, 5, 6])
def test_random_pairs_satisfy_every_pair_check(seed):
    K, L = random_body(2 * seed, n=128), random_body(2 * seed + 1, n=128)
    K2, L2, _ = dilation_position(K, L)
    for name, checker in CHECKERS.items():
        if not checker.pair:
            continue
        m_small = {"m": 256} if name == "log_bm" else {}
        if m_small:
            report = check_log_bm(K2, L2, positioned=True, **m_small)
        else:
            report = run_check(name, K2, L2, positioned=True)
        assert report.holds, (name, report)
        assert report.slack >= -1e-8


def test_registry_lookup():
    assert get_checker("log_bm:0.25").name == "log_bm:0.25"
    assert not get_checker("holder:4").needs_position
    assert not get_checker("ball").pair
    for bad in ("nope", "holder:x", "log_bm:"):
        with pytest.raises(InvalidParameter):
            get_checker(bad)


def test_run_check_uses_registry_name(big_disk, unit_disk):
    report = run_check("log_bm:0.25", big_disk, unit_disk)
    assert report.name == "log_bm:0.25"
    assert report.holds
    single = run_check("ball", disk(2.0), disk(2.0))
    assert single.name == "ball" and single.equality_case


def test_log_bm_polygon_converges_from_above(big_disk, unit_disk, ellipse21):
    # for 2B and B the combination is the disk of radius √2: A_m = 2m·tan(π/m)
    areas = [polygon_volume(log_combination(big_disk, unit_disk, 0.5, m)) for m in (256, 1024, 4096)]
    for m, area in zip((256, 1024, 4096), areas):
        assert area > 2 * math.pi
        assert (area - 2 * math.pi) * m * m == pytest.approx(2 * math.pi**3 / 3, rel=1e-3)
    smooth = [polygon_volume(log_combination(ellipse21, unit_disk, 0.5, m)) for m in (256, 1024, 4096)]
    assert smooth[0] >= smooth[1] - 1e-12
    assert smooth[1] >= smooth[2] - 1e-12
    assert 12.0 < (smooth[0] - smooth[1]) / (smooth[1] - smooth[2]) < 20.0


def test_log_bm_excess_does_not_hide_a_violation(monkeypatch, big_disk, unit_disk):
    from convex_entropy import inequality

    # an area 1e-4 short of V(K)^½·V(L)^½ = 2π, inside the polygon excess
    monkeypatch.setattr(inequality, "polygon_volume", lambda P: 2 * math.pi - 1e-4)
    report = check_log_bm(big_disk, unit_disk, m=256)
    assert report.slack == pytest.approx(-1e-4, rel=1e-6)
    assert wulff_excess_bound(big_disk, unit_disk, 0.5, 256) > 1e-4
    assert not report.holds
    assert not report.equality_case


@pytest.mark.parametrize("seed", [7, 8, 9])
def test_chain_consistency(seed):
    K, L = random_body(2 * seed, n=128), random_body(2 * seed + 1, n=128)
    K2, L2, _ = dilation_position(K, L)
    entropy = check_entropy_inequality(K2, L2, positioned=True).slack
    logmink = check_log_minkowski(K2, L2, positioned=True).slack
    jensen = check_jensen_chain(K2, L2).slack
    assert entropy >= logmink - jensen - 1e-10


@pytest.mark.parametrize("seed", [10, 11])
def test_slacks_are_converged_on_smooth_bodies(seed):
    K, L = random_body(2 * seed, harmonics=4), random_body(2 * seed + 1, harmonics=4)
    K2, L2, _ = dilation_position(K, L)
    unit = max(1.0, volume(K2))
    for name, checker in CHECKERS.items():
        if name == "log_bm":
            # refines in the number of polygon directions, not in n
            continue
        coarse = run_check(name, K2, L2, positioned=True)
        fine = run_check(name, K2.at(512), L2.at(512), positioned=True)
        assert abs(fine.slack - coarse.slack) <= 1e-8 * unit, name
