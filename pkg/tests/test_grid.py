import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from convex_entropy.errors import InvalidParameter
from convex_entropy.grid import AngleGrid, PeriodicSamples, fourier_derivatives, integrate, resample


@pytest.mark.parametrize("n", [0, 6, 7, 255, 16.5])
def test_grid_rejects_bad_sizes(n):
    with pytest.raises(InvalidParameter):
        AngleGrid(n)


def test_grid_nodes_and_normals():
    grid = AngleGrid(8)
    assert grid.spacing == pytest.approx(math.pi / 4)
    assert grid.nodes[2] == pytest.approx(math.pi / 2)
    assert np.allclose(grid.normals[2], [0.0, 1.0])
    with pytest.raises(ValueError):
        grid.nodes[0] = 1.0


def test_samples_shape_is_checked():
    with pytest.raises(InvalidParameter):
        PeriodicSamples(AngleGrid(16), np.ones(15))


def test_samples_are_read_only_copies():
    raw = np.ones(16)
    s = PeriodicSamples(AngleGrid(16), raw)
    raw[0] = 5.0
    assert s.values[0] == 1.0
    with pytest.raises(ValueError):
        s.values[0] = 2.0


def test_trapezoid_is_exact_for_low_degree():
    grid = AngleGrid(16)
    assert integrate(grid.sample(lambda t: np.ones_like(t))) == pytest.approx(2 * math.pi)
    assert integrate(grid.sample(lambda t: np.cos(t) ** 2)) == pytest.approx(math.pi, rel=1e-14)
    assert integrate(grid.sample(lambda t: np.sin(3 * t))) == pytest.approx(0.0, abs=1e-14)


def test_spectral_derivatives():
    grid = AngleGrid(64)
    first, second = fourier_derivatives(grid.sample(lambda t: np.sin(3 * t)))
    assert np.allclose(first.values, 3 * np.cos(3 * grid.nodes), atol=1e-12)
    assert np.allclose(second.values, -9 * np.sin(3 * grid.nodes), atol=1e-11)


def test_nyquist_mode_has_no_first_derivative():
    grid = AngleGrid(16)
    s = grid.sample(lambda t: np.cos(8 * t))
    first, second = fourier_derivatives(s)
    assert np.allclose(first.values, 0.0, atol=1e-12)
    assert np.allclose(second.values, -64 * s.values, atol=1e-10)


def test_resample_interpolates_trig_polynomials():
    def poly(t):
        return 1.0 + 0.3 * np.cos(2 * t) - 0.2 * np.sin(5 * t)

    coarse = AngleGrid(32).sample(poly)
    fine = resample(coarse, 128)
    assert fine.n == 128
    assert np.allclose(fine.values, poly(fine.grid.nodes), atol=1e-13)
    assert resample(coarse, 32) is coarse


def test_refine_then_coarsen_is_identity():
    rng = np.random.default_rng(3)
    s = PeriodicSamples(AngleGrid(32), rng.normal(size=32))
    back = resample(resample(s, 128), 32)
    assert np.allclose(back.values, s.values, atol=1e-12)


@settings(max_examples=25, deadline=None)
@given(
    st.lists(st.floats(-10, 10, allow_nan=False), min_size=16, max_size=16),
    st.sampled_from([8, 32, 64]),
)
def test_resampling_preserves_the_integral(values, n_new):
    s = PeriodicSamples(AngleGrid(16), values)
    assert integrate(resample(s, n_new)) == pytest.approx(integrate(s), abs=1e-9)
