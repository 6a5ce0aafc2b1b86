import json
import math

import pytest
from scipy.integrate import quad

from convex_entropy.body import TrigSeries, Vector2, disk, ellipse, from_trig, translate


@pytest.fixture(autouse=True)
def isolated_config(tmp_path, monkeypatch):
    """Point the user config at an empty temp file location."""
    path = tmp_path / "config.json"
    monkeypatch.setenv("CONVEX_ENTROPY_CONFIG", str(path))
    return path


@pytest.fixture
def unit_disk():
    return disk(1.0, name="B")


@pytest.fixture
def big_disk():
    return disk(2.0, name="2B")


@pytest.fixture
def ellipse21():
    return ellipse(2.0, 1.0, name="E")


@pytest.fixture
def shifted_disk():
    return translate(disk(1.0, name="B"), Vector2(0.9, 0.0))


@pytest.fixture
def p01():
    """h = 1 + 0.1·cos 2θ."""
    return from_trig(TrigSeries(1.0, (0.0, 0.1), (0.0, 0.0)), name="P")


@pytest.fixture
def p01_entropy() -> float:
    """E(P, B) = −∫ log f_P · ½ h_P f_P dθ by adaptive quadrature."""

    def integrand(t):
        h = 1.0 + 0.1 * math.cos(2 * t)
        f = 1.0 - 0.3 * math.cos(2 * t)
        return -math.log(f) * 0.5 * h * f

    value, _ = quad(integrand, 0.0, 2.0 * math.pi, epsabs=1e-14, epsrel=1e-13, limit=200)
    return value


@pytest.fixture
def write_json(tmp_path):
    def write(name: str, doc: dict) -> str:
        path = tmp_path / name
        path.write_text(json.dumps(doc), encoding="utf-8")
        return str(path)

    return write
