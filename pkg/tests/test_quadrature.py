import math

import numpy as np
import pytest

from beamnoise.modes import HermiteGauss, evaluate_mode
from beamnoise.quadrature import (
    ENV_AXIS_NODES,
    default_axis_nodes,
    gauss_hermite,
    gauss_laguerre_polar,
    tensor_grid,
)


def gaussian_moment_1d(k, waist=1.0):
    # integral x^(2k) exp(-2 x^2/w^2) dx = Gamma(k + 1/2) (w^2/2)^(k + 1/2)
    return math.gamma(k + 0.5) * (waist**2 / 2) ** (k + 0.5)


@pytest.mark.parametrize("rule", [gauss_hermite, gauss_laguerre_polar])
def test_weights_positive(rule):
    assert np.all(rule().weights >= 0)


@pytest.mark.parametrize("rule", [gauss_hermite, gauss_laguerre_polar])
def test_fundamental_power_is_one(rule):
    q = rule()
    u = evaluate_mode(HermiteGauss(0, 0), q.x, q.y)
    assert q.integrate(np.abs(u) ** 2).real == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("nodes", [4, 10, 32])
def test_hermite_degree_exactness(nodes):
    q = gauss_hermite(nodes, ndim=1)
    for k in range(nodes):  # degree 2k <= 2 nodes - 1
        got = q.integrate(q.x ** (2 * k) * np.exp(-2 * q.x**2)).real
        assert got == pytest.approx(gaussian_moment_1d(k), rel=1e-11)
    assert q.degree == 2 * nodes - 1


def test_hermite_inexact_beyond_degree():
    q = gauss_hermite(3, ndim=1)
    got = q.integrate(q.x**6 * np.exp(-2 * q.x**2)).real
    assert got != pytest.approx(gaussian_moment_1d(3), rel=1e-6)


def test_polar_rule_integrates_mixed_monomials():
    q = gauss_laguerre_polar(40, 32, waist=1.5)
    g = np.exp(-2 * (q.x**2 + q.y**2) / 1.5**2)
    for a, b in [(0, 0), (2, 0), (2, 4), (6, 2), (1, 0), (3, 2)]:
        expect = 0.0
        if a % 2 == 0 and b % 2 == 0:
            expect = gaussian_moment_1d(a // 2, 1.5) * gaussian_moment_1d(b // 2, 1.5)
        got = q.integrate(q.x**a * q.y**b * g).real
        assert got == pytest.approx(expect, rel=1e-11, abs=1e-12)


def test_tensor_grid_midpoint():
    x = np.linspace(-6, 6, 1201)
    xx, yy = np.meshgrid(x, x, indexing="ij")
    h = x[1] - x[0]
    q = tensor_grid(xx, yy, np.full(xx.size, h * h))
    u = evaluate_mode(HermiteGauss(0, 0), q.x, q.y)
    assert q.integrate(np.abs(u) ** 2).real == pytest.approx(1.0, abs=1e-10)
    assert q.degree is None


def test_env_override(monkeypatch):
    monkeypatch.setenv(ENV_AXIS_NODES, "12")
    assert default_axis_nodes() == 12
    assert gauss_hermite(ndim=1).size == 12
    monkeypatch.setenv(ENV_AXIS_NODES, "0")
    with pytest.raises(ValueError):
        default_axis_nodes()


def test_nodes_read_only():
    q = gauss_hermite(8)
    with pytest.raises(ValueError):
        q.weights[0] = 1.0
