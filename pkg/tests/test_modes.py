import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from beamnoise.modes import (
    FlattenedGaussian,
    HermiteGauss,
    HermiteGauss1D,
    LaguerreGauss,
    ModeSpecError,
    evaluate_mode,
    finite_difference_laplacian,
    gradient,
    laplacian,
    mode_norm,
    parse_basis,
    parse_mode,
    split_specs,
)
from beamnoise.moments import gram_matrix
from beamnoise.quadrature import gauss_hermite, gauss_laguerre_polar

coords = st.floats(min_value=-3, max_value=3, allow_nan=False)


def test_fundamental_on_axis():
    # integral of exp(-2 r^2/w^2) over the plane is pi w^2/2
    assert evaluate_mode(HermiteGauss(0, 0), 0.0, 0.0).real == pytest.approx(math.sqrt(2 / math.pi), abs=1e-14)
    assert abs(evaluate_mode(HermiteGauss(0, 0), 0.0, 0.0)) == pytest.approx(0.79788, abs=1e-5)


@pytest.mark.parametrize("waist", [0.5, 1.0, 3.0])
def test_vortex_null_on_axis(waist):
    assert evaluate_mode(LaguerreGauss(1, 0, waist), 0.0, 0.0) == 0
    assert evaluate_mode(LaguerreGauss(-3, 2, waist), 0.0, 0.0) == 0


def test_odd_hg1d_vanishes_at_origin():
    assert evaluate_mode(HermiteGauss1D(1), 0.0) == 0


@pytest.mark.parametrize(
    "mode",
    [HermiteGauss(2, 3), LaguerreGauss(3, 2), FlattenedGaussian(30), HermiteGauss(12, 0), LaguerreGauss(-6, 3)],
    ids=lambda m: m.label,
)
@pytest.mark.parametrize("rule", ["hermite", "laguerre"])
def test_mode_norm(mode, rule):
    q = gauss_hermite() if rule == "hermite" else gauss_laguerre_polar()
    assert mode_norm(mode, q) == pytest.approx(1.0, abs=1e-10)


def test_hg1d_norm():
    q = gauss_hermite(ndim=1)
    for n in range(13):
        assert mode_norm(HermiteGauss1D(n), q) == pytest.approx(1.0, abs=1e-12)


def test_hg_orthonormal_up_to_order_12():
    basis = [HermiteGauss(nx, n - nx) for n in range(13) for nx in range(n + 1)]
    G = gram_matrix(basis, gauss_hermite())
    assert np.max(np.abs(G - np.eye(len(basis)))) < 1e-10


def test_lg_orthonormal_up_to_order_12():
    basis = [LaguerreGauss(l, p) for p in range(7) for l in range(-12, 13) if 2 * p + abs(l) <= 12]
    for q in (gauss_laguerre_polar(), gauss_hermite()):
        G = gram_matrix(basis, q)
        assert np.max(np.abs(G - np.eye(len(basis)))) < 1e-10


def test_flattened_gaussians_normalized_up_to_30():
    q = gauss_laguerre_polar()
    for n in range(31):
        assert mode_norm(FlattenedGaussian(n), q) == pytest.approx(1.0, abs=1e-10)


def test_flattened_order_zero_is_fundamental():
    x = np.linspace(-2, 2, 9)
    np.testing.assert_allclose(evaluate_mode(FlattenedGaussian(0), x, 0.3 * x), evaluate_mode(HermiteGauss(0, 0), x, 0.3 * x), atol=1e-15)


@given(n=st.integers(0, 15), x=coords)
def test_hg1d_parity(n, x):
    a = evaluate_mode(HermiteGauss1D(n), x)
    b = evaluate_mode(HermiteGauss1D(n), -x)
    assert a == pytest.approx((-1) ** n * b, abs=1e-14)


@settings(max_examples=60)
@given(
    family=st.sampled_from(["hg", "lg", "fg"]),
    i=st.integers(0, 6),
    j=st.integers(0, 3),
    x=coords,
    y=coords,
    w=st.floats(0.3, 3.0),
)
def test_scale_covariance(family, i, j, x, y, w):
    make = {
        "hg": lambda wa: HermiteGauss(i, j, wa),
        "lg": lambda wa: LaguerreGauss(i - 3, j, wa),
        "fg": lambda wa: FlattenedGaussian(i + j, wa),
    }[family]
    small = evaluate_mode(make(w), x, y)
    big = evaluate_mode(make(2 * w), 2 * x, 2 * y)
    assert big == pytest.approx(0.5 * small, rel=1e-10, abs=1e-14)


def test_laplacian_fundamental_on_axis():
    u = HermiteGauss(0, 0)
    assert laplacian(u, 0.0, 0.0) == pytest.approx(-4 * evaluate_mode(u, 0.0, 0.0), rel=1e-14)
    u1 = HermiteGauss1D(0)
    assert laplacian(u1, 0.0) == pytest.approx(-2 * evaluate_mode(u1, 0.0), rel=1e-14)


def test_laplacian_flattened_gaussian_matches_extended_precision_stencil():
    # central 5-point stencil with h = 1e-4 w, evaluated in 40-digit arithmetic on
    # the series form of the mode (double precision roundoff would dominate here)
    mode = FlattenedGaussian(5)
    mp.mp.dps = 40
    amp = mp.mpf(mode.amplitude)

    def u(x, y):
        s = x * x + y * y
        return amp * mp.e ** (-s) * sum(s**n / mp.factorial(n) for n in range(6))

    h, x0, y0 = mp.mpf("1e-4"), mp.mpf("0.7"), mp.mpf(0)
    stencil = (u(x0 + h, y0) + u(x0 - h, y0) + u(x0, y0 + h) + u(x0, y0 - h) - 4 * u(x0, y0)) / h**2
    analytic = laplacian(mode, 0.7, 0.0).real
    assert abs(analytic - float(stencil)) / abs(float(stencil)) < 1e-6


def _support_points(mode, count=120, seed=0):
    rng = np.random.default_rng(seed)
    radius = mode.waist * (1.5 * math.sqrt(getattr(mode, "order", 0) + 1) + 1.5)
    r = radius * np.sqrt(rng.uniform(0, 1, count))
    phi = rng.uniform(0, 2 * np.pi, count)
    return r * np.cos(phi), r * np.sin(phi)


LAPLACIAN_MODES = (
    [HermiteGauss(nx, ny) for nx, ny in [(0, 0), (1, 0), (3, 5), (8, 0), (4, 4), (2, 7)]]
    + [LaguerreGauss(l, p) for l, p in [(0, 0), (1, 0), (-2, 1), (3, 2), (0, 4), (-8, 0)]]
    + [FlattenedGaussian(n) for n in (1, 5, 12, 30)]
)


@pytest.mark.parametrize("mode", LAPLACIAN_MODES, ids=lambda m: m.label)
def test_laplacian_matches_finite_differences(mode):
    # error measured against the largest |lap u| among the samples: the flat top of a
    # high-order flattened Gaussian has a Laplacian far below double-precision stencil noise
    x, y = _support_points(mode)
    exact = laplacian(mode, x, y)
    fd = finite_difference_laplacian(mode, x, y)
    assert np.max(np.abs(exact - fd)) / np.max(np.abs(exact)) < 1e-6


@pytest.mark.parametrize("n", [0, 1, 4, 8])
def test_laplacian_1d_matches_finite_differences(n):
    x = np.linspace(-4, 4, 101)
    exact = laplacian(HermiteGauss1D(n), x)
    fd = finite_difference_laplacian(HermiteGauss1D(n), x)
    assert np.max(np.abs(exact - fd)) / np.max(np.abs(exact)) < 1e-6


@pytest.mark.parametrize("mode", LAPLACIAN_MODES, ids=lambda m: m.label)
def test_gradient_matches_finite_differences(mode):
    x, y = _support_points(mode, seed=1)
    h = 1e-6
    gx, gy = gradient(mode, x, y)
    fx = (evaluate_mode(mode, x + h, y) - evaluate_mode(mode, x - h, y)) / (2 * h)
    fy = (evaluate_mode(mode, x, y + h) - evaluate_mode(mode, x, y - h)) / (2 * h)
    scale = max(np.max(np.abs(gx)), np.max(np.abs(gy)))
    assert np.max(np.abs(gx - fx)) / scale < 1e-7
    assert np.max(np.abs(gy - fy)) / scale < 1e-7


def test_negative_order_rejected():
    with pytest.raises(ModeSpecError):
        HermiteGauss(-1, 0)
    with pytest.raises(ModeSpecError):
        LaguerreGauss(1, -2)
    with pytest.raises(ModeSpecError):
        FlattenedGaussian(-3)
    with pytest.raises(ModeSpecError):
        HermiteGauss1D(0, waist=0.0)


def test_parse_mode():
    assert parse_mode("hg:2,3") == HermiteGauss(2, 3)
    assert parse_mode("hg1d:4", waist=2.0) == HermiteGauss1D(4, 2.0)
    assert parse_mode("lg:-2,1") == LaguerreGauss(-2, 1)
    assert parse_mode("fg:30") == FlattenedGaussian(30)
    for mode in (HermiteGauss(1, 0), HermiteGauss1D(3), LaguerreGauss(-1, 2), FlattenedGaussian(7)):
        assert parse_mode(mode.spec) == mode


@pytest.mark.parametrize("bad", ["hx:1", "hg:1", "lg:a,0", "fg:", "hg1d:-1", "gauss"])
def test_parse_mode_rejects(bad):
    with pytest.raises(ModeSpecError):
        parse_mode(bad)


def test_split_specs_rejoins_parameters():
    assert split_specs("hg:0,0,lg:1,0,fg:3") == ["hg:0,0", "lg:1,0", "fg:3"]
    assert split_specs("coherent,dispsq:1,0.5,fock") == ["coherent", "dispsq:1,0.5", "fock"]
    assert [m.label for m in parse_basis("hg1d:0,hg1d:2")] == ["HG0", "HG2"]
