"""Fixed Gaussian quadrature over the transverse plane.

Every in-scope integrand is a polynomial times exp(-2 r^2/w^2), so the rules
below are exact up to their stated degree. Weights absorb the Gaussian
weight function: ``integrate(f)`` is simply ``sum(weights * f(nodes))``.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional

import numpy as np
from scipy.special import roots_hermite, roots_laguerre

DEFAULT_AXIS_NODES = 64
DEFAULT_RADIAL_NODES = 128
DEFAULT_AZIMUTHAL_NODES = 64

# environment overrides for the default node counts
ENV_AXIS_NODES = "BEAMNOISE_AXIS_NODES"
ENV_RADIAL_NODES = "BEAMNOISE_RADIAL_NODES"


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return default
    value = int(raw)
    if value < 1:
        raise ValueError(f"{name} must be a positive integer, got {raw!r}")
    return value


def default_axis_nodes() -> int:
    return _env_int(ENV_AXIS_NODES, DEFAULT_AXIS_NODES)


def default_radial_nodes() -> int:
    return _env_int(ENV_RADIAL_NODES, DEFAULT_RADIAL_NODES)


@dataclass(frozen=True, eq=False)
class Quadrature:
    """Nodes and positive weights for an integral over the line or the plane.

    ``degree`` is the polynomial degree (per axis, or in r for the polar rule)
    integrated exactly against the Gaussian weight exp(-2 r^2/w^2).
    """

    scheme: str
    x: np.ndarray
    y: Optional[np.ndarray]
    weights: np.ndarray
    waist: float = 1.0
    degree: Optional[int] = None

    def __post_init__(self):
        if np.any(self.weights < 0):
            raise ValueError("quadrature weights must be non-negative")
        if self.y is not None and self.y.shape != self.x.shape:
            raise ValueError("x and y node arrays must have the same shape")

    @property
    def ndim(self) -> int:
        return 1 if self.y is None else 2

    @property
    def size(self) -> int:
        return self.weights.size

    @property
    def r2(self) -> np.ndarray:
        """Squared distance from the axis at each node (x^2 in 1-D)."""
        return self.x**2 if self.y is None else self.x**2 + self.y**2

    def integrate(self, values) -> complex:
        values = np.asarray(values)
        if values.shape[-1] != self.size:
            raise ValueError(f"expected {self.size} node values, got shape {values.shape}")
        return np.sum(values * self.weights, axis=-1)

    def inner(self, a: np.ndarray, b: np.ndarray) -> complex:
        """<a|b> = integral of conj(a) b."""
        return self.integrate(np.conj(a) * b)


def _hermite_rule(nodes: int, waist: float):
    xi, w = roots_hermite(nodes)
    # sum w_k g(xi_k) ~ integral g(xi) exp(-xi^2); undo the weight, change xi = sqrt(2) x/w
    scaled = np.exp(np.log(w) + xi**2) * waist / math.sqrt(2.0)
    return xi * waist / math.sqrt(2.0), scaled


def _frozen(*arrays):
    for a in arrays:
        if a is not None:
            a.setflags(write=False)


def gauss_hermite(nodes: Optional[int] = None, waist: float = 1.0, ndim: int = 2) -> Quadrature:
    """Gauss-Hermite rule per axis in xi = sqrt(2) x / w (tensor product in 2-D).

    Exact for polynomial x exp(-2 x^2/w^2) integrands of degree <= 2*nodes - 1 per axis.
    """
    nodes = default_axis_nodes() if nodes is None else int(nodes)
    if nodes < 1:
        raise ValueError("need at least one node")
    return _gauss_hermite(nodes, float(waist), int(ndim))


@lru_cache(maxsize=32)
def _gauss_hermite(nodes: int, waist: float, ndim: int) -> Quadrature:
    x, w = _hermite_rule(nodes, waist)
    if ndim == 1:
        _frozen(x, w)
        return Quadrature("gauss-hermite", x, None, w, waist, 2 * nodes - 1)
    if ndim != 2:
        raise ValueError(f"ndim must be 1 or 2, got {ndim}")
    xx, yy = np.meshgrid(x, x, indexing="ij")
    xx, yy, ww = xx.ravel(), yy.ravel(), np.outer(w, w).ravel()
    _frozen(xx, yy, ww)
    return Quadrature("gauss-hermite", xx, yy, ww, waist, 2 * nodes - 1)


def gauss_laguerre_polar(
    nodes: Optional[int] = None, azimuthal: int = DEFAULT_AZIMUTHAL_NODES, waist: float = 1.0
) -> Quadrature:
    """Gauss-Laguerre in t = 2 r^2/w^2 times the trapezoid rule in phi.

    dx dy = (w^2/4) dt dphi. Exact for integrands P(t) exp(-t) exp(i m phi) with
    deg P <= 2*nodes - 1 and |m| < azimuthal; odd total powers of r only occur
    with odd azimuthal harmonics, which the trapezoid rule integrates to zero.
    """
    nodes = default_radial_nodes() if nodes is None else int(nodes)
    return _gauss_laguerre_polar(nodes, int(azimuthal), float(waist))


@lru_cache(maxsize=32)
def _gauss_laguerre_polar(nodes: int, azimuthal: int, waist: float) -> Quadrature:
    t, w = roots_laguerre(nodes)
    with np.errstate(divide="ignore"):
        radial_w = np.where(w > 0, np.exp(np.log(np.where(w > 0, w, 1.0)) + t), 0.0)
    r = waist * np.sqrt(t / 2.0)
    phi = 2 * np.pi * np.arange(azimuthal) / azimuthal
    rr, pp = np.meshgrid(r, phi, indexing="ij")
    ww = np.outer(radial_w * waist**2 / 4.0, np.full(azimuthal, 2 * np.pi / azimuthal)).ravel()
    xx, yy = (rr * np.cos(pp)).ravel(), (rr * np.sin(pp)).ravel()
    _frozen(xx, yy, ww)
    return Quadrature(
        "gauss-laguerre-polar",
        xx,
        yy,
        ww,
        waist,
        min(2 * (2 * nodes - 1), azimuthal - 1),
    )


def tensor_grid(x: np.ndarray, y: Optional[np.ndarray], weights: np.ndarray, waist: float = 1.0) -> Quadrature:
    """Explicit node/weight set (no exactness claim)."""
    return Quadrature(
        "tensor-grid",
        np.asarray(x, dtype=float).ravel(),
        None if y is None else np.asarray(y, dtype=float).ravel(),
        np.asarray(weights, dtype=float).ravel(),
        waist,
        None,
    )


def default_quadrature(modes: Iterable, nodes: Optional[int] = None) -> Quadrature:
    """Pick the natural rule for a set of modes.

    Circularly symmetric families (LG, flattened Gaussian) get the polar
    Gauss-Laguerre rule; anything else gets the Gauss-Hermite tensor rule.
    """
    from .modes import FlattenedGaussian, LaguerreGauss, SampledMode

    modes = list(modes)
    if not modes:
        raise ValueError("empty mode list")
    for m in modes:
        if isinstance(m, SampledMode):
            return m.quadrature
    waists = {m.waist for m in modes}
    if len(waists) != 1:
        raise ValueError(f"modes do not share a waist: {sorted(waists)}")
    waist = waists.pop()
    ndim = modes[0].ndim
    if ndim == 2 and all(isinstance(m, (LaguerreGauss, FlattenedGaussian)) for m in modes):
        return gauss_laguerre_polar(nodes, waist=waist)
    return gauss_hermite(nodes, waist=waist, ndim=ndim)
