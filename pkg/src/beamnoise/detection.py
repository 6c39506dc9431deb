"""Detection modes of the beam width and of the angular spread.

The width detection mode is v0 = (x^2+y^2) u0 / sqrt(F00); its amplitude
quadrature carries all the linearized width noise of a bright beam in u0.
v1 completes u0 in span{v0, v1}. The angular counterpart is
m0 = -lap(u0) / (k^2 sqrt(Ftilde00)).
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .modes import (
    HermiteGauss,
    HermiteGauss1D,
    LaguerreGauss,
    SampledMode,
    TransverseMode,
    evaluate_mode,
    laplacian,
)
from .moments import _resolve, angular_mode_moments, mode_moments, values_on
from .quadrature import Quadrature

log = logging.getLogger(__name__)

# coefficients below this fraction of the largest one do not fix the global phase
PHASE_REFERENCE_CUTOFF = 1e-8


@dataclass(frozen=True, eq=False)
class Decomposition:
    labels: tuple
    coefficients: np.ndarray
    completeness: float
    warning: Optional[str] = None

    def __getitem__(self, label: str) -> complex:
        return complex(self.coefficients[self.labels.index(label)])

    def to_dict(self) -> dict:
        return {
            "basis": list(self.labels),
            "coefficients": [[float(c.real), float(c.imag)] for c in self.coefficients],
            "completeness": float(self.completeness),
            "warning": self.warning,
        }


def hg_basis(max_order: int, waist: float = 1.0, ndim: int = 2) -> list:
    """HG modes with total order <= max_order, lowest order first."""
    if ndim == 1:
        return [HermiteGauss1D(n, waist) for n in range(max_order + 1)]
    return [HermiteGauss(nx, order - nx, waist) for order in range(max_order + 1) for nx in range(order, -1, -1)]


def lg_basis(max_order: int, waist: float = 1.0) -> list:
    """LG modes with 2p + |l| <= max_order, lowest order first."""
    out = []
    for order in range(max_order + 1):
        for p in range(order // 2, -1, -1):
            m = order - 2 * p
            out.extend([LaguerreGauss(0, p, waist)] if m == 0 else [LaguerreGauss(m, p, waist), LaguerreGauss(-m, p, waist)])
    return out


def _sampled(q, values, func, label, waist):
    values = np.asarray(values, dtype=complex)
    values.setflags(write=False)
    return SampledMode(q, values, func, label, waist)


def width_detection_mode(u0: TransverseMode, q: Optional[Quadrature] = None) -> SampledMode:
    q = _resolve([u0], q)
    _, f00 = mode_moments(u0, q)
    if not f00 > 0:
        raise ValueError(f"F00 of {u0.label} is not positive")
    scale = 1.0 / math.sqrt(f00)
    values = q.r2 * values_on(u0, q) * scale
    func = None
    if not isinstance(u0, SampledMode) or u0.func is not None:
        if u0.ndim == 1:
            def func(x):
                return np.asarray(x, dtype=float) ** 2 * evaluate_mode(u0, x) * scale
        else:
            def func(x, y):
                x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
                return (x**2 + y**2) * evaluate_mode(u0, x, y) * scale
    return _sampled(q, values, func, f"v0[{u0.label}]", u0.waist)


def residual_mode(u0: TransverseMode, q: Optional[Quadrature] = None):
    """Split u0 = c0 v0 + c1 v1 with v1 orthogonal to v0.

    Returns (v1, c0, c1) where c0 = D00/sqrt(F00) and c1 = sqrt(1 - D00^2/F00).
    """
    q = _resolve([u0], q)
    d00, f00 = mode_moments(u0, q)
    rest = 1.0 - d00**2 / f00
    if not rest > 1e-14:
        raise ValueError(f"{u0.label}: D00^2 = F00, the residual mode is undefined")
    c0, c1 = d00 / math.sqrt(f00), math.sqrt(rest)
    v0 = width_detection_mode(u0, q)
    values = (values_on(u0, q) - c0 * v0.values) / c1
    func = None
    if v0.func is not None:
        if u0.ndim == 1:
            def func(x):
                return (evaluate_mode(u0, x) - c0 * v0.func(x)) / c1
        else:
            def func(x, y):
                return (evaluate_mode(u0, x, y) - c0 * v0.func(x, y)) / c1
    return _sampled(q, values, func, f"v1[{u0.label}]", u0.waist), c0, c1


def angular_detection_mode(u0: TransverseMode, k: float = 1.0, q: Optional[Quadrature] = None) -> SampledMode:
    q = _resolve([u0], q)
    _, ft00 = angular_mode_moments(u0, k, q)
    scale = -1.0 / (k**2 * math.sqrt(ft00))
    lap = laplacian(u0, q.x) if q.ndim == 1 else laplacian(u0, q.x, q.y)
    if u0.ndim == 1:
        def func(x):
            return laplacian(u0, x) * scale
    else:
        def func(x, y):
            return laplacian(u0, x, y) * scale
    return _sampled(q, lap * scale, func, f"m0[{u0.label}]", u0.waist)


def fix_global_phase(coefficients: np.ndarray) -> np.ndarray:
    """Rotate so that the first non-negligible coefficient is real and non-negative."""
    c = np.asarray(coefficients, dtype=complex)
    big = np.abs(c)
    if big.size == 0 or big.max() == 0:
        return c
    first = int(np.argmax(big > PHASE_REFERENCE_CUTOFF * big.max()))
    return c * (np.conj(c[first]) / abs(c[first]))


def decompose_on_basis(
    v: TransverseMode,
    family: str = "hg",
    max_order: int = 2,
    q: Optional[Quadrature] = None,
    basis: Optional[Sequence[TransverseMode]] = None,
    tol: float = 1e-8,
) -> Decomposition:
    """Project ``v`` on an analytic family up to ``max_order``: c_i = <u_i|v>."""
    q = _resolve([v], q)
    if basis is None:
        family = family.lower()
        if family == "hg":
            basis = hg_basis(max_order, v.waist, v.ndim)
        elif family == "lg":
            if v.ndim != 2:
                raise ValueError("LG decomposition needs a 2-D mode")
            basis = lg_basis(max_order, v.waist)
        else:
            raise ValueError(f"unknown basis family {family!r}; use 'hg' or 'lg'")
    vv = values_on(v, q)
    U = np.array([values_on(m, q) for m in basis])
    coeffs = fix_global_phase((np.conj(U) * q.weights) @ vv)
    total = float(np.sum(np.abs(coeffs) ** 2))
    norm2 = float(q.integrate(np.abs(vv) ** 2).real)
    completeness = total / norm2 if norm2 > 0 else 0.0
    warning = None
    if completeness < 1 - tol:
        warning = f"basis up to order {max_order} captures only {completeness:.6f} of the mode power"
        log.warning("%s: %s", getattr(v, "label", "mode"), warning)
    return Decomposition(tuple(m.label for m in basis), coeffs, completeness, warning)


def line_profile(mode: TransverseMode, x: np.ndarray) -> np.ndarray:
    """Amplitude along the x axis (y = 0 for 2-D modes)."""
    x = np.asarray(x, dtype=float)
    return evaluate_mode(mode, x) if mode.ndim == 1 else evaluate_mode(mode, x, np.zeros_like(x))


def profile_peaks(x: np.ndarray, values: np.ndarray, min_height: float = 1e-3) -> list[float]:
    """Local maxima of a sampled real profile, refined by a parabola through three samples.

    Maxima lower than ``min_height`` times the global maximum are ignored.
    """
    x = np.asarray(x, dtype=float)
    v = np.asarray(values, dtype=float)
    floor = min_height * v.max()
    peaks = []
    for i in range(1, v.size - 1):
        if v[i] > v[i - 1] and v[i] >= v[i + 1] and v[i] > floor:
            denom = v[i - 1] - 2 * v[i] + v[i + 1]
            shift = 0.5 * (v[i - 1] - v[i + 1]) / denom if denom != 0 else 0.0
            h = 0.5 * (x[i + 1] - x[i - 1])
            peaks.append(float(x[i] + shift * h))
    return peaks
