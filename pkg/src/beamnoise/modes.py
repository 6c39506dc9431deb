"""Normalized transverse modes of the paraxial wave equation at the waist plane.

Conventions (waist ``w``):

* HG:  u_n(x) = (2/pi)^(1/4) (2^n n! w)^(-1/2) H_n(sqrt(2) x / w) exp(-x^2/w^2)
* LG:  u_lp ~ (sqrt(2) r/w)^|l| L_p^|l|(2 r^2/w^2) exp(-r^2/w^2) exp(i l phi)
* FG:  u_N  = A_N exp(-r^2/w^2) sum_{n<=N} (r^2/w^2)^n / n!   (Gori's flattened Gaussian)

All families are normalized to unit power. 2-D amplitudes carry units of
1/length, 1-D amplitudes 1/sqrt(length).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional, Union

import numpy as np
from scipy.special import eval_genlaguerre, gammaincc, gammaln

ArrayLike = Union[float, np.ndarray]

# step for the finite-difference fallback, in units of the waist
FD_STEP = 1e-4


class ModeSpecError(ValueError):
    """Malformed mode specification string or invalid mode parameters."""


def _check_waist(waist: float) -> None:
    if not (waist > 0 and math.isfinite(waist)):
        raise ModeSpecError(f"waist must be a positive finite length, got {waist!r}")


def _check_order(name: str, value: int) -> None:
    if int(value) != value or value < 0:
        raise ModeSpecError(f"{name} must be a non-negative integer, got {value!r}")


@dataclass(frozen=True)
class HermiteGauss:
    nx: int
    ny: int
    waist: float = 1.0
    ndim = 2

    def __post_init__(self):
        _check_order("nx", self.nx)
        _check_order("ny", self.ny)
        _check_waist(self.waist)

    @property
    def order(self) -> int:
        return self.nx + self.ny

    @property
    def label(self) -> str:
        return f"HG{self.nx}{self.ny}" if max(self.nx, self.ny) < 10 else f"HG{self.nx},{self.ny}"

    @property
    def spec(self) -> str:
        return f"hg:{self.nx},{self.ny}"


@dataclass(frozen=True)
class HermiteGauss1D:
    n: int
    waist: float = 1.0
    ndim = 1

    def __post_init__(self):
        _check_order("n", self.n)
        _check_waist(self.waist)

    @property
    def order(self) -> int:
        return self.n

    @property
    def label(self) -> str:
        return f"HG{self.n}"

    @property
    def spec(self) -> str:
        return f"hg1d:{self.n}"


@dataclass(frozen=True)
class LaguerreGauss:
    l: int
    p: int
    waist: float = 1.0
    ndim = 2

    def __post_init__(self):
        if int(self.l) != self.l:
            raise ModeSpecError(f"l must be an integer, got {self.l!r}")
        _check_order("p", self.p)
        _check_waist(self.waist)

    @property
    def order(self) -> int:
        return 2 * self.p + abs(self.l)

    @property
    def label(self) -> str:
        return f"LG{self.l},{self.p}"

    @property
    def spec(self) -> str:
        return f"lg:{self.l},{self.p}"


@dataclass(frozen=True)
class FlattenedGaussian:
    order: int
    waist: float = 1.0
    ndim = 2

    def __post_init__(self):
        _check_order("order", self.order)
        _check_waist(self.waist)

    @property
    def label(self) -> str:
        return f"FG{self.order}"

    @property
    def spec(self) -> str:
        return f"fg:{self.order}"

    @property
    def amplitude(self) -> float:
        """Normalization constant A_N (units 1/length)."""
        return _fg_unit_amplitude(self.order) / self.waist


@dataclass(frozen=True, eq=False)
class SampledMode:
    """Mode known through its samples on a quadrature grid.

    ``func``, when given, evaluates the same profile off-grid; it is what makes
    line profiles and finite-difference derivatives available.
    """

    quadrature: "Quadrature"  # noqa: F821  (avoid an import cycle)
    values: np.ndarray
    func: Optional[Callable[..., np.ndarray]] = None
    label: str = "sampled"
    waist: float = 1.0

    @property
    def ndim(self) -> int:
        return self.quadrature.ndim

    @property
    def norm(self) -> float:
        return float(np.sqrt(self.quadrature.integrate(np.abs(self.values) ** 2).real))

    @property
    def spec(self) -> str:
        return self.label


TransverseMode = Union[HermiteGauss, HermiteGauss1D, LaguerreGauss, FlattenedGaussian, SampledMode]
ANALYTIC_FAMILIES = (HermiteGauss, HermiteGauss1D, LaguerreGauss, FlattenedGaussian)


# ---------------------------------------------------------------------------
# special functions


def hermite_functions(nmax: int, xi: ArrayLike) -> np.ndarray:
    """Orthonormal Hermite functions psi_0..psi_nmax at ``xi``.

    psi_n(xi) = (2^n n! sqrt(pi))^(-1/2) H_n(xi) exp(-xi^2/2), evaluated with the
    normalized three-term recurrence so that no factorials overflow.
    """
    xi = np.asarray(xi, dtype=float)
    out = np.empty((nmax + 1,) + xi.shape)
    out[0] = np.pi ** -0.25 * np.exp(-0.5 * xi**2)
    if nmax >= 1:
        out[1] = np.sqrt(2.0) * xi * out[0]
    for n in range(1, nmax):
        out[n + 1] = np.sqrt(2.0 / (n + 1)) * xi * out[n] - np.sqrt(n / (n + 1)) * out[n - 1]
    return out


@lru_cache(maxsize=None)
def _fg_unit_amplitude(order: int) -> float:
    # power of exp(-s) e_N(s) over the plane, w = 1:
    #   pi * sum_{m,n<=N} C(m+n, m) / 2^(m+n+1)
    total = 0.0
    for m in range(order + 1):
        for n in range(order + 1):
            total += math.comb(m + n, m) / 2.0 ** (m + n + 1)
    return 1.0 / math.sqrt(math.pi * total)


def _poisson_term(order: int, s: np.ndarray) -> np.ndarray:
    """exp(-s) s^N / N!, safe at s = 0."""
    s = np.asarray(s, dtype=float)
    if order == 0:
        return np.exp(-s)
    with np.errstate(divide="ignore"):
        logs = np.where(s > 0, np.log(np.where(s > 0, s, 1.0)), -np.inf)
    return np.exp(order * logs - s - gammaln(order + 1))


def _lg_prefactor(l: int, p: int, waist: float) -> float:
    m = abs(l)
    return math.sqrt(2.0 * math.exp(math.lgamma(p + 1) - math.lgamma(p + m + 1)) / math.pi) / waist


# ---------------------------------------------------------------------------
# evaluation


def _as_arrays(mode, x, y):
    x = np.asarray(x, dtype=float)
    if mode.ndim == 1:
        if y is not None:
            raise ValueError(f"{mode.label} is a 1-D mode; got a y coordinate")
        return x, None
    if y is None:
        raise ValueError(f"{mode.label} is a 2-D mode; y coordinate required")
    x, y = np.broadcast_arrays(x, np.asarray(y, dtype=float))
    return x, y


def _hg1d(n: int, waist: float, x: np.ndarray, nderiv: int = 0) -> np.ndarray:
    xi = np.sqrt(2.0) * x / waist
    scale = (np.sqrt(2.0) / waist) ** 0.5
    psi = hermite_functions(n + 1, xi)
    if nderiv == 0:
        return scale * psi[n]
    if nderiv == 1:
        prev = psi[n - 1] if n > 0 else 0.0
        dpsi = np.sqrt(n / 2.0) * prev - np.sqrt((n + 1) / 2.0) * psi[n + 1]
        return scale * dpsi * np.sqrt(2.0) / waist
    # psi'' = (xi^2 - 2n - 1) psi
    return scale * (xi**2 - 2 * n - 1) * psi[n] * 2.0 / waist**2


def _lg_parts(mode: LaguerreGauss, x, y):
    m = abs(mode.l)
    sgn = 1.0 if mode.l >= 0 else -1.0
    w = mode.waist
    zeta = (x + 1j * sgn * y) * np.sqrt(2.0) / w
    q = 2.0 * (x**2 + y**2) / w**2
    c = _lg_prefactor(mode.l, mode.p, w)
    return m, sgn, zeta, q, c


def evaluate_mode(mode: TransverseMode, x: ArrayLike, y: Optional[ArrayLike] = None) -> np.ndarray:
    """Normalized complex amplitude of ``mode`` at (x, y)."""
    if isinstance(mode, SampledMode):
        if mode.func is None:
            raise ValueError(f"sampled mode {mode.label!r} has no off-grid evaluator")
        return np.asarray(mode.func(x) if mode.ndim == 1 else mode.func(x, y), dtype=complex)
    x, y = _as_arrays(mode, x, y)
    if isinstance(mode, HermiteGauss1D):
        return _hg1d(mode.n, mode.waist, x).astype(complex)
    if isinstance(mode, HermiteGauss):
        return (_hg1d(mode.nx, mode.waist, x) * _hg1d(mode.ny, mode.waist, y)).astype(complex)
    if isinstance(mode, LaguerreGauss):
        m, _, zeta, q, c = _lg_parts(mode, x, y)
        return c * zeta**m * eval_genlaguerre(mode.p, m, q) * np.exp(-q / 2)
    if isinstance(mode, FlattenedGaussian):
        s = (x**2 + y**2) / mode.waist**2
        # exp(-s) e_N(s) is the regularized upper incomplete gamma Q(N+1, s)
        return (mode.amplitude * gammaincc(mode.order + 1, s)).astype(complex)
    raise TypeError(f"unsupported mode type {type(mode).__name__}")


def gradient(mode: TransverseMode, x: ArrayLike, y: Optional[ArrayLike] = None):
    """Analytic transverse gradient; returns d/dx (1-D) or the pair (d/dx, d/dy)."""
    if isinstance(mode, SampledMode):
        return _fd_gradient(mode, x, y)
    x, y = _as_arrays(mode, x, y)
    if isinstance(mode, HermiteGauss1D):
        return _hg1d(mode.n, mode.waist, x, 1).astype(complex)
    if isinstance(mode, HermiteGauss):
        w = mode.waist
        gx = _hg1d(mode.nx, w, x, 1) * _hg1d(mode.ny, w, y)
        gy = _hg1d(mode.nx, w, x) * _hg1d(mode.ny, w, y, 1)
        return gx.astype(complex), gy.astype(complex)
    if isinstance(mode, LaguerreGauss):
        m, sgn, zeta, q, c = _lg_parts(mode, x, y)
        w = mode.waist
        lag = eval_genlaguerre(mode.p, m, q)
        dlag = -eval_genlaguerre(mode.p - 1, m + 1, q) if mode.p > 0 else 0.0
        g = lag * np.exp(-q / 2)
        dg = (dlag - 0.5 * lag) * np.exp(-q / 2)
        dzeta = np.sqrt(2.0) / w
        radial = c * zeta**m * dg * 4.0 / w**2
        gx = radial * x
        gy = radial * y
        if m > 0:
            ang = c * m * zeta ** (m - 1) * g * dzeta
            gx = gx + ang
            gy = gy + 1j * sgn * ang
        return gx, gy
    if isinstance(mode, FlattenedGaussian):
        w = mode.waist
        s = (x**2 + y**2) / w**2
        df = -mode.amplitude * _poisson_term(mode.order, s)
        return (2 * x / w**2 * df).astype(complex), (2 * y / w**2 * df).astype(complex)
    raise TypeError(f"unsupported mode type {type(mode).__name__}")


def laplacian(mode: TransverseMode, x: ArrayLike, y: Optional[ArrayLike] = None) -> np.ndarray:
    """Analytic transverse Laplacian (d^2/dx^2 in 1-D).

    Sampled modes fall back to central finite differences of their evaluator.
    """
    if isinstance(mode, SampledMode):
        return _fd_laplacian(mode, x, y)
    x, y = _as_arrays(mode, x, y)
    w = mode.waist
    if isinstance(mode, HermiteGauss1D):
        return _hg1d(mode.n, w, x, 2).astype(complex)
    if isinstance(mode, (HermiteGauss, LaguerreGauss)):
        # both families are eigenfunctions of the 2-D harmonic oscillator:
        # lap u = (2/w^2) (2 r^2/w^2 - 2 (order + 1)) u
        q = 2.0 * (x**2 + y**2) / w**2
        return 2.0 / w**2 * (q - 2.0 * (mode.order + 1)) * evaluate_mode(mode, x, y)
    if isinstance(mode, FlattenedGaussian):
        s = (x**2 + y**2) / w**2
        n = mode.order
        return (4.0 * mode.amplitude / w**2 * _poisson_term(n, s) * (s - n - 1)).astype(complex)
    raise TypeError(f"unsupported mode type {type(mode).__name__}")


def _fd_gradient(mode, x, y=None):
    h = FD_STEP * mode.waist
    x = np.asarray(x, dtype=float)
    if mode.ndim == 1:
        return (evaluate_mode(mode, x + h) - evaluate_mode(mode, x - h)) / (2 * h)
    y = np.asarray(y, dtype=float)
    gx = (evaluate_mode(mode, x + h, y) - evaluate_mode(mode, x - h, y)) / (2 * h)
    gy = (evaluate_mode(mode, x, y + h) - evaluate_mode(mode, x, y - h)) / (2 * h)
    return gx, gy


def _fd_laplacian(mode, x, y=None):
    h = FD_STEP * mode.waist
    x = np.asarray(x, dtype=float)
    if mode.ndim == 1:
        u0 = evaluate_mode(mode, x)
        return (evaluate_mode(mode, x + h) - 2 * u0 + evaluate_mode(mode, x - h)) / h**2
    y = np.asarray(y, dtype=float)
    u0 = evaluate_mode(mode, x, y)
    return (
        evaluate_mode(mode, x + h, y)
        + evaluate_mode(mode, x - h, y)
        + evaluate_mode(mode, x, y + h)
        + evaluate_mode(mode, x, y - h)
        - 4 * u0
    ) / h**2


def finite_difference_laplacian(mode: TransverseMode, x, y=None) -> np.ndarray:
    """Central-difference Laplacian with step 1e-4 w, for any evaluable mode."""
    return _fd_laplacian(mode, x, y)


def mode_norm(mode: TransverseMode, q) -> float:
    """sqrt of the power of ``mode`` integrated with quadrature ``q``."""
    if isinstance(mode, SampledMode) and mode.quadrature is q:
        return mode.norm
    vals = evaluate_mode(mode, q.x) if q.ndim == 1 else evaluate_mode(mode, q.x, q.y)
    return float(np.sqrt(q.integrate(np.abs(vals) ** 2).real))


# ---------------------------------------------------------------------------
# spec strings

_NUMERIC = re.compile(r"^[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?(dB)?$")
_FAMILIES = {"hg": 2, "hg1d": 1, "lg": 2, "fg": 1}


def parse_mode(text: str, waist: float = 1.0) -> TransverseMode:
    """Parse ``hg:<nx>,<ny>``, ``hg1d:<n>``, ``lg:<l>,<p>`` or ``fg:<N>``."""
    head, sep, tail = text.strip().partition(":")
    head = head.lower()
    if not sep or head not in _FAMILIES:
        raise ModeSpecError(f"unknown mode spec {text!r}; expected hg:, hg1d:, lg: or fg:")
    parts = [t.strip() for t in tail.split(",")]
    if len(parts) != _FAMILIES[head]:
        raise ModeSpecError(f"mode spec {text!r} needs {_FAMILIES[head]} integer parameter(s)")
    try:
        args = [int(t) for t in parts]
    except ValueError:
        bad = next(t for t in parts if not t.lstrip("+-").isdigit())
        raise ModeSpecError(f"bad integer {bad!r} in mode spec {text!r}") from None
    if head == "hg":
        return HermiteGauss(args[0], args[1], waist)
    if head == "hg1d":
        return HermiteGauss1D(args[0], waist)
    if head == "lg":
        return LaguerreGauss(args[0], args[1], waist)
    return FlattenedGaussian(args[0], waist)


def split_specs(text: str) -> list[str]:
    """Split a comma-joined list of specs whose parameters are themselves comma-separated.

    A bare numeric token belongs to the preceding spec, so
    ``"hg:0,0,lg:1,0"`` gives ``["hg:0,0", "lg:1,0"]``.
    """
    specs: list[str] = []
    for token in (t.strip() for t in text.split(",")):
        if not token:
            continue
        if specs and ":" in specs[-1] and _NUMERIC.match(token):
            specs[-1] += "," + token
        else:
            specs.append(token)
    return specs


def parse_basis(text: str, waist: float = 1.0) -> list[TransverseMode]:
    return [parse_mode(s, waist) for s in split_specs(text)]
