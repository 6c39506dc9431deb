"""Spatial and angular-spectrum moment matrices over a finite mode basis.

D_ij  = integral (x^2+y^2)   conj(u_i) u_j
F_il  = integral (x^2+y^2)^2 conj(u_i) u_l
Dt_ij = (1/k^2) integral grad(u_i)* . grad(u_j)
Ft_il = (1/k^4) integral conj(lap u_i) lap u_l

In 1-D the radial weight becomes x^2 and the derivatives d/dx.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

import numpy as np

from .modes import ANALYTIC_FAMILIES, SampledMode, TransverseMode, evaluate_mode, gradient, laplacian
from .quadrature import Quadrature, default_quadrature

log = logging.getLogger(__name__)

ORTHONORMAL_TOL = 1e-8


class BasisError(ValueError):
    """Empty, mixed-dimension or non-orthonormal basis."""


def _resolve(modes: Sequence[TransverseMode], q: Optional[Quadrature]) -> Quadrature:
    dims = {m.ndim for m in modes}
    if len(dims) != 1:
        raise BasisError("cannot mix 1-D and 2-D modes: " + ", ".join(m.label for m in modes))
    if q is None:
        q = default_quadrature(modes)
    if q.ndim != dims.pop():
        raise BasisError(f"{q.ndim}-D quadrature used with {modes[0].ndim}-D modes")
    return q


def values_on(mode: TransverseMode, q: Quadrature) -> np.ndarray:
    """Amplitudes of ``mode`` at the nodes of ``q``."""
    if isinstance(mode, SampledMode) and mode.quadrature is q:
        return np.asarray(mode.values, dtype=complex)
    if q.ndim == 1:
        return evaluate_mode(mode, q.x)
    return evaluate_mode(mode, q.x, q.y)


def _gradient_on(mode, q):
    if q.ndim == 1:
        return (gradient(mode, q.x),)
    return gradient(mode, q.x, q.y)


def _laplacian_on(mode, q):
    return laplacian(mode, q.x) if q.ndim == 1 else laplacian(mode, q.x, q.y)


def spatial_moment(ui: TransverseMode, uj: TransverseMode, power: int, q: Optional[Quadrature] = None) -> complex:
    """integral (x^2+y^2)^power conj(u_i) u_j, for power 1 (D) or 2 (F)."""
    if power not in (1, 2):
        raise ValueError(f"power must be 1 or 2, got {power}")
    q = _resolve([ui, uj], q)
    return complex(q.integrate(q.r2**power * np.conj(values_on(ui, q)) * values_on(uj, q)))


def angular_moment(ui: TransverseMode, uj: TransverseMode, k: float = 1.0, q: Optional[Quadrature] = None) -> complex:
    """Second angular-spectrum moment, from the gradient form."""
    q = _resolve([ui, uj], q)
    gi, gj = _gradient_on(ui, q), _gradient_on(uj, q)
    total = sum(q.integrate(np.conj(a) * b) for a, b in zip(gi, gj))
    return complex(total) / k**2


def fourth_angular_moment(ui: TransverseMode, ul: TransverseMode, k: float = 1.0, q: Optional[Quadrature] = None) -> complex:
    q = _resolve([ui, ul], q)
    return complex(q.inner(_laplacian_on(ui, q), _laplacian_on(ul, q))) / k**4


def gram_matrix(basis: Sequence[TransverseMode], q: Optional[Quadrature] = None) -> np.ndarray:
    q = _resolve(basis, q)
    U = np.array([values_on(m, q) for m in basis])
    return (np.conj(U) * q.weights) @ U.T


@dataclass(frozen=True, eq=False)
class MomentMatrices:
    labels: tuple
    D: np.ndarray
    F: np.ndarray
    Dtilde: Optional[np.ndarray] = None
    Ftilde: Optional[np.ndarray] = None
    k: float = 1.0

    @property
    def size(self) -> int:
        return len(self.labels)

    def to_dict(self) -> dict:
        def pairs(M):
            return None if M is None else [[[float(z.real), float(z.imag)] for z in row] for row in M]

        return {
            "basis": list(self.labels),
            "k": self.k,
            "D": pairs(self.D),
            "F": pairs(self.F),
            "Dtilde": pairs(self.Dtilde),
            "Ftilde": pairs(self.Ftilde),
        }


def _hermitize(name: str, M: np.ndarray) -> np.ndarray:
    residual = float(np.max(np.abs(M - M.conj().T))) if M.size else 0.0
    if residual > 0:
        log.debug("hermitized %s, max asymmetry %.3e", name, residual)
    return 0.5 * (M + M.conj().T)


def build_matrices(
    basis: Sequence[TransverseMode],
    k: float = 1.0,
    q: Optional[Quadrature] = None,
    angular: bool = True,
    check_orthonormal: bool = True,
) -> MomentMatrices:
    """Assemble D, F (and the angular pair) over an orthonormal basis."""
    basis = list(basis)
    if not basis:
        raise BasisError("empty basis")
    q = _resolve(basis, q)
    U = np.array([values_on(m, q) for m in basis])
    Uc = np.conj(U) * q.weights
    if check_orthonormal:
        G = Uc @ U.T
        dev = np.abs(G - np.eye(len(basis)))
        if dev.max() > ORTHONORMAL_TOL:
            i, j = np.unravel_index(np.argmax(dev), dev.shape)
            raise BasisError(
                f"basis not orthonormal: <{basis[i].label}|{basis[j].label}> = {G[i, j]:.3e}"
            )
    r2 = q.r2
    D = _hermitize("D", (Uc * r2) @ U.T)
    F = _hermitize("F", (Uc * r2**2) @ U.T)
    Dt = Ft = None
    if angular:
        grads = [_gradient_on(m, q) for m in basis]
        Dt = np.zeros((len(basis), len(basis)), dtype=complex)
        for c in range(q.ndim):
            Gc = np.array([g[c] for g in grads])
            Dt += (np.conj(Gc) * q.weights) @ Gc.T
        L = np.array([_laplacian_on(m, q) for m in basis])
        Ft = (np.conj(L) * q.weights) @ L.T
        Dt = _hermitize("Dtilde", Dt / k**2)
        Ft = _hermitize("Ftilde", Ft / k**4)
    return MomentMatrices(tuple(m.label for m in basis), D, F, Dt, Ft, float(k))


def mode_moments(mode: TransverseMode, q: Optional[Quadrature] = None) -> tuple[float, float]:
    """(D00, F00) of a single normalized mode."""
    if q is None and isinstance(mode, ANALYTIC_FAMILIES):
        return _default_mode_moments(mode)
    return _mode_moments(mode, _resolve([mode], q))


@lru_cache(maxsize=256)
def _default_mode_moments(mode):
    return _mode_moments(mode, _resolve([mode], None))


def _mode_moments(mode, q):
    v = values_on(mode, q)
    p = np.abs(v) ** 2 * q.weights
    r2 = q.r2
    return float(np.sum(p * r2)), float(np.sum(p * r2**2))


def angular_mode_moments(mode: TransverseMode, k: float = 1.0, q: Optional[Quadrature] = None) -> tuple[float, float]:
    """(Dtilde00, Ftilde00) of a single mode."""
    return angular_moment(mode, mode, k, q).real, fourth_angular_moment(mode, mode, k, q).real
