"""Mean and variance of the beam-width operator.

The width operator is W = (1/N_all) sum_ij D_ij a_i^+ a_j. Everything here
works at the level of photon-number moments: single-mode closed forms, the
general fourth-moment expression, and the linearized multimode result.
"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .modes import TransverseMode
from .moments import MomentMatrices, mode_moments
from .optimize import minimize_scalar_bracketed
from .quadrature import Quadrature
from .states import (
    Coherent,
    DisplacedSqueezed,
    DisplacedThermal,
    Fock,
    SingleModeState,
    SqueezedVacuum,
    Thermal,
    factorial_moment2,
    mandel_q,
)


class VacuumError(ValueError):
    """A noise quantity was requested for zero mean photon number."""


def _require_photons(nbar: float, what: str = "relative width noise") -> None:
    if not nbar > 0:
        raise VacuumError(f"vacuum has undefined {what} (mean photon number {nbar!r})")


# ---------------------------------------------------------------------------
# single-mode


def mean_width(mode: TransverseMode, q: Optional[Quadrature] = None) -> float:
    """<W> = D00, in length^2."""
    return mode_moments(mode, q)[0]


def width_variance_from_moments(d00: float, f00: float, nbar: float, q_param: float) -> float:
    """(1/nbar) [D00^2 Q + F00]."""
    _require_photons(nbar)
    return (d00**2 * q_param + f00) / nbar


def single_mode_width_variance(mode: TransverseMode, state: SingleModeState, q: Optional[Quadrature] = None) -> float:
    nbar = state.mean_photon
    _require_photons(nbar)
    d00, f00 = mode_moments(mode, q)
    return width_variance_from_moments(d00, f00, nbar, mandel_q(state))


def relative_width_noise(mode: TransverseMode, state: SingleModeState, q: Optional[Quadrature] = None) -> float:
    """Width variance relative to a coherent state of equal mean photon number: 1 + (D00^2/F00) Q."""
    _require_photons(state.mean_photon)
    d00, f00 = mode_moments(mode, q)
    return 1.0 + d00**2 / f00 * mandel_q(state)


def relative_noise_by_mean(mode: TransverseMode, state: SingleModeState, q: Optional[Quadrature] = None) -> float:
    """<dW^2> / <W>^2."""
    _require_photons(state.mean_photon)
    d00, f00 = mode_moments(mode, q)
    return width_variance_from_moments(d00, f00, state.mean_photon, mandel_q(state)) / d00**2


def closed_form_relative_noise(state: SingleModeState, ratio: float) -> float:
    """State-specific closed forms of <dW^2>/<dW^2>_coh, with ratio = D00^2/F00.

    Kept separate from the Mandel-Q route so the two can be checked against each other.
    """
    nbar = state.mean_photon
    _require_photons(nbar)
    if isinstance(state, Coherent):
        return 1.0
    if isinstance(state, Fock):
        return 1.0 - ratio
    if isinstance(state, SqueezedVacuum):
        return ratio * (2 * nbar + 1) + 1
    if isinstance(state, DisplacedSqueezed):
        sh2 = math.sinh(state.s) ** 2
        e2 = math.exp(-2 * state.s)
        return (-sh2 * e2 + 2 * sh2 * (sh2 + 1)) * ratio / nbar + (1 + ratio * (e2 - 1))
    if isinstance(state, Thermal):
        return ratio * nbar + 1
    if isinstance(state, DisplacedThermal):
        return ratio * (2 - state.n_th / nbar) * state.n_th + 1
    raise TypeError(f"unsupported state {state!r}")


def optimal_squeezing(mode: TransverseMode, nbar_total: float, q: Optional[Quadrature] = None, tol: float = 1e-10):
    """Amplitude squeezing that minimizes the relative width noise at fixed total photon number.

    Searches displaced squeezed states with sinh(s)^2 + alpha^2 = nbar_total.
    Returns (s, ratio).
    """
    if not nbar_total > 0:
        raise VacuumError(f"optimal squeezing needs a positive photon number, got {nbar_total!r}")
    d00, f00 = mode_moments(mode, q)
    ratio = d00**2 / f00

    def noise(s: float) -> float:
        sh2 = math.sinh(s) ** 2
        alpha2 = max(nbar_total - sh2, 0.0)
        var = alpha2 * math.exp(-2 * s) + 2 * sh2 * (sh2 + 1)
        return 1.0 + ratio * (var / nbar_total - 1.0)

    s_max = math.asinh(math.sqrt(nbar_total))
    return minimize_scalar_bracketed(noise, 0.0, s_max, tol=tol)


# ---------------------------------------------------------------------------
# general multimode expression


class MomentProvider(ABC):
    """Normally ordered second and fourth moments over a mode basis."""

    size: int

    @abstractmethod
    def second_moments(self) -> np.ndarray:
        """M[i, j] = <a_i^+ a_j>."""

    @abstractmethod
    def fourth_moments(self) -> np.ndarray:
        """T[i, k, j, l] = <a_i^+ a_k^+ a_j a_l>."""

    @property
    def total_photons(self) -> float:
        return float(np.trace(self.second_moments()).real)


class CoherentProduct(MomentProvider):
    """Product of coherent states; all moments factorize."""

    def __init__(self, amplitudes: Sequence[complex]):
        self.amplitudes = np.asarray(amplitudes, dtype=complex)
        self.size = self.amplitudes.size

    def second_moments(self):
        a = self.amplitudes
        return np.outer(np.conj(a), a)

    def fourth_moments(self):
        a = self.amplitudes
        ac = np.conj(a)
        return np.einsum("i,k,j,l->ikjl", ac, ac, a, a)


class SingleModeEmbedding(MomentProvider):
    """One mode of the basis carries ``state``; every other mode is vacuum."""

    def __init__(self, state: SingleModeState, index: int = 0, size: int = 1):
        if not 0 <= index < size:
            raise IndexError(f"index {index} outside a basis of size {size}")
        self.state = state
        self.index = index
        self.size = size

    def second_moments(self):
        M = np.zeros((self.size, self.size), dtype=complex)
        M[self.index, self.index] = self.state.mean_photon
        return M

    def fourth_moments(self):
        T = np.zeros((self.size,) * 4, dtype=complex)
        i = self.index
        T[i, i, i, i] = factorial_moment2(self.state)
        return T


def general_width_variance(m: MomentMatrices, provider: MomentProvider) -> float:
    """Width variance for an arbitrary state given through its moments."""
    if provider.size != m.size:
        raise ValueError(f"provider has {provider.size} modes, moment matrices have {m.size}")
    M = provider.second_moments()
    n_all = float(np.trace(M).real)
    _require_photons(n_all, "width variance")
    T = provider.fourth_moments()
    D, F = m.D, m.F
    fourth = np.einsum("ij,kl,ikjl->", D, D, T)
    second = np.einsum("ij,ij->", D, M) ** 2
    linear = np.einsum("il,il->", F, M)
    return float((fourth - second + linear).real) / n_all**2


# ---------------------------------------------------------------------------
# linearized multimode regime


@dataclass(frozen=True)
class MeanField:
    """Bright mode u0 with real mean amplitude <a0> and total photon number N_all."""

    mode: TransverseMode
    mean_amplitude: float
    n_all: float

    def __post_init__(self):
        if self.mean_amplitude < 0 or self.n_all < 0:
            raise ValueError("mean amplitude and photon number must be non-negative")
        if self.mean_amplitude**2 > self.n_all * (1 + 1e-12):
            raise ValueError(
                f"<a0>^2 = {self.mean_amplitude**2} exceeds N_all = {self.n_all}"
            )


def linearized_multimode_variance(mf: MeanField, f00: float, x_variance: float) -> float:
    """<a0>^2 F00 / N_all^2 times the amplitude-quadrature variance of the detection mode.

    ``x_variance`` uses X = A + A^+, so vacuum and coherent states give 1.
    """
    _require_photons(mf.n_all, "width variance")
    if x_variance < 0:
        raise ValueError(f"quadrature variance must be non-negative, got {x_variance}")
    return mf.mean_amplitude**2 * f00 / mf.n_all**2 * x_variance
