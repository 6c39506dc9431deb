"""Photon statistics of single-mode states.

Displacements are real and squeezing acts on the amplitude quadrature.
Thermal states are given by their mean thermal photon number.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Union


class StateSpecError(ValueError):
    """Malformed state specification or invalid state parameters."""


class VacuumConventionWarning(UserWarning):
    """Mandel Q requested for a state with zero mean photon number."""


def _nonneg(name, value):
    if not (value >= 0 and math.isfinite(value)):
        raise StateSpecError(f"{name} must be a finite non-negative number, got {value!r}")


@dataclass(frozen=True)
class Coherent:
    alpha: float

    def __post_init__(self):
        _nonneg("alpha", self.alpha)

    @property
    def mean_photon(self) -> float:
        return self.alpha**2

    @property
    def variance(self) -> float:
        return self.alpha**2


@dataclass(frozen=True)
class Fock:
    n: int

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 0:
            raise StateSpecError(f"Fock n must be a non-negative integer, got {self.n!r}")

    @property
    def mean_photon(self) -> float:
        return float(self.n)

    @property
    def variance(self) -> float:
        return 0.0


@dataclass(frozen=True)
class SqueezedVacuum:
    s: float

    def __post_init__(self):
        _nonneg("s", self.s)

    @property
    def mean_photon(self) -> float:
        return math.sinh(self.s) ** 2

    @property
    def variance(self) -> float:
        sh2 = math.sinh(self.s) ** 2
        return 2 * sh2 * (sh2 + 1)


@dataclass(frozen=True)
class DisplacedSqueezed:
    """Amplitude-squeezed coherent state; ``alpha`` is the real displacement."""

    alpha: float
    s: float

    def __post_init__(self):
        _nonneg("alpha", self.alpha)
        _nonneg("s", self.s)

    @property
    def mean_photon(self) -> float:
        return math.sinh(self.s) ** 2 + self.alpha**2

    @property
    def variance(self) -> float:
        sh2 = math.sinh(self.s) ** 2
        return self.alpha**2 * math.exp(-2 * self.s) + 2 * sh2 * (sh2 + 1)


@dataclass(frozen=True)
class Thermal:
    n_th: float

    def __post_init__(self):
        _nonneg("n_th", self.n_th)

    @property
    def mean_photon(self) -> float:
        return float(self.n_th)

    @property
    def variance(self) -> float:
        return self.n_th * (self.n_th + 1)


@dataclass(frozen=True)
class DisplacedThermal:
    alpha: float
    n_th: float

    def __post_init__(self):
        _nonneg("alpha", self.alpha)
        _nonneg("n_th", self.n_th)

    @property
    def mean_photon(self) -> float:
        return self.n_th + self.alpha**2

    @property
    def variance(self) -> float:
        return self.n_th * (self.n_th + 1) + self.alpha**2 * (1 + 2 * self.n_th)


SingleModeState = Union[Coherent, Fock, SqueezedVacuum, DisplacedSqueezed, Thermal, DisplacedThermal]
STATE_TYPES = (Coherent, Fock, SqueezedVacuum, DisplacedSqueezed, Thermal, DisplacedThermal)


def mean_photon(state: SingleModeState) -> float:
    return state.mean_photon


def photon_number_variance(state: SingleModeState) -> float:
    return state.variance


def mandel_q(state: SingleModeState) -> float:
    """<dn^2>/<n> - 1; zero (with a warning) when <n> = 0."""
    nbar = state.mean_photon
    if nbar == 0:
        warnings.warn(
            f"{state!r} has zero mean photon number; Mandel Q set to 0 by convention",
            VacuumConventionWarning,
            stacklevel=2,
        )
        return 0.0
    if isinstance(state, Fock):
        return -1.0
    if isinstance(state, Coherent):
        return 0.0
    return state.variance / nbar - 1.0


def factorial_moment2(state: SingleModeState) -> float:
    """<a+ a+ a a> = <n^2> - <n>."""
    nbar = state.mean_photon
    return state.variance + nbar**2 - nbar


def squeezing_from_db(db: float) -> float:
    """Squeezing parameter for a noise reduction of ``db`` decibels (negative = squeezed).

    -3 dB is taken as the textbook factor of one half, exp(-2 s) = 0.5.
    """
    if db > 0:
        raise StateSpecError(f"amplitude squeezing needs a non-positive dB value, got {db}")
    factor = 0.5 if db == -3 else 10 ** (db / 10)
    return -0.5 * math.log(factor)


# ---------------------------------------------------------------------------
# spec strings

_ARITY = {
    "coherent": (Coherent, 1),
    "fock": (Fock, 1),
    "sqvac": (SqueezedVacuum, 1),
    "dispsq": (DisplacedSqueezed, 2),
    "thermal": (Thermal, 1),
    "dispthermal": (DisplacedThermal, 2),
}


def parse_state(text: str) -> SingleModeState:
    """Parse ``coherent:<alpha>``, ``fock:<n>``, ``sqvac:<s>``, ``dispsq:<alpha>,<s>``,
    ``thermal:<nth>`` or ``dispthermal:<alpha>,<nth>``."""
    head, sep, tail = text.strip().partition(":")
    head = head.lower()
    if head not in _ARITY or not sep:
        raise StateSpecError(f"unknown state spec {text!r}; expected one of {', '.join(_ARITY)}")
    cls, arity = _ARITY[head]
    parts = [t.strip() for t in tail.split(",")]
    if len(parts) != arity:
        raise StateSpecError(f"state spec {text!r} needs {arity} parameter(s)")
    try:
        if cls is Fock:
            args = [int(parts[0])]
        else:
            args = [float(t) for t in parts]
    except ValueError:
        raise StateSpecError(f"bad number in state spec {text!r}") from None
    return cls(*args)


def format_state(state: SingleModeState) -> str:
    for key, (cls, _) in _ARITY.items():
        if type(state) is cls:
            fields = [getattr(state, f) for f in state.__dataclass_fields__]
            return f"{key}:" + ",".join(repr(v) for v in fields)
    raise TypeError(f"not a state: {state!r}")
