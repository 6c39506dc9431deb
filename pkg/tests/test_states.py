import math
import warnings

import pytest
from hypothesis import given
from hypothesis import strategies as st

from beamnoise.states import (
    Coherent,
    DisplacedSqueezed,
    DisplacedThermal,
    Fock,
    SqueezedVacuum,
    StateSpecError,
    Thermal,
    VacuumConventionWarning,
    factorial_moment2,
    format_state,
    mandel_q,
    mean_photon,
    parse_state,
    photon_number_variance,
    squeezing_from_db,
)

amp = st.floats(min_value=0.0, max_value=20.0, allow_nan=False)
sq = st.floats(min_value=0.0, max_value=2.5, allow_nan=False)
nth = st.floats(min_value=0.0, max_value=50.0, allow_nan=False)

states = st.one_of(
    st.builds(Coherent, amp),
    st.builds(Fock, st.integers(0, 500)),
    st.builds(SqueezedVacuum, sq),
    st.builds(DisplacedSqueezed, amp, sq),
    st.builds(Thermal, nth),
    st.builds(DisplacedThermal, amp, nth),
)


def test_mean_photon_examples():
    assert mean_photon(Coherent(2.0)) == 4
    assert mean_photon(SqueezedVacuum(1.0)) == pytest.approx(math.sinh(1.0) ** 2, rel=1e-15)
    assert mean_photon(SqueezedVacuum(1.0)) == pytest.approx(1.3811, abs=1e-4)
    assert mean_photon(DisplacedThermal(3.0, 2.0)) == 11


def test_variance_examples():
    assert photon_number_variance(Fock(7)) == 0
    assert photon_number_variance(Coherent(2.0)) == 4
    assert photon_number_variance(Thermal(2.0)) == 6


def test_mandel_q_examples():
    assert mandel_q(Fock(1)) == -1
    assert mandel_q(Fock(40)) == -1
    assert mandel_q(Coherent(0.3)) == 0
    assert mandel_q(Thermal(2.0)) == 2


@pytest.mark.parametrize("state", [Fock(0), Coherent(0.0), Thermal(0.0), SqueezedVacuum(0.0)])
def test_mandel_q_vacuum_convention(state):
    with pytest.warns(VacuumConventionWarning):
        assert mandel_q(state) == 0.0


@given(states)
def test_statistics_bounds(state):
    assert state.mean_photon >= 0
    assert state.variance >= 0
    if state.mean_photon > 0:
        q = mandel_q(state)
        assert q >= -1
        assert (q == -1) == isinstance(state, Fock)


@given(states)
def test_factorial_moment_nonnegative(state):
    assert factorial_moment2(state) >= -1e-9 * max(1.0, state.mean_photon**2)


@given(amp.filter(lambda a: a > 0.1), nth)
def test_displaced_thermal_limits(alpha, n_th):
    assert DisplacedThermal(alpha, 0.0).variance == pytest.approx(Coherent(alpha).variance, rel=1e-15)
    assert DisplacedThermal(0.0, n_th).variance == pytest.approx(Thermal(n_th).variance, rel=1e-15)


@given(amp.filter(lambda a: a > 0.1), sq)
def test_displaced_squeezed_limits(alpha, s):
    a = DisplacedSqueezed(alpha, 0.0)
    assert (a.mean_photon, a.variance) == pytest.approx((alpha**2, alpha**2), rel=1e-15)
    b = DisplacedSqueezed(0.0, s)
    assert (b.mean_photon, b.variance) == pytest.approx((SqueezedVacuum(s).mean_photon, SqueezedVacuum(s).variance), rel=1e-15)


def test_small_squeezing_continuity():
    alpha = 1.7
    for s in (1e-3, 1e-6):
        assert mandel_q(DisplacedSqueezed(alpha, s)) == pytest.approx(0.0, abs=3 * s)


def test_squeezing_from_db():
    assert math.exp(-2 * squeezing_from_db(-3)) == pytest.approx(0.5, rel=1e-15)
    assert math.exp(-2 * squeezing_from_db(-10)) == pytest.approx(0.1, rel=1e-14)
    with pytest.raises(StateSpecError):
        squeezing_from_db(2.0)


@pytest.mark.parametrize(
    "text,state",
    [
        ("coherent:2", Coherent(2.0)),
        ("fock:5", Fock(5)),
        ("sqvac:0.5", SqueezedVacuum(0.5)),
        ("dispsq:3,0.25", DisplacedSqueezed(3.0, 0.25)),
        ("thermal:2", Thermal(2.0)),
        ("dispthermal:1.5,2", DisplacedThermal(1.5, 2.0)),
    ],
)
def test_parse_state(text, state):
    assert parse_state(text) == state
    assert parse_state(format_state(state)) == state


@pytest.mark.parametrize("bad", ["coherent", "fock:1.5", "fock:-1", "dispsq:1", "squeezed:1", "thermal:x", "coherent:-1"])
def test_parse_state_rejects(bad):
    with pytest.raises(StateSpecError):
        parse_state(bad)


def test_states_are_hashable_values():
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        assert len({Coherent(1.0), Coherent(1.0), Fock(2)}) == 2
