import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rgsrepeater.channel import ChannelParams, Scenario, single_photon_prob, transmission
from rgsrepeater.rate import (
    RgsShape,
    bell_success_prob,
    chain_success,
    direct_transmission_rate,
    evaluate_scenario,
    link_success_prob,
    matter_qubit_count,
    photon_count,
    rgs_generation_time_cz,
    rgs_generation_time_full,
)
from rgsrepeater.tree import TreeVector

SHAPE_50 = RgsShape(14, TreeVector((10, 5)))


@pytest.mark.parametrize("p, expected", [(1.0, 0.5), (0.0, 0.0), (0.9, 0.405)])
def test_bell_success(p, expected):
    assert bell_success_prob(p) == pytest.approx(expected, rel=1e-12)


@pytest.mark.parametrize("m", [1, 3, 14])
def test_link_success_lossless(m):
    shape = RgsShape(m, TreeVector((4, 2)))
    assert link_success_prob(shape, 1.0) == pytest.approx(1 - 0.5**m, rel=1e-12)


def test_link_success_hand_value():
    # b = (1): r_0 = s_0 = p = 0.5; m = 1 leaves only the two logical X factors
    p = 0.5
    expected = (p * p / 2) * 0.5**2
    assert expected == 0.03125
    assert link_success_prob(RgsShape(1, TreeVector((1,))), p) == pytest.approx(expected, rel=1e-12)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 20), st.integers(1, 10), st.integers(1, 6), st.floats(0, 1))
def test_link_success_below_bell_bound(m, b0, b1, p):
    shape = RgsShape(m, TreeVector((b0, b1)))
    bound = 1 - (1 - p * p / 2) ** m
    assert 0 <= link_success_prob(shape, p) <= bound + 1e-15


@settings(max_examples=10, deadline=None)
@given(st.integers(1, 30), st.floats(0.01, 60))
def test_no_advantage_without_encoding(m, L0):
    # raw photons in place of logical qubits: P_ph^(2m) never beats the fiber
    p = single_photon_prob(ChannelParams(), L0)
    assert p ** (2 * m) <= transmission(L0, 20.0) * (1 + 1e-12)


def test_generation_times():
    one = RgsShape(1, TreeVector((1, 1)))
    assert rgs_generation_time_full(one, Scenario(L=1, L0=1, T_CZ=1, T_Eph=1, T_M=1, T_H=1)) == 21
    assert rgs_generation_time_cz(one, 1.0) == 6
    assert rgs_generation_time_cz(SHAPE_50, 1.0) == 336
    sc = Scenario(L=1000, L0=3.8, T_CZ=2.5)
    assert rgs_generation_time_full(SHAPE_50, sc) == rgs_generation_time_cz(SHAPE_50, 2.5)


def test_zero_branching_rejected():
    with pytest.raises(ValueError):
        RgsShape(3, TreeVector((0, 2)))
    with pytest.raises(ValueError):
        RgsShape(0, TreeVector((2, 2)))


@pytest.mark.parametrize(
    "shape, n", [(SHAPE_50, 1708), (RgsShape(1, TreeVector((1,))), 4), (RgsShape(1, TreeVector((1, 1))), 6)]
)
def test_photon_count(shape, n):
    assert photon_count(shape) == n


def test_matter_qubit_count():
    assert matter_qubit_count(2, 1000, 1000 / 263) == 786
    assert matter_qubit_count(2, 1000, 1000) == 0
    assert matter_qubit_count(3, 110, 10) == 40
    assert matter_qubit_count(2, 100, 30, fractional=True) == pytest.approx((100 / 30 - 1) * 3)


def test_chain_success_log_domain():
    assert chain_success(0.5, 2000) == pytest.approx(math.exp(2000 * math.log(0.5)), rel=1e-12)
    assert chain_success(0.0, 10) == 0.0
    assert chain_success(1.0, 10**6) == 1.0


def test_reference_optimum_50():
    ch = ChannelParams()
    rep = evaluate_scenario(SHAPE_50, ch, Scenario(L=50 * 20, L0=0.19 * 20, T_CZ=1.0))
    assert rep.R_per_matter == pytest.approx(2.8e-6, rel=0.10)


def test_worked_example():
    rep = evaluate_scenario(SHAPE_50, ChannelParams(), Scenario(L=1000, L0=1000 / 263, T_CZ=10e-9))
    assert rep.n_links == 263 and rep.n_matter == 786
    assert rep.R == pytest.approx(220e3, rel=0.10)
    assert rep.R_per_matter == pytest.approx(276, rel=0.10)
    assert rep.R_skr == rep.R and rep.F_AB == 1.0


def test_zero_link_probability_gives_zero_rate():
    rep = evaluate_scenario(SHAPE_50, ChannelParams(eta_c=0.0), Scenario(L=1000, L0=10, T_CZ=1e-8))
    assert rep.p_link == 0 and rep.R == 0 and rep.R_per_matter == 0


def test_single_link_per_matter_is_infinite():
    rep = evaluate_scenario(SHAPE_50, ChannelParams(), Scenario(L=3.8, L0=3.8, T_CZ=1e-8))
    assert rep.n_matter == 0 and rep.R_per_matter == math.inf


def test_fractional_links_mode():
    sc = Scenario(L=1000, L0=3.8, T_CZ=1e-8)
    frac = evaluate_scenario(SHAPE_50, ChannelParams(), sc, fractional_links=True)
    assert frac.n_links == pytest.approx(1000 / 3.8) and frac.L0 == 3.8


def test_rate_decreases_with_L():
    Rs = [evaluate_scenario(SHAPE_50, ChannelParams(), Scenario(L=L, L0=3.8, T_CZ=1.0)).R for L in (100, 500, 1000, 4000)]
    assert all(a >= b for a, b in zip(Rs, Rs[1:]))


def test_evaluate_deterministic():
    sc = Scenario(L=1000, L0=3.8, T_CZ=1e-8)
    ch = ChannelParams(epsilon=1e-4)
    assert evaluate_scenario(SHAPE_50, ch, sc) == evaluate_scenario(SHAPE_50, ch, sc)


def test_key_at_small_eps():
    sc = Scenario(L=1000, L0=3.8, T_CZ=1e-8)
    rep = evaluate_scenario(SHAPE_50, ChannelParams(epsilon=5e-5), sc)
    assert 0 < rep.F_AB < 1
    assert 0 < rep.R_skr < rep.R
    # with 263 links this shape loses its key just below eps = 1e-4
    assert evaluate_scenario(SHAPE_50, ChannelParams(epsilon=1e-4), sc).R_skr == 0


def test_direct_transmission_rate():
    ch = ChannelParams()
    eta = math.exp(-1)
    assert direct_transmission_rate(ch, 20, 1e6) == pytest.approx(-1e6 * math.log2(1 - eta), rel=1e-12)
    half = ChannelParams(eta_c=0.5)
    assert direct_transmission_rate(half, 20, 1.0) == pytest.approx(-math.log2(1 - 0.5 * eta), rel=1e-12)
    far = direct_transmission_rate(ch, np.array([1000.0]), 1.0)
    assert far[0] == pytest.approx(math.exp(-50) / math.log(2), rel=1e-9)
