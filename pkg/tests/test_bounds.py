import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from rgsrepeater.bounds import (
    BARRETT_KOK,
    DLCZ_LIKE,
    WEAK_EXCITATION,
    HeraldedProtocol,
    heralded_entanglement_time,
    memory_bounds,
    storage_time_average,
    storage_time_case4,
    two_qm_bound,
)
from rgsrepeater.channel import ChannelParams

CH = ChannelParams()


def series_case4(P, t_trial, n_max=10_000):
    """Mean of the larger of two geometric attempt counts, summed term by term."""
    n = np.arange(1, n_max + 1, dtype=float)
    cdf = (1 - (1 - P) ** n) ** 2
    cdf_prev = (1 - (1 - P) ** (n - 1)) ** 2
    return float(np.sum(n * (cdf - cdf_prev)) * t_trial)


def test_heralded_times():
    c = CH.c
    assert heralded_entanglement_time(BARRETT_KOK, 20, CH) == pytest.approx(40 * math.e / c, rel=1e-12)
    assert heralded_entanglement_time(DLCZ_LIKE, 20, CH) == pytest.approx(40 * math.e / c, rel=1e-12)
    L0 = 1e-9
    assert heralded_entanglement_time(BARRETT_KOK, L0, CH) == pytest.approx(2 * L0 / c, rel=1e-6)
    assert heralded_entanglement_time(BARRETT_KOK, 10, ChannelParams(eta_c=0)) == math.inf
    with pytest.raises(ValueError):
        heralded_entanglement_time(BARRETT_KOK, 0, CH)


def test_protocol_invariants():
    for proto in (BARRETT_KOK, DLCZ_LIKE, WEAK_EXCITATION):
        assert proto.trial_time_factor in (1, 2)
    for L0 in (0.0, 1.0, 20.0):
        assert BARRETT_KOK.success_prob(L0, CH) <= 0.5
        assert WEAK_EXCITATION.success_prob(L0, CH) <= 0.5
    custom = HeraldedProtocol("weak-excitation", weak_excitation_prob=0.1)
    assert custom.success_prob(0, CH) == pytest.approx(0.1)


def test_two_qm_bound_values():
    assert two_qm_bound(1.0, 1000, CH) == pytest.approx(2e5 / 7000, rel=1e-12)
    assert two_qm_bound(0.5, 1000, CH) == pytest.approx(1.5 / 11 * 200, rel=1e-12)
    assert two_qm_bound(1e-12, 1000, CH) == pytest.approx(2 / 15 * 200, rel=1e-9)
    for bad in (0.0, 1.5):
        with pytest.raises(ValueError):
            two_qm_bound(bad, 1000, CH)


@given(st.floats(1e-6, 1.0), st.floats(1.0, 1e5), st.floats(1.0, 1e5))
def test_two_qm_bound_range_and_monotone(P, L1, L2):
    v = two_qm_bound(P, L1, CH)
    assert 2 / 15 * CH.c / L1 * (1 - 1e-12) <= v <= CH.c / (7 * L1) * (1 + 1e-12)
    lo, hi = sorted((L1, L2))
    assert two_qm_bound(P, hi, CH) <= two_qm_bound(P, lo, CH)
    assert v <= CH.c / (4 * L1)


def test_storage_case4_values():
    assert storage_time_case4(1.0, 3.0) == pytest.approx(3.0)
    assert storage_time_case4(0.5, 3.0) == pytest.approx(4.0)


@pytest.mark.parametrize("P", [0.1, 0.3, 0.5, 0.9, 1.0])
def test_storage_case4_series_oracle(P):
    t_ent = 1.0
    t_trial = P * t_ent
    assert storage_time_case4(P, t_ent) == pytest.approx(series_case4(P, t_trial), rel=1e-8)


@given(st.floats(0.01, 1.0))
def test_storage_average_is_mean_of_cases(P):
    # neighbours both ready: no wait; one ready: one mean entanglement time
    t_ent = 1.7
    cases = [0.0, t_ent, t_ent, storage_time_case4(P, t_ent)]
    assert storage_time_average(P, t_ent) == pytest.approx(sum(cases) / 4, rel=1e-12)


def test_memory_bounds_report():
    rep = memory_bounds(1000, 20, 1.0, CH)
    assert rep.r_max_generic == 50.0
    assert rep.t_ent_avg == pytest.approx(2 * 20 / CH.c)
    assert rep.r_max_2qm == pytest.approx(two_qm_bound(1.0, 1000, CH), rel=1e-12)
    assert rep.r_max_2qm <= rep.r_max_generic
    with pytest.raises(ValueError):
        memory_bounds(10, 20, 1.0, CH)


@given(st.floats(0.01, 1.0))
def test_memory_bounds_match_closed_form(P):
    rep = memory_bounds(1000, 20, P, CH)
    assert rep.r_max_2qm == pytest.approx(two_qm_bound(P, 1000, CH), rel=1e-12)
