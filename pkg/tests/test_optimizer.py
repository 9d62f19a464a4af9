import math
from dataclasses import replace

import numpy as np
import pytest

from rgsrepeater.channel import ChannelParams, Scenario
from rgsrepeater.optimizer import (
    Baseline,
    Candidate,
    CrossoverParameter,
    SearchSpace,
    baseline_value,
    find_crossover,
    fixed_shape_sweep,
    optimize,
    power_law_exponent,
    select_best,
    sweep_distance,
)
from rgsrepeater.rate import RgsShape, evaluate_scenario
from rgsrepeater.tree import TreeVector

CH = ChannelParams()
L_ATT = CH.L_att
SC = Scenario(L=1.0, L0=1.0, T_CZ=1.0)
SMALL = SearchSpace(m_range=(8, 16), b0_range=(6, 12), b1_range=(3, 6))


def test_search_space_validation():
    for bad in ({"m_range": (0, 3)}, {"b0_range": (5, 2)}, {"tree_depth": 4}, {"L0_range_att": (0, 1)}):
        with pytest.raises(ValueError):
            SearchSpace(**bad)
    sp = SearchSpace(b0_range=(1, 2), b1_range=(1, 3))
    assert len(sp.trees()) == 6
    assert SearchSpace(tree_depth=1, b0_range=(1, 4)).trees()[-1] == TreeVector((4,))


def test_n_links_values():
    sp = SearchSpace()
    links = sp.n_links_values(1000, 20)
    assert links[0] == 50 and links[-1] == 1000
    assert SearchSpace(n_links_range=(1, 5)).n_links_values(1000, 20).tolist() == [2, 3, 4, 5]
    assert SearchSpace().n_links_values(1.0, 20).size == 0


def test_optimize_reference_optimum_10():
    res = optimize(10 * L_ATT, CH, SC)
    assert res.feasible
    assert (res.best.m, res.best.b) == (11, (8, 4))
    assert res.best.L0 / L_ATT == pytest.approx(0.23, abs=0.02)
    assert res.objective == pytest.approx(2.4e-5, rel=0.10)


def test_best_dominates_trace_and_report_consistent():
    res = optimize(50 * L_ATT, CH, SC, SMALL)
    assert all(c.log_objective <= res.log_objective for c in res.trace)
    rep = evaluate_scenario(res.shape, CH, Scenario(L=res.L, L0=res.L0, T_CZ=1.0))
    assert rep.R_skr_per_matter == pytest.approx(res.objective, rel=1e-9)
    assert res.report == rep


def test_optimize_deterministic_and_parallel_agree():
    a = optimize(50 * L_ATT, CH, SC, SMALL, workers=1)
    b = optimize(50 * L_ATT, CH, SC, SMALL, workers=1)
    c = optimize(50 * L_ATT, CH, SC, SMALL, workers=2)
    assert a.best == b.best == c.best
    assert [x.key() for x in a.trace] == [x.key() for x in c.trace]


def test_scale_invariance_in_T_CZ():
    a = optimize(50 * L_ATT, CH, SC, SMALL)
    b = optimize(50 * L_ATT, CH, replace(SC, T_CZ=1e-8), SMALL)
    assert a.best.key() == b.best.key()
    assert b.objective * 1e-8 == pytest.approx(a.objective, rel=1e-9)


def test_rate_objective_equals_key_objective_without_errors():
    a = optimize(50 * L_ATT, CH, SC, SMALL, objective="rate_per_matter")
    b = optimize(50 * L_ATT, CH, SC, SMALL, objective="secret_key_per_matter")
    assert a.best == b.best


def test_optimal_L0_decreases_with_L():
    L0s = [optimize(k * L_ATT, CH, SC, SMALL).L0 for k in (10, 50, 150)]
    assert L0s[0] > L0s[1] > L0s[2]


def test_infeasible_flag():
    res = optimize(50 * L_ATT, ChannelParams(eta_c=0.0), SC, SMALL)
    assert not res.feasible
    assert res.objective == 0.0


def test_below_half_loses_to_direct_transmission():
    # below the loss-tolerance threshold the encoded chain is worthless
    ch = ChannelParams(eta_c=0.45)
    L = 50 * L_ATT
    res = optimize(L, ch, SC, SearchSpace(m_range=(1, 10), b0_range=(1, 8), b1_range=(1, 4)))
    assert res.objective * SC.T_CZ < 1e-30
    assert res.objective < baseline_value("direct_transmission", L, ch, SC.T_CZ, 0)


def test_positive_key_at_eps_1e4():
    res = optimize(50 * L_ATT, ChannelParams(epsilon=1e-4), SC, SMALL)
    assert res.feasible
    assert 0 < res.report.F_AB < 1 and res.report.R_skr > 0


def test_select_best_tie_breaking():
    a = Candidate(3, (2, 2), 10, 1.0, math.log(1.0))
    b = Candidate(2, (9, 9), 12, 1.0, math.log(1.0 * (1 - 1e-13)))
    c = Candidate(1, (1, 1), 5, 1.0, math.log(0.5))
    assert select_best([a, b, c]) is b
    assert select_best([]) is None


def test_power_law_exponent():
    L = np.array([1.0, 2.0, 4.0, 8.0])
    assert power_law_exponent(L, 3 * L**-1.27) == pytest.approx(-1.27, rel=1e-12)
    assert math.isnan(power_law_exponent([5.0], [1.0]))


def test_sweep_single_distance_flags_exponent():
    sw = sweep_distance([50 * L_ATT], CH, SC, SMALL)
    assert len(sw.results) == 1 and not sw.exponent_defined
    with pytest.raises(ValueError):
        sweep_distance([], CH, SC, SMALL)


def test_fixed_shape_sweep_consistency():
    res = optimize(50 * L_ATT, CH, SC, SMALL)
    reports = fixed_shape_sweep(res.shape, res.L0, [50 * L_ATT, 100 * L_ATT, 400 * L_ATT], CH, SC)
    assert reports[0].R_skr_per_matter == pytest.approx(res.objective, rel=1e-12)
    vals = [r.R_per_matter for r in reports]
    assert vals[0] > vals[1] > vals[2]


def test_fixed_shape_near_optimum_elsewhere():
    far = optimize(150 * L_ATT, CH, SC, SMALL)
    near = optimize(50 * L_ATT, CH, SC, SMALL)
    frozen = fixed_shape_sweep(far.shape, far.L0, [50 * L_ATT], CH, SC)[0]
    assert near.objective / 3 <= frozen.R_per_matter <= near.objective


def test_baseline_values():
    L = 1000.0
    assert baseline_value("memory_bound", L, CH, 1e-8) == 50.0
    assert baseline_value("memory_bound_2qm", L, CH, 1e-8) == pytest.approx(2e5 / 7000)
    direct = baseline_value("direct_transmission", L, CH, 1e-8, 6)
    assert direct == pytest.approx(1e14 * math.exp(-50) / math.log(2), rel=1e-9)
    assert baseline_value("memory_and_direct", L, CH, 1e-8) == 50.0


def test_crossover_T_CZ_against_scaling():
    # with only CZ time, the objective is c0 / T_CZ, so the crossover is c0 / baseline
    L = 200 * L_ATT
    ref = optimize(L, CH, SC, SMALL)
    res = find_crossover("T_CZ", L, CH, SC, SMALL, baseline="memory_bound")
    expected = ref.objective / baseline_value("memory_bound", L, CH, 1.0) / CH.t_att
    assert res.found
    assert res.threshold == pytest.approx(expected, rel=2e-3)


def test_crossover_no_sign_change():
    res = find_crossover("T_CZ", 50 * L_ATT, CH, SC, SMALL, baseline="memory_bound", bracket=(1e-9, 1e-8))
    assert not res.found and res.threshold is None
    assert res.parameter is CrossoverParameter.T_CZ and res.baseline is Baseline.MEMORY_BOUND
