"""Exhaustive search over RGS shapes and node spacings.

For each tree ``b`` the objective is evaluated on the whole ``(n_links, m)``
grid at once; the tree and error recursions broadcast over ``p_ph``.
Comparisons use log objectives, so candidates whose rate underflows double
precision are still ranked correctly.
"""
from __future__ import annotations

import enum
import itertools
import logging
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Callable, Iterable, Sequence

import numpy as np

from .bounds import two_qm_bound
from .channel import ChannelParams, Scenario, memory_rate_upper_bound, single_photon_prob
from .errors import indirect_error_levels, pair_fidelity, secret_key_fraction
from .rate import (
    RateReport,
    RgsShape,
    bell_success_prob,
    direct_transmission_rate,
    evaluate_scenario,
    rgs_generation_time_full,
)
from .tree import TreeVector, analyze_tree

log = logging.getLogger(__name__)

TIE_RTOL = 1e-12
WORKERS_ENV = "RGSREPEATER_WORKERS"


class Objective(str, enum.Enum):
    RATE_PER_MATTER = "rate_per_matter"
    SECRET_KEY_PER_MATTER = "secret_key_per_matter"


@dataclass(frozen=True)
class SearchSpace:
    """Integer search grid. Ranges are inclusive ``(low, high)`` pairs.

    The link count is taken from ``n_links_range`` when given, otherwise from
    the node spacings ``L0_range_att`` (in units of ``L_att``). At least two
    links are always required so that the chain has source nodes.
    """

    m_range: tuple[int, int] = (1, 30)
    b0_range: tuple[int, int] = (1, 20)
    b1_range: tuple[int, int] = (1, 20)
    b2_range: tuple[int, int] = (1, 10)
    tree_depth: int = 2
    n_links_range: tuple[int, int] | None = None
    L0_range_att: tuple[float, float] = (0.05, 1.0)

    def __post_init__(self) -> None:
        for name in ("m_range", "b0_range", "b1_range", "b2_range", "n_links_range"):
            rng = getattr(self, name)
            if rng is None:
                continue
            lo, hi = int(rng[0]), int(rng[1])
            if lo < 1 or hi < lo:
                raise ValueError(f"{name} must be a non-empty range with low >= 1, got {rng}")
            object.__setattr__(self, name, (lo, hi))
        if self.tree_depth not in (1, 2, 3):
            raise ValueError("tree_depth must be 1, 2 or 3")
        lo, hi = self.L0_range_att
        if not 0 < lo <= hi:
            raise ValueError(f"L0_range_att must satisfy 0 < low <= high, got {self.L0_range_att}")

    def trees(self) -> list[TreeVector]:
        ranges = [self.b0_range, self.b1_range, self.b2_range][: self.tree_depth]
        axes = [range(lo, hi + 1) for lo, hi in ranges]
        return [TreeVector(b) for b in itertools.product(*axes)]

    def m_values(self) -> np.ndarray:
        return np.arange(self.m_range[0], self.m_range[1] + 1)

    def n_links_values(self, L: float, L_att: float) -> np.ndarray:
        if self.n_links_range is not None:
            lo, hi = self.n_links_range
        else:
            lo = math.ceil(L / (self.L0_range_att[1] * L_att) - 1e-9)
            hi = math.floor(L / (self.L0_range_att[0] * L_att) + 1e-9)
        lo = max(lo, 2)
        if hi < lo:
            return np.arange(0)
        return np.arange(lo, hi + 1)


@dataclass(frozen=True)
class Candidate:
    """Best link count found for one ``(m, b)``."""

    m: int
    b: tuple[int, ...]
    n_links: int
    L0: float
    log_objective: float

    @property
    def objective(self) -> float:
        return math.exp(self.log_objective) if self.log_objective > -math.inf else 0.0

    def key(self) -> tuple:
        return (self.m, self.b, self.n_links)


@dataclass
class OptimizationResult:
    L: float
    objective_kind: Objective
    best: Candidate | None
    shape: RgsShape | None
    report: RateReport | None
    trace: list[Candidate] = field(repr=False, default_factory=list)

    @property
    def feasible(self) -> bool:
        return self.best is not None and self.best.log_objective > -math.inf

    @property
    def objective(self) -> float:
        return self.best.objective if self.best is not None else 0.0

    @property
    def log_objective(self) -> float:
        return self.best.log_objective if self.best is not None else -math.inf

    @property
    def L0(self) -> float | None:
        return self.best.L0 if self.best is not None else None


def _log(x):
    with np.errstate(divide="ignore"):
        return np.log(np.asarray(x, dtype=float))


def _tree_grid(tree, L, ch, times, m_values, n_links, objective):
    """Log objective on the ``(n_links, m)`` grid for one tree."""
    L0 = L / n_links
    p_ph = np.asarray(single_photon_prob(ch, L0), dtype=float)
    analysis = analyze_tree(tree, p_ph)
    pr_x = np.asarray(analysis.pr_mx_logical)[:, None]
    pr_z1 = np.asarray(analysis.mz(1))[:, None]
    p_bell = np.asarray(bell_success_prob(p_ph))[:, None]
    m = m_values[None, :]
    with np.errstate(divide="ignore", invalid="ignore"):
        z_exp = (2 * m - 2) * tree.b[0]
        # a zero exponent drops the factor even when Pr(M_Z) = 0
        log_z = np.where(z_exp > 0, z_exp * _log(pr_z1), 0.0)
        log_link = _log(-np.expm1(m * np.log1p(-p_bell))) + 2.0 * _log(pr_x) + log_z
        log_chain = np.where(np.isneginf(log_link), -np.inf, n_links[:, None] * log_link)
    t_rgs = np.array([rgs_generation_time_full(RgsShape(int(mm), tree), times) for mm in m_values])
    n_matter = (n_links - 1) * (tree.n + 1)
    log_obj = log_chain - _log(t_rgs)[None, :] - _log(n_matter)[:, None]
    if objective is Objective.SECRET_KEY_PER_MATTER and ch.epsilon > 0:
        errs = indirect_error_levels(tree, analysis, ch.epsilon)
        fid = pair_fidelity(
            np.asarray(errs.ebar_x)[:, None],
            np.asarray(errs.ebar_z)[:, None],
            ch.epsilon,
            (n_links - 1)[:, None],
            m,
        )
        log_obj = log_obj + _log(secret_key_fraction(fid.F_AB))
    return log_obj


def _best_per_m(log_obj: np.ndarray, n_links: np.ndarray, L: float, tree, m_values) -> list[Candidate]:
    out = []
    for j, mm in enumerate(m_values):
        col = log_obj[:, j]
        top = np.max(col)
        if top == -np.inf:
            i = 0
        else:
            # smallest link count among ties
            i = int(np.flatnonzero(col >= top + math.log1p(-TIE_RTOL))[0])
        out.append(Candidate(int(mm), tree.b, int(n_links[i]), float(L / n_links[i]), float(col[i])))
    return out


def _search_trees(args) -> list[Candidate]:
    trees, L, ch, times, m_values, n_links, objective = args
    cands = []
    for tree in trees:
        grid = _tree_grid(tree, L, ch, times, m_values, n_links, objective)
        cands.extend(_best_per_m(grid, n_links, L, tree, m_values))
    return cands


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get(WORKERS_ENV, "1")))
    except ValueError:
        return 1


def select_best(trace: Sequence[Candidate]) -> Candidate | None:
    """Highest objective; ties within ``TIE_RTOL`` go to the smallest ``(m, b, n_links)``."""
    if not trace:
        return None
    top = max(c.log_objective for c in trace)
    if top == -math.inf:
        tied = list(trace)
    else:
        cut = top + math.log1p(-TIE_RTOL)
        tied = [c for c in trace if c.log_objective >= cut]
    return min(tied, key=Candidate.key)


def optimize(
    L: float,
    ch: ChannelParams,
    sc_template: Scenario,
    space: SearchSpace | None = None,
    objective: Objective | str = Objective.SECRET_KEY_PER_MATTER,
    workers: int | None = None,
) -> OptimizationResult:
    """Maximise the per-matter-qubit rate over ``m``, ``b`` and the link count.

    Only the gate times of ``sc_template`` are used; ``L`` replaces its distance.
    """
    if not L > 0:
        raise ValueError(f"L must be positive, got {L}")
    space = space or SearchSpace()
    objective = Objective(objective)
    workers = default_workers() if workers is None else workers
    m_values = space.m_values()
    n_links = space.n_links_values(L, ch.L_att)
    trees = space.trees()
    if n_links.size == 0:
        log.warning("no admissible link count for L=%g", L)
        return OptimizationResult(L, objective, None, None, None, [])

    if workers > 1 and len(trees) > 1:
        chunks = [trees[i::workers] for i in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = pool.map(
                _search_trees,
                [(chunk, L, ch, sc_template, m_values, n_links, objective) for chunk in chunks],
            )
            trace = [c for part in parts for c in part]
        trace.sort(key=Candidate.key)
    else:
        trace = _search_trees((trees, L, ch, sc_template, m_values, n_links, objective))
        trace.sort(key=Candidate.key)

    best = select_best(trace)
    shape = RgsShape(best.m, TreeVector(best.b))
    sc = replace(sc_template, L=L, L0=best.L0)
    report = evaluate_scenario(shape, ch, sc)
    return OptimizationResult(L, objective, best, shape, report, trace)


def power_law_exponent(L_values: Sequence[float], objectives: Sequence[float]) -> float:
    """Least-squares slope of ``log(objective)`` against ``log(L)``; nan if under-determined."""
    L_arr = np.asarray(L_values, dtype=float)
    y = np.asarray(objectives, dtype=float)
    ok = (L_arr > 0) & (y > 0)
    if np.count_nonzero(ok) < 2 or np.unique(L_arr[ok]).size < 2:
        return math.nan
    slope, _ = np.polyfit(np.log(L_arr[ok]), np.log(y[ok]), 1)
    return float(slope)


@dataclass
class SweepResult:
    results: list[OptimizationResult]
    exponent: float
    fit_range: tuple[float, float] | None

    @property
    def exponent_defined(self) -> bool:
        return not math.isnan(self.exponent)


def sweep_distance(
    L_list: Iterable[float],
    ch: ChannelParams,
    sc: Scenario,
    space: SearchSpace | None = None,
    fit_range: tuple[float, float] | None = None,
    objective: Objective | str = Objective.SECRET_KEY_PER_MATTER,
    workers: int | None = None,
) -> SweepResult:
    """Optimise at each distance and fit a power law to the optima.

    ``fit_range`` restricts the fit to ``low <= L <= high``; by default every
    distance is used. A fit over fewer than two distances gives ``nan``.
    """
    L_list = list(L_list)
    if not L_list:
        raise ValueError("need at least one distance")
    results = [optimize(L, ch, sc, space, objective, workers) for L in L_list]
    lo, hi = fit_range if fit_range is not None else (-math.inf, math.inf)
    pts = [(r.L, r.objective) for r in results if lo <= r.L <= hi]
    exponent = power_law_exponent([p[0] for p in pts], [p[1] for p in pts])
    return SweepResult(results, exponent, fit_range)


def fixed_shape_sweep(
    shape: RgsShape,
    L0: float,
    L_list: Iterable[float],
    ch: ChannelParams,
    sc: Scenario,
) -> list[RateReport]:
    """Rates at each distance with the shape and node spacing frozen."""
    return [evaluate_scenario(shape, ch, replace(sc, L=L, L0=L0)) for L in L_list]


class CrossoverParameter(str, enum.Enum):
    T_CZ = "T_CZ"
    ETA_PROD = "eta_prod"
    EPSILON = "epsilon"


class Baseline(str, enum.Enum):
    MEMORY_BOUND = "memory_bound"
    MEMORY_BOUND_2QM = "memory_bound_2qm"
    DIRECT_TRANSMISSION = "direct_transmission"
    MEMORY_AND_DIRECT = "memory_and_direct"


# scan limits; T_CZ in units of t_att
_SCAN_LIMITS = {
    CrossoverParameter.T_CZ: (1e-8, 1.0, True),
    CrossoverParameter.ETA_PROD: (0.5, 1.0, False),
    CrossoverParameter.EPSILON: (1e-7, 0.05, True),
}


@dataclass
class CrossoverResult:
    parameter: CrossoverParameter
    baseline: Baseline
    L: float
    threshold: float | None
    rgs_objective: float | None = None
    baseline_value: float | None = None
    evaluations: int = 0
    scan: list[tuple[float, float]] = field(default_factory=list)

    @property
    def found(self) -> bool:
        return self.threshold is not None


def baseline_value(
    baseline: Baseline | str,
    L: float,
    ch: ChannelParams,
    T_CZ: float,
    direct_rep_exponent: int = 6,
) -> float:
    """Rate that the RGS chain has to beat.

    The direct-transmission source runs at ``10**direct_rep_exponent / T_CZ``.
    """
    baseline = Baseline(baseline)
    memory = memory_rate_upper_bound(ch, L)
    memory_2qm = two_qm_bound(1.0, L, ch)
    direct = float(direct_transmission_rate(ch, L, 10.0**direct_rep_exponent / T_CZ))
    return {
        Baseline.MEMORY_BOUND: memory,
        Baseline.MEMORY_BOUND_2QM: memory_2qm,
        Baseline.DIRECT_TRANSMISSION: direct,
        Baseline.MEMORY_AND_DIRECT: max(memory, direct),
    }[baseline]


def _with_parameter(parameter, value, ch: ChannelParams, sc: Scenario):
    if parameter is CrossoverParameter.T_CZ:
        return ch, replace(sc, T_CZ=value * ch.t_att)
    if parameter is CrossoverParameter.ETA_PROD:
        return replace(ch, eta_c=value, eta_d=1.0), sc
    return replace(ch, epsilon=value), sc


def find_crossover(
    parameter: CrossoverParameter | str,
    L: float,
    ch: ChannelParams,
    sc: Scenario,
    space: SearchSpace | None = None,
    baseline: Baseline | str = Baseline.MEMORY_AND_DIRECT,
    bracket: tuple[float, float] | None = None,
    n_scan: int = 7,
    rel_tol: float = 1e-3,
    max_iter: int = 60,
    direct_rep_exponent: int = 6,
    workers: int | None = None,
) -> CrossoverResult:
    """Value of ``parameter`` at which the optimised RGS rate meets ``baseline``.

    ``eta_prod`` is applied as ``eta_c`` with ``eta_d = 1``; ``T_CZ`` is
    scanned and returned in units of ``t_att``. A coarse scan first checks that
    the gap to the baseline is monotone and brackets the sign change, then
    bisection runs until ``|R - baseline| / baseline < rel_tol``.
    Returns a result with ``threshold=None`` if the scan shows no crossover.
    """
    parameter = CrossoverParameter(parameter)
    baseline = Baseline(baseline)
    space = space or SearchSpace()
    lo, hi, log_scale = _SCAN_LIMITS[parameter]
    if bracket is not None:
        lo, hi = bracket
    evaluations = 0

    only_cz = sc.T_Eph == 0 and sc.T_M == 0 and sc.T_H == 0
    reference: list = []

    def log_rgs_at(ch_x: ChannelParams, sc_x: Scenario) -> float:
        nonlocal evaluations
        if parameter is CrossoverParameter.T_CZ and only_cz:
            # the objective is exactly proportional to 1 / T_CZ here
            if not reference:
                reference.append(optimize(L, ch_x, sc_x, space, workers=workers))
                reference.append(sc_x.T_CZ)
                evaluations += 1
            return reference[0].log_objective + math.log(reference[1] / sc_x.T_CZ)
        evaluations += 1
        return optimize(L, ch_x, sc_x, space, workers=workers).log_objective

    def gap(x: float) -> tuple[float, float, float]:
        ch_x, sc_x = _with_parameter(parameter, x, ch, sc)
        log_rgs = log_rgs_at(ch_x, sc_x)
        base = baseline_value(baseline, L, ch_x, sc_x.T_CZ, direct_rep_exponent)
        return log_rgs - math.log(base), log_rgs, base

    grid = np.geomspace(lo, hi, n_scan) if log_scale else np.linspace(lo, hi, n_scan)
    scan = []
    for x in grid:
        g, _, _ = gap(float(x))
        scan.append((float(x), g))
    gaps = np.array([g for _, g in scan])
    finite = gaps[np.isfinite(gaps)]
    diffs = np.diff(finite)
    if diffs.size and not (np.all(diffs <= 1e-9) or np.all(diffs >= -1e-9)):
        raise ValueError(f"objective gap is not monotone in {parameter.value} over the scan")
    result = CrossoverResult(parameter, baseline, L, None, evaluations=evaluations, scan=scan)
    signs = np.sign(gaps)
    change = [i for i in range(len(scan) - 1) if signs[i] != signs[i + 1]]
    if not change:
        return result

    a, b = scan[change[0]][0], scan[change[0] + 1][0]
    ga = scan[change[0]][1]
    x = gx = log_rgs = base = None
    for _ in range(max_iter):
        x = math.sqrt(a * b) if log_scale else 0.5 * (a + b)
        gx, log_rgs, base = gap(x)
        if abs(math.expm1(gx)) < rel_tol:
            break
        if np.sign(gx) == np.sign(ga):
            a, ga = x, gx
        else:
            b = x
        if abs(b - a) <= 1e-12 * max(abs(a), abs(b)):
            break
    result.threshold = x
    result.rgs_objective = math.exp(log_rgs) if log_rgs > -math.inf else 0.0
    result.baseline_value = base
    result.evaluations = evaluations
    return result
