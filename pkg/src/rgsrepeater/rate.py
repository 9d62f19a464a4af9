"""RGS accounting and end-to-end rate of the all-photonic repeater chain."""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from .channel import ChannelParams, Scenario, n_links_for, single_photon_prob, transmission
from .errors import logical_errors, pair_fidelity, secret_key_rate
from .tree import TreeAnalysis, TreeVector, analyze_tree, logical_meas_probs


def _as_out(x):
    x = np.asarray(x, dtype=float)
    return float(x) if x.ndim == 0 else x


@dataclass(frozen=True)
class RgsShape:
    """An RGS with ``2m`` arms whose first-leaf qubits are encoded in ``tree``."""

    m: int
    tree: TreeVector

    def __post_init__(self) -> None:
        if int(self.m) < 1:
            raise ValueError(f"m must be >= 1, got {self.m}")
        object.__setattr__(self, "m", int(self.m))
        if not isinstance(self.tree, TreeVector):
            object.__setattr__(self, "tree", TreeVector(tuple(self.tree)))

    @property
    def matter_qubits(self) -> int:
        """Matter qubits needed to generate one RGS."""
        return self.tree.n + 1


@dataclass(frozen=True)
class RateReport:
    p_ph: float
    p_bell: float
    p_link: float
    t_rgs: float
    n_links: float
    L0: float
    n_matter: float
    n_photons: int
    R: float
    R_per_matter: float
    ebar_x: float
    ebar_z: float
    F_AB: float
    R_skr: float
    R_skr_per_matter: float

    def as_dict(self) -> dict:
        return asdict(self)


def bell_success_prob(p_ph):
    """Linear-optics Bell measurement success, ``p_ph**2 / 2``."""
    p = np.asarray(p_ph, dtype=float)
    return _as_out(p * p / 2.0)


def link_success_prob(shape: RgsShape, p_ph, analysis: TreeAnalysis | None = None):
    """Probability that two adjacent half-RGSs get connected.

    At least one of the ``m`` Bell measurements must succeed, then two logical
    X and ``2m - 2`` logical Z measurements on first-leaf qubits.
    """
    if analysis is None:
        analysis = analyze_tree(shape.tree, p_ph)
    pr_x, pr_z = logical_meas_probs(analysis, shape.tree)
    p_bell = np.asarray(bell_success_prob(p_ph))
    m = shape.m
    any_bell = -np.expm1(m * np.log1p(-p_bell))
    return _as_out(any_bell * np.asarray(pr_x) ** 2 * np.asarray(pr_z) ** (2 * m - 2))


def rgs_generation_time_full(shape: RgsShape, times: Scenario) -> float:
    """Generation time of one RGS counting emissions, measurements, Hadamards and CZs."""
    m, tree = shape.m, shape.tree
    f_full = tree.partial_sum(tree.n - 1)
    f_inner = tree.partial_sum(tree.n - 2)
    return (
        2 * m * (1 + f_full) * times.T_Eph
        + times.T_M
        + 2 * m * (2 + f_inner) * (times.T_M + times.T_CZ)
        + 2 * m * f_inner * times.T_H
    )


def rgs_generation_time_cz(shape: RgsShape, T_CZ: float) -> float:
    """Generation time when only CZ gates take time: ``2m (2 + f(b, n-2)) T_CZ``."""
    return 2 * shape.m * (2 + shape.tree.partial_sum(shape.tree.n - 2)) * T_CZ


def photon_count(shape: RgsShape) -> int:
    """Photons in one RGS: one per arm plus one tree per arm."""
    return 2 * shape.m * (1 + shape.tree.photon_count)


def matter_qubit_count(tree_depth: int, L: float, L0: float, fractional: bool = False) -> float:
    """Matter qubits across the whole chain, ``(L/L0 - 1)(n + 1)``.

    ``L / L0`` is rounded to an integer number of links unless ``fractional``.
    """
    if not (L0 > 0 and L >= L0 * (1 - 1e-12)):
        raise ValueError("need L >= L0 > 0")
    links = L / L0 if fractional else n_links_for(L, L0)
    return (links - 1) * (tree_depth + 1)


def direct_transmission_rate(ch: ChannelParams, L: float, rep_rate: float):
    """Repeaterless secret-key capacity ``-log2(1 - eta)`` per use times ``rep_rate``.

    ``eta`` includes the collection and detection efficiencies.
    """
    eta = ch.eta_c * ch.eta_d * np.asarray(transmission(L, ch.L_att))
    return _as_out(rep_rate * (-np.log1p(-eta) / math.log(2.0)))


def chain_success(p_link, n_links):
    """``p_link ** n_links`` evaluated in the log domain."""
    p_link = np.asarray(p_link, dtype=float)
    with np.errstate(divide="ignore"):
        log_p = np.log(p_link)
    return _as_out(np.where(p_link > 0, np.exp(np.asarray(n_links) * log_p), 0.0))


def evaluate_scenario(
    shape: RgsShape,
    ch: ChannelParams,
    sc: Scenario,
    fractional_links: bool = False,
) -> RateReport:
    """Every rate-related quantity of one RGS chain.

    By default the number of links is ``round(L / L0)`` and the links are
    spread evenly over ``L``, so the effective spacing is ``L / n_links``.
    With ``fractional_links`` the ratio ``L / L0`` is used as is.
    """
    if fractional_links:
        n_links = sc.L / sc.L0
        L0 = sc.L0
    else:
        n_links = n_links_for(sc.L, sc.L0)
        L0 = sc.L / n_links
    p_ph = float(single_photon_prob(ch, L0))
    analysis = analyze_tree(shape.tree, p_ph)
    p_link = float(link_success_prob(shape, p_ph, analysis))
    t_rgs = rgs_generation_time_full(shape, sc)
    R = float(chain_success(p_link, n_links)) / t_rgs if t_rgs > 0 else math.inf
    n_matter = (n_links - 1) * shape.matter_qubits
    if ch.epsilon > 0:
        ebar_x, ebar_z = logical_errors(shape.tree, analysis, ch.epsilon)
    else:
        ebar_x = ebar_z = 0.0
    fid = pair_fidelity(ebar_x, ebar_z, ch.epsilon, n_links - 1, shape.m)
    R_skr = float(secret_key_rate(R, fid.F_AB))
    return RateReport(
        p_ph=p_ph,
        p_bell=float(bell_success_prob(p_ph)),
        p_link=p_link,
        t_rgs=t_rgs,
        n_links=n_links,
        L0=L0,
        n_matter=n_matter,
        n_photons=photon_count(shape),
        R=R,
        R_per_matter=_per(R, n_matter),
        ebar_x=float(ebar_x),
        ebar_z=float(ebar_z),
        F_AB=float(fid.F_AB),
        R_skr=R_skr,
        R_skr_per_matter=_per(R_skr, n_matter),
    )


def _per(rate: float, count: float) -> float:
    # a single link has no intermediate source nodes
    if count > 0:
        return rate / count
    return math.inf if rate > 0 else 0.0
