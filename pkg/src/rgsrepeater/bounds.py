"""Rate bounds for repeaters built from quantum memories and heralded entanglement.

A memory cannot emit again before it hears whether its last photon was
detected, so each heralding attempt costs at least one photon flight plus one
classical signal across ``L0 / 2``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .channel import ChannelParams, memory_rate_upper_bound


class HeraldedScheme(str, enum.Enum):
    SINGLE_PHOTON_BK = "single-photon-BK"
    TWO_PHOTON_DLCZ = "two-photon-DLCZ-like"
    WEAK_EXCITATION = "weak-excitation"


@dataclass(frozen=True)
class HeraldedProtocol:
    """Timing and success model of one heralded-entanglement scheme.

    ``weak_excitation_prob`` is the emission amplitude constant of the
    weak-excitation scheme; it is kept small to suppress two-photon emission.
    """

    name: HeraldedScheme
    weak_excitation_prob: float = 0.05

    def __post_init__(self) -> None:
        object.__setattr__(self, "name", HeraldedScheme(self.name))

    @property
    def trial_time_factor(self) -> int:
        return 2 if self.name is HeraldedScheme.TWO_PHOTON_DLCZ else 1

    def trial_time(self, L0: float, ch: ChannelParams) -> float:
        return self.trial_time_factor * L0 / ch.c

    def success_prob(self, L0: float, ch: ChannelParams) -> float:
        eta = ch.eta_c * ch.eta_d
        if self.name is HeraldedScheme.SINGLE_PHOTON_BK:
            # both photons must reach the midpoint and the linear-optics
            # Bell measurement succeeds at most half the time
            return eta**2 * math.exp(-L0 / ch.L_att) / 2.0
        if self.name is HeraldedScheme.TWO_PHOTON_DLCZ:
            return eta * math.exp(-L0 / ch.L_att)
        return self.weak_excitation_prob * eta * math.exp(-L0 / (2.0 * ch.L_att))


BARRETT_KOK = HeraldedProtocol(HeraldedScheme.SINGLE_PHOTON_BK)
DLCZ_LIKE = HeraldedProtocol(HeraldedScheme.TWO_PHOTON_DLCZ)
WEAK_EXCITATION = HeraldedProtocol(HeraldedScheme.WEAK_EXCITATION)


@dataclass(frozen=True)
class MemoryBoundReport:
    t_ent_avg: float
    t_store_avg: float
    r_max_generic: float
    r_max_2qm: float


def heralded_entanglement_time(proto: HeraldedProtocol, L0: float, ch: ChannelParams) -> float:
    """Mean time to herald one memory-memory pair, ``T_trial / P_ent``."""
    if not L0 > 0:
        raise ValueError(f"L0 must be positive, got {L0}")
    p = proto.success_prob(L0, ch)
    if p <= 0:
        return math.inf
    return proto.trial_time(L0, ch) / p


def two_qm_bound(P_ent: float, L: float, ch: ChannelParams) -> float:
    """Rate-per-matter-qubit bound with two memories per node and heralded swapping."""
    if not 0 < P_ent <= 1:
        raise ValueError(f"P_ent must lie in (0, 1], got {P_ent}")
    if not L > 0:
        raise ValueError(f"L must be positive, got {L}")
    return (2.0 - P_ent) / (15.0 - 8.0 * P_ent) * ch.c / L


def storage_time_case4(P_ent: float, t_ent: float) -> float:
    """Mean wait for both neighbouring memories to get entangled when neither
    is yet, i.e. the mean of the larger of two geometric attempt counts."""
    if not 0 < P_ent <= 1:
        raise ValueError(f"P_ent must lie in (0, 1], got {P_ent}")
    return (3.0 - 2.0 * P_ent) / (2.0 - P_ent) * t_ent


def storage_time_average(P_ent: float, t_ent: float) -> float:
    """Mean storage time over the four equally likely neighbour states."""
    if not 0 < P_ent <= 1:
        raise ValueError(f"P_ent must lie in (0, 1], got {P_ent}")
    return (1.75 - P_ent) / (2.0 - P_ent) * t_ent


def memory_bounds(L: float, L0: float, P_ent: float, ch: ChannelParams) -> MemoryBoundReport:
    """Both memory bounds, with ``<T_ent>`` at its floor ``2 L0 / c``.

    ``r_max_2qm`` is assembled from the entanglement and storage times and
    two memories per node (``N_m = 2 L / L0``).
    """
    if not 0 < L0 <= L:
        raise ValueError("need 0 < L0 <= L")
    t_ent = 2.0 * L0 / ch.c
    t_store = storage_time_average(P_ent, t_ent)
    n_memories = 2.0 * L / L0
    return MemoryBoundReport(
        t_ent_avg=t_ent,
        t_store_avg=t_store,
        r_max_generic=memory_rate_upper_bound(ch, L),
        r_max_2qm=1.0 / ((t_ent + t_store) * n_memories),
    )
