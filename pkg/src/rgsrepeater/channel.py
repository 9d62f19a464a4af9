"""Fiber and detector quantities shared by the rest of the package.

Lengths are in km and times in seconds throughout.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

DEFAULT_L_ATT_KM = 20.0
DEFAULT_C_KM_PER_S = 2.0e5


@dataclass(frozen=True)
class ChannelParams:
    """Photonic channel: fiber attenuation, light speed and efficiencies.

    Args:
        L_att: attenuation length of the fiber (km).
        c: speed of light in the fiber (km/s).
        eta_c: probability an emitted photon is collected into the fiber.
        eta_d: detector efficiency.
        epsilon: single-photon error probability.
    """

    L_att: float = DEFAULT_L_ATT_KM
    c: float = DEFAULT_C_KM_PER_S
    eta_c: float = 1.0
    eta_d: float = 1.0
    epsilon: float = 0.0

    def __post_init__(self) -> None:
        if not self.L_att > 0:
            raise ValueError(f"L_att must be positive, got {self.L_att}")
        if not self.c > 0:
            raise ValueError(f"c must be positive, got {self.c}")
        for name in ("eta_c", "eta_d"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {value}")
        if not 0.0 <= self.epsilon <= 0.5:
            raise ValueError(f"epsilon must lie in [0, 0.5], got {self.epsilon}")

    @property
    def t_att(self) -> float:
        """Photon flight time over one attenuation length (s)."""
        return self.L_att / self.c

    @property
    def eta_prod(self) -> float:
        return self.eta_c * self.eta_d


@dataclass(frozen=True)
class Scenario:
    """A deployment: total distance, node spacing and matter-qubit gate times.

    ``L / L0`` is the number of links. Only the CZ time enters the default
    generation-time model; the other times are used when non-zero.
    """

    L: float
    L0: float
    T_CZ: float = 1.0
    T_Eph: float = 0.0
    T_M: float = 0.0
    T_H: float = 0.0

    def __post_init__(self) -> None:
        if not self.L0 > 0:
            raise ValueError(f"L0 must be positive, got {self.L0}")
        if not self.L0 <= self.L * (1 + 1e-12):
            raise ValueError(f"L0 ({self.L0}) must not exceed L ({self.L})")
        for name in ("T_CZ", "T_Eph", "T_M", "T_H"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative")

    @property
    def n_links(self) -> float:
        return self.L / self.L0


def transmission(l, L_att: float):
    """Fiber transmission ``exp(-l / L_att)``; accepts scalars or arrays."""
    if not L_att > 0:
        raise ValueError(f"L_att must be positive, got {L_att}")
    l_arr = np.asarray(l, dtype=float)
    if np.any(l_arr < 0):
        raise ValueError("fiber length must be non-negative")
    out = np.exp(-l_arr / L_att)
    return float(out) if out.ndim == 0 else out


def single_photon_prob(ch: ChannelParams, L0):
    """Probability that a photon is collected, crosses ``L0 / 2`` of fiber and is detected."""
    return ch.eta_c * ch.eta_d * transmission(np.asarray(L0, dtype=float) / 2.0, ch.L_att)


def memory_rate_upper_bound(ch: ChannelParams, L: float) -> float:
    """Generic rate-per-matter-qubit bound ``c / 4L`` for heralded memory repeaters."""
    if not L > 0:
        raise ValueError(f"L must be positive, got {L}")
    return ch.c / (4.0 * L)


def n_links_for(L: float, L0: float) -> int:
    """Integer number of links used when ``L / L0`` is not an integer."""
    n = int(math.floor(L / L0 + 0.5))
    return max(n, 1)
