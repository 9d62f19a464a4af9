"""Single-qubit error propagation through tree-encoded measurements.

Every physical measurement flips its outcome with probability ``eps``. An
indirect Z measurement reads the parity of one X outcome and the Z outcomes
of the grandchildren, so it is wrong when an odd number of those are wrong.
Several successful indirect measurements of the same qubit are combined by
majority vote; with an even count one vote is discarded at random first.
When a qubit is measurable both directly and indirectly the indirect outcome
is kept.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .tree import TreeAnalysis, TreeVector

MAX_BRANCHING = 64


def _as_out(x):
    x = np.asarray(x, dtype=float)
    return float(x) if x.ndim == 0 else x


def _binom_pmf(n: int, j: int, x):
    return math.comb(n, j) * x**j * (1.0 - x) ** (n - j)


def _check_tree(tree: TreeVector) -> None:
    if max(tree.b) > MAX_BRANCHING:
        raise ValueError(f"branching factors above {MAX_BRANCHING} are not supported")


@dataclass(frozen=True)
class ErrorAnalysis:
    """Per-level indirect-measurement errors and the logical X/Z errors.

    ``e_indirect[k]`` and ``e_single_indirect[k]`` refer to level ``k`` for
    ``k = 0..n-1``. ``degenerate_levels`` lists levels where no indirect
    measurement can succeed (``r_k = 0``) and the error was set to zero.
    """

    e_indirect: tuple
    e_single_indirect: tuple
    ebar_x: float | np.ndarray
    ebar_z: float | np.ndarray
    degenerate_levels: tuple[int, ...] = ()


@dataclass(frozen=True)
class FidelityReport:
    E_x: float | np.ndarray
    E_y: float | np.ndarray
    E_z: float | np.ndarray
    F_AB: float | np.ndarray


def majority_vote_error(m_k: int, e1):
    """Error of a majority vote over ``m_k`` votes each wrong with probability ``e1``.

    Even vote counts drop one vote first, so ``m_k`` and ``m_k - 1`` agree.
    """
    if m_k < 1:
        raise ValueError("majority vote needs at least one successful measurement")
    e1 = np.asarray(e1, dtype=float)
    trials = m_k if m_k % 2 else m_k - 1
    first = math.ceil(m_k / 2)
    total = np.zeros_like(e1)
    for j in range(first, trials + 1):
        total = total + _binom_pmf(trials, j, e1)
    return _as_out(total)


def odd_parity_error(n_eps: int, n_ind: int, eps, e_ind):
    """Probability of an odd number of errors among ``n_eps`` outcomes wrong
    with ``eps`` and ``n_ind`` outcomes wrong with ``e_ind``.

    Sums ``Bin(i; n_eps, eps) * Bin(j; n_ind, e_ind)`` over ``i + j`` odd,
    grouping the terms by the parity of ``i`` and ``j``.
    """
    eps = np.asarray(eps, dtype=float)
    e_ind = np.asarray(e_ind, dtype=float)
    eps_par = [np.zeros_like(eps), np.zeros_like(eps)]
    for i in range(n_eps + 1):
        eps_par[i % 2] = eps_par[i % 2] + _binom_pmf(n_eps, i, eps)
    ind_par = [np.zeros_like(e_ind), np.zeros_like(e_ind)]
    for j in range(n_ind + 1):
        ind_par[j % 2] = ind_par[j % 2] + _binom_pmf(n_ind, j, e_ind)
    return eps_par[0] * ind_par[1] + eps_par[1] * ind_par[0]


def _mixed_parity_error(n_children: int, q_indirect, n_extra: int, eps, e_ind):
    """Average odd-parity error when each of ``n_children`` Z outcomes is
    indirect with probability ``q_indirect`` and direct otherwise, plus
    ``n_extra`` further direct outcomes (the X measurement, if any)."""
    q = np.asarray(q_indirect, dtype=float)
    total = np.zeros(np.broadcast(q, np.asarray(e_ind)).shape)
    for n_direct in range(n_children + 1):
        weight = math.comb(n_children, n_direct) * q ** (n_children - n_direct) * (1.0 - q) ** n_direct
        total = total + weight * odd_parity_error(n_direct + n_extra, n_children - n_direct, eps, e_ind)
    return total


def indirect_error_levels(tree: TreeVector, analysis: TreeAnalysis, eps) -> ErrorAnalysis:
    """Evaluate the coupled error recursion for every level of ``tree``.

    Level ``k`` depends on level ``k + 2``, so levels are filled from the
    leaves upward.
    """
    _check_tree(tree)
    if analysis.b != tree.b:
        raise ValueError(f"analysis was computed for tree {analysis.b}, not {tree.b}")
    eps_arr = np.asarray(eps, dtype=float)
    if np.any((eps_arr < 0) | (eps_arr > 0.5)):
        raise ValueError("eps must lie in [0, 0.5]")
    n = tree.n
    zero = np.zeros_like(np.asarray(analysis.p_ph, dtype=float))
    e_ind: dict[int, np.ndarray] = {}
    e_one: dict[int, np.ndarray] = {}
    degenerate = []
    for k in range(n - 1, -1, -1):
        n_children = tree.branching(k + 1)
        q = analysis.indirect_given_measured(k + 2)
        below = e_ind.get(k + 2, zero)
        e_one[k] = _mixed_parity_error(n_children, q, 1, eps, below)
        r_k = np.asarray(analysis.r[k], dtype=float)
        s_k = np.asarray(analysis.s[k], dtype=float)
        acc = np.zeros_like(r_k)
        b_k = tree.b[k]
        for m in range(1, b_k + 1):
            acc = acc + _binom_pmf(b_k, m, s_k) * majority_vote_error(m, e_one[k])
        ok = r_k > 0
        if not np.all(ok):
            degenerate.append(k)
        e_ind[k] = np.where(ok, acc / np.where(ok, r_k, 1.0), 0.0)

    q1 = analysis.indirect_given_measured(1)
    ebar_z = _mixed_parity_error(tree.b[0], q1, 0, eps, e_ind.get(1, zero))
    return ErrorAnalysis(
        e_indirect=tuple(_as_out(e_ind[k]) for k in range(n)),
        e_single_indirect=tuple(_as_out(e_one[k]) for k in range(n)),
        ebar_x=_as_out(e_ind[0]),
        ebar_z=_as_out(ebar_z),
        degenerate_levels=tuple(sorted(degenerate)),
    )


def logical_errors(tree: TreeVector, analysis: TreeAnalysis, eps):
    """Logical X and Z error probabilities ``(ebar_x, ebar_z)``."""
    result = indirect_error_levels(tree, analysis, eps)
    return result.ebar_x, result.ebar_z


def pair_fidelity(ebar_x, ebar_z, eps, n_qr, m) -> FidelityReport:
    """Fidelity of the end-to-end pair after ``n_qr`` source nodes with ``2m`` arms."""
    if np.any(np.asarray(n_qr) < 0):
        raise ValueError("n_qr must be non-negative")
    m = np.asarray(m)
    if np.any(m < 1):
        raise ValueError("m must be >= 1")
    n_qr = np.asarray(n_qr, dtype=float)
    photon_term = (1.0 - 2.0 * np.asarray(eps, dtype=float)) ** (2.0 * (n_qr + 1.0))
    x_term = 1.0 - 2.0 * np.asarray(ebar_x, dtype=float)
    z_term = 1.0 - 2.0 * np.asarray(ebar_z, dtype=float)
    E_x = 0.25 * (1.0 - photon_term * x_term ** (2.0 * n_qr))
    E_y = 0.25 * (
        1.0
        + photon_term * x_term ** (2.0 * n_qr)
        - 2.0 * photon_term * x_term**n_qr * z_term ** ((2 * m - 2) * n_qr)
    )
    E_z = E_x
    F_AB = 1.0 - (E_x + E_y + E_z)
    return FidelityReport(_as_out(E_x), _as_out(E_y), _as_out(E_z), _as_out(F_AB))


def binary_entropy(F):
    """Binary entropy in bits, with ``h(0) = h(1) = 0``."""
    F = np.asarray(F, dtype=float)
    inside = (F > 0) & (F < 1)
    Fs = np.where(inside, F, 0.5)
    h = -Fs * np.log2(Fs) - (1.0 - Fs) * np.log2(1.0 - Fs)
    return _as_out(np.where(inside, h, 0.0))


def secret_key_fraction(F_AB):
    """``max(0, 1 - 2 h(F_AB))``; negative fractions carry no key."""
    return _as_out(np.maximum(0.0, 1.0 - 2.0 * np.asarray(binary_entropy(F_AB))))


def secret_key_rate(R, F_AB):
    if np.any(np.asarray(R) < 0):
        raise ValueError("rate must be non-negative")
    return _as_out(np.asarray(R, dtype=float) * secret_key_fraction(F_AB))


def coherence_time_requirement(T_RGS: float, n_ph: int, eps_target: float) -> float:
    """Matter-qubit coherence time needed so that decoherence during one RGS
    generation stays below ``eps_target`` per photon.

    Equates ``exp(-3 T_RGS / T_2)`` with ``(1 - eps_target) ** n_ph``.
    Returns ``inf`` for ``eps_target == 0``.
    """
    if not T_RGS > 0 or n_ph < 1:
        raise ValueError("T_RGS must be positive and n_ph >= 1")
    if not 0.0 <= eps_target < 1.0:
        raise ValueError("eps_target must lie in [0, 1)")
    if eps_target == 0.0:
        return math.inf
    return -3.0 * T_RGS / (n_ph * math.log1p(-eps_target))
