"""Exact oracle by enumerating every photon-loss pattern of a small tree.

For each loss pattern the measurement procedure is run deterministically and
the probability that each outcome is wrong is tracked exactly: parities of
independent outcomes via ``(1 - prod(1 - 2 p_i)) / 2`` and majority votes via
the Poisson-binomial distribution of the number of wrong votes. Averaging
over patterns with their probabilities gives the logical success and error
rates with no sampling noise.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .tree import TreeVector

MAX_PHOTONS = 20


@dataclass(frozen=True)
class ExactResult:
    pr_mx_logical: float
    pr_mz_logical: float
    ebar_x: float
    ebar_z: float


def _parity_error(err: np.ndarray) -> np.ndarray:
    return 0.5 * (1.0 - np.prod(1.0 - 2.0 * err, axis=-1))


def _majority_error(ok: np.ndarray, err: np.ndarray):
    """Exact majority-vote error over the last axis among successful branches.

    With an even number ``m`` of votes one is dropped uniformly at random; given
    ``e`` wrong votes, the dropped one is wrong with probability ``e / m``.
    """
    b = ok.shape[-1]
    dist = np.zeros(ok.shape[:-1] + (b + 1,))
    dist[..., 0] = 1.0
    for i in range(b):
        p = np.where(ok[..., i], err[..., i], 0.0)[..., None]
        shifted = np.zeros_like(dist)
        shifted[..., 1:] = dist[..., :-1]
        dist = dist * (1.0 - p) + shifted * p
    m = ok.sum(axis=-1)[..., None]
    e = np.arange(b + 1)
    odd_m = (m % 2 == 1)
    wrong_odd = (2 * e > m).astype(float)
    frac = np.where(m > 0, e / np.maximum(m, 1), 0.0)
    wrong_even = frac * (2 * (e - 1) > m - 1) + (1.0 - frac) * (2 * e > m - 1)
    table = np.where(odd_m, wrong_odd, wrong_even)
    return m[..., 0] > 0, np.sum(dist * table, axis=-1)


def _pattern_outcomes(tree: TreeVector, eps: float):
    """Per loss pattern: surviving photon count and logical outcomes."""
    n_ph = tree.photon_count
    if n_ph > MAX_PHOTONS:
        raise ValueError(f"enumeration limited to {MAX_PHOTONS} photons, tree has {n_ph}")
    n = tree.n
    widths = [1]
    for b in tree.b:
        widths.append(widths[-1] * b)
    patterns = np.arange(1 << n_ph, dtype=np.int64)[:, None]
    survive = {}
    offset = 0
    for k in range(1, n + 1):
        bits = offset + np.arange(widths[k], dtype=np.int64)
        survive[k] = ((patterns >> bits) & 1).astype(bool)
        offset += widths[k]
    n_alive = sum(s.sum(axis=1) for s in survive.values())
    P = patterns.shape[0]

    meas = {n: survive[n]}
    err = {n: np.full((P, widths[n]), float(eps))}

    def branches(k):
        ok = survive[k + 1]
        e = np.full((P, widths[k + 1]), float(eps))
        if k + 2 <= n:
            b_next = tree.b[k + 1]
            g_ok = meas[k + 2].reshape(P, widths[k + 1], b_next)
            g_err = err[k + 2].reshape(P, widths[k + 1], b_next)
            ok = ok & g_ok.all(axis=-1)
            e = _parity_error(np.concatenate([e[..., None], g_err], axis=-1))
        return ok.reshape(P, widths[k], tree.b[k]), e.reshape(P, widths[k], tree.b[k])

    for k in range(n - 1, 0, -1):
        ok, e = branches(k)
        ind_ok, ind_err = _majority_error(ok, e)
        meas[k] = survive[k] | ind_ok
        err[k] = np.where(ind_ok, ind_err, float(eps))

    ok, e = branches(0)
    x_ok, x_err = _majority_error(ok, e)
    z_ok = meas[1].all(axis=1)
    z_err = _parity_error(err[1])
    return n_alive, x_ok[:, 0], x_err[:, 0], z_ok, z_err


def exact_tree_table(tree: TreeVector, p_values, eps: float = 0.0) -> list[ExactResult]:
    """``exact_tree_probabilities`` for several ``p_ph`` sharing one enumeration."""
    n_alive, x_ok, x_err, z_ok, z_err = _pattern_outcomes(tree, eps)
    n_ph = tree.photon_count
    out = []
    for p_ph in p_values:
        weight = p_ph**n_alive * (1.0 - p_ph) ** (n_ph - n_alive)
        pr_x = float(np.sum(weight * x_ok))
        pr_z = float(np.sum(weight * z_ok))
        ebar_x = float(np.sum(weight * x_ok * x_err) / pr_x) if pr_x > 0 else 0.0
        ebar_z = float(np.sum(weight * z_ok * z_err) / pr_z) if pr_z > 0 else 0.0
        out.append(ExactResult(pr_x, pr_z, ebar_x, ebar_z))
    return out


def exact_tree_probabilities(tree: TreeVector, p_ph: float, eps: float = 0.0) -> ExactResult:
    """Logical success probabilities and conditional errors by full enumeration."""
    return exact_tree_table(tree, [p_ph], eps)[0]
