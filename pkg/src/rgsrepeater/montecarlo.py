"""Sampling oracle for tree-encoded measurements.

Each sample draws photon survival for every photon of the tree and an
independent flip for every measurement, then runs the measurement procedure
explicitly: a qubit is read indirectly when any branch works (the X-measured
child arrived and all of its children are Z-measurable), otherwise directly.
Branch outcomes are parities; several branches are combined by majority
vote, discarding one uniformly chosen vote when their number is even.

Samples are drawn in fixed-size blocks, each from its own child of one
``SeedSequence``, so results depend on the seed only and not on how blocks
are spread over workers.
"""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .tree import TreeVector

TARGETS = ("logical_X_prob", "logical_Z_prob", "ebar_x", "ebar_z")


@dataclass(frozen=True)
class McConfig:
    n_samples: int = 1_000_000
    seed: int = 20210101
    block_size: int = 1 << 15
    workers: int = 1
    targets: tuple[str, ...] = TARGETS

    def __post_init__(self) -> None:
        if self.n_samples < 1:
            raise ValueError("n_samples must be >= 1")
        if self.block_size < 1:
            raise ValueError("block_size must be >= 1")
        unknown = set(self.targets) - set(TARGETS)
        if unknown:
            raise ValueError(f"unknown estimator targets: {sorted(unknown)}")


@dataclass(frozen=True)
class McEstimate:
    mean: float
    std_err: float
    n_samples: int

    @classmethod
    def from_counts(cls, hits: int, trials: int) -> "McEstimate":
        if trials == 0:
            return cls(math.nan, math.nan, 0)
        mean = hits / trials
        return cls(mean, math.sqrt(mean * (1.0 - mean) / trials), trials)

    def agrees_with(self, value: float, n_sigma: float = 3.0) -> bool:
        # a zero-variance estimate must match exactly up to rounding
        return abs(self.mean - value) <= n_sigma * self.std_err + 1e-12


@dataclass(frozen=True)
class McResult:
    logical_x: McEstimate
    logical_z: McEstimate
    ebar_x: McEstimate
    ebar_z: McEstimate


def _majority(ok: np.ndarray, err: np.ndarray, rng: np.random.Generator):
    """Majority vote over the last axis, restricted to successful branches."""
    m = ok.sum(axis=-1)
    e = (ok & err).sum(axis=-1)
    even = (m % 2 == 0) & (m > 0)
    drop = even & (rng.random(m.shape) * np.maximum(m, 1) < e)
    e = e - drop
    m = m - even
    return m > 0, 2 * e > m


def _parity(err: np.ndarray) -> np.ndarray:
    return (err.sum(axis=-1) % 2).astype(bool)


def _sample_block(tree: TreeVector, p_ph: float, eps: float, size: int, seed_seq) -> np.ndarray:
    rng = np.random.default_rng(seed_seq)
    n = tree.n
    widths = [1]
    for b in tree.b:
        widths.append(widths[-1] * b)
    survive = {k: rng.random((size, widths[k])) < p_ph for k in range(1, n + 1)}
    x_flip = {k: rng.random((size, widths[k])) < eps for k in range(1, n + 1)}
    z_flip = {k: rng.random((size, widths[k])) < eps for k in range(1, n + 1)}

    z_ok = {n: survive[n]}
    z_err = {n: z_flip[n]}

    def branches(k):
        # branch = X on a level-(k+1) child plus Z on all its level-(k+2) children
        ok = survive[k + 1]
        err = x_flip[k + 1]
        if k + 2 <= n:
            b_next = tree.b[k + 1]
            grand_ok = z_ok[k + 2].reshape(size, widths[k + 1], b_next)
            grand_err = z_err[k + 2].reshape(size, widths[k + 1], b_next)
            ok = ok & grand_ok.all(axis=-1)
            err = err ^ _parity(grand_err)
        b_k = tree.b[k]
        return ok.reshape(size, widths[k], b_k), err.reshape(size, widths[k], b_k)

    for k in range(n - 1, 0, -1):
        ok, err = branches(k)
        ind_ok, ind_err = _majority(ok, err, rng)
        z_ok[k] = survive[k] | ind_ok
        z_err[k] = np.where(ind_ok, ind_err, z_flip[k])

    ok, err = branches(0)
    x_ok, x_err = _majority(ok, err, rng)
    x_ok, x_err = x_ok[:, 0], x_err[:, 0]
    zl_ok = z_ok[1].all(axis=-1)
    zl_err = _parity(z_err[1])
    return np.array(
        [
            np.count_nonzero(x_ok),
            np.count_nonzero(zl_ok),
            np.count_nonzero(x_ok & x_err),
            np.count_nonzero(zl_ok & zl_err),
        ],
        dtype=np.int64,
    )


def _run_block(args) -> np.ndarray:
    return _sample_block(*args)


def mc_run(tree: TreeVector, p_ph: float, eps: float, cfg: McConfig) -> McResult:
    """Sample success and conditional error rates of both logical measurements."""
    if not 0.0 <= p_ph <= 1.0:
        raise ValueError("p_ph must lie in [0, 1]")
    if not 0.0 <= eps <= 0.5:
        raise ValueError("eps must lie in [0, 0.5]")
    n_blocks = -(-cfg.n_samples // cfg.block_size)
    sizes = [cfg.block_size] * (n_blocks - 1) + [cfg.n_samples - cfg.block_size * (n_blocks - 1)]
    seeds = np.random.SeedSequence(cfg.seed).spawn(n_blocks)
    jobs = [(tree, p_ph, eps, size, seq) for size, seq in zip(sizes, seeds)]
    if cfg.workers > 1 and n_blocks > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            counts = sum(pool.map(_run_block, jobs))
    else:
        counts = sum(_run_block(job) for job in jobs)
    x_hits, z_hits, x_errs, z_errs = (int(c) for c in counts)
    return McResult(
        logical_x=McEstimate.from_counts(x_hits, cfg.n_samples),
        logical_z=McEstimate.from_counts(z_hits, cfg.n_samples),
        ebar_x=McEstimate.from_counts(x_errs, x_hits),
        ebar_z=McEstimate.from_counts(z_errs, z_hits),
    )


def mc_tree_success(tree: TreeVector, p_ph: float, cfg: McConfig) -> tuple[McEstimate, McEstimate]:
    """Sampled ``(Pr(M_X logical), Pr(M_Z logical))``."""
    res = mc_run(tree, p_ph, 0.0, cfg)
    return res.logical_x, res.logical_z


def mc_logical_error(
    tree: TreeVector, p_ph: float, eps: float, cfg: McConfig
) -> tuple[McEstimate, McEstimate]:
    """Sampled logical X and Z error rates, each conditioned on that measurement succeeding."""
    res = mc_run(tree, p_ph, eps, cfg)
    return res.ebar_x, res.ebar_z
