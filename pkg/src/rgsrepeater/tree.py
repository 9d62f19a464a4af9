"""Loss tolerance of tree graph states.

A tree with branching vector ``b = (b0, ..., b_{n-1})`` has ``b0`` qubits on
level 1, each with ``b1`` children on level 2, and so on down to the leaves on
level ``n``. The root (level 0) is the logical qubit and is never a photon.

A Z measurement on a level-k qubit succeeds either directly (the photon
arrived) or indirectly: X-measure one child on level k+1 and Z-measure all of
that child's own children on level k+2. Subtrees are disjoint, so all of the
recursions below are exact for independent photon loss.

All functions accept ``p_ph`` as a float or a numpy array and broadcast.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np


def _as_out(x):
    x = np.asarray(x, dtype=float)
    return float(x) if x.ndim == 0 else x


@dataclass(frozen=True)
class TreeVector:
    """Branching vector of a tree graph state."""

    b: tuple[int, ...]

    def __post_init__(self) -> None:
        b = tuple(int(v) for v in self.b)
        if len(b) < 1:
            raise ValueError("a tree needs at least one level")
        if any(v < 1 for v in b):
            raise ValueError(f"branching factors must be >= 1, got {b}")
        object.__setattr__(self, "b", b)

    @classmethod
    def parse(cls, text: str) -> "TreeVector":
        """Build from text such as ``"10,5"`` or ``"10 5"``."""
        parts = [p for p in text.replace(",", " ").split() if p]
        return cls(tuple(int(p) for p in parts))

    @property
    def n(self) -> int:
        return len(self.b)

    def branching(self, k: int) -> int:
        """``b_k`` with the convention ``b_k = 0`` beyond the leaves."""
        return self.b[k] if 0 <= k < self.n else 0

    def partial_sum(self, k: int) -> int:
        """``f(b, k) = sum_{i=0}^{k} prod_{j=0}^{i} b_j``; zero for ``k < 0``."""
        total, prod = 0, 1
        for i in range(min(k, self.n - 1) + 1):
            prod *= self.b[i]
            total += prod
        return total

    @property
    def photon_count(self) -> int:
        """Number of photons in one encoded tree, ``f(b, n - 1)``."""
        return self.partial_sum(self.n - 1)

    def __str__(self) -> str:
        return ",".join(str(v) for v in self.b)


@dataclass(frozen=True)
class TreeAnalysis:
    """Success probabilities of every level of a tree at one ``p_ph``.

    ``pr_mz[k - 1]`` is the Z-measurement success on level ``k`` (k = 1..n),
    ``r[k]`` the indirect-measurement success on level ``k`` (k = 0..n) and
    ``s[k]`` the success of a single indirect attempt (k = 0..n-1).
    """

    b: tuple[int, ...]
    p_ph: float | np.ndarray
    pr_mz: tuple
    r: tuple
    s: tuple
    pr_mx_logical: float | np.ndarray
    pr_mz_logical: float | np.ndarray

    def mz(self, k: int):
        """``Pr(M_{Z,k})`` with value 1 for levels below the leaves."""
        if k > len(self.b):
            return 1.0
        if k < 1:
            raise ValueError("level 0 is the logical qubit")
        return self.pr_mz[k - 1]

    def indirect_given_measured(self, k: int):
        """``Pr(I_{Z,k} | M_{Z,k}) = r_k / Pr(M_{Z,k})``, zero where undefined."""
        if k >= len(self.b):
            return _as_out(np.zeros_like(np.asarray(self.p_ph, dtype=float)))
        r_k = np.asarray(self.r[k], dtype=float)
        mz_k = np.asarray(self.mz(k), dtype=float)
        with np.errstate(divide="ignore", invalid="ignore"):
            out = np.where(mz_k > 0, r_k / np.where(mz_k > 0, mz_k, 1.0), 0.0)
        return _as_out(out)


def analyze_tree(tree: TreeVector, p_ph) -> TreeAnalysis:
    """Evaluate the loss-tolerance recursion bottom-up."""
    p = np.asarray(p_ph, dtype=float)
    if np.any((p < 0) | (p > 1)):
        raise ValueError("p_ph must lie in [0, 1]")
    n = tree.n
    one = np.ones_like(p)
    mz = {n: p}
    r = {n: np.zeros_like(p)}
    s = {}
    for k in range(n - 1, -1, -1):
        below = mz.get(k + 2, one)
        s[k] = p * below ** tree.branching(k + 1)
        # expm1/log1p keep r accurate when s is tiny
        with np.errstate(divide="ignore"):
            r[k] = -np.expm1(tree.b[k] * np.log1p(-s[k]))
        if k >= 1:
            mz[k] = p + (1.0 - p) * r[k]
    return TreeAnalysis(
        b=tree.b,
        p_ph=_as_out(p),
        pr_mz=tuple(_as_out(mz[k]) for k in range(1, n + 1)),
        r=tuple(_as_out(r[k]) for k in range(0, n + 1)),
        s=tuple(_as_out(s[k]) for k in range(0, n)),
        pr_mx_logical=_as_out(r[0]),
        pr_mz_logical=_as_out(mz[1] ** tree.b[0]),
    )


def logical_meas_probs(analysis: TreeAnalysis, tree: TreeVector):
    """Return ``(Pr(M_X logical), Pr(M_Z logical))`` = ``(r_0, Pr(M_{Z,1})^b0)``."""
    if analysis.b != tree.b:
        raise ValueError(f"analysis was computed for tree {analysis.b}, not {tree.b}")
    return analysis.r[0], _as_out(np.asarray(analysis.mz(1)) ** tree.b[0])


def enumerate_trees(max_photons: int, max_depth: int | None = None) -> list[TreeVector]:
    """All branching vectors whose trees hold at most ``max_photons`` photons."""
    found: list[TreeVector] = []

    def grow(prefix: Sequence[int], photons: int, width: int) -> None:
        if prefix:
            found.append(TreeVector(tuple(prefix)))
        if max_depth is not None and len(prefix) >= max_depth:
            return
        b = 1
        while photons + width * b <= max_photons:
            grow([*prefix, b], photons + width * b, width * b)
            b += 1

    grow([], 0, 1)
    return found
