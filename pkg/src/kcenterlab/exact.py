"""Exact k-center solver and cover verifier (the ground-truth oracle).

Enumeration over k-subsets in lexicographic order, pruned against the
incumbent radius using suffix minima of the distance matrix, so the returned
set is the lexicographically smallest optimal one.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np

from .errors import BudgetExceededError
from .graphs import UNREACHABLE, Graph, VertexSet, dist_matrix, multi_source_dist


@dataclass(frozen=True)
class CenterSolution:
    """A set of <= k centers with its exact covering radius (the certificate)."""

    centers: VertexSet
    radius: int


def cover_radius(g: Graph, centers: VertexSet) -> int:
    """max over v of d(v, centers), via one multi-source traversal."""
    if len(centers) == 0:
        raise ValueError("centers must be non-empty")
    return int(multi_source_dist(g, centers).max())


def verify_cover(g: Graph, centers: VertexSet, r: int) -> bool:
    """True iff every vertex is within distance r of some center."""
    if len(centers) == 0:
        return False
    return cover_radius(g, centers) <= r


def exact_k_radius(g: Graph, k: int, budget: int = 10**8) -> CenterSolution:
    """Optimal k-center by pruned subset enumeration.

    k > n is treated as k = n. Refuses (BudgetExceededError) when C(n, k)
    exceeds ``budget``. Disconnected graphs with k < #components report
    radius UNREACHABLE.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    n = g.n
    k = min(k, n)
    if comb(n, k) > budget:
        raise BudgetExceededError(f"C({n},{k}) exceeds budget {budget}")
    dmat = dist_matrix(g)

    # suffix_min[i] = pointwise min of rows i..n-1: the best any center with
    # id >= i could still contribute. Basis of the completion lower bound.
    suffix_min = np.empty((n + 1, n), dtype=np.int64)
    suffix_min[n] = UNREACHABLE
    for i in range(n - 1, -1, -1):
        suffix_min[i] = np.minimum(suffix_min[i + 1], dmat[i])

    best_radius: int | None = None
    best_set: tuple[int, ...] | None = None
    start_cov = np.full(n, UNREACHABLE, dtype=np.int64)

    def descend(start: int, chosen: list[int], cov: np.ndarray) -> None:
        nonlocal best_radius, best_set
        depth = len(chosen)
        if depth == k:
            r = int(cov.max())
            if best_radius is None or r < best_radius:
                best_radius = r
                best_set = tuple(chosen)
            return
        slots_left = k - depth
        for c in range(start, n - slots_left + 1):
            new_cov = np.minimum(cov, dmat[c])
            # Best conceivable completion: every remaining candidate id > c used.
            bound = int(np.minimum(new_cov, suffix_min[c + 1]).max())
            if best_radius is not None and bound >= best_radius:
                continue
            chosen.append(c)
            descend(c + 1, chosen, new_cov)
            chosen.pop()

    descend(0, [], start_cov)
    assert best_set is not None and best_radius is not None
    return CenterSolution(VertexSet.from_iterable(n, best_set), best_radius)
