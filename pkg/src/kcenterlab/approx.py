"""Randomized decision procedures for k-center and their binary-search wrapper.

Each decider probes one radius R: it either returns a certificate-verified
cover at the decider's relaxed radius, or reports that no cover was found at
R (correct w.h.p. when the true k-radius exceeds R). Soundness is
unconditional because every "covered" answer is re-checked with an exact
multi-source traversal before being returned.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, replace
from typing import Callable, Sequence

import numpy as np

from .boolcover import (
    UncoveredRow,
    exists_cover_tuple,
    intersect_balls,
    uncovered_mask,
    uncovered_mask_transposed,
)
from .errors import DeciderFailedError, EmptyRegionError, InfeasibleError
from .exact import CenterSolution, cover_radius
from .graphs import (
    UNREACHABLE,
    DistRow,
    Graph,
    VertexSet,
    all_pairs,
    closest_p_nodes,
    dist_matrix,
    eccentricity,
    farthest_from_set,
    multi_source_dist,
    num_components,
    sssp,
)
from .schedules import DeltaSchedule, plan_deltas_tradeoff


@dataclass(frozen=True)
class ApproxConfig:
    """Knobs shared by all deciders.

    sample_const scales every hitting-set sample (size ~ c * n^(1-delta) * ln n,
    capped at n). omega feeds the exponent planners only. trials re-runs a
    decider with derived seeds and keeps the first covered outcome.
    """

    seed: int = 0
    sample_const: float = 3.0
    omega: float = 2.372
    budget: int = 2_000_000
    trials: int = 1
    fresh_samples: bool | None = None

    def __post_init__(self):
        if self.sample_const <= 0:
            raise ValueError("sample_const must be positive")
        if not 2.0 <= self.omega <= 3.0:
            raise ValueError("omega must be in [2, 3]")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")


@dataclass(frozen=True)
class DecisionOutcome:
    """Covered(centers, radius) with a verified certificate, or above-R."""

    covered: bool
    centers: VertexSet | None = None
    radius: int | None = None


ABOVE_R = DecisionOutcome(False)


def sample_hitting_set(
    n: int, delta: float, cfg: ApproxConfig, rng: random.Random | None = None
) -> VertexSet:
    """Uniform sample (no replacement) of min(n, ceil(c * n^(1-delta) * ln n)).

    Large enough that w.h.p. it intersects the ~n^delta nearest neighbors of
    every vertex. Seeded from cfg when no stream is supplied.
    """
    if not 0 < delta < 1:
        raise ValueError("delta must be in (0, 1)")
    if rng is None:
        rng = random.Random(cfg.seed)
    size = min(n, max(1, math.ceil(cfg.sample_const * n ** (1 - delta) * math.log(n))))
    return VertexSet.from_iterable(n, rng.sample(range(n), size))


def gonzalez_2approx(g: Graph, k: int) -> CenterSolution:
    """Farthest-first traversal baseline starting from vertex 0."""
    if k < 1:
        raise ValueError("k must be >= 1")
    k = min(k, g.n)
    centers = [0]
    cov = sssp(g, 0).dist.copy()
    while len(centers) < k:
        nxt = int(np.argmax(cov))
        if cov[nxt] == 0:
            break  # everything already covered exactly
        centers.append(nxt)
        np.minimum(cov, sssp(g, nxt).dist, out=cov)
    cset = VertexSet.from_iterable(g.n, centers)
    return CenterSolution(cset, cover_radius(g, cset))


# --------------------------------------------------------------------------
# shared decider plumbing
# --------------------------------------------------------------------------


def _window(n: int, exponent: float) -> int:
    """Candidate-window size ceil(n^exponent), clamped to [1, n]."""
    return min(n, max(1, math.ceil(n**exponent)))


def _pad_centers(g: Graph, picks: Sequence[int], k: int) -> list[int]:
    """Distinct center list padded with the smallest unused vertex ids."""
    out: list[int] = []
    used = set()
    for v in picks:
        if v not in used:
            used.add(v)
            out.append(v)
    fill = 0
    while len(out) < min(k, g.n):
        if fill not in used:
            used.add(fill)
            out.append(fill)
        fill += 1
    return out


def _certify(
    g: Graph, picks: Sequence[int], k: int, radius: int
) -> DecisionOutcome | None:
    """Verified Covered outcome, or None when the claimed cover fails."""
    centers = VertexSet.from_iterable(g.n, _pad_centers(g, picks, k))
    if cover_radius(g, centers) <= radius:
        return DecisionOutcome(True, centers, radius)
    return None


def _covers_all(rows: Sequence[np.ndarray], zidx: np.ndarray, r: int) -> bool:
    if zidx.size == 0:
        return True
    best = rows[0][zidx]
    for row in rows[1:]:
        best = np.minimum(best, row[zidx])
    return bool((best <= r).all())


def _min_over(rows: Sequence[np.ndarray]) -> np.ndarray:
    best = rows[0].copy()
    for row in rows[1:]:
        np.minimum(best, row, out=best)
    return best


# --------------------------------------------------------------------------
# 2-center decider, (5/3, 2/3) family
# --------------------------------------------------------------------------


def decide_2center_53(g: Graph, R: int, cfg: ApproxConfig) -> DecisionOutcome:
    """Probe radius R for 2 centers; covered answers use radius 2R - floor(R/3).

    Sampled-rows procedure: a global hitting set catches the case where two
    sampled vertices sit within R - floor(R/3) of the true centers; otherwise
    a window around the farthest vertex contains a vertex within floor(R/3)
    of one center, and a second sample + ball intersection finds its partner.
    """
    if g.weighted:
        raise ValueError("2-center decider expects an unweighted graph")
    if R < 0:
        raise ValueError("R must be >= 0")
    n = g.n
    third = R // 3
    rho = 2 * R - third
    w = cfg.omega
    delta = (2 * w - 3) / (3 * w - 3)
    gamma = (w * w - 3 * w + 3) / (3 * w - 3)
    rng = random.Random(cfg.seed)

    S = sample_hitting_set(n, delta, cfg, rng)
    s_rows = [sssp(g, s) for s in S]
    zfull = np.arange(n)

    # Phase 1: some sampled pair covers everything at rho.
    masks = uncovered_mask(s_rows, zfull, rho)
    hit = exists_cover_tuple([masks, masks], budget=cfg.budget)
    if hit is not None:
        out = _certify(g, hit, 2, rho)
        if out:
            return out

    d_to_S = _min_over([row.dist for row in s_rows])
    w1 = farthest_from_set(d_to_S, VertexSet.full(n))
    W1 = closest_p_nodes(g, w1, _window(n, delta))

    T = sample_hitting_set(n, gamma, cfg, rng)
    t_rows = {t: sssp(g, t) for t in T}
    d_to_T = _min_over([row.dist for row in t_rows.values()])

    for s1 in W1:
        row1 = sssp(g, s1).dist
        far = row1 > R + third
        if not far.any():
            out = _certify(g, [s1], 2, rho)
            if out:
                return out
            continue
        w2 = farthest_from_set(d_to_T, VertexSet.from_bool(far))
        for s2 in closest_p_nodes(g, w2, _window(n, gamma)):
            row2 = sssp(g, s2).dist
            if int(np.minimum(row1, row2).max()) <= rho:
                out = _certify(g, [s1, s2], 2, rho)
                if out:
                    return out
        # Ball-intersection fallback: sampled vertices beyond R + floor(R/3)
        # of s1 must all be within R of the second true center.
        tu_rows = [t_rows[t] for t in T if row1[t] > R + third]
        Q = intersect_balls(n, tu_rows, R)
        if len(Q):
            q = next(iter(Q))
            rowq = sssp(g, q).dist
            if int(np.minimum(row1, rowq).max()) <= rho:
                out = _certify(g, [s1, q], 2, rho)
                if out:
                    return out
    return ABOVE_R


# --------------------------------------------------------------------------
# (3/2, 1/2) decider
# --------------------------------------------------------------------------


def decide_kcenter_32(g: Graph, k: int, R: int, cfg: ApproxConfig) -> DecisionOutcome:
    """Probe radius R for k centers; covered answers use radius R + ceil(R/2).

    Either k sampled vertices already cover at the relaxed radius, or some
    vertex in the farthest-vertex window is within floor(R/2) of a true
    center and brute tuples over V complete it.
    """
    if g.weighted:
        raise ValueError("(3/2) decider expects an unweighted graph")
    if k < 2:
        raise ValueError("k must be >= 2")
    if R < 0:
        raise ValueError("R must be >= 0")
    n = g.n
    rho = R + (R + 1) // 2
    delta = 1.0 / (k + 1)
    rng = random.Random(cfg.seed)

    rows = all_pairs(g)
    S = sample_hitting_set(n, delta, cfg, rng)
    s_rows = [rows[s] for s in S]
    zfull = np.arange(n)

    masks = uncovered_mask(s_rows, zfull, rho)
    hit = exists_cover_tuple([masks] * k, budget=cfg.budget)
    if hit is not None:
        out = _certify(g, hit, k, rho)
        if out:
            return out

    d_to_S = _min_over([row.dist for row in s_rows])
    w1 = farthest_from_set(d_to_S, VertexSet.full(n))
    for s1 in closest_p_nodes(g, w1, _window(n, delta)):
        zidx = np.flatnonzero(rows[s1].dist > rho)
        if zidx.size == 0:
            out = _certify(g, [s1], k, rho)
            if out:
                return out
            continue
        vmasks = uncovered_mask(rows, zidx, rho)
        hit = exists_cover_tuple([vmasks] * (k - 1), budget=cfg.budget)
        if hit is not None:
            out = _certify(g, [s1, *hit], k, rho)
            if out:
                return out
    return ABOVE_R


# --------------------------------------------------------------------------
# staged decider, (2 - 1/(2k-1), 1 - 1/(2k-1))
# --------------------------------------------------------------------------


def decide_kcenter_2k(g: Graph, k: int, R: int, cfg: ApproxConfig) -> DecisionOutcome:
    """Staged decider with k levels sharing one sqrt-size sample.

    Level i holds partial centers s_1..s_i with d(s_j, c_j) <= (2j-1)*alpha,
    alpha = floor(R/(2k-1)). Each level first tries to finish with a tuple of
    sampled vertices against the still-uncovered target, then widens the
    partial set through the farthest-vertex window. The last level scans its
    window directly and falls back to a ball intersection.
    """
    if g.weighted:
        raise ValueError("staged decider expects an unweighted graph")
    if k < 2:
        raise ValueError("k must be >= 2")
    if R < 0:
        raise ValueError("R must be >= 0")
    n = g.n
    alpha = R // (2 * k - 1)
    rho = 2 * R - alpha
    rng = random.Random(cfg.seed)
    rows = all_pairs(g)

    fresh = bool(cfg.fresh_samples) if cfg.fresh_samples is not None else False

    def draw_sample() -> tuple[list[int], np.ndarray]:
        S = sample_hitting_set(n, 0.5, cfg, rng)
        s_list = list(S)
        return s_list, _min_over([rows[s].dist for s in s_list])

    shared = None if fresh else draw_sample()
    wsize = _window(n, 0.5)

    def step(i: int, picks: list[int], cov: np.ndarray | None) -> DecisionOutcome | None:
        s_list, d_to_S = shared if shared is not None else draw_sample()
        region = (
            np.ones(n, dtype=bool) if cov is None else cov > R + (2 * i - 1) * alpha
        )
        if not region.any():
            return _certify(g, picks, k, rho)
        w_next = farthest_from_set(d_to_S, VertexSet.from_bool(region))
        W_next = closest_p_nodes(g, w_next, wsize)

        zidx = np.arange(n) if cov is None else np.flatnonzero(cov > rho)
        if zidx.size == 0:
            return _certify(g, picks, k, rho)

        if i < k - 1:
            smasks = uncovered_mask([rows[s] for s in s_list], zidx, rho)
            hit = exists_cover_tuple([smasks] * (k - i), budget=cfg.budget)
            if hit is not None:
                out = _certify(g, [*picks, *hit], k, rho)
                if out:
                    return out
            for s in W_next:
                new_cov = rows[s].dist if cov is None else np.minimum(cov, rows[s].dist)
                out = step(i + 1, [*picks, s], new_cov)
                if out:
                    return out
        else:
            for s in W_next:
                if _covers_all([rows[s].dist], zidx, rho):
                    out = _certify(g, [*picks, s], k, rho)
                    if out:
                        return out
            assert cov is not None
            tu = [rows[t] for t in s_list if cov[t] > R + (2 * k - 3) * alpha]
            Q = intersect_balls(n, tu, R)
            if len(Q):
                q = next(iter(Q))
                if _covers_all([rows[q].dist], zidx, rho):
                    out = _certify(g, [*picks, q], k, rho)
                    if out:
                        return out
        return None

    return step(0, [], None) or ABOVE_R


# --------------------------------------------------------------------------
# depth-limited staged decider, (2 - 1/(2l), 1 - 1/(2l))
# --------------------------------------------------------------------------


def decide_kcenter_2l(
    g: Graph,
    k: int,
    l: int,
    R: int,
    cfg: ApproxConfig,
    schedule: DeltaSchedule | None = None,
) -> DecisionOutcome:
    """Staged decider stopped after l levels; tuples over all of V finish it.

    Fresh per-level samples of size ~n^(1-delta_i); windows of size
    ~n^(delta_i). alpha = floor(R/(2l)), covered radius 2R - alpha.
    """
    if g.weighted:
        raise ValueError("staged decider expects an unweighted graph")
    if not 1 <= l <= k:
        raise ValueError("need 1 <= l <= k")
    if R < 0:
        raise ValueError("R must be >= 0")
    if schedule is None:
        schedule = plan_deltas_tradeoff(k, l)
    if len(schedule.deltas) != l:
        raise ValueError(f"schedule has {len(schedule.deltas)} deltas, need {l}")
    deltas = [float(d) for d in schedule.deltas]
    n = g.n
    alpha = R // (2 * l)
    rho = 2 * R - alpha
    rng = random.Random(cfg.seed)
    rows = all_pairs(g)

    fresh = bool(cfg.fresh_samples) if cfg.fresh_samples is not None else True
    level_cache: dict[int, tuple[list[int], np.ndarray]] = {}

    def draw_sample(i: int) -> tuple[list[int], np.ndarray]:
        if not fresh and i in level_cache:
            return level_cache[i]
        S = sample_hitting_set(n, deltas[i], cfg, rng)
        s_list = list(S)
        got = (s_list, _min_over([rows[s].dist for s in s_list]))
        if not fresh:
            level_cache[i] = got
        return got

    vrows = rows  # candidate pool for the final tuple check

    def step(i: int, picks: list[int], cov: np.ndarray | None) -> DecisionOutcome | None:
        zidx = np.arange(n) if cov is None else np.flatnonzero(cov > rho)
        if zidx.size == 0:
            return _certify(g, picks, k, rho)
        if i == l:
            if k == l:
                return None  # partial set alone had to cover; it does not
            vmasks = uncovered_mask(vrows, zidx, rho)
            hit = exists_cover_tuple([vmasks] * (k - l), budget=cfg.budget)
            if hit is not None:
                out = _certify(g, [*picks, *hit], k, rho)
                if out:
                    return out
            return None

        s_list, d_to_S = draw_sample(i)
        region = (
            np.ones(n, dtype=bool) if cov is None else cov > R + (2 * i - 1) * alpha
        )
        if not region.any():
            return _certify(g, picks, k, rho)
        w_next = farthest_from_set(d_to_S, VertexSet.from_bool(region))
        W_next = closest_p_nodes(g, w_next, _window(n, deltas[i]))

        smasks = uncovered_mask([rows[s] for s in s_list], zidx, rho)
        hit = exists_cover_tuple([smasks] * (k - i), budget=cfg.budget)
        if hit is not None:
            out = _certify(g, [*picks, *hit], k, rho)
            if out:
                return out
        for s in W_next:
            new_cov = rows[s].dist if cov is None else np.minimum(cov, rows[s].dist)
            out = step(i + 1, [*picks, s], new_cov)
            if out:
                return out
        return None

    return step(0, [], None) or ABOVE_R


# --------------------------------------------------------------------------
# weighted 3-center decider, (7/4, M)
# --------------------------------------------------------------------------


def _weighted_exponents(n: int, m: int, omega: float) -> tuple[float, float, float]:
    """(delta, gamma, beta) sampling exponents from the edge-density mu.

    mu is clamped into the feasibility interval; any residual infeasibility
    falls back to the uniform (1/3, 1/3, 1/3) point (correctness holds for
    any valid exponents, only targeted asymptotics change).
    """
    uniform = (1 / 3, 1 / 3, 1 / 3)
    if n <= 2 or m < 1:
        return uniform
    w = omega
    mu = math.log(m) / math.log(n) - 1
    mu0 = w - 2 + 1 / (w + 1)
    mu1 = (3 * w * w - 3 * w - 1) / (4 * w + 1)
    mu = min(max(mu, mu0), mu1)
    beta = (2 * (w - 1) - 3 * mu) / (3 - w + 1 / w)
    gamma = 1 / 3 - beta * (w + 1) / (3 * w)
    delta = 1 / 3 - beta * (w - 2) / (3 * w)
    feasible = (
        beta >= 0
        and gamma >= 0
        and delta >= 0
        and gamma <= beta + 1e-12
        and gamma <= delta + 1e-12
        and beta + gamma + delta <= 1 + 1e-12
    )
    if not feasible or not all(0 < x < 1 for x in (delta, gamma, beta)):
        return uniform
    return delta, gamma, beta


def decide_3center_74_weighted(g: Graph, R: int, cfg: ApproxConfig) -> DecisionOutcome:
    """Probe radius R for 3 centers on integer-weighted graphs (weights <= M).

    Covered answers use radius floor(7R/4) + M. Thresholds are the quarter
    points of R; comparisons run on 4x-scaled integers so everything stays
    exact. Three sampled sets drive the three stages.
    """
    if R < 0:
        raise ValueError("R must be >= 0")
    n = g.n
    M = g.weight_bound
    rho = (7 * R) // 4 + M
    rng = random.Random(cfg.seed)
    delta, gamma, beta = _weighted_exponents(n, g.m, cfg.omega)

    S1 = sample_hitting_set(n, delta, cfg, rng)
    S2 = sample_hitting_set(n, gamma, cfg, rng)
    S3 = sample_hitting_set(n, beta, cfg, rng)
    row_cache: dict[int, DistRow] = {}

    def row(v: int) -> DistRow:
        if v not in row_cache:
            row_cache[v] = sssp(g, v)
        return row_cache[v]

    s1_rows = [row(s) for s in S1]
    s2_rows = [row(s) for s in S2]
    s3_rows = [row(s) for s in S3]
    zfull = np.arange(n)

    # Stage 1: a sampled triple covering everything within R + 3R/4.
    masks = uncovered_mask(s1_rows, zfull, (7 * R) // 4)
    hit = exists_cover_tuple([masks] * 3, budget=cfg.budget)
    if hit is not None:
        out = _certify(g, hit, 3, rho)
        if out:
            return out

    d_to_S1 = _min_over([r.dist for r in s1_rows])
    d_to_S2 = _min_over([r.dist for r in s2_rows])
    d_to_S3 = _min_over([r.dist for r in s3_rows])
    w1 = farthest_from_set(d_to_S1, VertexSet.full(n))

    for s1 in closest_p_nodes(g, w1, _window(n, delta)):
        row1 = row(s1).dist
        scaled1 = 4 * np.minimum(row1, UNREACHABLE // 8)
        far1 = scaled1 > 7 * R + 4 * M  # beyond R + 3R/4 + M of s1
        if not far1.any():
            out = _certify(g, [s1], 3, rho)
            if out:
                return out
            continue

        # Pair completion: every sampled vertex far from s1 must be within R
        # of one of the two remaining centers.
        far_t = [t for t in S2 if scaled1[t] > 5 * R + 4 * M]
        vmasks = uncovered_mask_transposed([row(t) for t in far_t], range(n), R)
        hit = exists_cover_tuple([vmasks, vmasks], budget=cfg.budget)
        if hit is not None:
            out = _certify(g, [s1, *hit], 3, rho)
            if out:
                return out

        w2 = farthest_from_set(d_to_S2, VertexSet.from_bool(far1))
        for s2 in closest_p_nodes(g, w2, _window(n, gamma)):
            row2 = row(s2).dist
            scaled2 = 4 * np.minimum(row2, UNREACHABLE // 8)
            far12 = (scaled1 > 6 * R) & (scaled2 > 6 * R)  # beyond 3R/2 of both
            if not far12.any():
                out = _certify(g, [s1, s2], 3, rho)
                if out:
                    return out
                continue
            w3 = farthest_from_set(d_to_S3, VertexSet.from_bool(far12))
            for s3 in closest_p_nodes(g, w3, _window(n, beta)):
                cov = _min_over([row1, row2, row(s3).dist])
                if int(cov.max()) <= rho:
                    out = _certify(g, [s1, s2, s3], 3, rho)
                    if out:
                        return out
            tu = [row(t) for t in S3 if far12[t]]
            Q = intersect_balls(n, tu, R)
            if len(Q):
                q = next(iter(Q))
                cov = _min_over([row1, row2, row(q).dist])
                if int(cov.max()) <= rho:
                    out = _certify(g, [s1, s2, q], 3, rho)
                    if out:
                        return out
    return ABOVE_R


# --------------------------------------------------------------------------
# binary-search wrapper
# --------------------------------------------------------------------------

Decider = Callable[..., DecisionOutcome]


def _decide_with_trials(
    g: Graph, decider: Decider, R: int, cfg: ApproxConfig
) -> DecisionOutcome:
    for trial in range(cfg.trials):
        out = decider(g, R=R, cfg=replace(cfg, seed=cfg.seed * 1009 + trial))
        if out.covered:
            return out
    return ABOVE_R


def search_upper_bound(g: Graph, k: int) -> int:
    """Binary-search ceiling: ecc(0) when finite, else n * M."""
    ecc = eccentricity(g, 0)
    return ecc if ecc < UNREACHABLE else g.n * g.weight_bound


def approximate_radius(
    g: Graph, k: int, decider: Decider, cfg: ApproxConfig
) -> CenterSolution:
    """Smallest probe R where the decider succeeds, as a verified solution.

    ``decider`` is a decision operation partially applied over everything but
    (g, R, cfg); it is invoked as decider(g, R=..., cfg=...). The returned
    radius is the exact covering radius of the returned centers, so it upper
    bounds the true k-radius unconditionally.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if k < num_components(g):
        raise InfeasibleError(f"{k} centers cannot cover {num_components(g)} components")
    if k >= g.n:
        full = VertexSet.full(g.n)
        return CenterSolution(full, 0)

    hi = search_upper_bound(g, k)
    best = _decide_with_trials(g, decider, hi, cfg)
    if not best.covered:
        raise DeciderFailedError(f"decision procedure failed at upper bound R={hi}")
    lo, hi = 0, hi - 1
    while lo <= hi:
        mid = (lo + hi) // 2
        out = _decide_with_trials(g, decider, mid, cfg)
        if out.covered:
            best = out
            hi = mid - 1
        else:
            lo = mid + 1
    assert best.centers is not None
    return CenterSolution(best.centers, cover_radius(g, best.centers))
