"""Monte Carlo estimation of rainbow-containment curves and thresholds.

Coupled sampling: each trial draws one uniform permutation of the ground
set and one color per vertex; X_m is the permutation prefix of length m.
The per-trial hit indicator is then literally monotone in m, and the
whole trial reduces to a single hit time computed by the kernel.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .hypergraph import Hypergraph
from .rng import RngStream
from .spread import max_spread

Z95 = 1.959963984540054


def wilson_interval(hits: int, n: int, z: float = Z95) -> tuple[float, float]:
    if n == 0:
        return 0.0, 1.0
    phat = hits / n
    denom = 1.0 + z * z / n
    center = (phat + z * z / (2 * n)) / denom
    hw = z * math.sqrt(phat * (1.0 - phat) / n + z * z / (4 * n * n)) / denom
    lo = 0.0 if hits == 0 else max(0.0, center - hw)  # center-hw cancels to ~1e-19
    hi = 1.0 if hits == n else min(1.0, center + hw)
    return lo, hi


class ThresholdUnreachable(RuntimeError):
    pass


@dataclass
class ThresholdEstimate:
    m_star: int
    target: float
    trials_per_point: int
    curve: list[tuple[int, int, int]] = field(default_factory=list)  # (m, hits, trials)
    ci_halfwidth: float = 0.0
    kappa: float = 0.0
    implied_C: float = 0.0  # m_star * kappa / (N log r)


class TrialPool:
    """Caches per-trial hit times; trial t uses stream_id = t."""

    def __init__(self, h: Hypergraph, q: int, rng: RngStream):
        self.h = h
        self.q = q
        self.rng = rng
        self.n = h.num_vertices
        self.flat, self.offsets = _kernels.flatten_edges(h.edges)
        self._colored: list[int] = []
        self._uncolored: list[int] = []

    def _run_trial(self, t: int) -> tuple[int, int]:
        s = self.rng.child(t)
        perm = s.permutation(self.n)
        pos = np.empty(self.n, dtype=np.int64)
        for i, v in enumerate(perm):
            pos[v] = i
        colors = np.array([s.randint(1, self.q) for _ in range(self.n)], dtype=np.int64)
        ct = _kernels.rainbow_hit_time(self.flat, self.offsets, pos, colors)
        ut = _kernels.cover_hit_time(self.flat, self.offsets, pos)
        return ct, ut

    def ensure(self, trials: int) -> None:
        while len(self._colored) < trials:
            ct, ut = self._run_trial(len(self._colored))
            self._colored.append(ct)
            self._uncolored.append(ut)

    def colored_times(self, trials: int) -> np.ndarray:
        self.ensure(trials)
        return np.asarray(self._colored[:trials])

    def uncolored_times(self, trials: int) -> np.ndarray:
        self.ensure(trials)
        return np.asarray(self._uncolored[:trials])


def hit_probability(h: Hypergraph, q: int, m: int, trials: int, rng: RngStream):
    """(p_hat, (ci_lo, ci_hi)) for a rainbow edge inside a colored m-sample."""
    if trials <= 0:
        raise ValueError("trials must be positive")
    if m > h.num_vertices:
        raise ValueError(f"m={m} exceeds ground set size {h.num_vertices}")
    pool = TrialPool(h, q, rng)
    hits = int(np.count_nonzero(pool.colored_times(trials) <= m))
    return hits / trials, wilson_interval(hits, trials)


def _decide_point(times, m: int, target: float, max_trials: int, block: int = 200):
    """Sequentially add trials until the Wilson CI excludes the target.

    Returns (at_least_target, hits, trials_used).
    """
    used = 0
    hits = 0
    while used < max_trials:
        step = min(block, max_trials - used)
        hits += int(np.count_nonzero(times[used : used + step] <= m))
        used += step
        lo, hi = wilson_interval(hits, used)
        if lo > target:
            return True, hits, used
        if hi < target:
            return False, hits, used
    return hits / used >= target, hits, used


def estimate_threshold(
    h: Hypergraph,
    q: int,
    target: float,
    trials: int,
    rng: RngStream,
    kappa: float | None = None,
) -> ThresholdEstimate:
    """Bisection for the smallest m with hit probability >= target.

    Deterministic given the seed; converges in at most ceil(log2(N-r))
    bisection levels because each level halves the integer interval.
    """
    r = h.r_bound
    n = h.num_vertices
    min_edge = min(len(e) for e in h.edges)
    if q < min_edge:
        raise ThresholdUnreachable(f"q={q} colors cannot make any edge rainbow")
    pool = TrialPool(h, q, rng)
    times = pool.colored_times(trials)
    curve: list[tuple[int, int, int]] = []
    # below the smallest edge size no sample can contain an edge
    assert int(np.count_nonzero(times <= min_edge - 1)) == 0

    hits_n = int(np.count_nonzero(times <= n))
    curve.append((n, hits_n, trials))
    if hits_n / trials < target:
        raise ThresholdUnreachable(
            f"hit rate at m=N is {hits_n / trials:.4f} < target {target}"
        )

    lo, hi = min_edge, n
    while lo < hi:
        mid = (lo + hi) // 2
        ge, hits, used = _decide_point(times, mid, target, trials)
        curve.append((mid, hits, used))
        if ge:
            hi = mid
        else:
            lo = mid + 1
    m_star = lo

    hits_star = int(np.count_nonzero(times <= m_star))
    ci_lo, ci_hi = wilson_interval(hits_star, trials)
    if kappa is None:
        kappa = max_spread(h).kappa
    return ThresholdEstimate(
        m_star=m_star,
        target=target,
        trials_per_point=trials,
        curve=curve,
        ci_halfwidth=(ci_hi - ci_lo) / 2.0,
        kappa=kappa,
        implied_C=m_star * kappa / (n * math.log(r)) if r > 1 else float("nan"),
    )


def sweep(h: Hypergraph, q: int, m_list, trials: int, rng: RngStream):
    """Curve rows (m, hits, trials, p_hat, ci_lo, ci_hi, uncolored_hits).

    The uncolored column ignores colors (plain containment), so each row
    compares rainbow containment against ordinary containment at that m.
    """
    if sorted(m_list) != list(m_list):
        raise ValueError("m_list must be sorted")
    pool = TrialPool(h, q, rng)
    colored = pool.colored_times(trials)
    uncolored = pool.uncolored_times(trials)
    rows = []
    for m in m_list:
        hits = int(np.count_nonzero(colored <= m))
        uhits = int(np.count_nonzero(uncolored <= m))
        lo, hi = wilson_interval(hits, trials)
        rows.append((m, hits, trials, hits / trials, lo, hi, uhits))
    return rows
