"""Second-moment quantities for the lifted hypergraph.

Delta sums E(zeta_H* zeta_J*) over ordered pairs of lifted edges whose
*colored* intersection is nonempty, self-pairs included.  Two independent
computation paths are provided: brute-force pair enumeration over the
materialized lift, and a combinatorial aggregation that groups pairs by
(base sizes, shared vertices, shared colors) and never materializes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .hypergraph import Hypergraph, HypergraphError
from .lifting import ChromaticityError, falling_factorial, lift_rainbow, lift_size
from .spread import is_kappa_spread, pad_to_uniform


@dataclass
class MomentReport:
    mu: float
    delta: float
    janson_bound: float
    chain_bounds: list[tuple[str, float]] = field(default_factory=list)
    checks: list[tuple[str, bool]] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "mu": self.mu,
            "delta": self.delta,
            "janson_bound": self.janson_bound,
            "chain_bounds": {k: v for k, v in self.chain_bounds},
            "checks": {k: v for k, v in self.checks},
        }


def janson_mu(h: Hypergraph, q: int, p: float) -> float:
    """mu = |H*| (1-p)^r for an r-uniform H."""
    if not h.is_uniform:
        raise HypergraphError("janson_mu requires an r-uniform hypergraph")
    if q < h.r_bound:
        raise ChromaticityError(f"q={q} < r={h.r_bound}")
    return lift_size(h, q) * (1.0 - p) ** h.r_bound


def _tau_extension_count(j: int, w: int, q: int, b: int) -> int:
    """Injective colorings of a size-b edge with j values pinned and w-j
    positions each forbidden one further (distinct) value.

    Inclusion-exclusion over which forbidden coincidences occur.
    """
    total = 0
    for i in range(w - j + 1):
        total += (-1) ** i * math.comb(w - j, i) * falling_factorial(q - j - i, b - j - i)
    return total


def _pair_group_term(a: int, b: int, w: int, q: int, x: float) -> float:
    """Sum over ordered coloring pairs of one base pair with |E|=a, |F|=b,
    w shared vertices: count pairs agreeing on exactly j >= 1 shared
    vertices, weighted x^(a+b-j)."""
    total = 0.0
    ffa = falling_factorial(q, a)
    for j in range(1, w + 1):
        count = ffa * math.comb(w, j) * _tau_extension_count(j, w, q, b)
        if count:
            total += count * x ** (a + b - j)
    return total


def _delta_aggregate(edges, q: int, x: float) -> float:
    """Aggregation path: group ordered base pairs by (|E|, |F|, shared)."""
    m = len(edges)
    n = 1 + max((e[-1] for e in edges), default=0)
    inc = np.zeros((m, n), dtype=np.int32)
    for i, e in enumerate(edges):
        inc[i, list(e)] = 1
    shared = inc @ inc.T  # w for every ordered base pair
    sizes = np.array([len(e) for e in edges], dtype=np.int64)
    a_mat = np.broadcast_to(sizes[:, None], (m, m))
    b_mat = np.broadcast_to(sizes[None, :], (m, m))
    mask = shared >= 1
    keys = np.stack([a_mat[mask], b_mat[mask], shared[mask]], axis=1)
    uniq, counts = np.unique(keys, axis=0, return_counts=True)
    terms = [
        cnt * _pair_group_term(int(a), int(b), int(w), q, x)
        for (a, b, w), cnt in zip(uniq, counts)
    ]
    return math.fsum(terms)


def _delta_pairs(h: Hypergraph, q: int, x: float, cap: int = 3000) -> float:
    """Brute-force path over the materialized lift; tiny instances only."""
    lifted = lift_rainbow(h, q)
    if len(lifted) > cap:
        raise RuntimeError(f"lift too large for pair enumeration ({len(lifted)} > {cap})")
    elems = [le.elements(h) for le in lifted]
    sizes = [len(e) for e in elems]
    weight_counts: dict[int, int] = {}
    for i in range(len(elems)):
        for j in range(len(elems)):
            t = len(elems[i] & elems[j])
            if t >= 1:
                expo = sizes[i] + sizes[j] - t
                weight_counts[expo] = weight_counts.get(expo, 0) + 1
    return math.fsum(cnt * x**expo for expo, cnt in weight_counts.items())


def janson_delta_exact(h: Hypergraph, q: int, p: float, method: str = "aggregate") -> float:
    """Delta: sum over colored-intersecting ordered pairs of lifted edges
    of (1-p)^(|H*|+|J*|-|H* cap J*|)."""
    if q < h.r_bound:
        raise ChromaticityError(f"q={q} < r={h.r_bound}")
    x = 1.0 - p
    if method == "aggregate":
        return _delta_aggregate(h.edges, q, x)
    if method == "pairs":
        return _delta_pairs(h, q, x)
    raise ValueError(f"unknown method {method!r}")


# Numeric hypotheses under which the final 4 mu^2 / kappa step of the
# bound chain is valid without asymptotic slack.
FINAL_GATE_MAX_P = 0.09
FINAL_GATE_MIN_KAPPA = 11.0


def janson_chain_check(h: Hypergraph, q: int, p: float, kappa: float) -> MomentReport:
    """Evaluate the Delta bound chain on a concrete instance.

    Requires H to be r-uniform and kappa-spread.  Delta_exact <= the
    intermediate bound holds unconditionally; the final 4 mu^2/kappa step
    is only asserted inside the numeric gate.
    """
    if not h.is_uniform:
        raise HypergraphError("janson_chain_check requires an r-uniform hypergraph")
    violation = is_kappa_spread(h, kappa)
    if violation is not None:
        raise ValueError(f"hypergraph is not {kappa}-spread (witness {violation})")
    r = h.r_bound
    mu = janson_mu(h, q, p)
    delta = janson_delta_exact(h, q, p, method="aggregate")
    if p < 1.0:
        intermediate = mu * mu * ((1.0 + math.e / (q * kappa * (1.0 - p))) ** r - 1.0)
    else:
        intermediate = 0.0
    final = 4.0 * mu * mu / kappa
    gate = q >= r and p <= FINAL_GATE_MAX_P and kappa >= FINAL_GATE_MIN_KAPPA
    bound = math.exp(-mu * mu / (8.0 * delta)) if delta > 0 else 0.0
    report = MomentReport(
        mu=mu,
        delta=delta,
        janson_bound=bound,
        chain_bounds=[
            ("delta_exact", delta),
            ("intermediate_bound", intermediate),
            ("four_mu_sq_over_kappa", final),
            ("final_gate_active", 1.0 if gate else 0.0),
        ],
        checks=[("delta_le_intermediate", delta <= intermediate * (1 + 1e-12))]
        + ([("delta_le_final", delta <= final * (1 + 1e-12))] if gate else []),
    )
    return report


def chebyshev_report(g: Hypergraph, q: int, alpha: float) -> MomentReport:
    """Endgame moments for the colored alpha-sample hitting the lift of G.

    G is padded to r-uniform internally.  mu = alpha^r (q)_r / q^r |G|;
    the variance-style sum uses the same pair aggregation as Delta with
    weight (alpha/q)^(2r - shared).
    """
    if not 0.0 < alpha < 1.0:
        raise ValueError("alpha must be in (0, 1)")
    if q < g.r_bound:
        raise ChromaticityError(f"q={q} < r={g.r_bound}")
    padded = pad_to_uniform(g)
    r = padded.r_bound
    mu = alpha**r * falling_factorial(q, r) / q**r * len(padded.edges)
    delta = _delta_aggregate(padded.edges, q, alpha / q)
    cheb = min(1.0, delta / (mu * mu)) if mu > 0 else 1.0
    report = MomentReport(
        mu=mu,
        delta=delta,
        janson_bound=math.exp(-mu * mu / (8.0 * delta)) if delta > 0 else 0.0,
        chain_bounds=[
            ("chebyshev_zero_bound", cheb),
        ],
    )
    return report


def chebyshev_miss_bound(r: int, alpha: float, kappa: float) -> float:
    """The closed-form miss bound 2 e r / (alpha kappa)."""
    return 2.0 * math.e * r / (alpha * kappa)


def exact_uncover_probability(g: Hypergraph, q: int, alpha: float) -> float:
    """Pr(colored alpha-sample contains no rainbow edge of G), by full
    enumeration over all (q+1)^N vertex states.  Feasible for N*q <= ~24."""
    from itertools import product

    from . import _kernels

    n = g.num_vertices
    if (q + 1) ** n > 5_000_000:
        raise RuntimeError("instance too large for exact enumeration")
    flat, offsets = _kernels.flatten_edges(g.edges)
    p_absent = 1.0 - alpha
    p_color = alpha / q
    total = 0.0
    wcolor = np.zeros(n, dtype=np.int64)
    for states in product(range(q + 1), repeat=n):
        prob = 1.0
        for v, s in enumerate(states):
            prob *= p_absent if s == 0 else p_color
            wcolor[v] = s
        if _kernels.first_rainbow_edge(flat, offsets, wcolor) < 0:
            total += prob
    return total


def binomial_median_check(n: int, p: float) -> bool:
    """Pr(Bin(n,p) <= np) >= 1/2, exact CDF; requires np integral."""
    np_val = n * p
    k = round(np_val)
    if abs(np_val - k) > 1e-9:
        raise ValueError(f"n*p = {np_val} is not an integer")
    cdf = math.fsum(math.comb(n, i) * p**i * (1.0 - p) ** (n - i) for i in range(k + 1))
    return cdf >= 0.5


def untouched_lift_count(h: Hypergraph, q: int, touched_vertices) -> int:
    """|{H* : base edge disjoint from the touched vertex set}|, exact."""
    touched = set(touched_vertices)
    return sum(falling_factorial(q, len(e)) for e in h.edges if touched.isdisjoint(e))
