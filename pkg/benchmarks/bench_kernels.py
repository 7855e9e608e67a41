"""Compare the compiled hit-time kernels against the pure-Python fallback.

Run from the repository root:

    python3 benchmarks/bench_kernels.py [--trials 2000]

Both implementations are loaded side by side (the env override only
affects which one the package exports), timed on the same precomputed
inputs, and checked for equal outputs.
"""

import argparse
import time

import numpy as np

from rainbowspread._kernels import IMPLEMENTATION, flatten_edges, pyfallback
from rainbowspread.generators import gen_hamilton, gen_perfect_matching
from rainbowspread.rng import RngStream

try:
    from rainbowspread._kernels import _core as compiled
except ImportError:
    compiled = None


def make_inputs(h, q, trials, seed):
    flat, offsets = flatten_edges(h.edges)
    n = h.num_vertices
    rng = RngStream(seed, 0)
    cases = []
    for _ in range(trials):
        perm = rng.permutation(n)
        pos = np.empty(n, dtype=np.int64)
        for i, v in enumerate(perm):
            pos[v] = i
        colors = np.array([rng.randint(1, q) for _ in range(n)], dtype=np.int64)
        cases.append((pos, colors))
    return flat, offsets, cases


def time_impl(impl, flat, offsets, cases):
    out = []
    t0 = time.perf_counter()
    for pos, colors in cases:
        out.append(impl.rainbow_hit_time(flat, offsets, pos, colors))
    elapsed = time.perf_counter() - t0
    return out, elapsed


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--trials", type=int, default=2000)
    args = ap.parse_args()

    print(f"package default implementation: {IMPLEMENTATION}")
    if compiled is None:
        print("compiled extension not available; timing the fallback only")

    workloads = [
        ("hamilton n=7 (360 edges of size 7)", gen_hamilton(7), 7),
        ("matchings n=8 k=2 (105 edges of size 4)", gen_perfect_matching(8, 2), 4),
    ]
    for label, h, q in workloads:
        flat, offsets, cases = make_inputs(h, q, args.trials, seed=4242)
        pure_out, pure_t = time_impl(pyfallback, flat, offsets, cases)
        line = f"{label}: pure {pure_t * 1e6 / args.trials:8.1f} us/trial"
        if compiled is not None:
            comp_out, comp_t = time_impl(compiled, flat, offsets, cases)
            assert comp_out == pure_out, "implementations disagree"
            line += (
                f", compiled {comp_t * 1e6 / args.trials:8.1f} us/trial"
                f"  ({pure_t / comp_t:5.1f}x)"
            )
        print(line)


if __name__ == "__main__":
    main()
