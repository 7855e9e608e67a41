"""Unified command line: spread, generate, fragment, threshold, moments, sample.

Exit codes: 0 success, 1 usage/parse error, 2 requested check failed (a
witness is printed), 3 internal cross-check mismatch.  Every emitted file
starts with a header record carrying the tool version, the full config
echo and the master seed, so runs are reproducible from their outputs.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .fragmentation import run_fragmentation
from .generators import GeneratorError, parse_spec
from .hypergraph import HypergraphError, read_hypergraph, write_hypergraph
from .moments import chebyshev_report, janson_chain_check
from .rng import RngStream
from .sampling import (
    ColoredSet,
    sample_binomial_subset,
    sample_colored_m,
    sample_colored_p,
    sample_lifted_binomial,
    sample_uniform_subset,
)
from .spread import EnumerationCapExceeded, is_kappa_spread, max_spread
from .threshold import ThresholdUnreachable, estimate_threshold, sweep

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_CHECK_FAILED = 2
EXIT_MISMATCH = 3


def _header(args, seed: int) -> str:
    # the output path is not part of the run semantics, so the same run
    # written to two places produces identical bytes
    config = {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "out")}
    return json.dumps(
        {"tool": "rainbowspread", "version": __version__, "seed": seed, "config": config},
        sort_keys=True,
    )


def _resolve_seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("RAINBOWSPREAD_SEED")
    return int(env) if env else 0


def _emit(path: str | None, text: str) -> None:
    if path:
        with open(path, "w") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def cmd_spread(args) -> int:
    h = read_hypergraph(args.hypergraph)
    cert = max_spread(h)
    print(f"kappa = {cert.kappa:.12g}")
    print(f"witness = {list(cert.witness)}")
    print(f"containment_count = {cert.containment_count}")
    if args.check_kappa is not None:
        witness = is_kappa_spread(h, args.check_kappa)
        if witness is not None:
            print(f"NOT {args.check_kappa}-spread; violating S = {list(witness)}")
            return EXIT_CHECK_FAILED
        print(f"{args.check_kappa}-spread: pass")
    return EXIT_OK


def cmd_generate(args) -> int:
    spec = parse_spec(args.spec)
    h = spec.generate()
    expected = spec.count_formula()
    print(f"generated edges = {len(h.edges)}")
    print(f"count formula   = {expected}")
    if len(h.edges) != expected:
        print("MISMATCH between enumeration and closed form", file=sys.stderr)
        return EXIT_MISMATCH
    if args.out:
        write_hypergraph(h, args.out)
        print(f"wrote {args.out}")
    return EXIT_OK


def cmd_moments(args) -> int:
    h = read_hypergraph(args.hypergraph)
    seed = _resolve_seed(args)
    if args.janson:
        kappa = args.kappa if args.kappa is not None else max_spread(h).kappa
        report = janson_chain_check(h, args.q, args.p, kappa)
    else:
        report = chebyshev_report(h, args.q, args.alpha)
    payload = _header(args, seed) + "\n" + json.dumps(report.as_dict(), sort_keys=True) + "\n"
    _emit(args.out, payload)
    if args.human:
        print(f"mu            = {report.mu:.12g}")
        print(f"delta         = {report.delta:.12g}")
        print(f"janson_bound  = {report.janson_bound:.12g}")
        for label, value in report.chain_bounds:
            print(f"{label:28s} {value:.12g}")
        for label, ok in report.checks:
            print(f"{label:28s} {'pass' if ok else 'FAIL'}")
    if any(not ok for _, ok in report.checks):
        return EXIT_CHECK_FAILED
    return EXIT_OK


def cmd_threshold(args) -> int:
    h = read_hypergraph(args.hypergraph)
    seed = _resolve_seed(args)
    rng = RngStream(seed)
    lines = [_header(args, seed)]
    if args.m_list:
        m_list = [int(tok) for tok in args.m_list.split(",")]
        rows = sweep(h, args.q, m_list, args.trials, rng)
        lines.append("m,hits,trials,p_hat,ci_lo,ci_hi,uncolored_hits")
        for m, hits, trials, p_hat, lo, hi, uhits in rows:
            lines.append(f"{m},{hits},{trials},{p_hat:.6f},{lo:.6f},{hi:.6f},{uhits}")
    est = estimate_threshold(h, args.q, args.target, args.trials, rng)
    lines.append(
        json.dumps(
            {
                "m_star": est.m_star,
                "target": est.target,
                "trials": est.trials_per_point,
                "ci_halfwidth": round(est.ci_halfwidth, 9),
                "kappa": round(est.kappa, 12),
                "implied_C": round(est.implied_C, 9),
            },
            sort_keys=True,
        )
    )
    _emit(args.out, "\n".join(lines) + "\n")
    print(f"m_star = {est.m_star} (target {est.target}), implied C = {est.implied_C:.4f}")
    return EXIT_OK


def cmd_fragment(args) -> int:
    h = read_hypergraph(args.hypergraph)
    seed = _resolve_seed(args)
    first, _, last = args.seeds.partition(":")
    stream_ids = range(int(first), int(last) + 1) if last else [int(first)]
    kappa = max_spread(h).kappa
    lines = [_header(args, seed)]
    for sid in stream_ids:
        trace = run_fragmentation(
            h, args.q, args.gamma, args.C, RngStream(seed, sid), kappa=kappa
        )
        lines.append(trace.serialize().rstrip("\n"))
    _emit(args.out, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_sample(args) -> int:
    seed = _resolve_seed(args)
    rng = RngStream(seed, args.stream)
    if args.model == "uniform-m":
        body = "".join(f"{v}\n" for v in sample_uniform_subset(args.n, args.m, rng))
    elif args.model == "binomial-p":
        body = "".join(f"{v}\n" for v in sample_binomial_subset(args.n, args.p, rng))
    elif args.model == "colored-m":
        body = sample_colored_m(args.n, args.m, args.q, rng).serialize()
    elif args.model == "colored-p":
        body = sample_colored_p(args.n, args.p, args.q, rng).serialize()
    else:  # lifted-p
        body = sample_lifted_binomial(args.n, args.q, args.p, rng).serialize()
    _emit(args.out, _header(args, seed) + "\n" + body)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="rainbowspread", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("spread", help="exact spread certificate for a hypergraph file")
    sp.add_argument("hypergraph")
    sp.add_argument("--check-kappa", type=float, default=None)
    sp.set_defaults(func=cmd_spread)

    gp = sub.add_parser("generate", help="generate an application hypergraph")
    gp.add_argument("spec", help="e.g. hamilton:n=6 | pm:n=6,k=3 | loose:n=6,k=3 | tree:path,n=6 | cactus:loosepath,n=7,k=3")
    gp.add_argument("-o", "--out", default=None)
    gp.set_defaults(func=cmd_generate)

    mp = sub.add_parser("moments", help="Janson chain or Chebyshev endgame report")
    mp.add_argument("hypergraph")
    group = mp.add_mutually_exclusive_group(required=True)
    group.add_argument("--janson", action="store_true")
    group.add_argument("--chebyshev", action="store_true")
    mp.add_argument("--q", type=int, required=True)
    mp.add_argument("--p", type=float, default=0.1)
    mp.add_argument("--alpha", type=float, default=0.5)
    mp.add_argument("--kappa", type=float, default=None)
    mp.add_argument("--seed", type=int, default=None)
    mp.add_argument("--out", default=None)
    mp.add_argument("--human", action="store_true")
    mp.set_defaults(func=cmd_moments)

    tp = sub.add_parser("threshold", help="Monte Carlo threshold estimate")
    tp.add_argument("--hypergraph", required=True)
    tp.add_argument("--q", type=int, required=True)
    tp.add_argument("--target", type=float, default=0.5)
    tp.add_argument("--trials", type=int, default=2000)
    tp.add_argument("--m-list", default=None, help="comma-separated m values for a sweep")
    tp.add_argument("--seed", type=int, default=None)
    tp.add_argument("--out", default=None)
    tp.set_defaults(func=cmd_threshold)

    fp = sub.add_parser("fragment", help="run the fragmentation process")
    fp.add_argument("--hypergraph", required=True)
    fp.add_argument("--q", type=int, required=True)
    fp.add_argument("--gamma", type=float, default=0.1)
    fp.add_argument("--C", type=float, default=1.0)
    fp.add_argument("--seeds", default="0", help="stream id or range a:b")
    fp.add_argument("--seed", type=int, default=None)
    fp.add_argument("--out", default=None)
    fp.set_defaults(func=cmd_fragment)

    xp = sub.add_parser("sample", help="draw from one of the random models")
    xp.add_argument("--model", required=True,
                    choices=["uniform-m", "binomial-p", "colored-m", "colored-p", "lifted-p"])
    xp.add_argument("--n", type=int, required=True)
    xp.add_argument("--m", type=int, default=0)
    xp.add_argument("--p", type=float, default=0.0)
    xp.add_argument("--q", type=int, default=1)
    xp.add_argument("--stream", type=int, default=0)
    xp.add_argument("--seed", type=int, default=None)
    xp.add_argument("--out", default=None)
    xp.set_defaults(func=cmd_sample)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (HypergraphError, GeneratorError, ThresholdUnreachable,
            EnumerationCapExceeded, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
