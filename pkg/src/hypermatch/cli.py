"""Command-line front end.

Exit codes: 0 success; 1 structured negative (a search that provably found
nothing); 2 input error; 3 search budget exhausted.  Every randomized
subcommand takes ``--seed`` and identical invocations produce byte-identical
output.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from . import __version__
from .absorbing import absorb_leftover, sample_absorbing_family
from .constructions import gen_extremal_h13, gen_hnm, sharpness_family
from .core import Hypergraph, InputError, Matching, PartiteStructure, is_valid_matching, is_valid_rainbow
from .exact import greedy_rainbow, has_perfect_matching, max_matching, rainbow_matching
from .fractional import SizeLimitError, fractional_matching, min_fractional_vertex_cover
from .hgio import ParseError, emit_family, emit_hypergraph, parse_family, parse_hypergraph
from .nibble import SamplingParams, almost_perfect, default_reserve
from .pipeline import PROFILES, solve, solve_family
from .scan import scan_threshold, to_csv

OK, NEGATIVE, INPUT_ERROR, BUDGET = 0, 1, 2, 3


def _frac(x: Fraction):
    return [x.numerator, x.denominator]


def _matching_json(m: Matching):
    out = {"edges": [list(e) for e in m.edges]}
    if m.colors is not None:
        out["colors"] = list(m.colors)
    return out


def _emit(args, payload: dict, text: str) -> None:
    body = json.dumps(payload, indent=2) if args.format == "json" else text
    if args.out:
        with open(args.out, "w") as f:
            f.write(body if body.endswith("\n") else body + "\n")
    else:
        print(body)


def _load_graph(path):
    h, ps = parse_hypergraph(path)
    if ps is None and h.k >= 2 and h.n_vertices % h.k == 0:
        ps = PartiteStructure(h.n_vertices // h.k)
    return h, ps


def cmd_gen(args) -> int:
    if args.construction == "hnm":
        if args.m is None:
            raise InputError("--m is required for the hnm construction")
        h = gen_hnm(args.n, args.m)
        emit_hypergraph(args.out, h)
    elif args.construction == "h13":
        rng = random.Random(f"{args.w_seed}/gen-w")
        q = args.n // 3
        w = sorted(rng.sample(range(q, q + args.n), q))
        h = gen_extremal_h13(args.n, tuple(w))
        emit_hypergraph(args.out, h, PartiteStructure(q))
    else:
        emit_family(args.out, sharpness_family(args.n))
    print(f"wrote {args.out}")
    return OK


def cmd_solve(args) -> int:
    h, _ = _load_graph(args.input)
    if args.mode == "max":
        res = max_matching(h, budget=args.budget)
        payload = {
            "mode": "max",
            "size": res.size,
            "optimal": res.optimal,
            "matching": _matching_json(res.matching),
        }
        _emit(args, payload, f"nu = {res.size} ({'optimal' if res.optimal else 'budget exhausted'})")
        return OK if res.optimal else BUDGET
    res = has_perfect_matching(h, budget=args.budget)
    payload = {"mode": "perfect", "status": res.status}
    if res.matching:
        payload["matching"] = _matching_json(res.matching)
    _emit(args, payload, f"perfect matching: {res.status}")
    return {"perfect": OK, "none": NEGATIVE, "unknown": BUDGET}[res.status]


def cmd_rainbow(args) -> int:
    family = parse_family(args.input)
    if args.algo == "exact":
        res = rainbow_matching(family, budget=args.budget)
    elif args.algo == "greedy":
        g = greedy_rainbow(family)
        res = g
        if g.status == "found":
            payload = {"algo": "greedy", "status": "found", "matching": _matching_json(g.matching),
                       "preconditions_ok": g.preconditions_ok, "violations": list(g.violations)}
            _emit(args, payload, f"rainbow matching found (greedy); preconditions ok: {g.preconditions_ok}")
            return OK
        payload = {"algo": "greedy", "status": g.status, "violations": list(g.violations)}
        _emit(args, payload, "greedy failed; rerun with --algo exact")
        return NEGATIVE
    else:
        res, _outcome = solve_family(family, PROFILES[args.profile])
    payload = {"algo": args.algo, "status": res.status}
    if res.matching:
        payload["matching"] = _matching_json(res.matching)
    _emit(args, payload, f"rainbow matching: {res.status}")
    return {"found": OK, "none": NEGATIVE, "unknown": BUDGET}[res.status]


def cmd_frac(args) -> int:
    h, _ = _load_graph(args.input)
    payload: dict = {"n": h.n_vertices, "k": h.k, "edges": h.n_edges()}
    if args.emit in ("primal", "both"):
        sol = fractional_matching(h)
        payload["primal"] = {
            "value": _frac(sol.primal_value),
            "perfect": sol.perfect,
            "edge_weights": [[list(e), _frac(w)] for e, w in sol.edge_weights.items() if w],
        }
    if args.emit in ("dual", "both"):
        cov = min_fractional_vertex_cover(h)
        payload["dual"] = {
            "value": _frac(cov.dual_value),
            "vertex_weights": [_frac(w) for w in cov.vertex_weights],
        }
    text_val = payload.get("primal", payload.get("dual"))["value"]
    _emit(args, payload, f"fractional value = {Fraction(*text_val)}")
    return OK


def cmd_absorb(args) -> int:
    h, ps = _load_graph(args.input)
    if ps is None:
        raise InputError("absorb needs a partite header (k n q) in the input file")
    res = sample_absorbing_family(h, ps, Fraction(args.rho), seed=args.seed)
    payload = {
        "family_size": len(res.family.sets),
        "sets": [list(s) for s in res.family.sets],
        "matching": _matching_json(res.family.absorbing_matching),
        "stats": {
            "selected": res.stats.n_selected,
            "after_disjoint": res.stats.n_after_disjoint,
            "after_filter": res.stats.n_after_filter,
            "intersecting_pairs": res.stats.intersecting_pairs,
        },
    }
    if args.leftover:
        s = tuple(int(x) for x in args.leftover.split(","))
        out = absorb_leftover(h, ps, res.family, s)
        payload["absorb"] = {"status": out.status}
        if out.matching:
            payload["absorb"]["matching"] = _matching_json(out.matching)
        _emit(args, payload, f"family size {len(res.family.sets)}; absorption: {out.status}")
        return OK if out.status == "absorbed" else NEGATIVE
    _emit(args, payload, f"family size {len(res.family.sets)}")
    return OK if res.family.sets else NEGATIVE


def cmd_nibble(args) -> int:
    h, ps = _load_graph(args.input)
    if ps is None:
        raise InputError("nibble needs a partite header (k n q) in the input file")
    params = SamplingParams(
        vertex_prob=Fraction(args.p),
        rounds=args.rounds,
        reserve=default_reserve(ps, h.n_vertices) if args.reserve is None
        else tuple(int(x) for x in args.reserve.split(",")),
        seed=args.seed,
    )
    res = almost_perfect(h, ps, params, Fraction(args.sigma))
    payload = {
        "matching_size": len(res.matching.edges),
        "uncovered_fraction": _frac(res.uncovered_fraction),
        "dropped_rounds": res.dropped_rounds,
        "delta2": res.sparse_stats.delta2,
        "matching": _matching_json(res.matching),
    }
    if args.stats:
        with open(args.stats, "w") as f:
            f.write("round,size\n")
            for i, d in enumerate(res.sparse_stats.degrees):
                f.write(f"{i},{d}\n")
    _emit(args, payload, f"matching of {len(res.matching.edges)} edges; uncovered fraction {res.uncovered_fraction}")
    return OK


def cmd_pm(args) -> int:
    h, ps = _load_graph(args.input)
    if ps is None:
        raise InputError("pm needs a partite header (k n q) in the input file")
    config = PROFILES[args.profile]
    if args.seed:
        from dataclasses import replace

        config = replace(config, seed=args.seed)
    outcome = solve(h, ps, config)
    payload = {
        "status": outcome.status,
        "route": outcome.route,
        "profile": config.name,
        "seed": config.seed,
        "closeness_missing": outcome.closeness.missing_edges,
        "diagnostics": list(outcome.diagnostics),
    }
    if outcome.matching:
        payload["matching"] = _matching_json(outcome.matching)
    _emit(args, payload, f"{outcome.status} via {outcome.route}")
    return {"perfect": OK, "none": NEGATIVE, "unknown": BUDGET}[outcome.status]


def cmd_scan(args) -> int:
    rows = scan_threshold(
        args.n,
        args.t if args.t else args.n // 3,
        seed=args.seed,
        trials=args.trials,
        threads=args.threads,
        measure_time=args.measure_time,
    )
    csv = to_csv(rows)
    if args.out:
        with open(args.out, "w") as f:
            f.write(csv)
        print(f"wrote {args.out}")
    else:
        print(csv, end="")
    return OK


def cmd_verify(args) -> int:
    if args.input.endswith(".fam"):
        family = parse_family(args.input)
        print(f"family ok: k={family.k} n={family.n_vertices} t={family.t}")
        if args.matching:
            data = json.load(open(args.matching))
            m = Matching(tuple(map(tuple, data["edges"])), colors=tuple(data["colors"]))
            ok = is_valid_rainbow(family, m)
            print(f"rainbow matching valid: {ok}")
            return OK if ok else NEGATIVE
        return OK
    h, ps = parse_hypergraph(args.input)
    degree_sum = sum(len(a) for a in h.adjacency)
    if degree_sum != h.k * h.n_edges():
        print("degree-sum identity violated")
        return NEGATIVE
    print(f"hypergraph ok: k={h.k} n={h.n_vertices} edges={h.n_edges()}")
    if args.matching:
        data = json.load(open(args.matching))
        m = Matching(tuple(map(tuple, data["edges"])), colors=tuple(data.get("colors")) if data.get("colors") else None)
        ok = is_valid_matching(h, m)
        print(f"matching valid: {ok} (covers {len(m.vertices())}/{h.n_vertices})")
        return OK if ok else NEGATIVE
    return OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hypermatch", description=__doc__)
    parser.add_argument("--version", action="version", version=f"hypermatch {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out", default=None)
        p.add_argument("--format", choices=("text", "json", "csv"), default="text")
        p.add_argument("--budget", type=int, default=None)

    p = sub.add_parser("gen", help="generate a named construction")
    common(p)
    p.add_argument("--construction", choices=("hnm", "h13", "sharpness"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--w-seed", type=int, default=0)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("solve", help="exact matching solver")
    common(p)
    p.add_argument("--input", required=True)
    p.add_argument("--mode", choices=("max", "perfect"), default="max")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("rainbow", help="rainbow matching for a family")
    common(p)
    p.add_argument("--input", required=True)
    p.add_argument("--algo", choices=("exact", "greedy", "pipeline"), default="exact")
    p.add_argument("--profile", choices=tuple(PROFILES), default="default")
    p.set_defaults(func=cmd_rainbow)

    p = sub.add_parser("frac", help="fractional matching / vertex cover LP")
    common(p)
    p.add_argument("--input", required=True)
    p.add_argument("--emit", choices=("primal", "dual", "both"), default="both")
    p.set_defaults(func=cmd_frac)

    p = sub.add_parser("absorb", help="sample an absorbing family")
    common(p)
    p.add_argument("--input", required=True)
    p.add_argument("--rho", default="0.1")
    p.add_argument("--leftover", default=None, help="comma-separated vertices to absorb")
    p.set_defaults(func=cmd_absorb)

    p = sub.add_parser("nibble", help="almost-perfect matching via sampling")
    common(p)
    p.add_argument("--input", required=True)
    p.add_argument("--p", default="0.3", help="vertex sampling probability")
    p.add_argument("--rounds", type=int, default=50)
    p.add_argument("--sigma", default="0.1")
    p.add_argument("--reserve", default=None, help="comma-separated reserve vertices")
    p.add_argument("--stats", default=None, help="write per-vertex degree CSV here")
    p.set_defaults(func=cmd_nibble)

    p = sub.add_parser("pm", help="full perfect-matching pipeline")
    common(p)
    p.add_argument("--input", required=True)
    p.add_argument("--profile", choices=tuple(PROFILES), default="default")
    p.set_defaults(func=cmd_pm)

    p = sub.add_parser("scan", help="degree-threshold scan table")
    common(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--t", type=int, default=None)
    p.add_argument("--trials", type=int, default=5)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--measure-time", action="store_true",
                   help="fill the millis column (breaks byte-for-byte reproducibility)")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("verify", help="validate a file and optionally a matching")
    common(p)
    p.add_argument("--input", required=True)
    p.add_argument("--matching", default=None, help="JSON matching to check")
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, ParseError, SizeLimitError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR


if __name__ == "__main__":
    raise SystemExit(main())
