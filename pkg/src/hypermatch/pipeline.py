"""Top-level perfect-matching pipeline: classify an instance as extremal or
not, then run either the staged template construction or the
absorb / almost-perfect / absorb route, with exact-search fallbacks.

The pipeline is a heuristic embodiment whose correctness oracle is the exact
solver: every success is re-verified before being returned, and instances
small enough for exhaustive search fall back to it on any stage failure, so
a "none" verdict is always exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction

from .absorbing import absorb_leftover, sample_absorbing_family
from .constructions import (
    ClosenessReport,
    ExtremalTemplate,
    closeness_to_extremal,
)
from .core import (
    Family,
    Hypergraph,
    InputError,
    Matching,
    PartiteStructure,
    VertexSet,
    as_vertex_set,
    is_balanced_partite,
    is_valid_matching,
    mask_of,
)
from .exact import (
    cover_matching,
    greedy_rainbow,
    has_perfect_matching,
    max_matching,
    rainbow_matching,
)
from .nibble import SamplingParams, almost_perfect, default_reserve


def _sqrt_fraction(x: Fraction) -> Fraction:
    """Exact square root when x is a perfect square of rationals, else a
    close rational approximation (only used as a goodness threshold)."""
    num, den = x.numerator, x.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return Fraction(round(math.sqrt(float(x)) * 10**6), 10**6)


@dataclass(frozen=True)
class PipelineConfig:
    """Constant profile for the solver; the paper only constrains the order
    of these constants, so desk-scale defaults are chosen to keep every
    stage nondegenerate."""

    eps: Fraction = Fraction(1, 100)
    rho: Fraction = Fraction(5, 100)
    rho_prime: Fraction = Fraction(5, 1000)
    sigma: Fraction = Fraction(2, 100)
    eta: Fraction = Fraction(1, 100)
    alpha: Fraction | None = None
    exact_limit: int = 15
    budget: int | None = 2_000_000
    seed: int = 0
    sampling: SamplingParams | None = None
    name: str = "default"

    def goodness_alpha(self) -> Fraction:
        return self.alpha if self.alpha is not None else _sqrt_fraction(self.eps)


PROFILES = {
    "default": PipelineConfig(),
    "aggressive": PipelineConfig(
        eps=Fraction(4, 100),
        rho=Fraction(2, 10),
        rho_prime=Fraction(2, 100),
        sigma=Fraction(1, 10),
        name="aggressive",
    ),
}


def greedy_pattern_matching(
    h: Hypergraph,
    ps: PartiteStructure,
    template: ExtremalTemplate,
    forbidden: int = 0,
) -> Matching:
    """Maximal matching using only edges with one Q-, one W-, two U-vertices.

    Greedy in lexicographic edge order; maximality over the pattern edges is
    re-verified before returning.  ``forbidden`` masks vertices that must not
    be touched.
    """
    w = set(template.w_set)
    used = forbidden
    chosen = []
    for e, m in zip(h.edges, h.edge_masks):
        if m & used:
            continue
        in_w = sum(1 for v in e if v in w)
        if in_w == 1:
            chosen.append(e)
            used |= m
    for e, m in zip(h.edges, h.edge_masks):
        if m & used == 0 and sum(1 for v in e if v in w) == 1:
            raise AssertionError("greedy pattern matching is not maximal")
    return Matching(tuple(chosen))


@dataclass(frozen=True)
class ExtremalPathResult:
    status: str  # "perfect" | "extremal-path-failed"
    matching: Matching | None
    failed_stage: str | None
    stage_sizes: dict

    def __bool__(self) -> bool:
        return self.status == "perfect"


def _greedy_cover_stage(h, pool_idx, targets, used_mask):
    """Greedily cover each target with the first disjoint pool edge through it."""
    chosen = []
    for x in sorted(targets):
        if used_mask >> x & 1:
            continue
        pick = None
        for i in pool_idx:
            if h.edge_masks[i] & used_mask == 0 and x in h.edges[i]:
                pick = i
                break
        if pick is None:
            return None, used_mask
        chosen.append(h.edges[pick])
        used_mask |= h.edge_masks[pick]
    return chosen, used_mask


def extremal_path(
    h: Hypergraph,
    ps: PartiteStructure,
    report: ClosenessReport,
    config: PipelineConfig = PROFILES["default"],
) -> ExtremalPathResult:
    """Staged construction for instances close to the extremal template.

    Stage 1 covers the bad Q-vertices by a rainbow matching over their link
    graphs away from a protected slice W' of good W-vertices; stages 2 and 3
    cover the remaining bad vertices with edges using exactly one / zero W'
    vertices; stage 4 rebalances with two-W' edges; stage 5 finishes the
    all-good remainder with the pattern greedy.  Every stage falls back to
    exact search before reporting failure.
    """
    template = report.template
    n = template.n
    alpha = config.goodness_alpha()
    bad = set(report.bad_vertices(alpha))
    w_all = list(template.w_set)
    q_all = list(range(template.q_size))
    stage_sizes: dict = {"bad": len(bad)}

    def fail(stage: str) -> ExtremalPathResult:
        return ExtremalPathResult("extremal-path-failed", None, stage, stage_sizes)

    q_bad = [v for v in q_all if v in bad]
    w_bad = [v for v in w_all if v in bad]
    k0 = len(q_bad) + len(w_bad)
    w_good = [v for v in w_all if v not in bad]
    w_prime_size = n // 3 - k0
    if w_prime_size < 0 or w_prime_size > len(w_good):
        return fail("w-prime-sizing")
    w_prime = w_good[:w_prime_size]
    w_prime_set = set(w_prime)

    # stage 1: rainbow matching over link graphs covers bad Q plus padding
    m0: list[tuple[int, ...]] = []
    used = 0
    if k0 > 0:
        colors = q_bad + [v for v in q_all if v not in bad][: k0 - len(q_bad)]
        if len(colors) < k0:
            return fail("cover-bad-q")
        links = tuple(h.link(v).remove_vertices(w_prime) for v in colors)
        family = Family(h.n_vertices, links)
        rres = greedy_rainbow(family)
        if rres.status != "found":
            rres = rainbow_matching(family, budget=config.budget)
        if rres.status != "found":
            return fail("cover-bad-q")
        triples = {c: e for e, c in zip(rres.matching.edges, rres.matching.colors)}
        m0 = [tuple(sorted(triples[i] + (colors[i],))) for i in range(k0)]
        used = mask_of(v for e in m0 for v in e)
    stage_sizes["m0"] = len(m0)

    # stages 2+3: split the remaining bad vertices by their one-W' edge supply
    bad_rest = sorted(v for v in bad if not used >> v & 1)
    eta_threshold = config.eta * n**3
    h1_idx = [i for i, m in enumerate(h.edge_masks) if m & used == 0]

    def w_prime_count(e) -> int:
        return sum(1 for v in e if v in w_prime_set)

    b1, b2 = [], []
    for x in bad_rest:
        supply = sum(
            1 for i in h1_idx if x in h.edges[i] and w_prime_count(h.edges[i]) == 1
        )
        (b1 if supply >= eta_threshold else b2).append(x)
    stage_sizes["b1"], stage_sizes["b2"] = len(b1), len(b2)

    pool1 = [i for i in h1_idx if w_prime_count(h.edges[i]) == 1]
    m1, used1 = _greedy_cover_stage(h, pool1, b1, used)
    if m1 is None:
        res = cover_matching(h, b1, pool=pool1, budget=config.budget)
        if res.status != "perfect":
            return fail("cover-b1")
        m1, used1 = list(res.matching.edges), used | res.matching.vertex_mask()
    stage_sizes["m1"] = len(m1)

    pool2 = [
        i
        for i in h1_idx
        if h.edge_masks[i] & used1 == 0 and w_prime_count(h.edges[i]) == 0
    ]
    m2, used2 = _greedy_cover_stage(h, pool2, [x for x in b2 if not used1 >> x & 1], used1)
    if m2 is None:
        res = cover_matching(h, [x for x in b2 if not used1 >> x & 1], pool=pool2, budget=config.budget)
        if res.status != "perfect":
            return fail("cover-b2")
        m2, used2 = list(res.matching.edges), used1 | res.matching.vertex_mask()
    stage_sizes["m2"] = len(m2)

    # stage 4: one two-W' edge per stage-3 edge restores the W/U balance
    m2p: list[tuple[int, ...]] = []
    used3 = used2
    for _ in range(len(m2)):
        pick = None
        for i, m in enumerate(h.edge_masks):
            if m & used3 == 0 and w_prime_count(h.edges[i]) == 2:
                pick = i
                break
        if pick is None:
            break
        m2p.append(h.edges[pick])
        used3 |= h.edge_masks[pick]
    if len(m2p) < len(m2):
        pool4 = [i for i, m in enumerate(h.edge_masks) if m & used2 == 0 and w_prime_count(h.edges[i]) == 2]
        sub = Hypergraph(h.k, h.n_vertices, [h.edges[i] for i in pool4])
        mm = max_matching(sub, budget=config.budget)
        if mm.size < len(m2):
            return fail("rebalance-w")
        m2p = list(mm.matching.edges[: len(m2)])
        used3 = used2 | mask_of(v for e in m2p for v in e)
    stage_sizes["m2p"] = len(m2p)

    # stage 5: pattern greedy on the all-good remainder, exact fallback
    remaining = [v for v in range(h.n_vertices) if not used3 >> v & 1]
    if remaining:
        pattern = greedy_pattern_matching(h, ps, template, forbidden=used3)
        used4 = used3 | pattern.vertex_mask()
        final = list(pattern.edges)
        if used4 != (1 << h.n_vertices) - 1:
            res = cover_matching(
                h,
                [v for v in range(h.n_vertices) if not used3 >> v & 1],
                pool=[i for i, m in enumerate(h.edge_masks) if m & used3 == 0],
                budget=config.budget,
            )
            if res.status != "perfect":
                return fail("final-pattern")
            final = list(res.matching.edges)
    else:
        final = []
    stage_sizes["final"] = len(final)

    matching = Matching(tuple(m0) + tuple(m1) + tuple(m2) + tuple(m2p) + tuple(final))
    if not is_valid_matching(h, matching) or len(matching.vertices()) != h.n_vertices:
        return fail("verification")
    return ExtremalPathResult("perfect", matching, None, stage_sizes)


@dataclass(frozen=True)
class PipelineOutcome:
    status: str  # "perfect" | "none" | "unknown"
    matching: Matching | None
    route: str  # "extremal" | "absorb" | "exact-fallback"
    closeness: ClosenessReport
    diagnostics: tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.status == "perfect"


def solve(
    h: Hypergraph,
    ps: PartiteStructure,
    config: PipelineConfig = PROFILES["default"],
) -> PipelineOutcome:
    """Dispatch on closeness to the extremal template and find a perfect
    matching, falling back to exhaustive search at desk scale.

    Never returns an unverified matching: successes pass the validity and
    coverage checks, and "none" is only reported after an exact proof.
    """
    if not is_balanced_partite(h, ps):
        raise InputError("solve expects a balanced (1,3)-partite graph")
    n = ps.p_size(h.n_vertices)
    diagnostics: list[str] = []
    report = closeness_to_extremal(h, seed=config.seed)

    def verified(m: Matching | None) -> bool:
        return (
            m is not None
            and is_valid_matching(h, m)
            and len(m.vertices()) == h.n_vertices
        )

    if report.epsilon < config.eps:
        res = extremal_path(h, ps, report, config)
        if res.status == "perfect" and verified(res.matching):
            return PipelineOutcome("perfect", res.matching, "extremal", report)
        diagnostics.append(f"extremal path failed at {res.failed_stage}")
    else:
        fam_res = sample_absorbing_family(h, ps, config.rho, seed=config.seed)
        diagnostics.append(f"absorbing family size {len(fam_res.family.sets)}")
        fam = fam_res.family
        fam_mask = mask_of(fam.vertices())
        h_rest = h.remove_vertices(fam.vertices())
        params = config.sampling or SamplingParams(
            vertex_prob=Fraction(1, max(1, round(n**0.9))),
            rounds=max(1, round(n**1.1)),
            reserve=default_reserve(ps, h.n_vertices),
            seed=config.seed,
        )
        reserve = tuple(v for v in params.reserve if not fam_mask >> v & 1)
        try:
            ap = almost_perfect(h_rest, ps, replace(params, reserve=_balanced_truncate(ps, reserve)), config.sigma)
            leftover = tuple(v for v in ap.uncovered if not fam_mask >> v & 1)
            lq = sum(1 for v in leftover if ps.in_q(v))
            lp = len(leftover) - lq
            if 3 * lq == lp:
                out = absorb_leftover(h, ps, fam, leftover)
                if out.status == "absorbed":
                    combined = Matching(tuple(ap.matching.edges) + tuple(out.matching.edges))
                    if verified(combined):
                        return PipelineOutcome("perfect", combined, "absorb", report)
                    diagnostics.append("absorb route produced an invalid combination")
                else:
                    diagnostics.append(f"absorption failed at {out.failed_target}")
            else:
                diagnostics.append(f"leftover unbalanced ({lq} Q, {lp} P)")
        except Exception as exc:  # sampling / LP guard failures are outcomes here
            diagnostics.append(f"absorb route error: {exc}")

    if n <= config.exact_limit:
        res = has_perfect_matching(h, budget=config.budget)
        if res.status == "perfect" and verified(res.matching):
            return PipelineOutcome("perfect", res.matching, "exact-fallback", report, tuple(diagnostics))
        if res.status == "none":
            return PipelineOutcome("none", None, "exact-fallback", report, tuple(diagnostics))
        diagnostics.append("exact fallback exhausted its budget")
    best = max_matching(h, budget=config.budget)
    diagnostics.append(f"best found matching of size {best.size}")
    return PipelineOutcome("unknown", best.matching, "exact-fallback", report, tuple(diagnostics))


def _balanced_truncate(ps: PartiteStructure, reserve: VertexSet) -> VertexSet:
    """Largest balanced prefix of a reserve that lost vertices to the absorber."""
    q_part = [v for v in reserve if ps.in_q(v)]
    p_part = [v for v in reserve if not ps.in_q(v)]
    size_q = min(len(q_part), len(p_part) // 3)
    return as_vertex_set(q_part[:size_q] + p_part[: 3 * size_q])


def solve_family(family: Family, config: PipelineConfig = PROFILES["default"]):
    """Rainbow matching through the reduction and the pipeline solver."""
    from .constructions import reduce_family, lift_edge

    h, ps = reduce_family(family)
    if family.k * family.t != family.n_vertices:
        return rainbow_matching(family, budget=config.budget), None
    outcome = solve(h, ps, config)
    if outcome.status != "perfect":
        from .exact import RainbowResult

        status = "none" if outcome.status == "none" else "unknown"
        return RainbowResult(status, None), outcome
    colored = sorted(lift_edge(e, family.t) for e in outcome.matching.edges)
    m = Matching(tuple(e for _, e in colored), colors=tuple(c for c, _ in colored))
    from .exact import RainbowResult

    return RainbowResult("found", m), outcome
