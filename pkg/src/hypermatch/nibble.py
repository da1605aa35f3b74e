"""Two-round randomized sampling and the semi-random (nibble) matcher.

Round sampling keeps each vertex with a fixed probability, then rebalances
inside a reserved slack set so every retained round is exactly balanced.
Each balanced round gets a perfect fractional matching (integral fast path
first, tableau LP as fallback); a sparse spanning subgraph is drawn by
keeping each edge with its round weight; and the nibble chews through that
subgraph in small random bites, finishing with a deterministic greedy
extension.  Identical inputs and seeds give bit-identical outputs.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .core import (
    Hypergraph,
    InputError,
    Matching,
    PartiteStructure,
    VertexSet,
    as_vertex_set,
    is_balanced_partite,
    mask_of,
)
from .exact import cover_matching
from .fractional import FractionalSolution, SizeLimitError, fractional_matching


class SamplingError(RuntimeError):
    """Round sampling could not produce balanced rounds within the redraw budget."""


@dataclass(frozen=True)
class SamplingParams:
    """Knobs for the two-round randomization.

    The asymptotic defaults (vertex probability n^-theta, n^(1+kappa) rounds,
    a reserve of n^s low-priority vertices) are meaningless at desk scale, so
    every experiment overrides them explicitly; ``paper_params`` builds the
    literal defaults for completeness.
    """

    vertex_prob: Fraction
    rounds: int
    reserve: VertexSet
    seed: int = 0

    def __post_init__(self):
        p = Fraction(self.vertex_prob)
        object.__setattr__(self, "vertex_prob", p)
        object.__setattr__(self, "reserve", as_vertex_set(self.reserve))
        if not 0 < p <= 1:
            raise InputError(f"vertex_prob={p} must be in (0, 1]")
        if self.rounds < 1:
            raise InputError("rounds must be >= 1")


def default_reserve(ps: PartiteStructure, n_vertices: int, s: float = 0.99) -> VertexSet:
    """Highest-index reserve with |reserve cap P| = 3 |reserve cap Q| ~ n^s."""
    n = ps.p_size(n_vertices)
    size_p = min(n, max(3, 3 * round(n**s / 3)))
    size_q = size_p // 3
    if size_q > ps.q_size:
        size_q = ps.q_size
        size_p = 3 * size_q
    q_part = list(ps.q_vertices())[ps.q_size - size_q :]
    p_part = list(range(n_vertices - size_p, n_vertices))
    return as_vertex_set(q_part + p_part)


def paper_params(
    ps: PartiteStructure,
    n_vertices: int,
    seed: int = 0,
    theta: float = 0.9,
    kappa: float = 0.1,
    s: float = 0.99,
) -> SamplingParams:
    """Literal asymptotic defaults, rationalized for a concrete instance size."""
    n = ps.p_size(n_vertices)
    prob = Fraction(1, max(1, round(n**theta)))
    rounds = max(1, round(n ** (1 + kappa)))
    return SamplingParams(prob, rounds, default_reserve(ps, n_vertices, s), seed)


@dataclass(frozen=True)
class RoundSet:
    """Balanced per-round vertex sets with their enclosing draws."""

    rounds: tuple[VertexSet, ...]
    r_plus: tuple[VertexSet, ...]
    redraws: int

    def y_count(self, x_set) -> int:
        xs = set(as_vertex_set(x_set))
        return sum(1 for r in self.rounds if xs <= set(r))


def _rebalance(ps, r_plus, reserve_set):
    """Remove reserve vertices (largest index first) to balance the draw."""
    q_in = [v for v in r_plus if ps.in_q(v)]
    p_in = [v for v in r_plus if not ps.in_q(v)]
    sq = sorted((v for v in q_in if v in reserve_set), reverse=True)
    sp = sorted((v for v in p_in if v in reserve_set), reverse=True)
    diff = len(p_in) - 3 * len(q_in)
    for dq in range(len(sq) + 1):
        dp = diff + 3 * dq
        if 0 <= dp <= len(sp):
            drop = set(sq[:dq]) | set(sp[:dp])
            return as_vertex_set(v for v in r_plus if v not in drop)
    return None


def sample_rounds(h: Hypergraph, ps: PartiteStructure, params: SamplingParams) -> RoundSet:
    """Independent vertex draws, rebalanced within the reserve slack.

    Draws that cannot be balanced are redrawn from the same per-round stream;
    more than 100x the round count of redraws is a sampling error.
    """
    if not is_balanced_partite(h, ps):
        raise InputError("sample_rounds expects a balanced (1,3)-partite graph")
    reserve_set = set(params.reserve)
    if 3 * sum(1 for v in params.reserve if ps.in_q(v)) != sum(
        1 for v in params.reserve if not ps.in_q(v)
    ):
        raise InputError("reserve must have 3|S cap Q| = |S cap P|")
    p = float(params.vertex_prob)
    rounds: list[VertexSet] = []
    pluses: list[VertexSet] = []
    redraws = 0
    limit = 100 * params.rounds
    for i in range(params.rounds):
        rng = random.Random(f"{params.seed}/round/{i}")
        while True:
            r_plus = tuple(v for v in range(h.n_vertices) if rng.random() < p)
            balanced = _rebalance(ps, r_plus, reserve_set)
            if balanced is not None:
                rounds.append(balanced)
                pluses.append(r_plus)
                break
            redraws += 1
            if redraws > limit:
                raise SamplingError(
                    f"exceeded {limit} redraws at round {i}; "
                    f"reserve slack too small for p={params.vertex_prob}"
                )
    return RoundSet(tuple(rounds), tuple(pluses), redraws)


@dataclass(frozen=True)
class RoundFractional:
    """Per-round fractional matching, or the reason the round was dropped."""

    index: int
    round_vertices: VertexSet
    solution: FractionalSolution | None
    perfect: bool
    route: str  # "integral" | "lp" | "dropped-lp-guard" | "empty"


def round_fractional(h: Hypergraph, rounds: RoundSet, budget: int = 100_000):
    """Perfect fractional matchings per round; imperfect rounds are flagged.

    A round whose induced graph has an integral perfect matching gets the
    weight-one solution with the uniform quarter cover as its certificate;
    otherwise the exact LP decides.
    """
    out = []
    for i, r in enumerate(rounds.rounds):
        sub = h.induced(r)
        if not r:
            out.append(RoundFractional(i, r, None, True, "empty"))
            continue
        res = cover_matching(sub, r, budget=budget)
        if res.status == "perfect":
            weights = {e: Fraction(0) for e in sub.edges}
            for e in res.matching.edges:
                weights[e] = Fraction(1)
            omega = [Fraction(0)] * h.n_vertices
            for v in r:
                omega[v] = Fraction(1, 4)
            target = Fraction(len(r), 4)
            sol = FractionalSolution(weights, tuple(omega), target, target, True)
            out.append(RoundFractional(i, r, sol, True, "integral"))
            continue
        try:
            sol = fractional_matching(sub)
        except SizeLimitError:
            out.append(RoundFractional(i, r, None, False, "dropped-lp-guard"))
            continue
        perfect = sol.primal_value == Fraction(len(r), 4)
        out.append(RoundFractional(i, r, sol if perfect else sol, perfect, "lp"))
    return out


@dataclass(frozen=True)
class SparseStats:
    degrees: tuple[int, ...]
    delta2: int
    edge_collisions: int
    retained_rounds: int
    dropped_rounds: int


def build_sparse(
    h: Hypergraph,
    rounds: RoundSet,
    fracs,
    seed: int = 0,
) -> tuple[Hypergraph, SparseStats]:
    """Spanning subgraph drawn edge-by-edge with per-round weights.

    Edges appearing in several rounds belong to the lowest round index (the
    collision count is reported); each assigned edge is kept independently
    with its round weight.
    """
    perfect_rounds = {rf.index: rf for rf in fracs if rf.perfect and rf.solution is not None}
    assignment: dict[tuple, Fraction] = {}
    collisions = 0
    for i in sorted(perfect_rounds):
        rf = perfect_rounds[i]
        r_mask = mask_of(rf.round_vertices)
        for e, m in zip(h.edges, h.edge_masks):
            if m & ~r_mask == 0:
                if e in assignment:
                    collisions += 1
                else:
                    assignment[e] = rf.solution.weight(e)
    rng = random.Random(f"{seed}/sparse")
    kept = [e for e in h.edges if e in assignment and rng.random() < float(assignment[e])]
    h2 = Hypergraph(h.k, h.n_vertices, kept)
    pair_deg: dict[tuple, int] = {}
    for e in h2.edges:
        for a in range(len(e)):
            for b in range(a + 1, len(e)):
                pair_deg[(e[a], e[b])] = pair_deg.get((e[a], e[b]), 0) + 1
    stats = SparseStats(
        degrees=tuple(len(a) for a in h2.adjacency),
        delta2=max(pair_deg.values(), default=0),
        edge_collisions=collisions,
        retained_rounds=len(perfect_rounds),
        dropped_rounds=len(rounds.rounds) - len(perfect_rounds),
    )
    return h2, stats


@dataclass(frozen=True)
class NibbleResult:
    matching: Matching
    bites: int
    bite_sizes: tuple[int, ...]
    covered_fraction: Fraction


def nibble_matching(
    h: Hypergraph,
    a,
    seed: int = 0,
    gamma_bite: float = 0.1,
    stop_frac: float = 0.01,
) -> NibbleResult:
    """Semi-random matching: random bites, then a deterministic greedy finish.

    Each bite activates every fully uncovered edge independently with
    probability gamma / D-hat (current mean available degree); activations
    that clash are all discarded, survivors join the matching.  Bites stop
    when they cover less than ``stop_frac`` of the vertices or the uncovered
    fraction reaches ``a``; the greedy finish repeatedly matches the
    uncovered vertex of minimum available degree, so the result is maximal.
    A final pruning pass re-checks pairwise disjointness.
    """
    if not h.edges:
        raise InputError("nibble_matching expects a nonempty graph")
    a = Fraction(a)
    masks = h.edge_masks
    n = h.n_vertices
    rng = random.Random(f"{seed}/nibble")
    covered = 0
    n_covered = 0
    chosen: list[int] = []
    avail = list(range(len(masks)))
    bite_sizes = []
    while True:
        avail = [i for i in avail if masks[i] & covered == 0]
        if not avail:
            break
        uncovered = n - n_covered
        d_hat = h.k * len(avail) / uncovered
        p = min(1.0, gamma_bite / max(d_hat, 1.0))
        activated = [i for i in avail if rng.random() < p]
        clash = set()
        for x in range(len(activated)):
            for y in range(x + 1, len(activated)):
                if masks[activated[x]] & masks[activated[y]]:
                    clash.add(activated[x])
                    clash.add(activated[y])
        added = 0
        for i in activated:
            if i not in clash:
                chosen.append(i)
                covered |= masks[i]
                n_covered += h.k
                added += 1
        bite_sizes.append(added)
        if added * h.k < stop_frac * n or n - n_covered <= a * n:
            break

    # greedy finish: always extendable edges exist while some edge is fully
    # uncovered; matching the scarcest vertex first keeps options open
    while True:
        avail = [i for i in avail if masks[i] & covered == 0]
        if not avail:
            break
        deg: dict[int, int] = {}
        for i in avail:
            for v in h.edges[i]:
                deg[v] = deg.get(v, 0) + 1
        v_star = min(deg, key=lambda v: (deg[v], v))
        pick = next(i for i in avail if v_star in h.edges[i])
        chosen.append(pick)
        covered |= masks[pick]
        n_covered += h.k

    pruned: list[int] = []
    seen = 0
    for i in chosen:
        if masks[i] & seen == 0:
            pruned.append(i)
            seen |= masks[i]
    matching = Matching(tuple(h.edges[i] for i in sorted(pruned)))
    return NibbleResult(
        matching,
        bites=len(bite_sizes),
        bite_sizes=tuple(bite_sizes),
        covered_fraction=Fraction(len(pruned) * h.k, n) if n else Fraction(0),
    )


@dataclass(frozen=True)
class AlmostPerfectResult:
    matching: Matching
    uncovered: VertexSet
    uncovered_fraction: Fraction
    sparse_stats: SparseStats
    nibble: NibbleResult | None
    dropped_rounds: int


def almost_perfect(
    h: Hypergraph,
    ps: PartiteStructure,
    params: SamplingParams,
    sigma,
) -> AlmostPerfectResult:
    """Chain sampling, per-round fractional matchings, sparsification, nibble."""
    sigma = Fraction(sigma)
    rounds = sample_rounds(h, ps, params)
    fracs = round_fractional(h, rounds)
    h2, stats = build_sparse(h, rounds, fracs, seed=params.seed)
    if h2.edges:
        nib = nibble_matching(h2, a=sigma / 3, seed=params.seed)
        matching = nib.matching
    else:
        nib = None
        matching = Matching(())
    covered = set(matching.vertices())
    uncovered = tuple(v for v in range(h.n_vertices) if v not in covered)
    frac = Fraction(len(uncovered), h.n_vertices) if h.n_vertices else Fraction(0)
    return AlmostPerfectResult(matching, uncovered, frac, stats, nib, stats.dropped_rounds)
