"""Absorbing-set machinery: recognition, exact counting, randomized family
selection, and leftover absorption.

An absorbing set for a balanced 4-set T is a balanced 12-set A such that the
induced graph on A spans a matching of size 3 and the one on A union T spans
a matching of size 4: swapping A's internal matching for the larger one
soaks T into a perfect matching.  The family sampler draws balanced 12-sets
by index over the full combinatorial space (geometric skipping, so the huge
candidate space is never materialized), keeps a pairwise-disjoint absorbing
subfamily, and returns it with its internal perfect matching.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .core import (
    Hypergraph,
    InputError,
    Matching,
    PartiteStructure,
    VertexSet,
    as_vertex_set,
    binom,
    is_balanced_partite,
    mask_of,
)
from .exact import cover_matching


def _check_typed(ps: PartiteStructure, vs: VertexSet, q_need: int, p_need: int, label: str):
    q_part = sum(1 for v in vs if ps.in_q(v))
    if q_part != q_need or len(vs) - q_part != p_need:
        raise InputError(
            f"{label} must have {q_need} Q-vertices and {p_need} P-vertices, "
            f"got {q_part} and {len(vs) - q_part}"
        )


def _absorbs(h: Hypergraph, a: VertexSet, t: VertexSet) -> bool:
    """The union condition alone: H[A + T] spans a matching of size 4."""
    union = as_vertex_set(a + t)
    return cover_matching(h.induced(union), union).status == "perfect"


def is_absorbing(h: Hypergraph, ps: PartiteStructure, a_set, t_set) -> bool:
    """Whether the balanced 12-set absorbs the balanced 4-set."""
    a = as_vertex_set(a_set)
    t = as_vertex_set(t_set)
    _check_typed(ps, a, 3, 9, "absorbing set")
    _check_typed(ps, t, 1, 3, "absorbed set")
    if set(a) & set(t):
        raise InputError("absorbing set and target must be disjoint")
    if cover_matching(h.induced(a), a).status != "perfect":
        return False
    return _absorbs(h, a, t)


def _internal_matching(h: Hypergraph, a: VertexSet) -> tuple | None:
    res = cover_matching(h.induced(a), a)
    return res.matching.edges if res.status == "perfect" else None


def count_absorbing(h: Hypergraph, ps: PartiteStructure, t_set) -> int:
    """Exact size of the absorbing collection for T; exhaustive, |P| <= 12 only."""
    t = as_vertex_set(t_set)
    _check_typed(ps, t, 1, 3, "absorbed set")
    p_size = ps.p_size(h.n_vertices)
    if p_size > 12:
        raise InputError(f"exhaustive counting supports |P| <= 12, got {p_size}")
    q_free = [v for v in ps.q_vertices() if v not in t]
    p_free = [v for v in ps.p_vertices(h.n_vertices) if v not in t]
    count = 0
    for qa in itertools.combinations(q_free, 3):
        for pa in itertools.combinations(p_free, 9):
            if is_absorbing(h, ps, qa + pa, t):
                count += 1
    return count


def unrank_combination(rank: int, pool: list, k: int) -> tuple:
    """The rank-th k-subset of pool in lexicographic order."""
    n = len(pool)
    if not 0 <= rank < binom(n, k):
        raise InputError(f"rank {rank} out of range for C({n},{k})")
    out = []
    start = 0
    for slot in range(k):
        for idx in range(start, n):
            block = binom(n - idx - 1, k - slot - 1)
            if rank < block:
                out.append(pool[idx])
                start = idx + 1
                break
            rank -= block
    return tuple(out)


def _bernoulli_indices(n_total: int, p: Fraction, rng: random.Random):
    """Indices of an independent Bernoulli(p) process over range(n_total).

    Uses geometric gap sampling so only the selected indices cost time.
    """
    if p <= 0:
        return
    if p >= 1:
        yield from range(n_total)
        return
    log_q = math.log(1 - float(p))
    idx = -1
    while True:
        u = rng.random()
        gap = int(math.log(u) / log_q) if u > 0 else n_total
        idx += 1 + gap
        if idx >= n_total:
            return
        yield idx


@dataclass(frozen=True)
class AbsorbingFamily:
    """Pairwise-disjoint absorbing 12-sets with their internal perfect matching."""

    sets: tuple[VertexSet, ...]
    absorbing_matching: Matching

    def vertices(self) -> VertexSet:
        return as_vertex_set(v for s in self.sets for v in s)


@dataclass(frozen=True)
class AbsorbingSampleStats:
    selection_prob: Fraction
    n_selected: int
    n_after_disjoint: int
    n_after_filter: int
    cap: int
    intersecting_pairs: int
    panel_size: int


@dataclass(frozen=True)
class AbsorbingSampleResult:
    family: AbsorbingFamily
    stats: AbsorbingSampleStats

    @property
    def empty(self) -> bool:
        return not self.family.sets


def _t_panel(h: Hypergraph, ps: PartiteStructure, panel_size: int, rng: random.Random):
    """Balanced 4-sets used to screen candidate absorbers."""
    q_list = list(ps.q_vertices())
    p_list = list(ps.p_vertices(h.n_vertices))
    if len(p_list) <= 9:
        return [
            (q,) + pt
            for q in q_list
            for pt in itertools.combinations(p_list, 3)
        ]
    panel = set()
    while len(panel) < panel_size:
        q = rng.choice(q_list)
        pt = tuple(sorted(rng.sample(p_list, 3)))
        panel.add((q,) + pt)
    return sorted(panel)


def sample_absorbing_family(
    h: Hypergraph,
    ps: PartiteStructure,
    rho,
    seed: int = 0,
    panel_size: int = 200,
) -> AbsorbingSampleResult:
    """Randomized absorbing family with |matching| <= rho * |P| by construction.

    Each balanced 12-set is selected independently with probability
    rho*n / (2 * C(|Q|,3) * C(|P|,9)); intersecting pairs are resolved by
    keeping the earlier set, members that fail the absorbing screen against
    the T-panel are dropped, and the family is truncated so its internal
    matching stays within the size budget.
    """
    if not is_balanced_partite(h, ps):
        raise InputError("sample_absorbing_family expects a balanced (1,3)-partite graph")
    rho = Fraction(rho)
    if rho < 0:
        raise InputError("rho must be nonnegative")
    n = ps.p_size(h.n_vertices)
    q_list = list(ps.q_vertices())
    p_list = list(ps.p_vertices(h.n_vertices))
    n_q_combos = binom(len(q_list), 3)
    n_p_combos = binom(len(p_list), 9)
    total = n_q_combos * n_p_combos
    if total == 0 or rho == 0:
        stats = AbsorbingSampleStats(Fraction(0), 0, 0, 0, 0, 0, 0)
        return AbsorbingSampleResult(AbsorbingFamily((), Matching(())), stats)
    p_select = min(Fraction(1), Fraction(rho * n, 2 * total))
    rng = random.Random(f"{seed}/absorb-family")

    selected = []
    for idx in _bernoulli_indices(total, p_select, rng):
        q_part = unrank_combination(idx // n_p_combos, q_list, 3)
        p_part = unrank_combination(idx % n_p_combos, p_list, 9)
        selected.append(q_part + p_part)

    kept: list[VertexSet] = []
    kept_mask = []
    intersecting = 0
    for cand in selected:
        cm = mask_of(cand)
        if any(cm & km for km in kept_mask):
            intersecting += 1
            continue
        kept.append(cand)
        kept_mask.append(cm)

    panel = _t_panel(h, ps, panel_size, random.Random(f"{seed}/absorb-panel"))
    absorbers: list[tuple[VertexSet, tuple]] = []
    for cand in kept:
        internal = _internal_matching(h, cand)
        if internal is None:
            continue
        cm = mask_of(cand)
        if all(_absorbs(h, cand, t) for t in panel if mask_of(t) & cm == 0):
            absorbers.append((cand, internal))

    cap = int(Fraction(rho * n, 3))  # keeps the internal matching within rho*n edges
    truncated = absorbers[:cap]
    edges = tuple(e for _, m in truncated for e in m)
    family = AbsorbingFamily(tuple(s for s, _ in truncated), Matching(edges))
    stats = AbsorbingSampleStats(
        p_select,
        len(selected),
        len(kept),
        len(absorbers),
        cap,
        intersecting,
        len(panel),
    )
    return AbsorbingSampleResult(family, stats)


@dataclass(frozen=True)
class AbsorbOutcome:
    status: str  # "absorbed" | "absorption-failed"
    matching: Matching | None
    failed_target: VertexSet | None = None

    def __bool__(self) -> bool:
        return self.status == "absorbed"


def absorb_leftover(
    h: Hypergraph,
    ps: PartiteStructure,
    family: AbsorbingFamily,
    s_set,
) -> AbsorbOutcome:
    """Perfect matching on S union V(family), soaking S into the absorbers.

    S is split into balanced 4-sets by pairing the j-th Q-vertex with the
    next three P-vertices in sorted order; each 4-set greedily claims the
    first unused absorber that works for it.  Unused absorbers contribute
    their internal triple matchings.
    """
    s = as_vertex_set(s_set)
    fam_vertices = set(family.vertices())
    if set(s) & fam_vertices:
        raise InputError("leftover must be disjoint from the absorbing family")
    s_q, s_p = ps.split(s)
    if len(s) % 4 != 0 or 3 * len(s_q) != len(s_p):
        raise InputError(f"leftover of size {len(s)} is not balanced")

    targets = [
        (s_q[j],) + tuple(s_p[3 * j : 3 * j + 3])
        for j in range(len(s_q))
    ]
    used = [False] * len(family.sets)
    chosen: dict[int, VertexSet] = {}
    for t in targets:
        slot = next(
            (
                i
                for i, a in enumerate(family.sets)
                if not used[i] and is_absorbing(h, ps, a, t)
            ),
            None,
        )
        if slot is None:
            return AbsorbOutcome("absorption-failed", None, failed_target=t)
        used[slot] = True
        chosen[slot] = t

    edges: list[tuple[int, ...]] = []
    per_set = {}
    for e in family.absorbing_matching.edges:
        key = next(i for i, a in enumerate(family.sets) if set(e) <= set(a))
        per_set.setdefault(key, []).append(e)
    for i, a in enumerate(family.sets):
        if i in chosen:
            union = as_vertex_set(a + chosen[i])
            res = cover_matching(h.induced(union), union)
            if res.status != "perfect":
                return AbsorbOutcome("absorption-failed", None, failed_target=chosen[i])
            edges.extend(res.matching.edges)
        else:
            edges.extend(per_set.get(i, []))

    matching = Matching(tuple(edges))
    covered = set(matching.vertices())
    expected = set(s) | fam_vertices
    if covered != expected:
        raise AssertionError("absorption output does not cover exactly S + family")
    return AbsorbOutcome("absorbed", matching)
