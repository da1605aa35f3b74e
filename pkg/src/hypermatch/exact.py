"""Ground-truth exact solvers: branch-and-bound matching, rainbow search,
the inductive greedy rainbow algorithm, balanced independent sets, and the
2-graph stability check.

All searches are deterministic: they branch on the lowest-index vertex that
can still be covered and try its edges in lexicographic order, so equal
inputs give bit-identical outputs.  Budgets are node counts; an exhausted
budget yields an explicit "unknown" outcome carrying the best witness found.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .core import (
    Family,
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
from .constructions import lift_edge, reduce_family


class _Budget:
    __slots__ = ("left", "exhausted")

    def __init__(self, limit):
        self.left = limit  # None means unlimited
        self.exhausted = False

    def tick(self) -> bool:
        if self.left is None:
            return True
        if self.left <= 0:
            self.exhausted = True
            return False
        self.left -= 1
        return True


@dataclass(frozen=True)
class MaxMatchingResult:
    matching: Matching
    optimal: bool
    nodes: int

    @property
    def size(self) -> int:
        return len(self.matching.edges)


def max_matching(h: Hypergraph, budget: int | None = None) -> MaxMatchingResult:
    """Maximum matching by branch and bound over set packings.

    Branches on the lowest-index vertex that is uncovered and still has an
    available edge: either one of its edges joins the matching, or the vertex
    is abandoned (no edge through it may be used later).  Pruning uses the
    bound |current| + floor(coverable / k).
    """
    k = h.k
    masks = h.edge_masks
    adj = h.adjacency
    bud = _Budget(budget)
    best: list[int] = []
    current: list[int] = []
    nodes = 0

    def coverable_count(blocked: int, start: int) -> int:
        cnt = 0
        for v in range(h.n_vertices):
            if blocked >> v & 1:
                continue
            if any(masks[i] & blocked == 0 for i in adj[v]):
                cnt += 1
        return cnt

    def descend(blocked: int, v: int):
        nonlocal best, nodes
        if not bud.tick():
            return
        nodes += 1
        while v < h.n_vertices:
            if not blocked >> v & 1 and any(masks[i] & blocked == 0 for i in adj[v]):
                break
            v += 1
        else:
            if len(current) > len(best):
                best = list(current)
            return
        if len(current) + coverable_count(blocked, v) // k <= len(best):
            return
        for i in adj[v]:
            if masks[i] & blocked == 0:
                current.append(i)
                descend(blocked | masks[i], v + 1)
                current.pop()
                if bud.exhausted:
                    return
        # abandon v: edges through it stay forbidden in this subtree
        descend(blocked | (1 << v), v + 1)

    descend(0, 0)
    m = Matching(tuple(h.edges[i] for i in sorted(best)))
    return MaxMatchingResult(m, optimal=not bud.exhausted, nodes=nodes)


@dataclass(frozen=True)
class PerfectMatchingResult:
    status: str  # "perfect" | "none" | "unknown"
    matching: Matching | None
    nodes: int

    def __bool__(self) -> bool:
        return self.status == "perfect"


def _cover_search(h: Hypergraph, required: VertexSet, pool, budget):
    """Matching from ``pool`` covering every vertex of ``required``, or None.

    Returns (edge-index list | None, budget-object, node count).  Vertices
    outside ``required`` may be covered incidentally.
    """
    masks = h.edge_masks
    pool = sorted(pool)
    adj: dict[int, list[int]] = {v: [] for v in required}
    for i in pool:
        for v in h.edges[i]:
            if v in adj:
                adj[v].append(i)
    req = list(required)
    bud = _Budget(budget)
    nodes = 0
    chosen: list[int] = []

    def dead_vertex(blocked: int) -> bool:
        for v in req:
            if blocked >> v & 1:
                continue
            if not any(masks[i] & blocked == 0 for i in adj[v]):
                return True
        return False

    def descend(blocked: int) -> bool:
        nonlocal nodes
        if not bud.tick():
            return False
        nodes += 1
        v = next((u for u in req if not blocked >> u & 1), None)
        if v is None:
            return True
        if dead_vertex(blocked):
            return False
        for i in adj[v]:
            if masks[i] & blocked == 0:
                chosen.append(i)
                if descend(blocked | masks[i]):
                    return True
                chosen.pop()
                if bud.exhausted:
                    return False
        return False

    found = descend(0)
    return (chosen if found else None), bud, nodes


def cover_matching(
    h: Hypergraph,
    required,
    pool=None,
    budget: int | None = None,
) -> PerfectMatchingResult:
    """Exhaustive search for a matching covering all ``required`` vertices."""
    req = as_vertex_set(required)
    if req and req[-1] >= h.n_vertices:
        raise InputError(f"vertex {req[-1]} out of range")
    idx_pool = range(len(h.edges)) if pool is None else pool
    chosen, bud, nodes = _cover_search(h, req, idx_pool, budget)
    if chosen is not None:
        return PerfectMatchingResult("perfect", Matching(tuple(h.edges[i] for i in chosen)), nodes)
    return PerfectMatchingResult("unknown" if bud.exhausted else "none", None, nodes)


def has_perfect_matching(h: Hypergraph, budget: int | None = None) -> PerfectMatchingResult:
    """Perfect matching witness, or a proof of none by exhausted search."""
    if h.n_vertices % h.k != 0:
        return PerfectMatchingResult("none", None, 0)
    return cover_matching(h, range(h.n_vertices), budget=budget)


@dataclass(frozen=True)
class RainbowResult:
    status: str  # "found" | "none" | "unknown"
    matching: Matching | None
    nodes: int = 0

    def __bool__(self) -> bool:
        return self.status == "found"


def _rainbow_from_reduction(family: Family, reduced: PerfectMatchingResult) -> RainbowResult:
    if reduced.status != "perfect":
        return RainbowResult("none" if reduced.status == "none" else "unknown", None, reduced.nodes)
    colored = [lift_edge(e, family.t) for e in reduced.matching.edges]
    colored.sort()
    m = Matching(tuple(e for _, e in colored), colors=tuple(c for c, _ in colored))
    return RainbowResult("found", m, reduced.nodes)


def rainbow_matching(family: Family, budget: int | None = None) -> RainbowResult:
    """Exact rainbow matching via the color-vertex reduction.

    When the reduction is balanced this is a perfect-matching search; for
    smaller families it is the same search required only to cover the color
    vertices.
    """
    h, ps = reduce_family(family)
    if family.k * family.t == family.n_vertices and (h.n_vertices % h.k == 0):
        res = has_perfect_matching(h, budget=budget)
    else:
        res = cover_matching(h, range(ps.q_size), budget=budget)
    return _rainbow_from_reduction(family, res)


@dataclass(frozen=True)
class GreedyRainbowResult:
    status: str  # "found" | "greedy-failed"
    matching: Matching | None
    preconditions_ok: bool
    violations: tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.status == "found"


def greedy_rainbow(family: Family) -> GreedyRainbowResult:
    """Rainbow matching by the inductive high-degree argument.

    Solve the first t-1 members, then either extend with an edge of the last
    member avoiding the partial matching, or delete the busiest matched
    vertex (maximum degree in the last member, lowest index on ties) from
    every earlier member, re-solve, and extend through that vertex.  Succeeds
    whenever the degree precondition holds; otherwise runs best effort and
    may report failure.
    """
    n, k, t = family.n_vertices, family.k, family.t
    violations = []
    if n <= 2 * k**4 * t:
        violations.append(f"n={n} not above 2*k^4*t={2 * k**4 * t}")
    bound = binom(n - 1, k - 1) - binom(n - t, k - 1)
    for i, f in enumerate(family.members):
        if f.min_degree(1) <= bound:
            violations.append(f"member {i}: min vertex degree {f.min_degree(1)} <= {bound}")
            break

    def solve(members: list[Hypergraph]) -> list[tuple[int, ...]] | None:
        if len(members) == 1:
            return [members[0].edges[0]] if members[0].edges else None
        partial = solve(members[:-1])
        if partial is None:
            return None
        used = mask_of(v for e in partial for v in e)
        last = members[-1]
        for i, m in enumerate(last.edge_masks):
            if m & used == 0:
                return partial + [last.edges[i]]
        # every edge of the last member meets the partial matching
        matched = [v for v in range(n) if used >> v & 1]
        v_star = max(matched, key=lambda v: (last.degree((v,)), -v))
        reduced = [f.remove_vertices((v_star,)) for f in members[:-1]]
        partial2 = solve(reduced)
        if partial2 is None:
            return None
        used2 = mask_of(v for e in partial2 for v in e)
        for i in last.adjacency[v_star]:
            if last.edge_masks[i] & used2 == 0:
                return partial2 + [last.edges[i]]
        return None

    edges = solve(list(family.members))
    ok = not violations
    if edges is None:
        return GreedyRainbowResult("greedy-failed", None, ok, tuple(violations))
    m = Matching(tuple(edges), colors=tuple(range(t)))
    return GreedyRainbowResult("found", m, ok, tuple(violations))


@dataclass(frozen=True)
class IndependentSetResult:
    status: str  # "found" | "none" | "unknown"
    witness: VertexSet | None

    def __bool__(self) -> bool:
        return self.status == "found"


def _is_independent(h: Hypergraph, s_mask: int) -> bool:
    return all(m & ~s_mask != 0 for m in h.edge_masks)


def has_balanced_independent_set(
    h: Hypergraph,
    ps: PartiteStructure,
    a: int,
    b: int,
    trials: int = 5000,
    seed: int = 0,
) -> IndependentSetResult:
    """Edge-free S with |S cap Q| >= a and |S cap P| >= b.

    Exhaustive for |P| <= 12 (subsets of an independent set are independent,
    so exact sizes (a, b) suffice); otherwise seeded random search whose
    positive answers are verified exactly, with "unknown" distinct from
    "none".
    """
    q_list = list(ps.q_vertices())
    p_list = list(ps.p_vertices(h.n_vertices))
    if a > len(q_list) or b > len(p_list):
        return IndependentSetResult("none", None)
    if len(p_list) <= 12:
        for qa in itertools.combinations(q_list, a):
            qa_mask = mask_of(qa)
            for pb in itertools.combinations(p_list, b):
                s_mask = qa_mask | mask_of(pb)
                if _is_independent(h, s_mask):
                    return IndependentSetResult("found", qa + pb)
        return IndependentSetResult("none", None)
    rng = random.Random(f"{seed}/indep")
    for _ in range(trials):
        s = tuple(sorted(rng.sample(q_list, a))) + tuple(sorted(rng.sample(p_list, b)))
        if _is_independent(h, mask_of(s)):
            return IndependentSetResult("found", s)
    return IndependentSetResult("unknown", None)


def is_stable(g: Hypergraph, ordering) -> bool:
    """Whether the 2-graph is closed under decreasing either endpoint.

    ``ordering`` lists the vertices as u_1, ..., u_n; an edge at positions
    (i, j) forces every pair at positions (k, l) with k <= i, l <= j, k != l.
    """
    if g.k != 2:
        raise InputError("stability is defined for 2-graphs")
    order = list(ordering)
    if sorted(order) != list(range(g.n_vertices)):
        raise InputError("ordering must be a permutation of the vertex set")
    pos = {v: i for i, v in enumerate(order)}
    positions = {tuple(sorted((pos[x], pos[y]))) for x, y in g.edges}
    for i, j in positions:
        for a in range(i + 1):
            for b in range(j + 1):
                if a < b and (a, b) not in positions:
                    return False
    return True


def stable_closure(g: Hypergraph, ordering) -> Hypergraph:
    """Smallest stable supergraph of g for the given ordering."""
    if g.k != 2:
        raise InputError("stability is defined for 2-graphs")
    order = list(ordering)
    pos = {v: i for i, v in enumerate(order)}
    edges = set()
    for x, y in g.edges:
        i, j = sorted((pos[x], pos[y]))
        for a in range(i + 1):
            for b in range(j + 1):
                if a < b:
                    edges.add(tuple(sorted((order[a], order[b]))))
    return Hypergraph(2, g.n_vertices, edges)
