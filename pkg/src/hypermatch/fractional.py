"""Exact-rational fractional matchings, vertex covers, and stable completion.

The packing and covering problems are solved by two genuinely different
routes: the matching LP runs the tableau directly, while the cover LP is
solved by row generation (grow an active set of edge constraints until none
is violated).  Equality of the two optimal values is therefore a meaningful
strong-duality check rather than a restatement of one tableau.

Every returned solution carries a full certificate -- feasible edge weights,
feasible vertex weights, and exactly equal objective values -- validated at
construction time with rational arithmetic, no tolerances.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .core import (
    Hypergraph,
    InputError,
    Matching,
    PartiteStructure,
    is_balanced_partite,
)
from .exact import cover_matching, max_matching
from .simplex import max_leq, min_geq

LP_EDGE_LIMIT = 50_000


class SizeLimitError(RuntimeError):
    """The instance exceeds the configured LP size guard."""


@dataclass(frozen=True)
class FractionalSolution:
    """Optimal primal/dual pair for the fractional matching LP.

    ``edge_weights`` is a feasible fractional matching, ``vertex_weights`` a
    feasible fractional vertex cover, and the two objective values agree
    exactly, which certifies optimality of both sides.
    """

    edge_weights: dict
    vertex_weights: tuple
    primal_value: Fraction
    dual_value: Fraction
    perfect: bool

    def weight(self, edge) -> Fraction:
        return self.edge_weights.get(tuple(sorted(edge)), Fraction(0))


def _certify(h: Hypergraph, edge_weights, vertex_weights, primal, dual):
    loads = [Fraction(0)] * h.n_vertices
    for e, w in edge_weights.items():
        if w < 0 or w > 1:
            raise AssertionError(f"edge weight {w} outside [0,1]")
        for v in e:
            loads[v] += w
    if any(load > 1 for load in loads):
        raise AssertionError("per-vertex load exceeds 1")
    for e in h.edges:
        if sum(vertex_weights[v] for v in e) < 1:
            raise AssertionError(f"edge {e} not covered")
    if any(w < 0 for w in vertex_weights):
        raise AssertionError("negative vertex weight")
    if primal != dual:
        raise AssertionError(f"duality gap: {primal} != {dual}")


def _guard(h: Hypergraph):
    if h.n_edges() > LP_EDGE_LIMIT:
        raise SizeLimitError(f"{h.n_edges()} edges exceed the LP guard of {LP_EDGE_LIMIT}")


def fractional_matching(h: Hypergraph) -> FractionalSolution:
    """Optimal fractional matching with its dual cover, solved as a packing LP."""
    _guard(h)
    if not h.edges:
        return FractionalSolution({}, tuple([Fraction(0)] * h.n_vertices), Fraction(0), Fraction(0), h.n_vertices == 0)
    live = [v for v in range(h.n_vertices) if h.adjacency[v]]
    rows = [[Fraction(1) if v in e else Fraction(0) for e in h.edges] for v in live]
    ones_e = [Fraction(1)] * len(h.edges)
    value, x, duals = max_leq(ones_e, rows, [Fraction(1)] * len(live))
    edge_weights = {e: w for e, w in zip(h.edges, x)}
    vertex_weights = [Fraction(0)] * h.n_vertices
    for v, y in zip(live, duals):
        vertex_weights[v] = y
    _certify(h, edge_weights, vertex_weights, value, sum(vertex_weights))
    perfect = value * h.k == h.n_vertices
    return FractionalSolution(edge_weights, tuple(vertex_weights), value, sum(vertex_weights), perfect)


def min_fractional_vertex_cover(h: Hypergraph, batch: int = 32) -> FractionalSolution:
    """Minimum fractional vertex cover by row generation.

    Solves the covering LP over a growing active set of edge constraints,
    adding the most violated rows until the incumbent covers every edge.
    The active LP's duals extend by zeros to an optimal fractional matching,
    so the certificate is complete.
    """
    _guard(h)
    n = h.n_vertices
    if not h.edges:
        return FractionalSolution({}, tuple([Fraction(0)] * n), Fraction(0), Fraction(0), n == 0)
    ones_v = [Fraction(1)] * n
    active: list[int] = []
    omega = [Fraction(0)] * n
    duals: list[Fraction] = []
    value = Fraction(0)
    while True:
        violated = []
        for i, e in enumerate(h.edges):
            slack = sum(omega[v] for v in e) - 1
            if slack < 0:
                violated.append((slack, i))
        if not violated:
            break
        violated.sort()
        active.extend(i for _, i in violated[:batch])
        active = sorted(set(active))
        rows = [[Fraction(1) if v in h.edges[i] else Fraction(0) for v in range(n)] for i in active]
        value, omega, duals = min_geq(ones_v, rows, [Fraction(1)] * len(rows))
    edge_weights = {e: Fraction(0) for e in h.edges}
    for i, w in zip(active, duals):
        edge_weights[h.edges[i]] = w
    _certify(h, edge_weights, omega, sum(edge_weights.values()), value)
    perfect = value * h.k == h.n_vertices
    return FractionalSolution(edge_weights, tuple(omega), sum(edge_weights.values()), value, perfect)


def descending_orderings(ps: PartiteStructure, n_vertices: int, omega):
    """Q and P sorted by descending weight, original index breaking ties."""
    q_order = sorted(ps.q_vertices(), key=lambda v: (-omega[v], v))
    p_order = sorted(ps.p_vertices(n_vertices), key=lambda v: (-omega[v], v))
    return q_order, p_order


def stable_completion(h: Hypergraph, ps: PartiteStructure, omega):
    """All properly typed 4-sets of cover weight >= 1, with the orderings used.

    The output contains every edge of H (omega covers them) and is closed
    under swapping any vertex for one of larger weight, which is exactly
    coordinate-wise stability under the returned descending orderings.
    """
    omega = [Fraction(w) for w in omega]
    if len(omega) != h.n_vertices:
        raise InputError("omega must assign a weight to every vertex")
    if any(w < 0 for w in omega):
        raise InputError("omega must be nonnegative")
    for e in h.edges:
        if sum(omega[v] for v in e) < 1:
            raise InputError(f"omega is not a fractional vertex cover: edge {e} uncovered")
    q_order, p_order = descending_orderings(ps, h.n_vertices, omega)
    edges = []
    for v in ps.q_vertices():
        base = omega[v]
        for t in itertools.combinations(ps.p_vertices(h.n_vertices), 3):
            if base + omega[t[0]] + omega[t[1]] + omega[t[2]] >= 1:
                edges.append((v,) + t)
    h_prime = Hypergraph(h.k, h.n_vertices, edges)
    return h_prime, (q_order, p_order)


@dataclass(frozen=True)
class PfracReport:
    """Outcome of the perfect-fractional-matching construction."""

    perfect: bool
    nu_f: Fraction
    target: Fraction
    solution: FractionalSolution
    completion: Hypergraph
    completion_matching: Matching | None
    route: str  # "stable-greedy" | "exact-on-completion" | "lp-only"


def _greedy_pair_matching(g: Hypergraph, size: int) -> list | None:
    """Greedy lexicographic matching in a 2-graph, None if it stalls early."""
    used = 0
    out = []
    for e, m in zip(g.edges, g.edge_masks):
        if m & used == 0:
            out.append(e)
            used |= m
            if len(out) == size:
                return out
    return None


def pfrac_pipeline(h: Hypergraph, ps: PartiteStructure) -> PfracReport:
    """Decide whether H has a perfect fractional matching, constructively.

    Runs the dual solve, builds the stable completion H', and tries to
    exhibit a perfect matching of H' first through the pair graph of the two
    lightest vertices, then by exact search on H'.  The fractional verdict
    itself is certified by the LP value; the constructive route is reported
    for inspection.
    """
    if not is_balanced_partite(h, ps):
        raise InputError("pfrac_pipeline expects a balanced (1,3)-partite graph")
    cover = min_fractional_vertex_cover(h)
    h_prime, (q_order, p_order) = stable_completion(h, ps, cover.vertex_weights)
    sol = fractional_matching(h)
    target = Fraction(h.n_vertices, h.k)
    perfect = sol.primal_value == target

    completion_matching = None
    route = "lp-only"
    if h_prime.edges:
        v_last, u_last = q_order[-1], p_order[-1]
        pairs = [
            tuple(x for x in e if x not in (v_last, u_last))
            for e in h_prime.edges
            if v_last in e and u_last in e
        ]
        g = Hypergraph(2, h.n_vertices, [p for p in pairs if len(p) == 2])
        need = ps.q_size
        pair_matching = _greedy_pair_matching(g, need)
        if pair_matching is None:
            mm = max_matching(g, budget=200_000)
            if mm.size >= need:
                pair_matching = list(mm.matching.edges[:need])
        if pair_matching is not None:
            used = {v for e in pair_matching for v in e}
            free_p = [u for u in ps.p_vertices(h.n_vertices) if u not in used]
            if len(free_p) >= need:
                edges = [
                    tuple(sorted((q, x) + e))
                    for q, x, e in zip(ps.q_vertices(), free_p, pair_matching)
                ]
                if all(h_prime.has_edge(e) for e in edges):
                    completion_matching = Matching(tuple(edges))
                    route = "stable-greedy"
        if completion_matching is None:
            from .exact import has_perfect_matching

            res = has_perfect_matching(h_prime, budget=500_000)
            if res.status == "perfect":
                completion_matching = res.matching
                route = "exact-on-completion"

    return PfracReport(perfect, sol.primal_value, target, sol, h_prime, completion_matching, route)
