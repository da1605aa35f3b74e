"""Named extremal constructions and the closeness / goodness / density measures.

The central objects are the 3-graph ``H(n, m)`` whose edges meet the first m
vertices without being contained in them, the (1,3)-partite 4-graph obtained
by gluing one color vertex onto every edge of every family member, and the
extremal template built from n/3 identical copies of ``H(n, n/3)``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from .core import (
    Family,
    Hypergraph,
    InputError,
    PartiteStructure,
    VertexSet,
    as_vertex_set,
    binom,
    is_balanced_partite,
    mask_of,
)


def gen_hnm(n: int, m: int) -> Hypergraph:
    """3-graph on [n] whose edges meet {0..m-1} but are not contained in it."""
    if not 0 <= m <= n:
        raise InputError(f"need 0 <= m <= n, got m={m}, n={n}")
    edges = []
    for e in itertools.combinations(range(n), 3):
        inside = sum(1 for v in e if v < m)
        if 0 < inside < 3:
            edges.append(e)
    return Hypergraph(3, n, edges)


def reduce_family(family: Family) -> tuple[Hypergraph, PartiteStructure]:
    """Glue color vertex i onto every edge of member i.

    Member vertices shift up by t, color vertices occupy 0..t-1, and a rainbow
    matching of the family corresponds exactly to a matching of the output
    covering all color vertices (a perfect matching when 3t = n).
    """
    t = family.t
    edges = []
    for i, f in enumerate(family.members):
        for e in f.edges:
            edges.append((i,) + tuple(v + t for v in e))
    h = Hypergraph(family.k + 1, t + family.n_vertices, edges)
    return h, PartiteStructure(q_size=t)


def lift_edge(edge, q_size: int) -> tuple[int, ...]:
    """Map a reduced-graph edge back to (color, member-space edge)."""
    color = [v for v in edge if v < q_size]
    if len(color) != 1:
        raise InputError(f"edge {edge} does not contain exactly one color vertex")
    return color[0], tuple(v - q_size for v in edge if v >= q_size)


def sharpness_family(n: int) -> Family:
    """n/3 identical copies of H(n, n/3 - 1): the tight no-rainbow instance."""
    if n % 3 != 0 or n <= 0:
        raise InputError(f"n={n} must be a positive multiple of 3")
    member = gen_hnm(n, n // 3 - 1)
    return Family(n_vertices=n, members=(member,) * (n // 3))


@dataclass(frozen=True)
class ExtremalTemplate:
    """The extremal 4-graph on Q + P with a distinguished W inside P.

    ``n`` is |P|; Q occupies indices 0..n/3-1 and P the rest; ``w_set`` holds
    absolute indices of the n/3 vertices of P playing the special role.
    """

    n: int
    w_set: VertexSet

    def __post_init__(self):
        if self.n % 3 != 0 or self.n <= 0:
            raise InputError(f"|P|={self.n} must be a positive multiple of 3")
        w = as_vertex_set(self.w_set)
        object.__setattr__(self, "w_set", w)
        if len(w) != self.n // 3:
            raise InputError(f"|W|={len(w)} must be n/3={self.n // 3}")
        if any(not self.q_size <= v < self.n_vertices for v in w):
            raise InputError("w_set must lie inside P")

    @property
    def q_size(self) -> int:
        return self.n // 3

    @property
    def n_vertices(self) -> int:
        return self.n + self.n // 3

    @property
    def u_set(self) -> VertexSet:
        w = set(self.w_set)
        return tuple(v for v in range(self.q_size, self.n_vertices) if v not in w)

    def p_triples(self):
        """P-triples meeting W but not contained in it, in lexicographic order."""
        w = set(self.w_set)
        for t in itertools.combinations(range(self.q_size, self.n_vertices), 3):
            inside = sum(1 for v in t if v in w)
            if 0 < inside < 3:
                yield t

    def edges(self):
        for t in self.p_triples():
            for v in range(self.q_size):
                yield (v,) + t


def gen_extremal_h13(n: int, w_set) -> Hypergraph:
    """Build the full extremal 4-graph for the given W split of P."""
    tpl = ExtremalTemplate(n, as_vertex_set(w_set))
    return Hypergraph(4, tpl.n_vertices, tpl.edges())


@dataclass(frozen=True)
class ClosenessReport:
    """How far H sits below an extremal template.

    ``missing_edges`` counts template edges absent from H; ``deficiency[v]``
    counts the missing edges through vertex v, from which the alpha-bad set
    for any threshold alpha is read off.
    """

    template: ExtremalTemplate
    missing_edges: int
    epsilon: Fraction
    deficiency: tuple[int, ...]

    def bad_vertices(self, alpha) -> VertexSet:
        threshold = Fraction(alpha) * self.template.n ** 3
        return tuple(v for v, d in enumerate(self.deficiency) if d > threshold)


def closeness(h: Hypergraph, template: ExtremalTemplate) -> ClosenessReport:
    """Count template edges missing from H (extra edges of H are free)."""
    if h.n_vertices != template.n_vertices or h.k != 4:
        raise InputError("H does not match the template's vertex layout")
    deficiency = [0] * h.n_vertices
    missing = 0
    for e in template.edges():
        if not h.has_edge(e):
            missing += 1
            for v in e:
                deficiency[v] += 1
    eps = Fraction(missing, h.n_vertices**4) if h.n_vertices else Fraction(0)
    return ClosenessReport(template, missing, eps, tuple(deficiency))


def alpha_bad_vertices(h: Hypergraph, template: ExtremalTemplate, alpha) -> VertexSet:
    """Vertices missing more than alpha * n^3 of their template link."""
    return closeness(h, template).bad_vertices(alpha)


def _missing_for_w(absent_count: dict, w: frozenset) -> int:
    total = 0
    for t, cnt in absent_count.items():
        inside = (t[0] in w) + (t[1] in w) + (t[2] in w)
        if 0 < inside < 3:
            total += cnt
    return total


def closeness_to_extremal(
    h: Hypergraph,
    mode: str = "auto",
    restarts: int = 8,
    seed: int = 0,
) -> ClosenessReport:
    """Minimize missing-edge count over the choice of W.

    Exhaustive over all C(n, n/3) splits when |P| <= 12, otherwise
    first-improvement single-swap local search with random restarts.
    Q is held fixed; only W varies.
    """
    if h.k != 4 or h.n_vertices % 4 != 0:
        raise InputError("closeness_to_extremal expects a balanced (1,3)-partite 4-graph")
    q_size = h.n_vertices // 4
    n = 3 * q_size
    p_vertices = list(range(q_size, h.n_vertices))

    # absent_count[t] = number of colors v with {v} + t missing from H
    absent_count = {}
    for t in itertools.combinations(p_vertices, 3):
        cnt = sum(1 for v in range(q_size) if not h.has_edge((v,) + t))
        if cnt:
            absent_count[t] = cnt

    def evaluate(w: frozenset) -> int:
        return _missing_for_w(absent_count, w)

    if mode not in ("auto", "exact", "local"):
        raise InputError(f"unknown mode {mode!r}")
    exact = mode == "exact" or (mode == "auto" and n <= 12)

    if exact:
        best_w, best_val = None, None
        for w in itertools.combinations(p_vertices, q_size):
            val = evaluate(frozenset(w))
            if best_val is None or val < best_val:
                best_w, best_val = w, val
        chosen = best_w
    else:
        best_w, best_val = None, None
        for r in range(restarts):
            rng = random.Random(f"{seed}/closeness/{r}")
            w = set(rng.sample(p_vertices, q_size))
            val = evaluate(frozenset(w))
            improved = True
            while improved:
                improved = False
                for w_out in sorted(w):
                    for u_in in p_vertices:
                        if u_in in w:
                            continue
                        cand = frozenset(w - {w_out} | {u_in})
                        cv = evaluate(cand)
                        if cv < val:
                            w = set(cand)
                            val = cv
                            improved = True
                            break
                    if improved:
                        break
            if best_val is None or val < best_val or (val == best_val and tuple(sorted(w)) < best_w):
                best_w, best_val = tuple(sorted(w)), val
        chosen = best_w

    return closeness(h, ExtremalTemplate(n, chosen))


@dataclass(frozen=True)
class DensityReport:
    """Result of probing e(H[A]) >= threshold over minimal admissible sets A."""

    passed: bool
    eps: Fraction
    threshold: Fraction
    a_min: int
    b_min: int
    worst_set: VertexSet
    worst_edges: int
    exhaustive: bool
    trials_run: int


def _ceil_frac(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


def density_check(
    h: Hypergraph,
    ps: PartiteStructure,
    eps,
    trials: int = 200,
    seed: int = 0,
) -> DensityReport:
    """Test the density property e(H[A]) >= (eps/6) * e(H).

    Only minimal admissible A are probed (|A cap Q| and |A cap P| at their
    lower bounds): adding vertices never removes induced edges, so minimal
    sets are the worst case.  Exhaustive for |P| <= 9, sampled otherwise.
    """
    if not is_balanced_partite(h, ps):
        raise InputError("density_check expects a balanced (1,3)-partite graph")
    eps = Fraction(eps)
    n = ps.p_size(h.n_vertices)
    a_min = max(0, _ceil_frac((Fraction(1, 3) - eps / 8) * n))
    b_min = max(0, _ceil_frac((Fraction(2, 3) - eps / 8) * n))
    threshold = (eps / 6) * h.n_edges()

    q_list = list(ps.q_vertices())
    p_list = list(ps.p_vertices(h.n_vertices))
    if a_min > len(q_list) or b_min > len(p_list):
        return DensityReport(True, eps, threshold, a_min, b_min, (), 0, True, 0)

    def edges_inside(a_mask: int) -> int:
        return sum(1 for m in h.edge_masks if m & ~a_mask == 0)

    worst_set: VertexSet = ()
    worst_edges = None
    exhaustive = n <= 9
    if exhaustive:
        candidates = (
            qa + pb
            for qa in itertools.combinations(q_list, a_min)
            for pb in itertools.combinations(p_list, b_min)
        )
        trials_run = 0
    else:
        rng = random.Random(f"{seed}/density")
        candidates = (
            tuple(sorted(rng.sample(q_list, a_min))) + tuple(sorted(rng.sample(p_list, b_min)))
            for _ in range(trials)
        )
        trials_run = trials

    for a in candidates:
        cnt = edges_inside(mask_of(a))
        if worst_edges is None or cnt < worst_edges:
            worst_set, worst_edges = a, cnt
            if Fraction(cnt) < threshold:
                break

    if worst_edges is None:
        return DensityReport(True, eps, threshold, a_min, b_min, (), 0, exhaustive, trials_run)
    return DensityReport(
        Fraction(worst_edges) >= threshold,
        eps,
        threshold,
        a_min,
        b_min,
        worst_set,
        worst_edges,
        exhaustive,
        trials_run,
    )


def hnm_degree(n: int, m: int, in_head: bool) -> int:
    """Closed-form degree in H(n, m): used as a cross-check against enumeration."""
    if in_head:
        return binom(n - 1, 2) - binom(m - 1, 2)
    return binom(n - 1, 2) - binom(n - 1 - m, 2)
