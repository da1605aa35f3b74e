"""Independent brute-force oracles the tests check the package against.

Everything here is deliberately naive: plain enumeration and backtracking
with no pruning heuristics shared with the implementations under test.
"""

from __future__ import annotations

import itertools
from fractions import Fraction


def naive_degree(edges, t_set) -> int:
    t = set(t_set)
    return sum(1 for e in edges if t <= set(e))


def naive_min_degree(edges, n, l) -> int:
    if l == 0:
        return len(edges)
    return min(
        (naive_degree(edges, t) for t in itertools.combinations(range(n), l)),
        default=0,
    )


def naive_max_matching(edges) -> int:
    """Exhaustive DFS over disjoint edge subsets, no bounds."""
    edges = [frozenset(e) for e in edges]

    def best(start: int, used: frozenset) -> int:
        top = 0
        for i in range(start, len(edges)):
            if not edges[i] & used:
                top = max(top, 1 + best(i + 1, used | edges[i]))
        return top

    return best(0, frozenset())


def naive_has_cover_matching(edges, required) -> bool:
    """Can a set of pairwise disjoint edges cover all of ``required``?"""
    edges = [frozenset(e) for e in edges]
    required = set(required)

    def go(todo, used):
        if not todo:
            return True
        v = min(todo)
        for e in edges:
            if v in e and not e & used:
                if go(todo - e, used | e):
                    return True
        return False

    return go(frozenset(required), frozenset())


def direct_rainbow(members) -> list | None:
    """Backtracking over the members directly, no reduction involved."""

    def go(i, used):
        if i == len(members):
            return []
        for e in members[i].edges:
            se = set(e)
            if not se & used:
                rest = go(i + 1, used | se)
                if rest is not None:
                    return [e] + rest
        return None

    return go(0, set())


def naive_pairwise_disjoint(edges) -> bool:
    for a, b in itertools.combinations(edges, 2):
        if set(a) & set(b):
            return False
    return True


def naive_count_absorbing(h, q_size, t_set):
    """Double enumeration of candidate 12-sets with naive matching checks."""
    t = set(t_set)
    n = h.n_vertices
    q_free = [v for v in range(q_size) if v not in t]
    p_free = [v for v in range(q_size, n) if v not in t]
    count = 0
    for qa in itertools.combinations(q_free, 3):
        for pa in itertools.combinations(p_free, 9):
            a = set(qa) | set(pa)
            inside_a = [e for e in h.edges if set(e) <= a]
            if not naive_has_cover_matching(inside_a, a):
                continue
            union = a | t
            inside_u = [e for e in h.edges if set(e) <= union]
            if naive_has_cover_matching(inside_u, union):
                count += 1
    return count


def check_lp_certificate(h, edge_weights, vertex_weights) -> None:
    """Re-verify feasibility of both LP sides with fresh arithmetic."""
    loads = {v: Fraction(0) for v in range(h.n_vertices)}
    for e, w in edge_weights.items():
        assert Fraction(0) <= w <= Fraction(1), f"weight {w} out of range"
        for v in e:
            loads[v] += w
    assert all(load <= 1 for load in loads.values()), "vertex overload"
    for e in h.edges:
        total = sum(vertex_weights[v] for v in e)
        assert total >= 1, f"edge {e} uncovered: {total}"
    assert all(w >= 0 for w in vertex_weights), "negative cover weight"
