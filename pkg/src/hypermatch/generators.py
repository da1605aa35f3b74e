"""Seeded random instance generators used by experiments and tests."""

from __future__ import annotations

import itertools
import random

from .core import Family, Hypergraph, InputError, PartiteStructure, binom


def random_hypergraph(n: int, k: int, n_edges: int, seed: int = 0) -> Hypergraph:
    """Uniform random k-graph with exactly min(n_edges, C(n,k)) edges."""
    rng = random.Random(f"{seed}/hypergraph")
    total = binom(n, k)
    n_edges = min(n_edges, total)
    edges = set()
    while len(edges) < n_edges:
        edges.add(tuple(sorted(rng.sample(range(n), k))))
    return Hypergraph(k, n, edges)


def random_member(n: int, delta_min: int, seed, k: int = 3) -> Hypergraph:
    """Random k-graph repaired upward until the minimum vertex degree holds."""
    max_deg = binom(n - 1, k - 1)
    if delta_min > max_deg:
        raise InputError(f"delta_min={delta_min} exceeds C(n-1,{k-1})={max_deg}")
    rng = random.Random(f"{seed}/member")
    p0 = delta_min / max_deg if max_deg else 0
    edges = {
        e for e in itertools.combinations(range(n), k) if rng.random() < p0
    }
    degree = [0] * n
    for e in edges:
        for v in e:
            degree[v] += 1
    # add-until-satisfied repair: new random edges through deficient vertices
    while True:
        v = min(range(n), key=lambda u: (degree[u], u))
        if degree[v] >= delta_min:
            break
        while True:
            rest = tuple(sorted(rng.sample([u for u in range(n) if u != v], k - 1)))
            e = tuple(sorted((v,) + rest))
            if e not in edges:
                break
        edges.add(e)
        for u in e:
            degree[u] += 1
    h = Hypergraph(k, n, edges)
    assert h.min_degree(1) >= delta_min
    return h


def random_family(n: int, t: int, delta_min: int, seed: int = 0, k: int = 3) -> Family:
    """Family of t random k-graphs, each with min vertex degree >= delta_min."""
    members = tuple(
        random_member(n, delta_min, f"{seed}/family/{i}", k=k) for i in range(t)
    )
    return Family(n_vertices=n, members=members)


def random_partite(
    q_size: int,
    p_size: int,
    n_edges: int,
    seed: int = 0,
    k: int = 4,
) -> tuple[Hypergraph, PartiteStructure]:
    """Random (1, k-1)-partite k-graph with the Q class on the low indices."""
    rng = random.Random(f"{seed}/partite")
    n = q_size + p_size
    total = q_size * binom(p_size, k - 1)
    n_edges = min(n_edges, total)
    edges = set()
    while len(edges) < n_edges:
        q = rng.randrange(q_size)
        rest = tuple(sorted(rng.sample(range(q_size, n), k - 1)))
        edges.add(tuple(sorted((q,) + rest)))
    return Hypergraph(k, n, edges), PartiteStructure(q_size)


def near_regular_typed(
    q_size: int,
    p_size: int,
    target_degree: int,
    seed: int = 0,
    pair_degree_cap: int = 3,
) -> tuple[Hypergraph, PartiteStructure]:
    """Near-regular (1,3)-partite 4-graph with bounded pair degrees.

    Stacks ``target_degree`` random perfect matchings of the complete typed
    graph, skipping duplicates and edges that would push any pair degree
    over the cap, so every vertex degree sits at or just below the target.
    """
    if p_size != 3 * q_size:
        raise InputError("near_regular_typed needs |P| = 3 |Q|")
    rng = random.Random(f"{seed}/near-regular")
    n = q_size + p_size
    edges = set()
    pair_deg: dict = {}
    for _ in range(target_degree):
        qs = list(range(q_size))
        ps_ = list(range(q_size, n))
        rng.shuffle(qs)
        rng.shuffle(ps_)
        for j, q in enumerate(qs):
            e = tuple(sorted((q,) + tuple(ps_[3 * j : 3 * j + 3])))
            if e in edges:
                continue
            pairs = list(itertools.combinations(e, 2))
            if any(pair_deg.get(pr, 0) >= pair_degree_cap for pr in pairs):
                continue
            edges.add(e)
            for pr in pairs:
                pair_deg[pr] = pair_deg.get(pr, 0) + 1
    return Hypergraph(4, n, edges), PartiteStructure(q_size)
