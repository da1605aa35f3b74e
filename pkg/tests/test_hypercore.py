"""Core hypergraph type: degrees, links, subgraphs, matchings."""

import itertools
import random

import pytest

from hypermatch import (
    Hypergraph,
    InputError,
    Matching,
    PartiteStructure,
    complete_hypergraph,
    is_balanced_partite,
    is_valid_matching,
)
from hypermatch.constructions import gen_hnm, reduce_family, sharpness_family
from hypermatch.core import degree_sum_identity
from hypermatch.generators import random_hypergraph

from oracles import naive_degree, naive_min_degree, naive_pairwise_disjoint


K4 = complete_hypergraph(3, 4)


def test_constructor_normalizes_and_dedupes():
    h = Hypergraph(3, 5, [(2, 1, 0), (0, 1, 2), (4, 3, 2)])
    assert h.edges == ((0, 1, 2), (2, 3, 4))


@pytest.mark.parametrize(
    "edge",
    [(0, 1), (0, 1, 1), (0, 1, 9)],
)
def test_constructor_rejects_bad_edges(edge):
    with pytest.raises(InputError):
        Hypergraph(3, 5, [edge])


def test_degree_complete_singleton():
    assert K4.degree((0,)) == 3  # every pair completes the edge


def test_degree_hnm_singleton_matches_enumeration():
    h = gen_hnm(6, 1)
    assert h.degree((3,)) == naive_degree(h.edges, (3,)) == 4


def test_degree_of_full_edge_is_one():
    for h in (K4, gen_hnm(6, 2)):
        for e in h.edges:
            assert h.degree(e) == 1


def test_degree_rejects_out_of_range():
    with pytest.raises(InputError):
        K4.degree((7,))


def test_min_degree_l0_is_edge_count():
    for h in (K4, gen_hnm(6, 1), gen_hnm(9, 2)):
        assert h.min_degree(0) == h.n_edges()


def test_min_degree_hnm():
    assert gen_hnm(6, 1).min_degree(1) == 4  # vertex 0 has 10, the rest 4


def test_min_degree_complete():
    assert complete_hypergraph(3, 6).min_degree(1) == 10


def test_min_degree_rejects_l_above_k():
    with pytest.raises(InputError):
        K4.min_degree(4)


def test_link_of_complete_is_triangle():
    link = K4.link(0)
    assert link.k == 2
    assert link.edges == ((1, 2), (1, 3), (2, 3))


def test_link_of_isolated_vertex_is_empty():
    h = Hypergraph(3, 5, [(1, 2, 3)])
    assert h.link(0).edges == ()


def test_link_hnm_center_is_complete_pair_graph():
    link = gen_hnm(6, 1).link(0)
    assert link.edges == tuple(itertools.combinations(range(1, 6), 2))
    assert link.n_edges() == 10


def test_induced_identity_and_empty():
    h = gen_hnm(6, 2)
    assert h.induced(range(6)) == h
    assert h.induced(()).edges == ()


def test_remove_vertices_complete():
    assert K4.remove_vertices((0,)).edges == ((1, 2, 3),)


def test_empty_matching_is_valid():
    assert is_valid_matching(K4, Matching(()))


def test_overlapping_matching_is_invalid():
    m = Matching(((0, 1, 2), (2, 3, 4)))
    h = Hypergraph(3, 5, [(0, 1, 2), (2, 3, 4)])
    assert not is_valid_matching(h, m)


def test_matching_membership_checked():
    assert not is_valid_matching(K4, Matching(((0, 1, 9),)))


def test_reduction_of_sharpness_family_is_balanced():
    h, ps = reduce_family(sharpness_family(6))
    assert is_balanced_partite(h, ps)


def test_colors_shape_validated():
    with pytest.raises(InputError):
        Matching(((0, 1, 2),), colors=(0, 1))
    with pytest.raises(InputError):
        Matching(((0, 1, 2), (3, 4, 5)), colors=(1, 1))


@pytest.mark.parametrize("seed", range(8))
def test_random_invariants(seed):
    rng = random.Random(seed)
    n = rng.randrange(5, 11)
    h = random_hypergraph(n, 3, rng.randrange(0, 25), seed=seed)

    assert degree_sum_identity(h)

    for v in range(n):
        assert h.link(v).n_edges() == h.degree((v,))

    a = tuple(sorted(rng.sample(range(n), rng.randrange(0, n))))
    b = tuple(sorted(set(a) | set(rng.sample(range(n), rng.randrange(0, n)))))
    assert h.induced(a).n_edges() <= h.induced(b).n_edges()

    for size in (1, 2):
        if len(h.edges) >= size:
            picks = rng.sample(range(len(h.edges)), size)
            m = Matching(tuple(h.edges[i] for i in picks))
            assert is_valid_matching(h, m) == naive_pairwise_disjoint(m.edges)


@pytest.mark.parametrize("seed", range(4))
def test_degree_against_oracle(seed):
    h = random_hypergraph(8, 3, 30, seed=seed)
    rng = random.Random(seed)
    for size in (1, 2, 3):
        t = tuple(rng.sample(range(8), size))
        assert h.degree(t) == naive_degree(h.edges, t)
    for l in (0, 1, 2):
        assert h.min_degree(l) == naive_min_degree(h.edges, 8, l)


def test_partite_checks():
    h, ps = reduce_family(sharpness_family(6))
    assert is_balanced_partite(h, ps)
    # breaking an edge's type breaks the partite property
    broken = Hypergraph(4, h.n_vertices, list(h.edges) + [(0, 1, 2, 3)])
    assert not is_balanced_partite(broken, ps)
    # unbalanced class sizes fail even when every edge is properly typed
    wide = Hypergraph(4, h.n_vertices + 1, h.edges)
    assert not is_balanced_partite(wide, ps)
