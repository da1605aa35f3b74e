"""Generators for the named constructions and the closeness measures."""

import itertools
import random
from fractions import Fraction

import pytest

from hypermatch import (
    ExtremalTemplate,
    Hypergraph,
    InputError,
    PartiteStructure,
    alpha_bad_vertices,
    closeness,
    closeness_to_extremal,
    complete_hypergraph,
    density_check,
    gen_extremal_h13,
    gen_hnm,
    is_balanced_partite,
    reduce_family,
    sharpness_family,
)
from hypermatch.constructions import hnm_degree
from hypermatch.core import binom
from hypermatch.exact import has_perfect_matching, rainbow_matching
from hypermatch.generators import random_family

from oracles import direct_rainbow, naive_degree


def test_hnm_61_is_all_triples_through_zero():
    h = gen_hnm(6, 1)
    assert h.n_edges() == 10
    assert all(0 in e for e in h.edges)


def test_hnm_62_edge_count():
    # enumeration oracle: C(6,3) - C(4,3) triples meet {0,1} without fitting inside
    expected = sum(
        1
        for e in itertools.combinations(range(6), 3)
        if set(e) & {0, 1} and not set(e) <= {0, 1}
    )
    assert expected == 16
    assert gen_hnm(6, 2).n_edges() == 16


def test_hnm_zero_head_is_edgeless():
    assert gen_hnm(7, 0).edges == ()


def test_hnm_rejects_m_above_n():
    with pytest.raises(InputError):
        gen_hnm(5, 6)


@pytest.mark.parametrize("n", range(4, 16))
def test_hnm_degree_formula_matches_enumeration(n):
    for m in range(0, n // 3 + 1):
        h = gen_hnm(n, m)
        for v in range(n):
            want = hnm_degree(n, m, in_head=v < m)
            assert h.degree((v,)) == naive_degree(h.edges, (v,)) == want
        if 0 < m < n / 2:
            assert h.min_degree(1) == binom(n - 1, 2) - binom(n - 1 - m, 2)


def test_sharpness_delta_formula():
    for n in (6, 9, 12, 15):
        h = gen_hnm(n, n // 3 - 1)
        assert h.min_degree(1) == binom(n - 1, 2) - binom(2 * n // 3, 2)


def test_reduce_two_singleton_members():
    f1 = Hypergraph(3, 6, [(0, 1, 2)])
    f2 = Hypergraph(3, 6, [(3, 4, 5)])
    from hypermatch.core import Family

    h, ps = reduce_family(Family(6, (f1, f2)))
    assert h.n_edges() == 2
    assert is_balanced_partite(h, ps)
    assert has_perfect_matching(h).status == "perfect"


@pytest.mark.parametrize("seed", range(6))
def test_reduction_pair_degree_identity(seed):
    family = random_family(6, 2, delta_min=2, seed=seed)
    h, ps = reduce_family(family)
    assert h.n_edges() == sum(f.n_edges() for f in family.members)
    for i, member in enumerate(family.members):
        assert h.degree((i,)) == member.n_edges()
        for u in range(6):
            assert h.degree((i, ps.q_size + u)) == member.degree((u,))


def test_reduction_balanced_iff_t_matches():
    fam = random_family(6, 2, delta_min=1, seed=3)
    h, ps = reduce_family(fam)
    assert is_balanced_partite(h, ps)
    fam_small = random_family(6, 1, delta_min=1, seed=3)
    h2, ps2 = reduce_family(fam_small)
    assert not is_balanced_partite(h2, ps2)


@pytest.mark.parametrize("seed", range(40))
def test_reduction_equivalence_with_direct_oracle(seed):
    family = random_family(6, 2, delta_min=random.Random(seed).randrange(0, 8), seed=seed)
    via_reduction = has_perfect_matching(reduce_family(family)[0]).status == "perfect"
    via_rainbow = rainbow_matching(family).status == "found"
    via_oracle = direct_rainbow(family.members) is not None
    assert via_reduction == via_rainbow == via_oracle


def test_sharpness_family_has_no_rainbow():
    assert rainbow_matching(sharpness_family(6)).status == "none"


def test_h_n_third_has_perfect_matching_at_six():
    # H(6,2): two disjoint triples, each using one head vertex
    from hypermatch.exact import max_matching

    assert max_matching(gen_hnm(6, 2)).size == 2


def test_closeness_of_template_is_zero():
    tpl = ExtremalTemplate(6, (4, 7))
    h = gen_extremal_h13(6, (4, 7))
    rep = closeness(h, tpl)
    assert rep.missing_edges == 0
    assert rep.epsilon == 0


def test_closeness_of_edgeless_counts_all():
    tpl = ExtremalTemplate(6, (6, 7))
    empty = Hypergraph(4, 8, ())
    rep = closeness(empty, tpl)
    assert rep.missing_edges == len(list(tpl.edges()))
    assert rep.epsilon == Fraction(rep.missing_edges, 8**4)


def test_closeness_counts_removed_edges():
    tpl = ExtremalTemplate(6, (6, 7))
    h = gen_extremal_h13(6, (6, 7))
    kept = h.edges[5:]
    rep = closeness(Hypergraph(4, 8, kept), tpl)
    assert rep.missing_edges == 5


def test_closeness_to_extremal_recovers_w():
    h = gen_extremal_h13(6, (3, 5))
    rep = closeness_to_extremal(h)
    assert rep.missing_edges == 0
    assert rep.template.w_set == (3, 5)


def test_closeness_local_search_stays_close():
    h = gen_extremal_h13(6, (3, 5))
    rep = closeness_to_extremal(h, mode="local", restarts=6, seed=1)
    assert rep.missing_edges == 0


def test_alpha_bad_empty_on_template():
    tpl = ExtremalTemplate(6, (6, 7))
    h = gen_extremal_h13(6, (6, 7))
    assert alpha_bad_vertices(h, tpl, Fraction(1, 10**6)) == ()


def test_alpha_one_never_flags():
    tpl = ExtremalTemplate(6, (6, 7))
    h = Hypergraph(4, 8, ())
    assert alpha_bad_vertices(h, tpl, 1) == ()


def test_alpha_window_isolates_lossy_vertex():
    w = (9, 10, 11)
    tpl = ExtremalTemplate(9, w)
    h = gen_extremal_h13(9, w)
    victim = 3
    # drop three edges pairwise sharing only the victim, so every other
    # vertex loses at most one template edge
    chosen = []
    seen = set()
    for e in h.edges:
        if victim not in e:
            continue
        others = {v for v in e if v != victim}
        if not others & seen:
            chosen.append(e)
            seen |= others
        if len(chosen) == 3:
            break
    assert len(chosen) == 3
    kept = [e for e in h.edges if e not in chosen]
    rep = closeness(Hypergraph(4, tpl.n_vertices, kept), tpl)
    alpha = Fraction(5, 2 * 9**3)  # threshold of 2.5 edges: between 1 and 3
    assert rep.deficiency[victim] == 3
    assert max(d for v, d in enumerate(rep.deficiency) if v != victim) == 1
    assert rep.bad_vertices(alpha) == (victim,)


@pytest.mark.parametrize("seed", range(5))
def test_bad_vertex_counting_bound(seed):
    tpl = ExtremalTemplate(6, (6, 7))
    h = gen_extremal_h13(6, (6, 7))
    rng = random.Random(seed)
    kept = [e for e in h.edges if rng.random() < 0.7]
    rep = closeness(Hypergraph(4, 8, kept), tpl)
    alpha = Fraction(1, 100)
    bad = rep.bad_vertices(alpha)
    assert len(bad) * alpha * 6**3 <= 4 * rep.missing_edges


def test_density_complete_passes():
    q, p = 2, 6
    edges = [(v,) + t for v in range(q) for t in itertools.combinations(range(q, q + p), 3)]
    h = Hypergraph(4, 8, edges)
    rep = density_check(h, PartiteStructure(2), Fraction(1, 2))
    assert rep.passed
    assert rep.exhaustive


def test_density_edgeless_vacuous():
    q, p = 2, 6
    h = Hypergraph(4, 8, ())
    rep = density_check(h, PartiteStructure(2), Fraction(1, 4))
    assert rep.passed  # 0 >= 0


def test_density_template_fails_avoiding_w():
    h = gen_extremal_h13(6, (6, 7))
    rep = density_check(h, PartiteStructure(2), Fraction(1, 3))
    # Q + U is an admissible minimal set with no induced edges
    assert not rep.passed
    assert rep.worst_edges == 0
