import random
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from oracles import brute_aut, brute_canonical
from turan3.constructions import complete, full_star, hilton_milner
from turan3.core import Hypergraph, all_triples, relabel
from turan3.iso import (
    are_isomorphic,
    automorphism_count,
    canonical_form,
    canonical_labeling,
    is_canonical,
)
from turan3.patterns import build_pattern


def _random_graph(rng, n, p=None):
    tri = all_triples(n)
    p = rng.random() if p is None else p
    return Hypergraph(n, tuple(t for t in tri if rng.random() < p))


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 6), st.integers(0, 2**31 - 1))
def test_matches_brute_force_minimum(n, seed):
    h = _random_graph(random.Random(seed), n)
    assert canonical_form(h).canonical_edges == brute_canonical(h)
    assert automorphism_count(h) == brute_aut(h)


def test_relabel_invariance_corpus():
    rng = random.Random(20261016)
    for _ in range(50):
        n = rng.randint(3, 8)
        h = _random_graph(rng, n)
        cf = canonical_form(h)
        for _ in range(200):
            perm = list(range(n))
            rng.shuffle(perm)
            assert canonical_form(relabel(h, perm)) == cf


def test_labeling_realizes_form():
    rng = random.Random(5)
    for _ in range(20):
        h = _random_graph(rng, 9, 0.3)
        assert relabel(h, canonical_labeling(h)).edges == canonical_form(h).canonical_edges


@pytest.mark.parametrize(
    "h,aut",
    [
        (complete(5), 120),
        (full_star(6), 120),
        (Hypergraph(4), 24),
        (build_pattern("P3_3").graph, 8),
        (build_pattern("C3_3").graph, 6),
        (build_pattern("M2").graph, 72),
    ],
)
def test_automorphism_counts(h, aut):
    assert automorphism_count(h) == aut
    if h.n <= 7:
        assert brute_aut(h) == aut


def test_isomorphism_checks():
    a = Hypergraph(5, ((0, 1, 2), (2, 3, 4)))
    b = Hypergraph(5, ((0, 3, 4), (1, 2, 4)))
    c = Hypergraph(5, ((0, 1, 2), (1, 2, 3)))
    assert are_isomorphic(a, b)
    assert not are_isomorphic(a, c)
    assert not are_isomorphic(a, Hypergraph(6, a.edges))


def test_is_canonical_and_prefix_closure():
    # every prefix of a canonical edge list is canonical (orderly generation relies on it)
    rng = random.Random(11)
    for _ in range(30):
        cf = canonical_form(_random_graph(rng, 7, 0.4)).canonical_edges
        for k in range(len(cf) + 1):
            assert is_canonical(Hypergraph(7, cf[:k]))


def test_structured_graphs_larger_n():
    for n in (10, 12, 14):
        h = hilton_milner(n)
        perm = list(range(n))
        random.Random(n).shuffle(perm)
        assert canonical_form(relabel(h, perm)) == canonical_form(h)
        # Aut fixes 0 and permutes {1,2,3} and the rest freely
        assert automorphism_count(h) == 6 * __import__("math").factorial(n - 4)


def test_small_orders():
    for n in range(3):
        assert automorphism_count(Hypergraph(n)) == [1, 1, 2][n]


def test_isomorphism_class_counts():
    # known numbers of 3-graphs on n unlabeled vertices
    from oracles import iso_classes

    assert [len(iso_classes(n)) for n in range(7)] == [1, 1, 1, 2, 5, 34, 2136]
