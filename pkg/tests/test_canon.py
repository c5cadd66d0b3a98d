import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dipebble.canon import canonical_form, canonical_graph, canonical_labeling, enumerate_digraphs
from dipebble.constructions import build_layered
from dipebble.digraph import Digraph, DigraphError, is_oriented, is_strongly_connected, strong_diameter

from graphs import complete_bidirected, cycle
from oracles import arcs_of, brute_canonical, brute_classes
from test_digraph import digraphs


def test_relabelled_triangles_are_equal():
    a = Digraph.from_arcs(3, [(0, 1), (1, 2), (2, 0)])
    b = Digraph.from_arcs(3, [(0, 2), (2, 1), (1, 0)])
    assert canonical_form(a) == canonical_form(b)


def test_triangle_differs_from_bidirected_triangle():
    assert canonical_form(cycle(3)) != canonical_form(complete_bidirected(3))


def test_random_permutations_of_layered_graph():
    g = build_layered(3, 2).graph
    key = canonical_form(g)
    rng = random.Random(7)
    for _ in range(1000):
        perm = list(range(g.n))
        rng.shuffle(perm)
        assert canonical_form(g.relabel(perm)) == key


@settings(max_examples=200, deadline=None)
@given(digraphs(max_n=7), st.randoms(use_true_random=False))
def test_canonical_form_is_permutation_invariant(g, rng):
    perm = list(range(g.n))
    rng.shuffle(perm)
    assert canonical_form(g.relabel(perm)) == canonical_form(g)


@settings(max_examples=300, deadline=None)
@given(digraphs(max_n=5), digraphs(max_n=5))
def test_canonical_form_is_exact(g, h):
    same = g.n == h.n and brute_canonical(g.n, arcs_of(g)) == brute_canonical(h.n, arcs_of(h))
    assert (canonical_form(g) == canonical_form(h)) == same


@settings(max_examples=100, deadline=None)
@given(digraphs(max_n=7))
def test_canonical_labeling_produces_canonical_graph(g):
    key, perm = canonical_labeling(g)
    c = canonical_graph(g)
    assert c == g.relabel(perm)
    assert canonical_labeling(c) == (key, list(range(g.n)))


def test_canonical_form_order_limit():
    with pytest.raises(DigraphError):
        canonical_form(Digraph(11, (0,) * 11))


def test_enumerate_two_vertices():
    assert len(list(enumerate_digraphs(2, oriented_only=True))) == 2
    assert len(list(enumerate_digraphs(2, oriented_only=False))) == 3


def test_enumerate_strong_diameter_two_triangle():
    found = list(enumerate_digraphs(
        3, True, lambda g: is_strongly_connected(g) and strong_diameter(g) == 2
    ))
    assert len(found) == 1
    assert canonical_form(found[0]) == canonical_form(cycle(3))


@pytest.mark.parametrize("n, oriented_only", [(3, False), (3, True), (4, True)])
def test_enumeration_matches_brute_force_classes(n, oriented_only):
    listed = list(enumerate_digraphs(n, oriented_only))
    assert {brute_canonical(n, arcs_of(g)) for g in listed} == brute_classes(n, oriented_only)
    assert len(listed) == len(brute_classes(n, oriented_only))


@pytest.mark.parametrize(
    "n, oriented_only, count",
    # known counts of unlabelled oriented graphs and digraphs
    [(1, True, 1), (2, True, 2), (3, True, 7), (4, True, 42), (5, True, 582),
     (1, False, 1), (2, False, 3), (3, False, 16), (4, False, 218)],
)
def test_enumeration_counts(n, oriented_only, count):
    assert sum(1 for _ in enumerate_digraphs(n, oriented_only)) == count


def test_enumeration_is_sorted_unique_and_oriented():
    graphs = list(enumerate_digraphs(5, oriented_only=True))
    keys = [canonical_form(g) for g in graphs]
    assert keys == sorted(keys)
    assert len(set(keys)) == len(keys)
    assert all(is_oriented(g) for g in graphs)
    assert all(canonical_graph(g) == g for g in graphs)


def test_enumeration_is_deterministic():
    first = list(enumerate_digraphs(4, False, is_strongly_connected))
    second = list(enumerate_digraphs(4, False, is_strongly_connected))
    assert first == second


def test_enumeration_order_limits():
    with pytest.raises(DigraphError):
        next(enumerate_digraphs(7, oriented_only=False))
    with pytest.raises(DigraphError, match="long-running"):
        next(enumerate_digraphs(7, oriented_only=True))
    with pytest.raises(DigraphError):
        next(enumerate_digraphs(0))
