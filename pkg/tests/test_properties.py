"""Randomized invariants checked with hypothesis."""
import networkx as nx
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import good_by_definition
from polydigraph.crosspolytope import PairSequence, crosspolytope_lattice, is_good, orientation_of, pair_sequence_of
from polydigraph.datasets import cube, omega_star, simplex
from polydigraph.digraph import PolytopalDigraph, classify, is_acyclic, is_uso, topological_sorts
from polydigraph.lattice import polar
from polydigraph.shelling import boundary_formula_check, shelling_property_all, shelling_property_exists

CUBE3, CUBE4, CROSS3, CROSS4 = cube(3), cube(4), crosspolytope_lattice(3), crosspolytope_lattice(4)


def rankings(n):
    return st.permutations(range(n))


@settings(max_examples=40, deadline=None)
@given(rankings(8))
def test_vertex_rankings_of_cube3(rank):
    # every vertex ranking of a simple polytope's skeleton is acyclic
    G = PolytopalDigraph.from_ranking(CUBE3, rank)
    assert is_acyclic(G)
    if is_uso(G):
        assert shelling_property_exists(G) == shelling_property_all(G, audit=True)
        assert boundary_formula_check(G, all_sorts=True)


@settings(max_examples=25, deadline=None)
@given(rankings(16))
def test_vertex_rankings_of_cube4(rank):
    G = PolytopalDigraph.from_ranking(CUBE4, rank)
    rep = classify(G)
    assert rep.acyclic
    if rep.uso:
        assert shelling_property_exists(G) == shelling_property_all(G, audit=True, max_sorts=2000)


@settings(max_examples=40, deadline=None)
@given(rankings(8))
def test_vertex_rankings_of_cross4(rank):
    G = PolytopalDigraph.from_ranking(CROSS4, rank)
    s = pair_sequence_of(G)
    assert is_good(s) == good_by_definition(s.pairs)
    assert shelling_property_exists(G) == is_good(s)


@settings(max_examples=30, deadline=None)
@given(rankings(6))
def test_topological_sorts_respect_edges(rank):
    G = PolytopalDigraph.from_ranking(CROSS3, rank)
    sorts = list(topological_sorts(G))
    D = nx.DiGraph(list(G.edges))
    assert len(sorts) == sum(1 for _ in nx.all_topological_sorts(D))
    for order in sorts:
        pos = {v: k for k, v in enumerate(order)}
        assert all(pos[a] < pos[b] for a, b in G.edges)


@st.composite
def pair_sequences(draw, max_d=6):
    d = draw(st.integers(1, max_d))
    labels = draw(st.permutations(range(1, 2 * d + 1)))
    pairs = sorted(tuple(sorted(labels[2 * i: 2 * i + 2])) for i in range(d))
    return PairSequence(tuple(pairs))


@settings(max_examples=60, deadline=None)
@given(pair_sequences())
def test_pair_sequence_round_trips(s):
    assert PairSequence.parse(str(s)) == s
    assert pair_sequence_of(orientation_of(s)) == s
    assert is_good(s) == good_by_definition(s.pairs)


def test_polar_is_an_involution():
    for lat in (omega_star(), CUBE4, CROSS4, simplex(4)):
        assert polar(polar(lat)) == lat
        assert polar(lat).f_vector() == lat.f_vector()[::-1]
