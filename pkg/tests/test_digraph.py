import itertools
import json

import networkx as nx
import pytest

from oracles import linear_extensions_bruteforce
from polydigraph.constructions import pyramid
from polydigraph.crosspolytope import (
    PairSequence,
    all_pair_sequences,
    has_unique_sink,
    has_unique_source,
    orientation_of,
)
from polydigraph.datasets import cube, linear_cube_digraph, omega, omega_digraph, simplex, xseven_digraph
from polydigraph.digraph import (
    PolytopalDigraph,
    classify,
    disjoint_path_count,
    dump_orientation,
    face_sources_sinks,
    find_cycle,
    holt_klee,
    holt_klee_witness,
    is_acyclic,
    is_uso,
    load_orientation,
    topological_sorts,
    uso_witness,
)
from polydigraph.errors import CyclicInput, InvalidOrientation
from polydigraph.lattice import VertexFacetIncidence, build_face_lattice, skeleton


def triangle():
    return build_face_lattice(VertexFacetIncidence(["a", "b", "c"], [{0, 1}, {1, 2}, {0, 2}]))


def square():
    return build_face_lattice(VertexFacetIncidence(["a", "b", "c", "d"], [{0, 1}, {1, 2}, {2, 3}, {0, 3}]))


def test_support_must_equal_skeleton():
    lat = triangle()
    with pytest.raises(InvalidOrientation):
        PolytopalDigraph(lat, ((0, 1), (1, 2)))
    with pytest.raises(InvalidOrientation):
        PolytopalDigraph(lat, ((0, 1), (1, 0), (1, 2), (0, 2)))


def test_cycle_witness():
    G = PolytopalDigraph(triangle(), ((0, 1), (1, 2), (2, 0)))
    cyc = find_cycle(G)
    assert sorted(cyc) == [0, 1, 2]
    assert all((cyc[i], cyc[(i + 1) % 3]) in G.edges for i in range(3))
    assert not is_acyclic(G)
    with pytest.raises(CyclicInput):
        next(topological_sorts(G))
    rep = classify(G)
    assert not rep.acyclic and not rep.shelling and not rep.x_type


def test_omega_index_orientation():
    G = omega_digraph()
    assert is_acyclic(G)
    sorts = list(topological_sorts(G))
    assert sorts == [list(range(10))]
    top = G.lattice.top
    assert face_sources_sinks(G, top) == ([0], [9])
    # four internally disjoint F_1 -> F_10 paths in the whole graph
    assert disjoint_path_count(G.succ, range(10), 0, 9) == 4


def test_omega_uso_failure_is_the_bipyramid_facet():
    G = omega_digraph()
    face = uso_witness(G)
    assert G.lattice.names(face) == ("F_1", "F_2", "F_3", "F_4", "F_10")
    assert face_sources_sinks(G, face)[1] == [3, 9]
    assert not is_uso(G)
    assert not holt_klee(G)


@pytest.mark.parametrize("seq", ["(13)(25)(46)", "(14)(26)(35)", "(12)(34)(56)"])
def test_topological_sorts_match_brute_force(seq):
    G = orientation_of(PairSequence.parse(seq))
    got = list(topological_sorts(G))
    want = linear_extensions_bruteforce(G.n, G.edges)
    assert got == want  # same lexicographic order
    assert len({tuple(o) for o in got}) == len(got)


def test_topological_sorts_on_cube_and_pyramid():
    G = linear_cube_digraph(3)
    assert list(topological_sorts(G)) == linear_extensions_bruteforce(8, G.edges)
    _, P = pyramid(None, G)
    assert is_acyclic(P)
    assert all(o[-1] == 8 for o in topological_sorts(P))


def test_two_sources_in_square():
    G = orientation_of(PairSequence.parse("(12)(34)"))
    sources, sinks = face_sources_sinks(G, G.lattice.top)
    assert sources == [0, 1]
    assert not is_uso(G)


def test_square_with_two_sinks():
    G = PolytopalDigraph(square(), ((0, 1), (2, 1), (2, 3), (0, 3)))
    assert is_acyclic(G)
    assert not is_uso(G)
    assert uso_witness(G) == G.lattice.top


def test_single_vertex_face_is_source_and_sink():
    G = omega_digraph()
    for v in range(G.n):
        assert face_sources_sinks(G, {v}) == ([v], [v])


def test_linear_orientations_have_all_four_properties():
    for lat in (simplex(3), simplex(4)):
        G = PolytopalDigraph.from_ranking(lat, range(lat.n_vertices))
        rep = classify(G)
        assert (rep.acyclic, rep.uso, rep.holt_klee, rep.shelling) == (True, True, True, True)
        assert not rep.x_type
    rep = classify(linear_cube_digraph(4, [3, 5, 7, 11]))
    assert rep.uso and rep.holt_klee and rep.shelling


def test_xseven_is_x_type():
    rep = classify(xseven_digraph())
    assert (rep.acyclic, rep.uso, rep.holt_klee, rep.shelling) == (True, True, True, False)
    assert rep.x_type
    assert rep.shelling_verdict.failing_index == 3


def nx_disjoint(G, face):
    D = nx.DiGraph()
    verts = sorted(face.vertices)
    D.add_nodes_from(verts)
    D.add_edges_from((a, b) for a, b in G.edges if a in face.vertices and b in face.vertices)
    (s,), (t,) = face_sources_sinks(G, face)
    if D.has_edge(s, t):
        D.remove_edge(s, t)
        return 1 + len(list(nx.node_disjoint_paths(D, s, t))) if nx.has_path(D, s, t) else 1
    return len(list(nx.node_disjoint_paths(D, s, t)))


@pytest.mark.parametrize("d", [3, 4])
def test_holt_klee_flow_matches_networkx(d):
    checked = 0
    for s in all_pair_sequences(d):
        G = orientation_of(s)
        if not is_uso(G):
            continue
        for face in G.lattice.faces:
            if face.dimension < 2:
                continue
            (src,), (snk,) = face_sources_sinks(G, face)
            ours = disjoint_path_count(G.succ, face.vertices, src, snk)
            assert ours == nx_disjoint(G, face)
            out_deg = len(G.succ[src] & face.vertices)
            in_deg = len(G.pred[snk] & face.vertices)
            assert ours <= min(out_deg, in_deg)
            checked += 1
    assert checked > 0


def test_uso_criterion_on_crosspolytopes():
    for d in range(1, 5):
        for s in all_pair_sequences(d):
            G = orientation_of(s)
            assert is_uso(G) == (has_unique_source(s) and has_unique_sink(s))
            if is_uso(G):
                assert holt_klee(G)


def test_holt_klee_failure_witness():
    # search the 3-cube orientations for a USO that fails Holt-Klee
    lat = cube(3)
    found = None
    edges = skeleton(lat)
    for bits in itertools.product((0, 1), repeat=len(edges)):
        G = PolytopalDigraph(lat, tuple((a, b) if x else (b, a) for (a, b), x in zip(edges, bits)))
        if is_uso(G) and not holt_klee(G):
            found = G
            break
    assert found is not None
    face = holt_klee_witness(found)
    assert face is not None and face.dimension >= 2
    assert not classify(found).holt_klee


def test_orientation_json_round_trip(tmp_path):
    G = omega_digraph()
    path = tmp_path / "o.json"
    dump_orientation(G, path)
    doc = json.loads(path.read_text())
    assert doc["polytope"] == "omega"
    again = load_orientation(path, omega())
    assert again.edges == G.edges
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"edges": [[0, 1, 2]]}))
    with pytest.raises(InvalidOrientation):
        load_orientation(bad, omega())


def test_dot_output():
    dot = omega_digraph().to_dot()
    assert dot.startswith('digraph "omega"')
    assert '"F_1" -> "F_2";' in dot
    assert dot.count("->") == 23


def test_omega_bipyramid_facet_has_two_sinks_from_raw_edges():
    G = omega_digraph()
    names = G.lattice.vertex_names
    face = {names.index(x) for x in ("F_1", "F_2", "F_3", "F_4", "F_10")}
    inside = [(a, b) for a, b in G.edges if a in face and b in face]
    sinks = sorted(names[v] for v in face if not any(a == v for a, _ in inside))
    assert sinks == ["F_10", "F_4"]
    # the facet really is a face of omega
    assert frozenset(face) in set(G.lattice.facets)
