"""Truncation and pyramid operations on polytopes carrying a digraph.

Both operations are purely combinatorial: they rewrite the vertex-facet
incidence and extend the orientation, then rebuild and re-validate the
face lattice.  No coordinates are produced.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .digraph import PolytopalDigraph, find_cycle
from .errors import (
    BadSplit,
    BoundsViolation,
    CyclicInput,
    NotDimensionFour,
    NotSimpleVertex,
    NotUniqueSink,
    ValidationError,
)
from .lattice import FaceLattice, VertexFacetIncidence, build_face_lattice


@dataclass(frozen=True)
class TruncationSpec:
    """Vertex to cut off and the roles ``(v_1, v_2, v_3, v_4)`` of its neighbours.

    ``u_1`` is placed on the edge to ``v_1`` and ``u_2`` on the edge to
    ``v_2``; the cutting hyperplane passes through ``u_1, u_2, v_3, v_4``.
    """

    vertex: int
    split: tuple[int, int, int, int]

    def names(self, lat: FaceLattice) -> dict:
        return {
            "vertex": lat.vertex_names[self.vertex],
            "split": [lat.vertex_names[w] for w in self.split],
        }


@dataclass(frozen=True)
class FamilySpec:
    """Target dimension ``d >= 4`` and vertex count ``n``."""

    d: int
    n: int

    def __post_init__(self):
        if self.d < 4:
            raise BoundsViolation(f"target dimension must be >= 4, got {self.d}")

    def operations(self, n0: int) -> tuple[int, int]:
        """Number of truncations and pyramids needed from a base with ``n0`` vertices."""
        if self.n < n0 + self.d - 4:
            raise BoundsViolation(f"need n >= n0 + d - 4 = {n0 + self.d - 4}, got n = {self.n}")
        return self.n - n0 - self.d + 4, self.d - 4


def _lattice_of(P) -> FaceLattice:
    return P if isinstance(P, FaceLattice) else build_face_lattice(P)


def _check_base(P, G: PolytopalDigraph) -> FaceLattice:
    if P is not None and _lattice_of(P) != G.lattice:
        raise ValidationError("orientation does not belong to the given polytope")
    return G.lattice


def _neighbours(G: PolytopalDigraph, v: int) -> list[int]:
    return sorted(set(G.succ[v]) | set(G.pred[v]))


def _check_truncatable(G: PolytopalDigraph, v: int) -> None:
    lat = G.lattice
    if lat.dimension != 4:
        raise NotDimensionFour(f"truncation needs a 4-polytope, got dimension {lat.dimension}")
    if not 0 <= v < G.n:
        raise ValidationError(f"vertex index {v} out of range")
    at_v = [f for f in lat.facets if v in f]
    if len(at_v) != 4 or len(_neighbours(G, v)) != 4:
        raise NotSimpleVertex(f"vertex {lat.vertex_names[v]} is not simple")
    if find_cycle(G) is not None:
        raise CyclicInput("truncation needs an acyclic orientation")
    if G.sinks() != [v]:
        raise NotUniqueSink(f"vertex {lat.vertex_names[v]} is not the unique sink")


def choose_split(G: PolytopalDigraph, v: int) -> TruncationSpec:
    """The lexicographically least role assignment with no path ``v_4 -> v_3``.

    At a simple vertex each of the four facets omits exactly one
    neighbour, so every permutation of the neighbours fits the facet
    pattern; only the path condition filters.
    """
    _check_truncatable(G, v)
    for perm in itertools.permutations(_neighbours(G, v)):
        if not G.has_path(perm[3], perm[2]):
            return TruncationSpec(v, perm)
    raise BadSplit("every role assignment has a directed path v_4 -> v_3")


def truncate(
    P, G: PolytopalDigraph, spec: TruncationSpec | None = None
) -> tuple[VertexFacetIncidence, PolytopalDigraph]:
    """Cut off the unique sink of ``G`` (a simple vertex of a 4-polytope).

    :param P: incidence or lattice of the polytope, or None to use ``G``'s
    :param spec: vertex and split; defaults to the sink with :func:`choose_split`
    :return: incidence and orientation of the truncated polytope; ``u_1`` and
        ``u_2`` are appended as the last two vertices
    """
    lat = _check_base(P, G)
    if spec is None:
        sinks = G.sinks()
        if len(sinks) != 1:
            raise NotUniqueSink(f"digraph has {len(sinks)} sinks")
        spec = choose_split(G, sinks[0])
    v = spec.vertex
    _check_truncatable(G, v)
    v1, v2, v3, v4 = split = tuple(spec.split)
    if sorted(split) != _neighbours(G, v):
        raise BadSplit("split must list the four neighbours of v")
    if G.has_path(v4, v3):
        raise BadSplit(f"directed path from {lat.vertex_names[v4]} to {lat.vertex_names[v3]}")

    n = G.n
    u1, u2 = n, n + 1
    keep = [w for w in range(n) if w != v]
    new_index = {w: k for k, w in enumerate(keep)}
    new_index[u1], new_index[u2] = n - 1, n

    # facets away from v first, then the four at v ordered by the neighbour they omit
    away = [(f, name) for f, name in zip(lat.facets, lat.facet_names) if v not in f]
    at_v = {}
    for f, name in zip(lat.facets, lat.facet_names):
        if v in f:
            missing = [w for w in split if w not in f]
            if len(missing) != 1 or missing[0] in at_v:
                raise NotSimpleVertex("facets at v do not match the simple-vertex pattern")
            at_v[missing[0]] = (f, name)
    facets, names = [], []
    for f, name in away:
        facets.append(set(f))
        names.append(name)
    for w in split:
        f, name = at_v[w]
        g = set(f) - {v}
        if v1 in f:
            g.add(u1)
        if v2 in f:
            g.add(u2)
        facets.append(g)
        names.append(name)
    facets.append({u1, u2, v3, v4})
    vname = lat.vertex_names[v]
    names.append(f"cut({vname})")

    vertex_names = [lat.vertex_names[w] for w in keep] + [f"{vname}.u1", f"{vname}.u2"]
    inc = VertexFacetIncidence(
        vertex_names,
        [frozenset(new_index[w] for w in f) for f in facets],
        names,
        name=f"tr({lat.name})" if lat.name else "",
    )

    edges = [(a, b) for a, b in G.edges if v not in (a, b)]
    if not any({a, b} == {v3, v4} for a, b in edges):
        edges.append((v3, v4))
    edges += [(v1, u1), (v3, u1), (v4, u1), (v2, u2), (v3, u2), (v4, u2), (u1, u2)]
    new_lat = build_face_lattice(inc)
    H = PolytopalDigraph(new_lat, tuple((new_index[a], new_index[b]) for a, b in edges))

    sink = new_index[u2]
    if H.sinks() != [sink] or sum(sink in f for f in new_lat.facets) != 4:
        raise AssertionError("truncation did not produce a simple unique sink u_2")
    return inc, H


def pyramid(P, G: PolytopalDigraph, apex: str | None = None) -> tuple[VertexFacetIncidence, PolytopalDigraph]:
    """Pyramid over the polytope with every new edge directed into the apex.

    The apex is appended as the last vertex; the old polytope becomes the
    last facet.
    """
    lat = _check_base(P, G)
    d = lat.dimension
    n = G.n
    apex = apex or f"apex{d + 1}"
    if apex in lat.vertex_names:
        raise ValidationError(f"apex name {apex!r} already used")
    facets = [frozenset(f) | {n} for f in lat.facets] + [frozenset(range(n))]
    base = f"base{d + 1}"
    names = list(lat.facet_names) + [base if base not in lat.facet_names else f"{base}'"]
    inc = VertexFacetIncidence(
        list(lat.vertex_names) + [apex],
        facets,
        names,
        name=f"py({lat.name})" if lat.name else "",
    )
    edges = tuple(G.edges) + tuple((w, n) for w in range(n))
    return inc, PolytopalDigraph(build_face_lattice(inc), edges)


def family(
    P0, G0: PolytopalDigraph, spec: FamilySpec, splits: list | None = None
) -> tuple[VertexFacetIncidence, PolytopalDigraph]:
    """Truncate ``n - n0 - d + 4`` times, then take ``d - 4`` pyramids.

    :param splits: if given, receives the :class:`TruncationSpec` used at
        each truncation (with vertex names resolved)
    :raises BoundsViolation: if ``d < 4`` or ``n < n0 + d - 4``
    """
    lat = _check_base(P0, G0)
    if lat.dimension != 4:
        raise NotDimensionFour(f"base polytope has dimension {lat.dimension}")
    n_trunc, n_pyr = spec.operations(G0.n)
    inc, G = lat.incidence, G0
    for _ in range(n_trunc):
        sinks = G.sinks()
        if len(sinks) != 1:
            raise NotUniqueSink(f"digraph has {len(sinks)} sinks")
        step = choose_split(G, sinks[0])
        if splits is not None:
            splits.append(step.names(G.lattice))
        inc, G = truncate(None, G, step)
    for _ in range(n_pyr):
        inc, G = pyramid(None, G)
    return inc, G
