"""Embedded polytopes.

``omega_star`` is the 4-polytope with eight vertices ``1..8`` and ten facets
``F_1..F_10``; ``omega`` is its combinatorial polar, whose vertices are
named ``F_1..F_10``.  The digraph on ``omega`` orients every edge from the
smaller facet index to the larger one.

``xseven`` is a simplicial 4-polytope with seven integer vertices.  Its
index orientation is acyclic, unique-sink and Holt-Klee but has no
shelling topological sort, and its sink is simple.  It serves as a base
for the truncation and pyramid constructions.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .digraph import PolytopalDigraph
from .geometry import Halfspace, supporting_halfspace, verify_vh
from .lattice import FaceLattice, VertexFacetIncidence, build_face_lattice, polar

OMEGA_STAR_POINTS = (
    (-2, 1, 1, 1),
    (2, 1, 1, 1),
    (0, -2, 1, 1),
    (-4, 2, -2, -1),
    (4, 2, -2, -1),
    (0, -4, -2, -1),
    (0, 0, 2, -1),
    (0, 0, -1, 1),
)

# name, 1-based vertex list, (a_1, a_2, a_3, a_4, b)
OMEGA_STAR_FACETS = (
    ("F_1", (1, 2, 4, 5, 7), (0, 4, 2, -1, 5)),
    ("F_2", (1, 3, 4, 6, 7), (-3, -2, 2, -1, 5)),
    ("F_3", (2, 3, 5, 6, 7), (3, -2, 2, -1, 5)),
    ("F_4", (1, 2, 3, 7), (0, 0, 2, 1, 3)),
    ("F_5", (1, 2, 3, 8), (0, 0, 0, 1, 1)),
    ("F_6", (1, 2, 4, 5, 8), (0, 4, -2, 5, 7)),
    ("F_7", (1, 3, 4, 6, 8), (-3, -2, -2, 5, 7)),
    ("F_8", (2, 3, 5, 6, 8), (3, -2, -2, 5, 7)),
    ("F_9", (4, 5, 6, 8), (0, 0, -2, 1, 3)),
    ("F_10", (4, 5, 6, 7), (0, 0, 0, -1, 1)),
)

VERTEX_NAMES = tuple(str(i) for i in range(1, 9))


def omega_star_incidence() -> VertexFacetIncidence:
    """The reference vertex lists of the ten facets."""
    return VertexFacetIncidence(
        VERTEX_NAMES,
        tuple(frozenset(v - 1 for v in verts) for _, verts, _ in OMEGA_STAR_FACETS),
        tuple(name for name, _, _ in OMEGA_STAR_FACETS),
        name="omega*",
    )


def omega_star_geometry() -> tuple[list[tuple[Fraction, ...]], list[Halfspace]]:
    points = [tuple(Fraction(x) for x in p) for p in OMEGA_STAR_POINTS]
    halfspaces = [
        Halfspace(tuple(Fraction(a) for a in coeffs[:4]), Fraction(coeffs[4]), name)
        for name, _, coeffs in OMEGA_STAR_FACETS
    ]
    return points, halfspaces


def omega_star_from_geometry() -> VertexFacetIncidence:
    points, halfspaces = omega_star_geometry()
    return verify_vh(points, halfspaces, VERTEX_NAMES, name="omega*")


@lru_cache(maxsize=None)
def omega_star() -> FaceLattice:
    return build_face_lattice(omega_star_incidence())


@lru_cache(maxsize=None)
def omega() -> FaceLattice:
    return polar(omega_star())


@lru_cache(maxsize=None)
def omega_digraph() -> PolytopalDigraph:
    """Every edge of omega directed from smaller to larger index."""
    lat = omega()
    return PolytopalDigraph.from_ranking(lat, range(lat.n_vertices))


XSEVEN_POINTS = (
    (16, 2, 9, -3),
    (-7, 7, -17, 10),
    (12, 6, 11, 2),
    (15, 18, -20, 4),
    (3, 16, 15, -8),
    (12, -12, 13, 15),
    (6, 2, -20, 14),
)

XSEVEN_FACETS = (
    (0, 1, 3, 4), (0, 1, 3, 6), (0, 1, 4, 5), (0, 1, 5, 6),
    (0, 2, 3, 4), (0, 2, 3, 5), (0, 2, 4, 5), (0, 3, 5, 6),
    (1, 2, 3, 4), (1, 2, 3, 5), (1, 2, 4, 5), (1, 3, 5, 6),
)


def xseven_geometry() -> tuple[list[tuple[Fraction, ...]], list[Halfspace]]:
    points = [tuple(Fraction(x) for x in p) for p in XSEVEN_POINTS]
    halfspaces = [
        supporting_halfspace(points, f, f"H_{k + 1}") for k, f in enumerate(XSEVEN_FACETS)
    ]
    return points, halfspaces


@lru_cache(maxsize=None)
def xseven() -> FaceLattice:
    names = [f"x{i}" for i in range(len(XSEVEN_POINTS))]
    return build_face_lattice(VertexFacetIncidence(
        names,
        [frozenset(f) for f in XSEVEN_FACETS],
        [f"H_{k + 1}" for k in range(len(XSEVEN_FACETS))],
        name="xseven",
    ))


@lru_cache(maxsize=None)
def xseven_digraph() -> PolytopalDigraph:
    lat = xseven()
    return PolytopalDigraph.from_ranking(lat, range(lat.n_vertices))


def simplex(d: int) -> FaceLattice:
    names = [str(i) for i in range(d + 1)]
    facets = [frozenset(range(d + 1)) - {i} for i in range(d + 1)]
    return build_face_lattice(
        VertexFacetIncidence(names, facets, [f"not{i}" for i in range(d + 1)], name=f"simplex{d}")
    )


def cube(d: int) -> FaceLattice:
    """The d-cube; vertex ``i`` has coordinate bits ``i``."""
    names = [format(i, f"0{d}b")[::-1] for i in range(2**d)]
    facets, facet_names = [], []
    for k in range(d):
        for bit in (0, 1):
            facets.append(frozenset(i for i in range(2**d) if (i >> k) & 1 == bit))
            facet_names.append(f"x{k + 1}={bit}")
    return build_face_lattice(VertexFacetIncidence(names, facets, facet_names, name=f"cube{d}"))


def cube_geometry(d: int) -> tuple[list[tuple[Fraction, ...]], list[Halfspace]]:
    """The 0/1 cube with facets in the same order as :func:`cube`."""
    points = [tuple(Fraction((i >> k) & 1) for k in range(d)) for i in range(2**d)]
    halfspaces = []
    for k in range(d):
        e = tuple(Fraction(int(j == k)) for j in range(d))
        halfspaces.append(Halfspace(tuple(-x for x in e), Fraction(0), f"x{k + 1}=0"))
        halfspaces.append(Halfspace(e, Fraction(1), f"x{k + 1}=1"))
    return points, halfspaces


def linear_cube_digraph(d: int, weights=None) -> PolytopalDigraph:
    """Cube orientation induced by a generic linear function."""
    weights = weights or [2**k for k in range(d)]
    lat = cube(d)
    rank = [sum(w for k, w in enumerate(weights) if (i >> k) & 1) for i in range(2**d)]
    return PolytopalDigraph.from_ranking(lat, rank)


DATASETS = {
    "omega": omega,
    "omega*": omega_star,
    "omega-star": omega_star,
    "xseven": xseven,
}

DIGRAPHS = {
    "omega": omega_digraph,
    "xseven": xseven_digraph,
}


def dataset_geometry(name: str) -> tuple[list[tuple[Fraction, ...]], list[Halfspace]]:
    if name in ("omega*", "omega-star"):
        return omega_star_geometry()
    if name == "xseven":
        return xseven_geometry()
    if name.startswith("cube") and name[4:].isdigit():
        return cube_geometry(int(name[4:]))
    raise KeyError(f"no geometry for dataset {name!r}")


def dataset_lattice(name: str) -> FaceLattice:
    try:
        return DATASETS[name]()
    except KeyError:
        if name.startswith("cube") and name[4:].isdigit():
            return cube(int(name[4:]))
        if name.startswith("simplex") and name[7:].isdigit():
            return simplex(int(name[7:]))
        if name.startswith("cross") and name[5:].isdigit():
            from .crosspolytope import crosspolytope_lattice

            return crosspolytope_lattice(int(name[5:]))
        raise KeyError(f"unknown dataset {name!r}") from None
