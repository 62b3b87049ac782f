"""Oriented polytope skeletons: face lattices, digraph properties, shellings."""
from .constructions import FamilySpec, TruncationSpec, family, pyramid, truncate
from .crosspolytope import PairSequence, census, is_good, orientation_of, pair_sequence_of
from .digraph import PolytopalDigraph, classify, topological_sorts
from .lattice import FaceLattice, VertexFacetIncidence, build_face_lattice, polar
from .shelling import is_shelling, shelling_property_all, shelling_property_exists

__version__ = "0.1.0"

__all__ = [
    "FaceLattice",
    "FamilySpec",
    "PairSequence",
    "PolytopalDigraph",
    "TruncationSpec",
    "VertexFacetIncidence",
    "build_face_lattice",
    "census",
    "classify",
    "family",
    "is_good",
    "is_shelling",
    "orientation_of",
    "pair_sequence_of",
    "polar",
    "pyramid",
    "shelling_property_all",
    "shelling_property_exists",
    "topological_sorts",
    "truncate",
]
