"""Face lattices of polytopes given by vertex-facet incidence.

Faces are keyed by their vertex sets.  Internally every vertex set is a
Python ``int`` bitmask (bit ``i`` set iff vertex ``i`` belongs to the set);
the public surface speaks ``frozenset`` of vertex indices.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Sequence

from .errors import FaceNotFound, InvalidIncidence, MalformedLattice, NotALattice


def to_mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def from_mask(mask: int) -> frozenset[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return frozenset(out)


def _sorted_key(mask: int) -> tuple[int, ...]:
    return tuple(sorted(from_mask(mask)))


@dataclass(frozen=True)
class VertexFacetIncidence:
    """Vertex names plus, for every facet, the indices of its vertices.

    Construction validates that the data could come from a polytope: indices
    are in range, no facet contains another and every vertex lies on a facet.
    """

    vertex_names: tuple[str, ...]
    facets: tuple[frozenset[int], ...]
    facet_names: tuple[str, ...] = ()
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "vertex_names", tuple(str(v) for v in self.vertex_names))
        object.__setattr__(self, "facets", tuple(frozenset(f) for f in self.facets))
        names = tuple(str(f) for f in self.facet_names) or tuple(
            f"F_{i + 1}" for i in range(len(self.facets))
        )
        object.__setattr__(self, "facet_names", names)
        self._validate()

    def _validate(self) -> None:
        n = len(self.vertex_names)
        if len(set(self.vertex_names)) != n:
            raise InvalidIncidence("vertex names are not unique")
        if len(self.facet_names) != len(self.facets):
            raise InvalidIncidence(
                f"{len(self.facets)} facets but {len(self.facet_names)} facet names"
            )
        if len(set(self.facet_names)) != len(self.facet_names):
            raise InvalidIncidence("facet names are not unique")
        if not self.facets:
            raise InvalidIncidence("no facets")
        for name, facet in zip(self.facet_names, self.facets):
            bad = [v for v in facet if not 0 <= v < n]
            if bad:
                raise InvalidIncidence(f"facet {name} has out-of-range vertices {sorted(bad)}")
            if not facet:
                raise InvalidIncidence(f"facet {name} is empty")
        for i, a in enumerate(self.facets):
            for j, b in enumerate(self.facets):
                if i != j and a <= b:
                    raise InvalidIncidence(
                        f"facet {self.facet_names[i]} is contained in facet {self.facet_names[j]}"
                    )
        covered = frozenset().union(*self.facets)
        missing = [self.vertex_names[v] for v in range(n) if v not in covered]
        if missing:
            raise InvalidIncidence(f"vertices on no facet: {missing}")

    @property
    def n_vertices(self) -> int:
        return len(self.vertex_names)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "vertices": list(self.vertex_names),
            "facets": [
                {"name": name, "vertices": sorted(facet)}
                for name, facet in zip(self.facet_names, self.facets)
            ],
        }

    @classmethod
    def from_json(cls, doc: dict) -> "VertexFacetIncidence":
        try:
            return cls(
                vertex_names=tuple(doc["vertices"]),
                facets=tuple(frozenset(int(v) for v in f["vertices"]) for f in doc["facets"]),
                facet_names=tuple(f.get("name", f"F_{i + 1}") for i, f in enumerate(doc["facets"])),
                name=doc.get("name", ""),
            )
        except (KeyError, TypeError) as exc:
            raise InvalidIncidence(f"malformed polytope document: {exc!r}") from None


def load_incidence(path: str | Path) -> VertexFacetIncidence:
    with open(path) as fh:
        return VertexFacetIncidence.from_json(json.load(fh))


def dump_incidence(inc: VertexFacetIncidence, path: str | Path) -> None:
    with open(path, "w") as fh:
        json.dump(inc.to_json(), fh, indent=2)
        fh.write("\n")


@dataclass(frozen=True)
class Face:
    """A face: its vertex set, dimension, and the facets that contain it."""

    vertices: frozenset[int]
    dimension: int
    containing_facets: frozenset[int] = field(default=frozenset(), compare=False)

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self.vertices))

    @property
    def key(self) -> tuple[int, ...]:
        return tuple(sorted(self.vertices))


class FaceLattice:
    """The graded lattice of all faces of a polytope.

    Faces are ordered by dimension, then lexicographically by sorted vertex
    indices; every iteration over faces uses that order.
    """

    def __init__(
        self,
        vertex_names: Sequence[str],
        facet_names: Sequence[str],
        facets: Sequence[frozenset[int]],
        name: str = "",
    ):
        self.name = name
        self.vertex_names = tuple(vertex_names)
        self.facet_names = tuple(facet_names)
        self.facets = tuple(frozenset(f) for f in facets)
        self._facet_masks = tuple(to_mask(f) for f in self.facets)
        self._vertex_index = {v: i for i, v in enumerate(self.vertex_names)}
        self.top_mask = (1 << len(self.vertex_names)) - 1
        self._rank, self._down = _rank_closure(self.top_mask, self._facet_masks)
        self.dimension = self._rank[self.top_mask] - 1
        self._check_atoms_coatoms()

        faces = []
        for mask, rank in self._rank.items():
            containing = frozenset(
                i for i, fm in enumerate(self._facet_masks) if mask & fm == mask
            ) if mask != self.top_mask else frozenset()
            faces.append(Face(from_mask(mask), rank - 1, containing))
        faces.sort(key=lambda f: (f.dimension, f.key))
        self.faces: tuple[Face, ...] = tuple(faces)
        self._by_mask = {to_mask(f.vertices): f for f in self.faces}

    def _check_atoms_coatoms(self) -> None:
        if self.dimension < 1:
            return
        atoms = {m for m, r in self._rank.items() if r == 1}
        singletons = {1 << v for v in range(len(self.vertex_names))}
        if atoms != singletons:
            raise NotALattice("atoms of the closure are not exactly the vertices")
        coatoms = {m for m, r in self._rank.items() if r == self.dimension}
        if coatoms != set(self._facet_masks):
            raise NotALattice("coatoms of the closure are not exactly the facets")

    # --- lookup -----------------------------------------------------------

    def __len__(self) -> int:
        return len(self.faces)

    def __iter__(self) -> Iterator[Face]:
        return iter(self.faces)

    def __contains__(self, vertices) -> bool:
        return self._mask(vertices) in self._by_mask

    def __eq__(self, other) -> bool:
        if not isinstance(other, FaceLattice):
            return NotImplemented
        return (
            self.vertex_names == other.vertex_names
            and dict(zip(self.facet_names, self.facets)) == dict(zip(other.facet_names, other.facets))
        )

    def __hash__(self):
        return hash((self.vertex_names, frozenset(self.facets)))

    def __repr__(self) -> str:
        return (
            f"FaceLattice({self.name!r}, dim={self.dimension}, "
            f"vertices={len(self.vertex_names)}, facets={len(self.facets)})"
        )

    @staticmethod
    def _mask(vertices) -> int:
        if isinstance(vertices, int):
            return vertices
        if isinstance(vertices, Face):
            vertices = vertices.vertices
        return to_mask(vertices)

    def face(self, vertices) -> Face:
        """Look up a face by its vertex set (or by an existing :class:`Face`)."""
        try:
            return self._by_mask[self._mask(vertices)]
        except KeyError:
            raise FaceNotFound(f"{sorted(from_mask(self._mask(vertices)))} is not a face") from None

    @property
    def bottom(self) -> Face:
        return self._by_mask[0]

    @property
    def top(self) -> Face:
        return self._by_mask[self.top_mask]

    @property
    def n_vertices(self) -> int:
        return len(self.vertex_names)

    def faces_of_dim(self, k: int) -> tuple[Face, ...]:
        return tuple(f for f in self.faces if f.dimension == k)

    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(self.faces_of_dim(k)) for k in range(self.dimension))

    def facet_face(self, i: int) -> Face:
        return self._by_mask[self._facet_masks[i]]

    def subfacets(self, f) -> tuple[Face, ...]:
        """Faces covered by ``f`` (its facets), in canonical order."""
        mask = self._mask(f)
        if mask not in self._by_mask:
            raise FaceNotFound(f"{sorted(from_mask(mask))} is not a face")
        return tuple(sorted((self._by_mask[m] for m in self._down[mask]),
                            key=lambda g: g.key))

    def join(self, vertices) -> Face:
        """Smallest face containing the given vertices."""
        mask = self._mask(vertices)
        out = self.top_mask
        for fm in self._facet_masks:
            if mask & fm == mask:
                out &= fm
        return self._by_mask[out]

    def vertex_index(self, name: str) -> int:
        return self._vertex_index[str(name)]

    def vertex_set(self, names: Iterable[str]) -> frozenset[int]:
        return frozenset(self.vertex_index(n) for n in names)

    def names(self, vertices) -> tuple[str, ...]:
        """Vertex names of a face or vertex set, in index order."""
        return tuple(self.vertex_names[v] for v in sorted(from_mask(self._mask(vertices))))

    @property
    def incidence(self) -> VertexFacetIncidence:
        return VertexFacetIncidence(self.vertex_names, self.facets, self.facet_names, self.name)


def _rank_closure(top: int, facet_masks: Sequence[int]) -> tuple[dict[int, int], dict[int, tuple[int, ...]]]:
    """Close the facets under intersection and rank the result.

    Returns ``(rank, down)`` where ``down[m]`` lists the faces covered by
    ``m``.  The maximal proper faces of a face ``g`` are the maximal sets
    among ``g & F`` over facets ``F`` not containing ``g``.
    """
    closed = {0, top, *facet_masks}
    frontier = list(facet_masks)
    while frontier:
        s = frontier.pop()
        for fm in facet_masks:
            t = s & fm
            if t not in closed:
                closed.add(t)
                frontier.append(t)

    down: dict[int, tuple[int, ...]] = {}
    for g in closed:
        if g == top:
            cands = set(facet_masks) if top not in facet_masks else set()
        else:
            cands = {g & fm for fm in facet_masks if g & fm != g}
        if g == 0:
            cands = set()
        elif not cands:
            cands = {0}
        down[g] = tuple(c for c in cands if not any(c != o and c & o == c for o in cands))

    rank: dict[int, int] = {}
    for g in sorted(closed, key=lambda m: m.bit_count()):
        below = {rank[c] for c in down[g]}
        if len(below) > 1:
            raise NotALattice(
                f"face {_sorted_key(g)} covers faces of different ranks {sorted(below)}"
            )
        rank[g] = below.pop() + 1 if below else 0

    # diamond property: every length-2 interval has exactly two middle elements
    for g, children in down.items():
        count: dict[int, int] = {}
        for c in children:
            for b in down[c]:
                count[b] = count.get(b, 0) + 1
        bad = [b for b, k in count.items() if k != 2]
        if bad:
            raise NotALattice(
                f"interval from {_sorted_key(bad[0])} to {_sorted_key(g)} is not a diamond"
            )
    return rank, down


def build_face_lattice(inc: VertexFacetIncidence) -> FaceLattice:
    """Face lattice of the polytope with incidence ``inc``.

    :raises NotALattice: if the intersection closure of the facets is not
        graded with the vertices as atoms and the facets as coatoms
    """
    return FaceLattice(inc.vertex_names, inc.facet_names, inc.facets, inc.name)


def _polar_name(name: str) -> str:
    if not name:
        return ""
    return name[:-1] if name.endswith("*") else name + "*"


def polar(lat: FaceLattice) -> FaceLattice:
    """Combinatorial polar: the face lattice turned upside down.

    Vertices of the result are the facets of ``lat`` and keep their names;
    facets of the result are the vertices of ``lat``.
    """
    if lat.dimension < 1:
        raise MalformedLattice("polar needs a lattice of dimension >= 1")
    facets = [
        frozenset(i for i, f in enumerate(lat.facets) if v in f)
        for v in range(lat.n_vertices)
    ]
    inc = VertexFacetIncidence(lat.facet_names, tuple(facets), lat.vertex_names, _polar_name(lat.name))
    return build_face_lattice(inc)


def skeleton(lat: FaceLattice) -> tuple[tuple[int, int], ...]:
    """Edges of the polytope as sorted vertex-index pairs."""
    edges = []
    for e in lat.faces_of_dim(1):
        if len(e.vertices) != 2:
            raise MalformedLattice(f"1-face {sorted(e.vertices)} does not have two vertices")
        a, b = sorted(e.vertices)
        edges.append((a, b))
    return tuple(edges)


def faces_of(lat: FaceLattice, f) -> FaceLattice:
    """The interval from the empty face up to ``f`` as a lattice of its own.

    Vertices are re-indexed ``0..len(f)-1`` in increasing original index and
    keep their names.
    """
    face = lat.face(f)
    verts = sorted(face.vertices)
    local = {v: i for i, v in enumerate(verts)}
    names = [lat.vertex_names[v] for v in verts]
    if face.dimension <= 0:
        facets = [frozenset()] if face.dimension == 0 else []
        facet_names = ["{}"] if facets else []
    else:
        subs = lat.subfacets(face)
        facets = [frozenset(local[v] for v in g.vertices) for g in subs]
        facet_names = ["{" + ",".join(lat.names(g)) + "}" for g in subs]
    return FaceLattice(names, facet_names, facets, name="{" + ",".join(names) + "}")


def isomorphic(a: FaceLattice, b: FaceLattice) -> bool:
    """Whether two lattices are combinatorially equivalent.

    Searches for a vertex bijection that maps the facet sets of ``a`` onto
    those of ``b``; candidates are pruned by facet-degree signatures.
    """
    if a.f_vector() != b.f_vector() or a.dimension != b.dimension:
        return False
    n = a.n_vertices
    fa = [to_mask(f) for f in a.facets]
    fb = {to_mask(f) for f in b.facets}

    def signature(lat: FaceLattice, v: int) -> tuple:
        return tuple(sorted(len(f) for f in lat.facets if v in f))

    sa = [signature(a, v) for v in range(n)]
    sb = [signature(b, v) for v in range(n)]
    if sorted(sa) != sorted(sb):
        return False
    order = sorted(range(n), key=lambda v: -sum(v in f for f in a.facets))
    image = [-1] * n
    used = [False] * n

    def partial_ok(k: int) -> bool:
        # each facet of a restricted to mapped vertices must sit inside some facet of b
        mapped = order[: k + 1]
        mask = to_mask(mapped)
        for f in fa:
            img = to_mask(image[v] for v in mapped if f >> v & 1)
            if f & mask and not any(img & g == img for g in fb):
                return False
        return True

    def rec(k: int) -> bool:
        if k == n:
            return {to_mask(image[v] for v in from_mask(f)) for f in fa} == fb
        v = order[k]
        for w in range(n):
            if used[w] or sb[w] != sa[v]:
                continue
            image[v], used[w] = w, True
            if partial_ok(k) and rec(k + 1):
                return True
            image[v], used[w] = -1, False
        return False

    return rec(0)
