"""Orientations of polytope skeletons and their face-wise properties."""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import TYPE_CHECKING, Iterable, Iterator, Mapping, Sequence

from .errors import CyclicInput, InvalidOrientation
from .lattice import Face, FaceLattice, polar, skeleton

if TYPE_CHECKING:
    from .shelling import ShellingVerdict


@dataclass(frozen=True, eq=False)
class PolytopalDigraph:
    """A face lattice together with an orientation of every skeleton edge."""

    lattice: FaceLattice
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        edges = tuple((int(a), int(b)) for a, b in self.edges)
        object.__setattr__(self, "edges", edges)
        support = [tuple(sorted(e)) for e in edges]
        if len(set(support)) != len(support):
            raise InvalidOrientation("an edge is oriented more than once")
        expected = set(skeleton(self.lattice))
        extra = set(support) - expected
        missing = expected - set(support)
        if extra or missing:
            raise InvalidOrientation(
                f"orientation does not match the skeleton: "
                f"{len(extra)} non-edges given, {len(missing)} edges unoriented"
            )

    @classmethod
    def from_ranking(cls, lattice: FaceLattice, rank: Sequence) -> "PolytopalDigraph":
        """Orient every edge from the lower-ranked endpoint to the higher one.

        ``rank[v]`` is any comparable value per vertex; ties are an error.
        """
        edges = []
        for a, b in skeleton(lattice):
            if rank[a] == rank[b]:
                raise InvalidOrientation(f"tied rank on edge {a}-{b}")
            edges.append((a, b) if rank[a] < rank[b] else (b, a))
        return cls(lattice, tuple(edges))

    @property
    def n(self) -> int:
        return self.lattice.n_vertices

    @cached_property
    def polar_lattice(self) -> FaceLattice:
        """Polar lattice; its facet ``i`` corresponds to vertex ``i``."""
        return polar(self.lattice)

    @cached_property
    def succ(self) -> tuple[frozenset[int], ...]:
        out = [set() for _ in range(self.n)]
        for a, b in self.edges:
            out[a].add(b)
        return tuple(frozenset(s) for s in out)

    @cached_property
    def pred(self) -> tuple[frozenset[int], ...]:
        out = [set() for _ in range(self.n)]
        for a, b in self.edges:
            out[b].add(a)
        return tuple(frozenset(s) for s in out)

    def sinks(self) -> list[int]:
        return [v for v in range(self.n) if not self.succ[v]]

    def sources(self) -> list[int]:
        return [v for v in range(self.n) if not self.pred[v]]

    def has_path(self, a: int, b: int) -> bool:
        seen = {a}
        todo = [a]
        while todo:
            x = todo.pop()
            if x == b:
                return True
            for y in self.succ[x]:
                if y not in seen:
                    seen.add(y)
                    todo.append(y)
        return False

    def to_json(self) -> dict:
        return {"polytope": self.lattice.name, "edges": [list(e) for e in self.edges]}

    def to_dot(self) -> str:
        names = self.lattice.vertex_names
        lines = [f'digraph "{self.lattice.name or "G"}" {{']
        lines += [f'  "{names[v]}";' for v in range(self.n)]
        lines += [f'  "{names[a]}" -> "{names[b]}";' for a, b in sorted(self.edges)]
        lines.append("}")
        return "\n".join(lines) + "\n"


def load_orientation(path: str | Path, lattice: FaceLattice) -> PolytopalDigraph:
    with open(path) as fh:
        doc = json.load(fh)
    try:
        edges = [tuple(e) for e in doc["edges"]]
    except (KeyError, TypeError) as exc:
        raise InvalidOrientation(f"malformed orientation document: {exc!r}") from None
    if any(len(e) != 2 for e in edges):
        raise InvalidOrientation("edges must be [tail, head] pairs")
    return PolytopalDigraph(lattice, tuple(edges))


def dump_orientation(G: PolytopalDigraph, path: str | Path) -> None:
    with open(path, "w") as fh:
        json.dump(G.to_json(), fh)
        fh.write("\n")


# --- acyclicity and topological sorts ---------------------------------------


def find_cycle(G: PolytopalDigraph) -> list[int] | None:
    """Return one directed cycle as a vertex list, or None if acyclic."""
    WHITE, GREY, BLACK = 0, 1, 2
    colour = [WHITE] * G.n
    parent = [-1] * G.n
    for root in range(G.n):
        if colour[root] != WHITE:
            continue
        stack = [(root, iter(sorted(G.succ[root])))]
        colour[root] = GREY
        while stack:
            v, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                colour[v] = BLACK
                stack.pop()
            elif colour[nxt] == GREY:
                cycle = [v]
                while cycle[-1] != nxt:
                    cycle.append(parent[cycle[-1]])
                return cycle[::-1]
            elif colour[nxt] == WHITE:
                colour[nxt] = GREY
                parent[nxt] = v
                stack.append((nxt, iter(sorted(G.succ[nxt]))))
    return None


def is_acyclic(G: PolytopalDigraph) -> bool:
    return find_cycle(G) is None


def topological_sorts(G: PolytopalDigraph) -> Iterator[list[int]]:
    """Yield every topological sort of ``G``.

    Orders come out lexicographically: at each position the available
    minima are tried in increasing vertex index.

    :raises CyclicInput: if ``G`` has a directed cycle
    """
    if not is_acyclic(G):
        raise CyclicInput("digraph has a directed cycle")
    yield from linear_extensions(range(G.n), G.pred)


def linear_extensions(nodes: Iterable[int], pred: Sequence[Iterable[int]] | Mapping) -> Iterator[list[int]]:
    nodes = sorted(nodes)
    indeg = {v: len(set(pred[v]) & set(nodes)) for v in nodes}
    succ: dict[int, list[int]] = {v: [] for v in nodes}
    for v in nodes:
        for u in pred[v]:
            if u in succ:
                succ[u].append(v)
    order: list[int] = []

    def rec():
        if len(order) == len(nodes):
            yield list(order)
            return
        for v in nodes:
            if indeg[v] == 0:
                indeg[v] = -1
                for w in succ[v]:
                    indeg[w] -= 1
                order.append(v)
                yield from rec()
                order.pop()
                for w in succ[v]:
                    indeg[w] += 1
                indeg[v] = 0

    yield from rec()


def first_topological_sort(G: PolytopalDigraph) -> list[int]:
    return next(topological_sorts(G))


# --- unique sink orientation --------------------------------------------------


def face_sources_sinks(G: PolytopalDigraph, f) -> tuple[list[int], list[int]]:
    """Sources and sinks of the subdigraph induced by a face."""
    verts = G.lattice.face(f).vertices
    sources = [v for v in sorted(verts) if not (G.pred[v] & verts)]
    sinks = [v for v in sorted(verts) if not (G.succ[v] & verts)]
    return sources, sinks


def uso_witness(G: PolytopalDigraph) -> Face | None:
    """First face (canonical order) without a unique source and sink."""
    for f in G.lattice.faces:
        if f.dimension < 1:
            continue
        sources, sinks = face_sources_sinks(G, f)
        if len(sources) != 1 or len(sinks) != 1:
            return f
    return None


def is_uso(G: PolytopalDigraph) -> bool:
    return uso_witness(G) is None


# --- Holt-Klee ------------------------------------------------------------------


def disjoint_path_count(succ: Mapping[int, Iterable[int]] | Sequence, nodes: Iterable[int], s: int, t: int) -> int:
    """Maximum number of internally vertex-disjoint directed s-t paths.

    Vertex splitting (unit capacity on every node other than ``s`` and
    ``t``) followed by BFS augmenting paths on unit-capacity arcs.
    """
    nodes = set(nodes)
    # node v -> (v, 0) entry, (v, 1) exit; s and t are not split
    def inn(v):
        return (v, 0) if v not in (s, t) else (v, 1)

    cap: dict[tuple, dict[tuple, int]] = {}

    def arc(a, b, c=1):
        cap.setdefault(a, {}).setdefault(b, 0)
        cap[a][b] += c
        cap.setdefault(b, {}).setdefault(a, 0)

    for v in nodes:
        if v not in (s, t):
            arc((v, 0), (v, 1))
        for w in succ[v]:
            if w in nodes:
                arc((v, 1), inn(w))
    src, dst = (s, 1), (t, 1)
    if src not in cap or dst not in cap:
        return 0

    flow = 0
    while True:
        parent = {src: None}
        queue = deque([src])
        while queue and dst not in parent:
            x = queue.popleft()
            for y, c in cap[x].items():
                if c > 0 and y not in parent:
                    parent[y] = x
                    queue.append(y)
        if dst not in parent:
            return flow
        y = dst
        while parent[y] is not None:
            x = parent[y]
            cap[x][y] -= 1
            cap[y][x] += 1
            y = x
        flow += 1


def holt_klee_witness(G: PolytopalDigraph) -> Face | None:
    """First face violating the Holt-Klee property, or None.

    A face failing the unique source/sink condition is returned as the
    witness too, since the property presupposes USO.
    """
    bad = uso_witness(G)
    if bad is not None:
        return bad
    for f in G.lattice.faces:
        k = f.dimension
        if k < 2:
            continue
        (s,), (t,) = face_sources_sinks(G, f)
        if disjoint_path_count(G.succ, f.vertices, s, t) < k:
            return f
    return None


def holt_klee(G: PolytopalDigraph) -> bool:
    return holt_klee_witness(G) is None


# --- classification --------------------------------------------------------------


@dataclass(frozen=True)
class PropertyReport:
    acyclic: bool
    uso: bool
    holt_klee: bool
    shelling: bool
    cycle: list[int] | None = None
    uso_face: Face | None = None
    holt_klee_face: Face | None = None
    shelling_verdict: "ShellingVerdict | None" = field(default=None)

    @property
    def x_type(self) -> bool:
        return self.acyclic and self.uso and self.holt_klee and not self.shelling

    def to_json(self, lattice: FaceLattice) -> dict:
        doc = {
            "acyclic": self.acyclic,
            "uso": self.uso,
            "holt_klee": self.holt_klee,
            "shelling": self.shelling,
            "x_type": self.x_type,
            "witness": {},
        }
        w = doc["witness"]
        if self.cycle is not None:
            w["cycle"] = [lattice.vertex_names[v] for v in self.cycle]
        if self.uso_face is not None:
            w["uso_face"] = list(lattice.names(self.uso_face))
        if self.holt_klee_face is not None:
            w["holt_klee_face"] = list(lattice.names(self.holt_klee_face))
        if self.shelling_verdict is not None:
            w["shelling"] = self.shelling_verdict.to_json()
        return doc


def classify(G: PolytopalDigraph) -> PropertyReport:
    """Decide all four properties; failure witnesses are attached."""
    from .shelling import first_sort_verdict, shelling_property_exists

    cycle = find_cycle(G)
    acyclic = cycle is None
    uso_face = uso_witness(G)
    uso = uso_face is None
    hk_face = holt_klee_witness(G) if uso else uso_face
    shelling = acyclic and shelling_property_exists(G)
    verdict = None
    if acyclic and not shelling:
        verdict = first_sort_verdict(G)
    return PropertyReport(
        acyclic=acyclic,
        uso=uso,
        holt_klee=hk_face is None,
        shelling=shelling,
        cycle=cycle,
        uso_face=uso_face,
        holt_klee_face=hk_face,
        shelling_verdict=verdict,
    )
