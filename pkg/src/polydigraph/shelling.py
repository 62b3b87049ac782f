"""Shellings of polytopes and the shelling property of polytopal digraphs.

A facet order ``F_1, ..., F_s`` is a shelling when, for every ``j > 1``,
``F_j`` meets the union of its predecessors in a non-empty union of facets
of ``F_j`` that begins some shelling of ``F_j``.  Polytopes of dimension at
most one (facets are points) are shelled by any order.

All searches go through a :class:`ShellingOracle`, which memoizes
per-face results for one ambient lattice.
"""
from __future__ import annotations

import enum
import logging
from dataclasses import dataclass
from typing import Iterable, Sequence

from .digraph import PolytopalDigraph, find_cycle, is_uso, topological_sorts
from .errors import FaceNotFound, NotAcyclicUSO
from .lattice import Face, FaceLattice, from_mask, to_mask

log = logging.getLogger(__name__)


class FailureReason(enum.Enum):
    EMPTY_INTERSECTION = "EmptyIntersection"
    NOT_PURE = "NotPureCodimOne"
    NOT_BEGINNING_SEGMENT = "NotBeginningSegment"


@dataclass(frozen=True)
class ShellingVerdict:
    is_shelling: bool
    failing_index: int | None = None
    failing_reason: FailureReason | None = None
    boundary: tuple[Face, ...] = ()
    boundary_names: tuple[tuple[str, ...], ...] = ()

    def __bool__(self) -> bool:
        return self.is_shelling

    def to_json(self) -> dict:
        return {
            "is_shelling": self.is_shelling,
            "failing_index": self.failing_index,
            "failing_reason": self.failing_reason.value if self.failing_reason else None,
            "boundary": [list(b) for b in self.boundary_names],
        }


class ShellingOracle:
    """Memoized shelling queries on the faces of one lattice."""

    def __init__(self, lat: FaceLattice):
        self.lat = lat
        self._dim = {m: r - 1 for m, r in lat._rank.items()}
        self._down = lat._down
        self._begins: dict[tuple[int, frozenset[int]], bool] = {}
        self._steps: dict[tuple[int, frozenset[int]], FailureReason | None] = {}

    def dim(self, mask: int) -> int:
        return self._dim[mask]

    @staticmethod
    def maximal(masks: Iterable[int]) -> tuple[int, ...]:
        cands = {m for m in masks if m}
        keep = [m for m in cands if not any(o != m and m & o == m for o in cands)]
        return tuple(sorted(keep, key=lambda m: sorted(from_mask(m))))

    def intersection(self, g: int, previous: Iterable[int]) -> tuple[int, ...]:
        """Maximal faces of ``g`` intersected with the union of ``previous``."""
        return self.maximal(g & h for h in previous)

    def step(self, g: int, previous: Iterable[int]) -> FailureReason | None:
        """Check that face ``g`` may follow the faces ``previous``."""
        prev = frozenset(previous)
        key = (g, prev)
        if key in self._steps:
            return self._steps[key]
        inter = self.intersection(g, prev)
        if not inter:
            out = FailureReason.EMPTY_INTERSECTION
        elif any(self._dim[m] != self._dim[g] - 1 for m in inter):
            out = FailureReason.NOT_PURE
        elif not self.begins(g, frozenset(inter)):
            out = FailureReason.NOT_BEGINNING_SEGMENT
        else:
            out = None
        self._steps[key] = out
        return out

    def begins(self, g: int, ridges: frozenset[int]) -> bool:
        """Whether the facets ``ridges`` of face ``g`` can start a shelling of ``g``.

        Depth-first search over the sets of already-placed facets; the
        ridges must all be placed before any other facet of ``g``.
        """
        key = (g, ridges)
        if key in self._begins:
            return self._begins[key]
        if not ridges:
            result = False
        elif self._dim[g] <= 1:
            result = True
        else:
            result = self._search(g, ridges)
        self._begins[key] = result
        return result

    def _search(self, g: int, ridges: frozenset[int]) -> bool:
        facets = tuple(sorted(self._down[g], key=lambda m: sorted(from_mask(m))))
        total = len(facets)
        dead: set[frozenset[int]] = set()

        def rec(placed: frozenset[int]) -> bool:
            if len(placed) == total:
                return True
            if placed in dead:
                return False
            pool = ridges if not ridges <= placed else facets
            for h in pool:
                if h in placed:
                    continue
                if placed and self.step(h, placed) is not None:
                    continue
                if rec(placed | {h}):
                    return True
            dead.add(placed)
            return False

        return rec(frozenset())

    def facet_mask(self, i: int) -> int:
        return self.lat._facet_masks[i]

    def verdict(self, order: Sequence[int]) -> ShellingVerdict:
        lat = self.lat
        if sorted(order) != list(range(len(lat.facets))):
            raise ValueError("facet order is not a permutation of the facets")
        if lat.dimension <= 1:
            return ShellingVerdict(True)
        masks = [self.facet_mask(i) for i in order]
        for j in range(1, len(masks)):
            reason = self.step(masks[j], masks[:j])
            if reason is not None:
                inter = self.intersection(masks[j], masks[:j])
                faces = tuple(lat.face(m) for m in inter)
                return ShellingVerdict(
                    False, j + 1, reason, faces, tuple(lat.names(f) for f in faces)
                )
        return ShellingVerdict(True)


def _facet_indices(lat: FaceLattice, order: Sequence) -> list[int]:
    out = []
    for x in order:
        if isinstance(x, str):
            try:
                out.append(lat.facet_names.index(x))
            except ValueError:
                raise FaceNotFound(f"no facet named {x!r}") from None
        else:
            out.append(int(x))
    return out


def boundary_intersection(lat: FaceLattice, order: Sequence, j: int) -> list[Face]:
    """Maximal faces of ``F_j`` intersected with ``F_1 ∪ ... ∪ F_{j-1}``.

    ``j`` is a 1-based position in ``order``; position 1 gives ``[]``.
    """
    order = _facet_indices(lat, order)
    oracle = ShellingOracle(lat)
    masks = [oracle.facet_mask(i) for i in order[:j]]
    return [lat.face(m) for m in oracle.intersection(masks[-1], masks[:-1])]


def is_beginning_segment(lat: FaceLattice, ridges: Iterable, face=None) -> bool:
    """Whether ``ridges`` (facets of ``face``) begin some shelling of ``face``.

    ``face`` defaults to the whole polytope, so ``lat`` may be the lattice
    of a single facet as produced by :func:`~polydigraph.lattice.faces_of`.
    """
    g = lat.face(lat.top if face is None else face)
    subs = {to_mask(f.vertices) for f in lat.subfacets(g)}
    rs = frozenset(to_mask(lat.face(r).vertices) for r in ridges)
    if not rs <= subs:
        raise FaceNotFound("ridges must be facets of the given face")
    return ShellingOracle(lat).begins(to_mask(g.vertices), rs)


def is_shelling(lat: FaceLattice, order: Sequence) -> ShellingVerdict:
    """Verify a facet order (indices or facet names); report the first failure."""
    return ShellingOracle(lat).verdict(_facet_indices(lat, order))


# --- shelling property of digraphs ----------------------------------------------


def find_shelling_sort(G: PolytopalDigraph) -> list[int] | None:
    """A topological sort whose polar facet order is a shelling, or None.

    Searches sorts position by position.  Whether a facet may come next
    depends only on the set already placed, so failing sets are cached.
    """
    if find_cycle(G) is not None:
        return None
    oracle = ShellingOracle(G.polar_lattice)
    if G.polar_lattice.dimension <= 1:
        return next(topological_sorts(G))
    fmask = [oracle.facet_mask(v) for v in range(G.n)]
    pred_mask = [to_mask(G.pred[v]) for v in range(G.n)]
    full = (1 << G.n) - 1
    dead: set[int] = set()
    order: list[int] = []

    def rec(placed: int) -> bool:
        if placed == full:
            return True
        if placed in dead:
            return False
        for v in range(G.n):
            if placed >> v & 1 or pred_mask[v] & placed != pred_mask[v]:
                continue
            if order and oracle.step(fmask[v], (fmask[u] for u in order)) is not None:
                continue
            order.append(v)
            if rec(placed | 1 << v):
                return True
            order.pop()
        dead.add(placed)
        return False

    return list(order) if rec(0) else None


def shelling_property_exists(G: PolytopalDigraph) -> bool:
    """Some topological sort gives a shelling of the polar."""
    return find_shelling_sort(G) is not None


def first_sort_verdict(G: PolytopalDigraph) -> ShellingVerdict:
    """Shelling verdict for the lexicographically first topological sort."""
    order = next(topological_sorts(G))
    return ShellingOracle(G.polar_lattice).verdict(order)


def shelling_property_all(G: PolytopalDigraph, audit: bool = False, max_sorts: int = 100_000) -> bool:
    """Every topological sort gives a shelling of the polar.

    One sort decides the answer for acyclic digraphs; ``audit=True``
    checks every sort instead (at most ``max_sorts`` of them).
    """
    if find_cycle(G) is not None:
        return False
    if not audit:
        return first_sort_verdict(G).is_shelling
    oracle = ShellingOracle(G.polar_lattice)
    for count, order in enumerate(topological_sorts(G)):
        if count >= max_sorts:
            log.warning("audit stopped after %d topological sorts", max_sorts)
            break
        if not oracle.verdict(order).is_shelling:
            return False
    return True


def boundary_formula_check(G: PolytopalDigraph, all_sorts: bool = False, require_uso: bool = True) -> bool:
    """Compare, along a topological sort ``v_1..v_n``, the faces of
    ``F(v_k) ∩ (F(v_1) ∪ ... ∪ F(v_{k-1}))`` with those of
    ``∪ F(v_k) ∩ F(v_j)`` over the in-neighbours ``v_j`` of ``v_k``.

    :param require_uso: with False only acyclicity is required, which
        allows evaluating the formula on digraphs outside its hypothesis
    :raises NotAcyclicUSO: unless ``G`` is an acyclic unique sink orientation
    """
    if find_cycle(G) is not None or (require_uso and not is_uso(G)):
        raise NotAcyclicUSO("boundary formula needs an acyclic USO")
    oracle = ShellingOracle(G.polar_lattice)
    fmask = [oracle.facet_mask(v) for v in range(G.n)]
    sorts = topological_sorts(G) if all_sorts else [next(topological_sorts(G))]
    for order in sorts:
        for k, v in enumerate(order):
            lhs = oracle.intersection(fmask[v], (fmask[u] for u in order[:k]))
            rhs = oracle.intersection(fmask[v], (fmask[u] for u in G.pred[v]))
            if set(lhs) != set(rhs):
                return False
    return True
