"""Exact rational geometry: V/H incidence checks and line shellings.

Nothing here touches floating point.  Coordinates are ``Fraction`` tuples.
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

from .errors import (
    DegenerateAfterRetries,
    DimensionMismatch,
    InfeasiblePoint,
    NotAdjacentFacets,
    NotGeneric,
    NotInterior,
    ValidationError,
)
from .lattice import VertexFacetIncidence, build_face_lattice

Point = tuple[Fraction, ...]


def rational(x) -> Fraction:
    """Parse an int, Fraction or ``"p/q"`` string."""
    if isinstance(x, float):
        raise ValidationError(f"floating point value {x!r} where a rational is required")
    try:
        return Fraction(x)
    except (ValueError, TypeError, ZeroDivisionError):
        raise ValidationError(f"not a rational: {x!r}") from None


def point(coords: Iterable) -> Point:
    return tuple(rational(c) for c in coords)


def dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def centroid(points: Sequence[Point]) -> Point:
    n = len(points)
    return tuple(sum(c, Fraction(0)) / n for c in zip(*points))


@dataclass(frozen=True)
class Halfspace:
    """The inequality ``normal · x <= offset``."""

    normal: Point
    offset: Fraction
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "normal", point(self.normal))
        object.__setattr__(self, "offset", rational(self.offset))
        if not any(self.normal):
            raise ValidationError("halfspace normal is zero")

    def slack(self, x: Point) -> Fraction:
        return self.offset - dot(self.normal, x)


@dataclass(frozen=True)
class DirectedLine:
    base: Point
    direction: Point

    def __post_init__(self):
        object.__setattr__(self, "base", point(self.base))
        object.__setattr__(self, "direction", point(self.direction))
        if not any(self.direction):
            raise ValidationError("line direction is zero")

    def at(self, t: Fraction) -> Point:
        return tuple(b + t * d for b, d in zip(self.base, self.direction))


def _check_dims(points: Sequence[Point], halfspaces: Sequence[Halfspace]) -> int:
    dims = {len(p) for p in points} | {len(h.normal) for h in halfspaces}
    if len(dims) != 1:
        raise DimensionMismatch(f"mixed dimensions {sorted(dims)}")
    return dims.pop()


def verify_vh(
    points: Sequence[Point],
    halfspaces: Sequence[Halfspace],
    vertex_names: Sequence[str] | None = None,
    name: str = "",
) -> VertexFacetIncidence:
    """Check every point against every inequality; return the tight incidence.

    :raises InfeasiblePoint: if some point violates some inequality
    """
    _check_dims(points, halfspaces)
    names = list(vertex_names) if vertex_names else [str(i + 1) for i in range(len(points))]
    facets = []
    for h in halfspaces:
        tight = set()
        for k, p in enumerate(points):
            s = h.slack(p)
            if s < 0:
                raise InfeasiblePoint(f"point {names[k]} violates {h.name or h.normal} by {-s}")
            if s == 0:
                tight.add(k)
        facets.append(frozenset(tight))
    facet_names = [h.name or f"F_{i + 1}" for i, h in enumerate(halfspaces)]
    return VertexFacetIncidence(names, facets, facet_names, name)


def _det(rows: list[list[Fraction]]) -> Fraction:
    """Determinant by fraction-exact Gaussian elimination."""
    m = [list(r) for r in rows]
    n = len(m)
    out = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            out = -out
        out *= m[c][c]
        for r in range(c + 1, n):
            k = m[r][c] / m[c][c]
            m[r] = [a - k * b for a, b in zip(m[r], m[c])]
    return out


def supporting_halfspace(points: Sequence[Point], facet: Iterable[int], name: str = "") -> Halfspace:
    """Inequality whose hyperplane passes through the points indexed by ``facet``.

    The normal is the generalized cross product of ``dim - 1`` affinely
    independent difference vectors; it is oriented so that the remaining
    points lie on the ``<=`` side.

    :raises NotGeneric: if the facet points do not span a hyperplane
    :raises InfeasiblePoint: if points lie strictly on both sides
    """
    pts = [point(p) for p in points]
    dim = _check_dims(pts, [])
    ids = sorted(facet)
    base = pts[ids[0]]
    diffs = [[a - b for a, b in zip(pts[k], base)] for k in ids[1:]]
    # pick dim-1 independent differences greedily
    chosen: list[list[Fraction]] = []
    for row in diffs:
        trial = chosen + [row]
        gram = [[dot(a, b) for b in trial] for a in trial]
        if _det(gram) != 0:
            chosen = trial
        if len(chosen) == dim - 1:
            break
    if len(chosen) != dim - 1:
        raise NotGeneric(f"facet {name or ids} does not span a hyperplane")
    normal = [
        (-1) ** k * _det([[r[c] for c in range(dim) if c != k] for r in chosen]) for k in range(dim)
    ]
    offset = dot(normal, base)
    sides = {(dot(normal, p) > offset) - (dot(normal, p) < offset) for p in pts}
    if {1, -1} <= sides:
        raise InfeasiblePoint(f"facet {name or ids} is not supporting")
    if 1 in sides:
        normal, offset = [-x for x in normal], -offset
    return Halfspace(tuple(normal), offset, name)


# --- line shellings ----------------------------------------------------------------


def line_parameters(halfspaces: Sequence[Halfspace], line: DirectedLine) -> list[Fraction]:
    """Parameter ``t`` at which the line meets each facet hyperplane.

    :raises NotInterior: if the base point is not strictly inside
    :raises NotGeneric: on a parallel hyperplane or two equal parameters
    """
    ts = []
    for h in halfspaces:
        s = h.slack(line.base)
        if s <= 0:
            raise NotInterior(f"base point is not strictly inside {h.name}")
        rate = dot(h.normal, line.direction)
        if rate == 0:
            raise NotGeneric(f"line is parallel to {h.name}")
        ts.append(s / rate)
    if len(set(ts)) != len(ts):
        raise NotGeneric("two facet hyperplanes are crossed at the same point")
    return ts


def line_shelling(halfspaces: Sequence[Halfspace], line: DirectedLine) -> list[int]:
    """Facet indices in the order the directed line crosses their hyperplanes.

    Crossings ahead of the base point come first (increasing ``t``); the
    line then wraps around at infinity and the crossings behind the base
    point follow, again in increasing ``t``.
    """
    ts = line_parameters(halfspaces, line)
    ahead = sorted((t, i) for i, t in enumerate(ts) if t > 0)
    behind = sorted((t, i) for i, t in enumerate(ts) if t < 0)
    return [i for _, i in ahead + behind]


def random_generic_line(
    points: Sequence[Point],
    halfspaces: Sequence[Halfspace],
    rng: random.Random,
    spread: int = 30,
    max_tries: int = 1000,
) -> DirectedLine:
    """A generic line through a perturbed centroid with a random integer direction."""
    dim = _check_dims(points, halfspaces)
    c = centroid(points)
    for _ in range(max_tries):
        base = tuple(x + Fraction(rng.randint(-spread, spread), 100 * spread) for x in c)
        direction = tuple(Fraction(rng.randint(-spread, spread)) for _ in range(dim))
        if not any(direction):
            continue
        line = DirectedLine(base, direction)
        try:
            line_parameters(halfspaces, line)
        except (NotGeneric, NotInterior):
            continue
        return line
    raise DegenerateAfterRetries(f"no generic line found in {max_tries} tries")


def _interior_point_on(halfspaces: Sequence[Halfspace], base: Point, direction: Point) -> Point | None:
    """Midpoint of the open segment where the line lies strictly inside, if any."""
    lo = hi = None
    for h in halfspaces:
        rate = dot(h.normal, direction)
        s = h.slack(base)
        if rate == 0:
            if s <= 0:
                return None
            continue
        t = s / rate
        if rate > 0:
            hi = t if hi is None else min(hi, t)
        else:
            lo = t if lo is None else max(lo, t)
    if lo is None or hi is None or lo >= hi:
        return None
    t = (lo + hi) / 2
    return tuple(b + t * d for b, d in zip(base, direction))


def two_facet_start_shelling(
    points: Sequence[Point],
    halfspaces: Sequence[Halfspace],
    i: int,
    j: int,
    reverse: bool = False,
    max_retries: int = 64,
) -> list[int]:
    """A line shelling that starts with facets ``i``, ``j`` (adjacent).

    The line runs through ``r = (p + e1 q) / (1 + e1)`` with direction
    ``(p - r) + (p - r')``, where ``p``, ``q``, ``q'`` are centroids of the
    common ridge and of the two facets and ``r'`` is built from ``q'`` and
    ``e2`` like ``r``.  It leaves the polytope through facet ``i`` and
    crosses the hyperplane of ``j`` next.  ``e1``, ``e2`` are halved on
    every retry and ``q``, ``q'`` are nudged towards facet vertices in a
    fixed cycle.  With ``reverse=True`` the order ends with ``j``, ``i``.

    :raises NotAdjacentFacets: if the facets do not share a ridge
    :raises DegenerateAfterRetries: if no attempt yields a generic line
    """
    inc = verify_vh(points, halfspaces)
    lat = build_face_lattice(inc)
    ridge = inc.facets[i] & inc.facets[j]
    if i == j or ridge not in lat or lat.face(ridge).dimension != lat.dimension - 2:
        raise NotAdjacentFacets(f"facets {i} and {j} do not share a ridge")
    verts_i = sorted(inc.facets[i])
    verts_j = sorted(inc.facets[j])
    p = centroid([points[k] for k in sorted(ridge)])
    q0 = centroid([points[k] for k in verts_i])
    q0_ = centroid([points[k] for k in verts_j])

    for attempt in range(max_retries):
        e1 = Fraction(1, 2 ** (attempt + 1))
        e2 = e1 * Fraction(2, 3)
        q, q_ = q0, q0_
        if attempt:
            nudge = Fraction(1, 10 + attempt)
            wi = points[verts_i[attempt % len(verts_i)]]
            wj = points[verts_j[(attempt + 1) % len(verts_j)]]
            q = tuple(a + nudge * (w - a) for a, w in zip(q0, wi))
            q_ = tuple(a + nudge * (w - a) for a, w in zip(q0_, wj))
        r = tuple((a + e1 * b) / (1 + e1) for a, b in zip(p, q))
        r_ = tuple((a + e2 * b) / (1 + e2) for a, b in zip(p, q_))
        direction = tuple((a - b) + (a - c) for a, b, c in zip(p, r, r_))
        if not any(direction):
            continue
        x = _interior_point_on(halfspaces, r, direction)
        if x is None:
            continue
        try:
            order = line_shelling(halfspaces, DirectedLine(x, direction))
        except NotGeneric:
            continue
        if order[:2] == [i, j]:
            return order[::-1] if reverse else order
    raise DegenerateAfterRetries(f"no generic two-facet line after {max_retries} attempts")


# --- serialization ---------------------------------------------------------------------


def _fmt(x: Fraction) -> str | int:
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def geometry_to_json(points: Sequence[Point], halfspaces: Sequence[Halfspace]) -> dict:
    return {
        "coordinates": [[_fmt(c) for c in p] for p in points],
        "inequalities": [
            {"name": h.name, "a": [_fmt(c) for c in h.normal], "b": _fmt(h.offset)}
            for h in halfspaces
        ],
    }


def geometry_from_json(doc: dict) -> tuple[list[Point], list[Halfspace]]:
    try:
        points = [point(p) for p in doc["coordinates"]]
        halfspaces = [
            Halfspace(point(h["a"]), rational(h["b"]), h.get("name", f"F_{k + 1}"))
            for k, h in enumerate(doc["inequalities"])
        ]
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"malformed geometry document: {exc!r}") from None
    _check_dims(points, halfspaces)
    return points, halfspaces


def load_geometry(path: str | Path) -> tuple[list[Point], list[Halfspace]]:
    with open(path) as fh:
        return geometry_from_json(json.load(fh))
