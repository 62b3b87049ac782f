"""Acyclic orientations of crosspolytopes encoded as pair sequences.

Vertex ``2(i-1)`` of the d-crosspolytope is ``P_i`` and vertex ``2(i-1)+1``
is its antipode ``P_-i``; antipodes are the only non-adjacent pairs.

A pair sequence ``(L1 L2)(L3 L4)...`` labels the vertices ``1..2d`` so that
every edge runs from smaller to larger label, each pair holds the labels
of an antipodal pair, pairs are increasing, and first elements increase.
"""
from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

from .digraph import PolytopalDigraph, find_cycle, holt_klee, is_uso, topological_sorts
from .errors import CyclicOrientation, InvalidPairSequence, LimitExceeded, ValidationError
from .lattice import FaceLattice, VertexFacetIncidence, build_face_lattice


def double_factorial(n: int) -> int:
    """``n!!`` for odd or even ``n >= -1``, with ``(-1)!! = 0!! = 1``."""
    if n < -1:
        raise ValueError(f"double factorial undefined for {n}")
    return math.prod(range(n, 0, -2))


def crosspolytope(d: int) -> VertexFacetIncidence:
    """Incidence of the d-crosspolytope: one simplex facet per sign vector."""
    if d < 1:
        raise ValueError("d must be >= 1")
    names = []
    for i in range(1, d + 1):
        names += [f"P{i}", f"P-{i}"]
    facets, facet_names = [], []
    for signs in itertools.product((0, 1), repeat=d):
        facets.append(frozenset(2 * i + s for i, s in enumerate(signs)))
        facet_names.append("".join("+-"[s] for s in signs))
    return VertexFacetIncidence(names, facets, facet_names, name=f"cross{d}")


@lru_cache(maxsize=None)
def crosspolytope_lattice(d: int) -> FaceLattice:
    return build_face_lattice(crosspolytope(d))


@dataclass(frozen=True)
class PairSequence:
    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        pairs = tuple((int(a), int(b)) for a, b in self.pairs)
        object.__setattr__(self, "pairs", pairs)
        d = len(pairs)
        labels = [x for p in pairs for x in p]
        if d == 0 or sorted(labels) != list(range(1, 2 * d + 1)):
            raise InvalidPairSequence(f"labels must partition 1..{2 * d}")
        if any(a >= b for a, b in pairs):
            raise InvalidPairSequence("each pair must be increasing")
        if any(pairs[k][0] >= pairs[k + 1][0] for k in range(d - 1)):
            raise InvalidPairSequence("first elements must be increasing")

    @property
    def d(self) -> int:
        return len(self.pairs)

    @property
    def labels(self) -> tuple[int, ...]:
        return tuple(x for p in self.pairs for x in p)

    def __str__(self) -> str:
        sep = "" if 2 * self.d < 10 else " "
        return "".join(f"({a}{sep}{b})" for a, b in self.pairs)

    @classmethod
    def parse(cls, text: str) -> "PairSequence":
        groups = re.findall(r"\(([^)]*)\)", text)
        pairs = []
        for g in groups:
            g = g.strip()
            parts = re.split(r"[\s,]+", g) if re.search(r"[\s,]", g) else list(g)
            if len(parts) != 2:
                raise InvalidPairSequence(f"cannot parse pair {g!r}")
            pairs.append((int(parts[0]), int(parts[1])))
        return cls(tuple(pairs))


def all_pair_sequences(d: int) -> Iterator[PairSequence]:
    """Every pair sequence for dimension ``d`` in lexicographic order.

    The first element of the next pair is always the smallest unused label.
    """

    def rec(rest: tuple[int, ...]):
        if not rest:
            yield ()
            return
        a = rest[0]
        for b in rest[1:]:
            remaining = tuple(x for x in rest[1:] if x != b)
            for tail in rec(remaining):
                yield ((a, b),) + tail

    for pairs in rec(tuple(range(1, 2 * d + 1))):
        yield PairSequence(pairs)


def is_good(s: PairSequence) -> bool:
    """No proper prefix of ``k`` pairs uses exactly the labels ``1..2k``."""
    labels = s.labels
    return all(max(labels[: 2 * k]) != 2 * k for k in range(1, s.d))


def has_unique_source(s: PairSequence) -> bool:
    """Labels 1 and 2 are both sources exactly when they are antipodes.

    For ``d = 1`` the antipodes are the two ends of an edge, so the
    criterion does not apply and the answer is always yes.
    """
    return s.d == 1 or s.pairs[0] != (1, 2)


def has_unique_sink(s: PairSequence) -> bool:
    return s.d == 1 or s.pairs[-1] != (2 * s.d - 1, 2 * s.d)


def orientation_of(s: PairSequence) -> PolytopalDigraph:
    """Canonical orientation: ``P_k`` takes the smaller label of pair ``k``."""
    labels = s.labels
    return PolytopalDigraph.from_ranking(crosspolytope_lattice(s.d), labels)


def _check_cross(G: PolytopalDigraph) -> int:
    n = G.n
    if n % 2 or n == 0:
        raise ValidationError("not a crosspolytope orientation")
    d = n // 2
    expected = {(a, b) for a in range(n) for b in range(a + 1, n) if a // 2 != b // 2}
    if d == 1:
        # the segment's two antipodes are adjacent
        expected = {(0, 1)}
    if {tuple(sorted(e)) for e in G.edges} != expected:
        raise ValidationError("not a crosspolytope orientation")
    return d


def pair_sequence_of(G: PolytopalDigraph) -> PairSequence:
    """Pair sequence of an acyclic crosspolytope orientation.

    Labels come from the first topological sort.  Non-antipodal vertices
    are always comparable, so any other sort only swaps labels within an
    antipodal pair and yields the same pair sequence.

    :raises CyclicOrientation: if ``G`` has a directed cycle
    """
    d = _check_cross(G)
    if find_cycle(G) is not None:
        raise CyclicOrientation("orientation has a directed cycle")
    order = next(topological_sorts(G))
    label = [0] * G.n
    for pos, v in enumerate(order):
        label[v] = pos + 1
    pairs = sorted(tuple(sorted((label[2 * i], label[2 * i + 1]))) for i in range(d))
    return PairSequence(tuple(pairs))


# --- counting ------------------------------------------------------------------------


def good_count_recurrence(d: int) -> int:
    """Number of good pair sequences, by the first-violation recurrence."""
    return _good_counts(d)[d]


@lru_cache(maxsize=None)
def _good_counts(d: int) -> tuple[int, ...]:
    a = [0, 1]
    for m in range(2, d + 1):
        a.append(double_factorial(2 * m - 1) - sum(
            double_factorial(2 * m - 2 * k - 1) * a[k] for k in range(1, m)
        ))
    return tuple(a)


def uso_count_closed_form(d: int) -> int:
    """``((2d-3)^2 + 1) (2d-5)!!`` for ``d >= 2``."""
    if d < 2:
        raise ValueError("closed form holds for d >= 2")
    return ((2 * d - 3) ** 2 + 1) * double_factorial(2 * d - 5)


def uso_count_inclusion_exclusion(d: int) -> int:
    return double_factorial(2 * d - 1) - 2 * double_factorial(2 * d - 3) + double_factorial(2 * d - 5)


@dataclass(frozen=True)
class Census:
    d: int
    total: int
    good: int
    good_recurrence: int
    uso: int
    uso_closed_form: int | None
    x_type: int
    holt_klee: int | None = None
    uso_checked: int | None = None

    @property
    def consistent(self) -> bool:
        ok = self.total == double_factorial(2 * self.d - 1) and self.good == self.good_recurrence
        if self.uso_closed_form is not None:
            ok = ok and self.uso == self.uso_closed_form
        if self.holt_klee is not None:
            ok = ok and self.holt_klee == self.uso
        if self.uso_checked is not None:
            ok = ok and self.uso_checked == self.uso
        return ok

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "total": self.total,
            "a_d": self.good,
            "a_d_recurrence": self.good_recurrence,
            "b_d": self.uso,
            "b_d_closed_form": self.uso_closed_form,
            "x_type": self.x_type,
            "holt_klee": self.holt_klee,
            "consistent": self.consistent,
        }


def census(d: int, limit: int = 6, hk_limit: int = 4) -> Census:
    """Enumerate all pair sequences of dimension ``d`` and count classes.

    For ``d <= hk_limit`` every sequence is also turned into its canonical
    orientation, which is run through the USO and Holt-Klee checks.

    :raises LimitExceeded: if ``d > limit``
    """
    if d > limit:
        raise LimitExceeded(f"full enumeration limited to d <= {limit}")
    total = good = uso = x_type = 0
    hk = uso_checked = 0 if d <= hk_limit else None
    for s in all_pair_sequences(d):
        total += 1
        g = is_good(s)
        u = has_unique_source(s) and has_unique_sink(s)
        good += g
        uso += u
        x_type += u and not g
        if hk is not None:
            G = orientation_of(s)
            uso_checked += is_uso(G)
            hk += holt_klee(G)
    return Census(
        d=d,
        total=total,
        good=good,
        good_recurrence=good_count_recurrence(d),
        uso=uso,
        uso_closed_form=uso_count_closed_form(d) if d >= 2 else None,
        x_type=x_type,
        holt_klee=hk,
        uso_checked=uso_checked,
    )


@dataclass(frozen=True)
class BoundsRow:
    d: int
    a_d: int
    b_d: int
    lower: int
    upper: int
    excluded_floor: int

    @property
    def lower_ok(self) -> bool:
        return self.lower < self.a_d

    @property
    def upper_ok(self) -> bool:
        return self.a_d < self.upper

    @property
    def excluded_ok(self) -> bool:
        return self.b_d - self.a_d > self.excluded_floor

    @property
    def ratio_ok(self) -> bool:
        c = (2 * self.d - 3) ** 2 + 1
        return Fraction(self.a_d, self.b_d) < 1 - Fraction(1, c)

    @property
    def passed(self) -> bool:
        return self.lower_ok and self.upper_ok and self.excluded_ok and self.ratio_ok

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "a_d": self.a_d,
            "b_d": self.b_d,
            "lower": self.lower,
            "upper": self.upper,
            "b_d_minus_a_d": self.b_d - self.a_d,
            "excluded_floor": self.excluded_floor,
            "ratio_ok": self.ratio_ok,
            "pass": self.passed,
        }


def bounds_check(d_max: int) -> list[BoundsRow]:
    """Evaluate the two-sided bound on ``a_d`` and the derived gap/ratio
    statements for ``4 <= d <= d_max`` with exact integers."""
    if d_max < 4:
        raise ValueError("d_max must be >= 4")
    rows = []
    for d in range(4, d_max + 1):
        df = double_factorial(2 * d - 3)
        rows.append(BoundsRow(
            d=d,
            a_d=good_count_recurrence(d),
            b_d=uso_count_closed_form(d),
            lower=(2 * d - 4) * df,
            upper=(2 * d - 3) * df,
            excluded_floor=double_factorial(2 * d - 5),
        ))
    return rows
