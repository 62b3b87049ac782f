"""Brute-force reference implementations used only by the tests.

Nothing here imports the package's search code: faces, dimensions and
shellings are recomputed from raw facet vertex sets by exhaustive
enumeration.
"""
from __future__ import annotations

import itertools
from functools import lru_cache


class BruteShelling:
    """Shellings by brute force over all permutations of sub-facets."""

    def __init__(self, facets):
        self.facets = [frozenset(f) for f in facets]
        self.top = frozenset().union(*self.facets)

    @lru_cache(maxsize=None)
    def subfacets(self, s: frozenset) -> tuple:
        if s == self.top:
            cands = set(self.facets)
        else:
            cands = {s & f for f in self.facets if s & f != s}
        cands.discard(frozenset())
        return tuple(sorted(
            (c for c in cands if not any(c < o for o in cands)),
            key=sorted,
        ))

    @lru_cache(maxsize=None)
    def dim(self, s: frozenset) -> int:
        if not s:
            return -1
        if len(s) == 1:
            return 0
        return 1 + max(self.dim(g) for g in self.subfacets(s))

    def maximal(self, sets):
        sets = {s for s in sets if s}
        return frozenset(s for s in sets if not any(s < o for o in sets))

    def order_ok(self, face, order) -> bool:
        if self.dim(face) <= 1:
            return True
        for j in range(1, len(order)):
            inter = self.maximal(order[j] & order[i] for i in range(j))
            if not inter or any(self.dim(x) != self.dim(order[j]) - 1 for x in inter):
                return False
            if not self.starts(order[j], inter):
                return False
        return True

    @lru_cache(maxsize=None)
    def starts(self, face, ridges: frozenset) -> bool:
        if self.dim(face) <= 1:
            return True
        subs = self.subfacets(face)
        rest = [g for g in subs if g not in ridges]
        for head in itertools.permutations(sorted(ridges, key=sorted)):
            for tail in itertools.permutations(rest):
                if self.order_ok(face, list(head) + list(tail)):
                    return True
        return False

    def is_shelling(self, order) -> bool:
        return self.order_ok(self.top, [frozenset(f) for f in order])


def linear_extensions_bruteforce(n, edges):
    """All permutations of range(n) respecting every (tail, head) edge."""
    out = []
    for perm in itertools.permutations(range(n)):
        pos = {v: i for i, v in enumerate(perm)}
        if all(pos[a] < pos[b] for a, b in edges):
            out.append(list(perm))
    return out


def crosspolytope_faces_by_signs(d):
    """Proper faces of the d-crosspolytope as sign vectors in {+,-,0}^d."""
    faces = set()
    for signs in itertools.product((1, -1, 0), repeat=d):
        faces.add(frozenset(2 * i + (0 if s == 1 else 1) for i, s in enumerate(signs) if s))
    return faces


def cube_faces_by_signs(d):
    """Nonempty faces of the d-cube as vertex sets (vertex i = bit vector i)."""
    faces = set()
    for pattern in itertools.product((0, 1, None), repeat=d):
        faces.add(frozenset(
            i for i in range(2**d)
            if all(p is None or (i >> k) & 1 == p for k, p in enumerate(pattern))
        ))
    return faces


def double_factorial_slow(n):
    if n <= 0:
        return 1
    return n * double_factorial_slow(n - 2)


def good_by_definition(pairs):
    labels = [x for p in pairs for x in p]
    d = len(pairs)
    return all(set(labels[: 2 * k]) != set(range(1, 2 * k + 1)) for k in range(1, d))


def pair_sequences_by_matchings(d):
    """Pair sequences from all ordered matchings, sorted and deduplicated."""
    seen = set()
    for perm in itertools.permutations(range(1, 2 * d + 1)):
        pairs = tuple(sorted(tuple(sorted(perm[2 * k: 2 * k + 2])) for k in range(d)))
        seen.add(pairs)
    return seen
