"""One-shot evaluation of every checkable statement about the embedded data.

Each ``claim_*`` function returns a :class:`Claim` with a pass flag and a
JSON-ready detail record.  Nothing here is cached between claims, so a
claim's verdict depends only on the library code and the embedded data.
"""
from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from typing import Callable, Iterator

from . import datasets
from .constructions import FamilySpec, family, pyramid, truncate
from .crosspolytope import (
    all_pair_sequences,
    bounds_check,
    census,
    double_factorial,
    is_good,
    orientation_of,
    uso_count_inclusion_exclusion,
)
from .digraph import PolytopalDigraph, classify, find_cycle, is_uso, topological_sorts
from .geometry import line_shelling, random_generic_line, two_facet_start_shelling, verify_vh
from .lattice import VertexFacetIncidence
from .shelling import (
    boundary_formula_check,
    boundary_intersection,
    is_shelling,
    shelling_property_all,
    shelling_property_exists,
)

KNOWN_GOOD_COUNTS = (1, 2, 10, 74, 706)
MAX_AUDIT_SORTS = 100_000


@dataclass
class Claim:
    name: str
    passed: bool
    detail: dict = field(default_factory=dict)
    seconds: float = 0.0

    def to_json(self) -> dict:
        return {"claim": self.name, "pass": self.passed, "seconds": round(self.seconds, 3), "detail": self.detail}


def _timed(name: str, fn: Callable[[], tuple[bool, dict]]) -> Claim:
    start = time.perf_counter()
    ok, detail = fn()
    return Claim(name, ok, detail, time.perf_counter() - start)


# --- individual claims -----------------------------------------------------------------


def claim_verify_omega(expected: VertexFacetIncidence | None = None, geometry=None) -> Claim:
    """Tight sets of the coordinates equal the reference facet vertex lists."""

    def run():
        points, halfspaces = geometry or datasets.omega_star_geometry()
        table = expected or datasets.omega_star_incidence()
        got = verify_vh(points, halfspaces, datasets.VERTEX_NAMES)
        rows = []
        for k, name in enumerate(table.facet_names):
            want = sorted(int(table.vertex_names[v]) for v in table.facets[k])
            have = sorted(int(got.vertex_names[v]) for v in got.facets[k]) if k < len(got.facets) else None
            rows.append({"facet": name, "expected": want, "computed": have, "match": want == have})
        ok = len(got.facets) == len(table.facets) and all(r["match"] for r in rows)
        return ok, {"facets": rows}

    return _timed("verify-omega", run)


def claim_omega_classification() -> Claim:
    """Index orientation of omega: acyclic, USO, Holt-Klee, no shelling sort."""

    def run():
        G = datasets.omega_digraph()
        rep = classify(G)
        sorts = list(itertools.islice(topological_sorts(G), 2))
        order = sorts[0]
        verdict = is_shelling(G.polar_lattice, order)
        boundary = sorted(
            sorted(G.polar_lattice.names(f)) for f in boundary_intersection(G.polar_lattice, order, 3)
        )
        want = [["2", "5", "7"], ["3", "6", "7"]]
        checks = {
            "acyclic": rep.acyclic,
            "uso": rep.uso,
            "holt_klee": rep.holt_klee,
            "no_shelling": not rep.shelling,
            "failing_index_3": verdict.failing_index == 3,
            "boundary_at_3": boundary == want,
            "one_topological_sort": len(sorts) == 1,
        }
        detail = {"checks": checks, "report": rep.to_json(G.lattice), "boundary_at_3": boundary}
        return all(checks.values()), detail

    return _timed("omega-classification", run)


def equivalence_corpus() -> Iterator[tuple[str, PolytopalDigraph]]:
    """Named digraphs for the exists-vs-all and boundary-formula checks."""
    for base_name, base in (("omega", datasets.omega_digraph()), ("xseven", datasets.xseven_digraph())):
        yield base_name, base
        G = base
        for k in range(1, 4):
            _, G = truncate(None, G)
            yield f"tr^{k}({base_name})", G
        G = base
        for d in (5, 6):
            _, G = pyramid(None, G)
            yield f"py^{d - 4}({base_name})", G
    for d in range(1, 5):
        for s in all_pair_sequences(d):
            yield f"cross{d}:{s}", orientation_of(s)


def claim_equivalence() -> Claim:
    """Some sort shells iff every sort shells, on the whole corpus."""

    def run():
        rows, bad = 0, []
        skipped = []
        for name, G in equivalence_corpus():
            n_sorts = sum(1 for _ in itertools.islice(topological_sorts(G), MAX_AUDIT_SORTS + 1))
            if n_sorts > MAX_AUDIT_SORTS:
                skipped.append(name)
                continue
            rows += 1
            if shelling_property_exists(G) != shelling_property_all(G, audit=True, max_sorts=MAX_AUDIT_SORTS):
                bad.append(name)
        return not bad, {"instances": rows, "discrepancies": bad, "skipped_too_many_sorts": skipped}

    return _timed("exists-equals-all", run)


def claim_boundary_formula() -> Claim:
    def run():
        checked, bad, not_uso = 0, [], []
        for name, G in equivalence_corpus():
            if find_cycle(G) is not None or not is_uso(G):
                not_uso.append(name)
                continue
            checked += 1
            if not boundary_formula_check(G, all_sorts=True):
                bad.append(name)
        return not bad, {"checked": checked, "failures": bad, "not_acyclic_uso": not_uso}

    return _timed("boundary-formula", run)


def preservation_instances() -> Iterator[tuple[str, PolytopalDigraph, Callable]]:
    """(name, input, operation) triples; each operation maps a digraph to a digraph."""

    def tr(G):
        return truncate(None, G)[1]

    def py(G):
        return pyramid(None, G)[1]

    def fam(d, n):
        return lambda G: family(None, G, FamilySpec(d, n))[1]

    omega = datasets.omega_digraph()
    x7 = datasets.xseven_digraph()
    yield "family(omega, d=6, n=13)", omega, fam(6, 13)
    yield "tr(omega)", omega, tr
    yield "py(omega)", omega, py
    yield "tr(xseven)", x7, tr
    yield "tr(tr(xseven))", x7, lambda G: tr(tr(G))
    yield "py(xseven)", x7, py
    yield "family(xseven, d=5, n=9)", x7, fam(5, 9)
    yield "family(xseven, d=6, n=10)", x7, fam(6, 10)


def claim_preservation() -> Claim:
    """X-type inputs give X-type outputs, re-checked by the full classifier."""

    def run():
        rows = []
        for name, G, op in preservation_instances():
            H = op(G)
            rows.append({
                "instance": name,
                "input_x_type": classify(G).x_type,
                "output_x_type": classify(H).x_type,
                "vertices": H.n,
                "dimension": H.lattice.dimension,
            })
        ok = len(rows) >= 5 and all(r["input_x_type"] and r["output_x_type"] for r in rows)
        return ok, {"instances": rows}

    return _timed("x-type-preservation", run)


def claim_counting(d_max: int = 5) -> Claim:
    def run():
        rows = []
        for d in range(1, d_max + 1):
            c = census(d, hk_limit=4)
            row = c.to_json()
            row["b_d_inclusion_exclusion"] = uso_count_inclusion_exclusion(d) if d >= 2 else None
            rows.append(row)
        ok = all(r["consistent"] for r in rows)
        ok &= all(r["total"] == double_factorial(2 * r["d"] - 1) for r in rows)
        ok &= all(
            r["b_d_inclusion_exclusion"] in (None, r["b_d"]) for r in rows
        )
        ok &= tuple(r["a_d"] for r in rows[:5]) == KNOWN_GOOD_COUNTS[: min(5, d_max)]
        if d_max >= 4:
            ok &= rows[3]["x_type"] == 4
        return ok, {"census": rows}

    return _timed("pair-sequence-counts", run)


def claim_bounds(d_max: int = 8) -> Claim:
    def run():
        rows = bounds_check(d_max)
        return all(r.passed for r in rows), {"rows": [r.to_json() for r in rows]}

    return _timed("good-count-bounds", run)


def claim_good_iff_shelling(d_max: int = 4) -> Claim:
    def run():
        checked, bad = 0, []
        for d in range(1, d_max + 1):
            for s in all_pair_sequences(d):
                checked += 1
                if is_good(s) != shelling_property_exists(orientation_of(s)):
                    bad.append(str(s))
        return not bad, {"checked": checked, "exceptions": bad}

    return _timed("good-iff-shelling", run)


def claim_line_shellings(n_lines: int = 20, seed: int = 0) -> Claim:
    def run():
        detail = {}
        ok = True
        rng = random.Random(seed)
        for name in ("omega*", "cube4"):
            points, halfspaces = datasets.dataset_geometry(name)
            lat = datasets.dataset_lattice(name)
            accepted = 0
            for _ in range(n_lines):
                order = line_shelling(halfspaces, random_generic_line(points, halfspaces, rng))
                accepted += is_shelling(lat, order).is_shelling
            detail[name] = {"lines": n_lines, "accepted": accepted}
            ok &= accepted == n_lines
        points, halfspaces = datasets.omega_star_geometry()
        order = two_facet_start_shelling(points, halfspaces, 0, 1)
        lat = datasets.omega_star()
        starts = order[:2] == [0, 1]
        shelled = is_shelling(lat, order).is_shelling
        detail["two_facet_start"] = {
            "order": [lat.facet_names[i] for i in order],
            "starts_with_first_two": starts,
            "is_shelling": shelled,
        }
        return ok and starts and shelled, detail

    return _timed("line-shellings", run)


CLAIMS: dict[str, Callable[[], Claim]] = {
    "verify-omega": claim_verify_omega,
    "omega-classification": claim_omega_classification,
    "exists-equals-all": claim_equivalence,
    "boundary-formula": claim_boundary_formula,
    "x-type-preservation": claim_preservation,
    "pair-sequence-counts": claim_counting,
    "good-count-bounds": claim_bounds,
    "good-iff-shelling": claim_good_iff_shelling,
    "line-shellings": claim_line_shellings,
}


def run_all(expected_table: VertexFacetIncidence | None = None) -> list[Claim]:
    out = []
    for name, fn in CLAIMS.items():
        out.append(fn(expected_table) if name == "verify-omega" else fn())
    return out
