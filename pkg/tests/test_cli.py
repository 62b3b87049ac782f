import json
import subprocess
import sys

import pytest

from polydigraph.cli import main
from polydigraph.datasets import omega_star_incidence
from polydigraph.lattice import VertexFacetIncidence, dump_incidence

INDEX_ORDER = ",".join(f"F_{i}" for i in range(1, 11))


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_check_omega(capsys, tmp_path):
    dot = tmp_path / "omega.dot"
    code, out, _ = run(capsys, "check", "omega", "--dot", str(dot))
    assert code == 0
    assert "acyclic:    yes" in out and "uso:        no" in out and "x-type:     no" in out
    assert dot.read_text().count("->") == 23
    code, _, _ = run(capsys, "check", "omega", "--expect-x-type")
    assert code == 3


def test_check_xseven_json(capsys):
    code, out, _ = run(capsys, "check", "xseven", "--json", "--expect-x-type")
    assert code == 0
    doc = json.loads(out)
    assert (doc["acyclic"], doc["uso"], doc["holt_klee"], doc["shelling"], doc["x_type"]) == (
        True, True, True, False, True)


def test_shelling_check(capsys):
    code, out, _ = run(capsys, "shelling-check", "omega*", "--order", INDEX_ORDER)
    assert code == 3
    assert "failing index: 3" in out
    assert "{2,5,7} {3,6,7}" in out
    # the fourth square meets the first three in two opposite edges
    code, out, _ = run(capsys, "shelling-check", "cube3", "--order", "x1=0,x2=0,x1=1,x2=1,x3=0,x3=1")
    assert code == 3 and "failing index: 4" in out
    code, out, _ = run(capsys, "shelling-check", "cube3", "--order", "x1=0,x2=0,x3=0,x1=1,x2=1,x3=1")
    assert code == 0 and out.strip() == "shelling: yes"
    code, _, err = run(capsys, "shelling-check", "omega*", "--order", "F_1,F_2")
    assert code == 2 and json.loads(err)["error"] == "CliError"


def test_shelling_property(capsys):
    code, out, _ = run(capsys, "shelling-property", "omega", "--audit")
    assert code == 0
    assert out.split() == ["exists:", "no", "all:", "no"]


def test_family_writes_files_and_reloads(capsys, tmp_path):
    prefix = tmp_path / "out" / "fam"
    code, out, _ = run(capsys, "family", "--base", "xseven", "--dim", "5", "--vertices", "9",
                       "--out", str(prefix))
    assert code == 0
    assert "truncation 1: v=x6 split=" in out
    poly = tmp_path / "out" / "fam.polytope.json"
    orient = tmp_path / "out" / "fam.orientation.json"
    assert poly.exists() and orient.exists()
    code, out, _ = run(capsys, "check", str(poly), str(orient), "--expect-x-type")
    assert code == 0 and "x-type:     yes" in out and "dimension: 5" in out


def test_family_from_omega_is_not_x_type(capsys, tmp_path):
    code, out, _ = run(capsys, "family", "--dim", "6", "--vertices", "13", "--out",
                       str(tmp_path / "om"), "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["truncations"] == [{"vertex": "F_10", "split": ["F_1", "F_2", "F_3", "F_9"]}]
    assert doc["report"]["x_type"] is False


def test_family_bounds_error(capsys, tmp_path):
    code, _, err = run(capsys, "family", "--dim", "6", "--vertices", "11", "--out", str(tmp_path / "x"))
    assert code == 2
    assert json.loads(err)["error"] == "BoundsViolation"


def test_xcensus_and_bounds(capsys):
    code, out, _ = run(capsys, "xcensus", "--dmax", "5")
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "d\ttotal\ta_d\tb_d\tx_type\tbounds_pass"
    assert lines[4] == "4\t105\t74\t78\t4\ttrue"
    assert lines[5].startswith("5\t945\t706\t")
    code, _, err = run(capsys, "xcensus", "--dmax", "8")
    assert code == 2 and json.loads(err)["error"] == "LimitExceeded"
    code, out, _ = run(capsys, "bounds", "--dmax", "6", "--json")
    assert code == 0
    rows = json.loads(out)
    assert [r["d"] for r in rows] == [4, 5, 6] and all(r["pass"] for r in rows)


def test_line_shelling(capsys):
    code, out, _ = run(capsys, "line-shelling", "omega*", "--lines", "5", "--seed", "1")
    assert code == 0
    assert len(out.strip().split("\n")) == 5 and all(l.startswith("ok ") for l in out.strip().split("\n"))
    code, out, _ = run(capsys, "line-shelling", "omega*", "--start", "F_1,F_2", "--json")
    assert code == 0
    assert json.loads(out)[0]["order"][:2] == ["F_1", "F_2"]
    code, out, _ = run(capsys, "line-shelling", "omega*", "--start", "F_1,F_2", "--reverse", "--json")
    assert json.loads(out)[0]["order"][-2:] == ["F_2", "F_1"]
    code, _, err = run(capsys, "line-shelling", "cube3", "--start", "x1=0,x1=1")
    assert code == 2 and json.loads(err)["error"] == "NotAdjacentFacets"


def test_verify_omega(capsys, tmp_path):
    code, out, _ = run(capsys, "verify-omega")
    assert code == 0 and out.strip().endswith("PASS")
    inc = omega_star_incidence()
    facets = list(inc.facets)
    facets[3] = facets[3] - {6} | {5}
    bad = tmp_path / "bad.json"
    dump_incidence(VertexFacetIncidence(inc.vertex_names, facets, inc.facet_names, inc.name), bad)
    code, out, _ = run(capsys, "verify-omega", "--table", str(bad))
    assert code == 3
    assert "BAD F_4" in out


def test_reproduce_subset_and_corrupted_table(capsys, tmp_path):
    code, out, _ = run(capsys, "reproduce", "--only", "pair-sequence-counts", "good-count-bounds")
    assert code == 0
    assert [l.split()[:2] for l in out.strip().split("\n")] == [
        ["PASS", "pair-sequence-counts"], ["PASS", "good-count-bounds"]]
    inc = omega_star_incidence()
    facets = list(inc.facets)
    facets[3] = facets[3] - {0} | {7}
    bad = tmp_path / "bad.json"
    dump_incidence(VertexFacetIncidence(inc.vertex_names, facets, inc.facet_names, inc.name), bad)
    code, out, _ = run(capsys, "reproduce", "--only", "verify-omega", "--table", str(bad), "--json")
    assert code == 3
    assert json.loads(out)[0]["pass"] is False
    code, _, err = run(capsys, "reproduce", "--only", "nonsense")
    assert code == 2


def test_invalid_inputs(capsys, tmp_path):
    code, _, err = run(capsys, "check", "no-such-thing")
    assert code == 2 and json.loads(err)["error"] == "CliError"
    broken = tmp_path / "broken.json"
    broken.write_text("{not json")
    code, _, err = run(capsys, "check", str(broken), str(broken))
    assert code == 2
    code, _, err = run(capsys, "check", "cube3")
    assert code == 2 and "orientation" in json.loads(err)["message"]


def test_output_is_deterministic(capsys):
    outs = set()
    for _ in range(2):
        a = run(capsys, "check", "xseven", "--json")[1]
        b = run(capsys, "line-shelling", "xseven", "--lines", "3", "--json")[1]
        outs.add(a + b)
    assert len(outs) == 1


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "polydigraph", "check", "omega", "--json"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["uso"] is False


def test_usage_error_exits_two():
    with pytest.raises(SystemExit) as exc:
        main(["family", "--dim", "5"])
    assert exc.value.code == 2


def test_reproduce_attainable_claims_pass(capsys):
    attainable = ["verify-omega", "exists-equals-all", "boundary-formula", "pair-sequence-counts",
                  "good-count-bounds", "good-iff-shelling", "line-shellings"]
    code, out, _ = run(capsys, "reproduce", "--only", *attainable, "--json")
    assert code == 0
    assert [c["claim"] for c in json.loads(out)] == attainable


def test_check_dataset_flag_and_cyclic_orientation(capsys, tmp_path):
    code, out, _ = run(capsys, "check", "--dataset", "xseven", "--json")
    assert code == 0 and json.loads(out)["x_type"] is True
    # square a-b-c-d oriented as a directed 4-cycle
    poly = tmp_path / "square.json"
    dump_incidence(VertexFacetIncidence(["a", "b", "c", "d"], [{0, 1}, {1, 2}, {2, 3}, {0, 3}],
                                        name="square"), poly)
    orient = tmp_path / "cycle.json"
    orient.write_text(json.dumps({"polytope": "square", "edges": [[0, 1], [1, 2], [2, 3], [3, 0]]}))
    code, out, _ = run(capsys, "check", str(poly), str(orient), "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["acyclic"] is False and sorted(doc["witness"]["cycle"]) == ["a", "b", "c", "d"]
    code, _, _ = run(capsys, "check", "--dataset", "cube3", str(orient))
    assert code == 2
    code, _, err = run(capsys, "check")
    assert code == 2 and json.loads(err)["message"] == "no polytope given"
