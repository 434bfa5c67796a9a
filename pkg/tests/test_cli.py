import json

import pytest

from hquandle.cli import main

from conftest import DATA


def run(capsys, *argv):
    try:
        code = main([str(a) for a in argv])
    except SystemExit as exc:
        code = exc.code
    out = capsys.readouterr()
    return code, out.out, out.err


def d(name):
    return DATA / name


def test_check_quandle(capsys):
    code, out, _ = run(capsys, "check-quandle", d("r3.json"))
    assert code == 0 and json.loads(out)["valid"] is True


def test_check_quandle_failure(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"size": 2, "table": [[1, 1], [0, 0]]}))
    code, out, _ = run(capsys, "check-quandle", bad)
    assert code == 2 and json.loads(out)["valid"] is False


def test_structural_error_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{ not json")
    assert run(capsys, "check-quandle", bad)[0] == 1
    bad.write_text(json.dumps({"size": 2, "table": [[0, 5], [1, 1]]}))
    assert run(capsys, "check-quandle", bad)[0] == 1


def test_check_hquandle(capsys):
    code, out, _ = run(capsys, "check-hquandle", d("const_r3_over_t2.json"), "--quandle", d("t2.json"))
    assert code == 0 and json.loads(out)["valid"]
    code, _, err = run(capsys, "check-hquandle", d("const_r3_over_t2.json"), "--quandle", d("r3.json"))
    assert code == 1 and "base size" in err


def test_colorings_count(capsys):
    code, out, _ = run(capsys, "colorings", d("trefoil.json"), "--quandle", d("r3.json"), "--count-only")
    assert code == 0 and json.loads(out) == {"count": 9}
    code, out, _ = run(capsys, "colorings", d("trefoil.json"), "--quandle", d("r3.json"))
    assert len(json.loads(out)["colorings"]) == 9


def test_invariant_zero_cocycle(capsys):
    code, out, _ = run(capsys, "invariant", d("trefoil.json"), "--quandle", d("t1.json"),
                       "--hquandle", d("const_r3_over_t1.json"), "--cocycle", d("zero_cocycle_t1_r3.json"))
    assert code == 0
    obj = json.loads(out)
    assert obj["flattened"] == {"0": 9}
    assert obj["per_base"] == [{"base_index": 0, "coloring": [0, 0, 0], "weights": {"0": 9}}]


def test_invariant_rejects_non_cocycle(tmp_path, capsys):
    w = tmp_path / "w.json"
    w.write_text(json.dumps({"ring": "zm:3", "degree": 2, "entries": [{"x": [0, 0], "y": [0, 1], "c": 1}]}))
    code, _, _ = run(capsys, "invariant", d("trefoil.json"), "--quandle", d("t1.json"),
                     "--hquandle", d("const_r3_over_t1.json"), "--cocycle", w)
    assert code == 2


def test_parse_pd_matches_golden(capsys, tmp_path):
    out_path = tmp_path / "t.json"
    code, _, _ = run(capsys, "parse-pd", d("trefoil.pd"), "-o", out_path)
    assert code == 0
    assert out_path.read_text() == d("trefoil.json").read_text()
    code, out, _ = run(capsys, "parse-pd", "--unknots", 1)
    assert json.loads(out) == {"arc_count": 1, "component_of": [0], "crossings": []}


def test_parse_pd_error(tmp_path, capsys):
    p = tmp_path / "bad.pd"
    p.write_text("X[1,2,3,4]")
    code, _, err = run(capsys, "parse-pd", p)
    assert code == 1 and "X[" in err


def test_moves(capsys, tmp_path):
    code, out, _ = run(capsys, "moves", d("trefoil.json"), "--r1", 0, "--r2", 0)
    assert json.loads(out) == json.loads(d("trefoil.json").read_text())
    code, out, _ = run(capsys, "moves", d("trefoil.json"), "--r1", 2, "--seed", 7)
    moved = tmp_path / "m.json"
    moved.write_text(out)
    assert len(json.loads(out)["crossings"]) == 5
    code, out, _ = run(capsys, "colorings", moved, "--quandle", d("r3.json"), "--count-only")
    assert json.loads(out)["count"] == 9


def test_moves_preserve_spectrum_on_hopf(capsys, tmp_path):
    args = ["--quandle", d("t2.json"), "--hquandle", d("leftproj2_over_t2.json")]
    _, before, _ = run(capsys, "spectrum", d("hopf.json"), *args)
    _, out, _ = run(capsys, "moves", d("hopf.json"), "--r2", 3, "--seed", 1)
    moved = tmp_path / "h.json"
    moved.write_text(out)
    _, after, _ = run(capsys, "spectrum", moved, *args)
    assert before == after


def test_hcolorings_and_spectrum(capsys):
    args = ["--quandle", d("t2.json"), "--hquandle", d("const_r3_over_t2.json")]
    code, out, _ = run(capsys, "hcolorings", d("trefoil.json"), *args, "--base-index", 1)
    obj = json.loads(out)
    assert code == 0 and obj["count"] == 9 and obj["base"] == [1, 1, 1]
    _, out, _ = run(capsys, "hcolorings", d("trefoil.json"), *args, "--all")
    assert [p["count"] for p in json.loads(out)["per_base"]] == [9, 9]
    _, out, _ = run(capsys, "spectrum", d("trefoil.json"), *args)
    assert json.loads(out) == {"spectrum": {"9": 2}}
    code, _, _ = run(capsys, "hcolorings", d("trefoil.json"), *args, "--base-index", 5)
    assert code == 1


def test_homology_matrix_and_cap(capsys, tmp_path):
    args = ["--quandle", d("t1.json"), "--hquandle", d("const_r3_over_t1.json")]
    out_path = tmp_path / "m.json"
    code, _, _ = run(capsys, "homology-matrix", *args, "--degree", 2, "-o", out_path)
    obj = json.loads(out_path.read_text())
    assert code == 0 and (obj["rows"], obj["cols"]) == (3, 6)
    code, out, _ = run(capsys, "homology-matrix", *args, "--degree", 3, "--positive")
    assert json.loads(out)["variant"] == "positive"
    code, _, err = run(capsys, "homology-matrix", *args, "--degree", 3, "--cap-columns", 5)
    assert code == 3


def test_cohomology(capsys):
    args = ["--quandle", d("t2.json"), "--hquandle", d("const_r3_over_t2.json")]
    code, out, _ = run(capsys, "cohomology", *args, "--degree", 2, "--ring", "zm:3", "--representatives")
    obj = json.loads(out)
    assert code == 0 and obj["dimension"] == 2 and len(obj["representatives"]) == 2
    _, out, _ = run(capsys, "cohomology", *args, "--ring", "z")
    assert json.loads(out)["betti"] == 2
    code, _, _ = run(capsys, "cohomology", *args, "--ring", "q")
    assert code == 1


def test_cohomology_representative_feeds_invariant(capsys, tmp_path):
    args = ["--quandle", d("t2.json"), "--hquandle", d("const_r3_over_t2.json")]
    _, out, _ = run(capsys, "cohomology", *args, "--ring", "zm:3", "--representatives")
    w = tmp_path / "w.json"
    w.write_text(json.dumps(json.loads(out)["representatives"][0]))
    code, out, _ = run(capsys, "invariant", d("hopf.json"), *args, "--cocycle", w, "--flatten")
    assert code == 0 and set(json.loads(out)) == {"flattened"}


def test_product_and_decompose(capsys, tmp_path):
    code, out, _ = run(capsys, "product", "--quandle", d("t2.json"), "--hquandle", d("const_r3_over_t2.json"))
    assert code == 0 and json.loads(out)["size"] == 6
    q = tmp_path / "q.json"
    q.write_text(out)
    code, out, _ = run(capsys, "decompose", q, "--base-size", 2, "--y-size", 3)
    obj = json.loads(out)
    assert code == 0
    assert obj["hquandle"] == json.loads(d("const_r3_over_t2.json").read_text())
    code, _, _ = run(capsys, "decompose", q, "--base-size", 3, "--y-size", 3)
    assert code == 1


def test_decompose_failure_exit_code(tmp_path, capsys):
    q = tmp_path / "r4.json"
    q.write_text(json.dumps({"size": 4, "table": [[(2 * b - a) % 4 for b in range(4)] for a in range(4)]}))
    code, _, err = run(capsys, "decompose", q, "--base-size", 2, "--y-size", 2)
    assert code == 2 and "witness" in err


def test_search_hquandles(capsys):
    code, out, _ = run(capsys, "search-hquandles", "--quandle", d("t1.json"), "--y-size", 3)
    assert code == 0 and json.loads(out)["count"] == 5
    code, _, _ = run(capsys, "search-hquandles", "--quandle", d("t2.json"), "--y-size", 3)
    assert code == 3
    code, out, _ = run(capsys, "search-hquandles", "--quandle", d("t2.json"), "--y-size", 3,
                       "--fix-diagonal", d("r3.json"), "--limit", 4)
    assert code == 0 and json.loads(out)["count"] <= 4


def test_usage_errors(capsys):
    assert run(capsys, "frobnicate")[0] == 1
    assert run(capsys, "colorings", d("trefoil.json"), "--quandle", d("r3.json"), "--bogus")[0] == 1
    assert run(capsys)[0] == 1


def test_verbose_goes_to_stderr(capsys):
    code, out, err = run(capsys, "colorings", d("trefoil.json"), "--quandle", d("r3.json"), "--count-only",
                         "--verbose")
    assert code == 0 and json.loads(out) == {"count": 9} and "diagram" in err


def test_output_is_deterministic(capsys):
    args = ["invariant", d("hopf.json"), "--quandle", d("t1.json"), "--hquandle", d("const_r3_over_t1.json"),
            "--cocycle", d("zero_cocycle_t1_r3.json")]
    assert run(capsys, *args)[1] == run(capsys, *args)[1]
