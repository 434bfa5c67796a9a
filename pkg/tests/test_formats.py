import json

import pytest

from hquandle import formats
from hquandle.algebra import RingSpec, make_constant_family, make_dihedral, make_trivial
from hquandle.cohomology import Cochain, cohomology
from hquandle.diagram import random_moves
from hquandle.errors import ParseError, StructuralError
from hquandle.homology import boundary_matrix

from conftest import DATA, load_diagram


def roundtrip(obj, to, frm):
    text = formats.dumps(to(obj))
    back = frm(json.loads(text))
    assert formats.dumps(to(back)) == text
    return back


def test_quandle_roundtrip():
    q = make_dihedral(5)
    assert roundtrip(q, formats.quandle_to_json, formats.quandle_from_json) == q


def test_hquandle_roundtrip():
    h = make_constant_family(make_trivial(2), make_dihedral(3))
    assert roundtrip(h, formats.hquandle_to_json, formats.hquandle_from_json) == h


def test_diagram_roundtrip():
    d = random_moves(load_diagram("figure_eight"), 2, 2, seed=4)
    assert roundtrip(d, formats.diagram_to_json, formats.diagram_from_json) == d


def test_cochain_roundtrip():
    base, h = make_trivial(2), make_constant_family(make_trivial(2), make_dihedral(3))
    for omega in cohomology(base, h, 2, RingSpec("zm", 3)).representatives:
        assert roundtrip(omega, formats.cochain_to_json, formats.cochain_from_json) == omega


def test_cochain_schema():
    c = Cochain(2, RingSpec("zm", 3), {((0, 1), (1, 0)): 2})
    assert formats.cochain_to_json(c) == {
        "ring": "zm:3", "degree": 2, "entries": [{"x": [0, 1], "y": [1, 0], "c": 2}]}
    with pytest.raises(StructuralError):
        formats.cochain_from_json({"ring": "zm:3", "degree": 2, "entries": [{"x": [0, 0], "y": [1, 1], "c": 1}]})
    with pytest.raises(ParseError):
        formats.cochain_from_json({"ring": "zm:3", "degree": 2, "entries": [{"x": [0], "y": [1, 1], "c": 1}]})


def test_matrix_schema():
    bm = boundary_matrix(make_trivial(1), make_constant_family(make_trivial(1), make_dihedral(3)), 2)
    obj = formats.matrix_to_json(bm)
    assert obj["rows"] == 3 and obj["cols"] == 6
    assert obj["col_basis"][0] == [[0, 0], [0, 1]]
    assert all(len(e) == 3 and e[2] != 0 for e in obj["entries"])
    assert obj["entries"] == sorted(obj["entries"])


def test_malformed_inputs():
    with pytest.raises(ParseError):
        formats.quandle_from_json({"table": [[0]]})
    with pytest.raises(StructuralError):
        formats.quandle_from_json({"size": 2, "table": [[0]]})
    with pytest.raises(ParseError):
        formats.diagram_from_json({"arc_count": 1, "component_of": [0], "crossings": [{"sign": 1}]})
    with pytest.raises(ParseError):
        formats.load_json(str(DATA / "does-not-exist.json"))


def test_atomic_write(tmp_path):
    target = tmp_path / "out.json"
    formats.write_text("{}\n", str(target))
    assert target.read_text() == "{}\n"
    assert [p.name for p in tmp_path.iterdir()] == ["out.json"]
