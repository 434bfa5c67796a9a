"""JSON readers and writers for every object the command line exchanges.

Writers emit keys in sorted order, so equal objects serialize to equal
bytes.  Readers validate shape and raise :class:`~hquandle.errors.ParseError`
(or another structural error) on malformed input.
"""

from __future__ import annotations

import json
import os
import tempfile

from .algebra import HierarchicalQuandle, Quandle, RingSpec
from .cohomology import Cochain
from .diagram import Crossing, Diagram
from .errors import ParseError, StructuralError
from .homology import BoundaryMatrix


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def write_text(text: str, path: str | None) -> None:
    """Write to ``path`` atomically (temp file then rename), or to stdout when ``path`` is None."""
    if path is None or path == "-":
        import sys

        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=".json")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None


def _require(obj, keys, what):
    if not isinstance(obj, dict):
        raise ParseError(f"{what} must be a JSON object")
    missing = [k for k in keys if k not in obj]
    if missing:
        raise ParseError(f"{what} is missing {', '.join(missing)}")


# ---------------------------------------------------------------------------
# quandles


def quandle_to_json(q: Quandle) -> dict:
    return {"size": q.size, "table": q.tolist()}


def quandle_from_json(obj) -> Quandle:
    _require(obj, ("size", "table"), "quandle")
    q = Quandle(obj["table"])
    if q.size != obj["size"]:
        raise StructuralError(f"declared size {obj['size']} but the table has {q.size} rows")
    return q


def hquandle_to_json(h: HierarchicalQuandle) -> dict:
    return {"base_size": h.base_size, "size": h.size, "tables": h.tolist()}


def hquandle_from_json(obj) -> HierarchicalQuandle:
    _require(obj, ("base_size", "size", "tables"), "hierarchical quandle")
    h = HierarchicalQuandle(obj["tables"])
    if (h.base_size, h.size) != (obj["base_size"], obj["size"]):
        raise StructuralError(
            f"declared sizes ({obj['base_size']}, {obj['size']}) but tables have ({h.base_size}, {h.size})")
    return h


# ---------------------------------------------------------------------------
# diagrams


def diagram_to_json(d: Diagram) -> dict:
    return {
        "arc_count": d.arc_count,
        "component_of": list(d.component_of),
        "crossings": [
            {"sign": c.sign, "under_in": c.under_in, "over": c.over, "under_out": c.under_out}
            for c in d.crossings
        ],
    }


def diagram_from_json(obj) -> Diagram:
    _require(obj, ("arc_count", "component_of", "crossings"), "diagram")
    try:
        crossings = tuple(
            Crossing(int(c["sign"]), int(c["under_in"]), int(c["over"]), int(c["under_out"]))
            for c in obj["crossings"]
        )
        return Diagram(int(obj["arc_count"]), crossings, tuple(int(v) for v in obj["component_of"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed diagram: {exc}") from None


# ---------------------------------------------------------------------------
# matrices and cochains


def _basis_json(basis) -> list:
    return [[list(p) for p in b] for b in basis.elements()]


def matrix_to_json(bm: BoundaryMatrix) -> dict:
    rows, cols = bm.shape
    return {
        "degree": bm.degree,
        "variant": bm.variant,
        "rows": rows,
        "cols": cols,
        "entries": bm.entries(),
        "row_basis": _basis_json(bm.row_basis),
        "col_basis": _basis_json(bm.col_basis),
    }


def cochain_to_json(c: Cochain) -> dict:
    entries = [
        {"x": [x for x, _ in b], "y": [y for _, y in b], "c": v}
        for b, v in sorted(c.values.items())
    ]
    return {"ring": str(c.ring), "degree": c.degree, "entries": entries}


def cochain_from_json(obj) -> Cochain:
    _require(obj, ("ring", "degree", "entries"), "cochain")
    ring = RingSpec.parse(str(obj["ring"]))
    values = {}
    for e in obj["entries"]:
        _require(e, ("x", "y", "c"), "cochain entry")
        if len(e["x"]) != len(e["y"]):
            raise ParseError("cochain entry has x and y of different lengths")
        b = tuple(zip((int(v) for v in e["x"]), (int(v) for v in e["y"])))
        if b in values:
            raise ParseError(f"duplicate cochain entry {e}")
        values[b] = int(e["c"])
    return Cochain(int(obj["degree"]), ring, values)


def check_cochain_domain(c: Cochain, base_size: int, y_size: int) -> None:
    for b in c.values:
        for x, y in b:
            if not (0 <= x < base_size and 0 <= y < y_size):
                raise StructuralError(f"cochain entry {b} is out of range for |X|={base_size}, |Y|={y_size}")
