import json
from pathlib import Path

import pytest

from hquandle import _pykernels, kernels
from hquandle.formats import diagram_from_json

DATA = Path(__file__).parent / "data"

_BACKENDS = ["python"]
try:
    from hquandle import _ckernels

    _BACKENDS.append("cython")
except ImportError:
    _ckernels = None


def load_diagram(name):
    return diagram_from_json(json.loads((DATA / f"{name}.json").read_text()))


def r3_pairs():
    obj = json.loads((DATA / "r3_pairs.json").read_text())
    return [(diagram_from_json(p["left_diagram"]), diagram_from_json(p["right_diagram"])) for p in obj["pairs"]]


SHIPPED = ["unknot", "kink", "unlink3", "hopf", "trefoil", "figure_eight"]


def shipped_diagrams():
    out = {name: load_diagram(name) for name in SHIPPED}
    for k, (left, right) in enumerate(r3_pairs()):
        out[f"r3_pair{k}_left"] = left
        out[f"r3_pair{k}_right"] = right
    return out


@pytest.fixture(params=_BACKENDS)
def backend(request, monkeypatch):
    """Run the test once per available kernel implementation."""
    impl = _pykernels if request.param == "python" else _ckernels
    monkeypatch.setattr(kernels, "search_colorings", impl.search_colorings)
    monkeypatch.setattr(kernels, "rref_mod_p", impl.rref_mod_p)
    return request.param


# one summary line per acceptance criterion

_acceptance = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::test_criterion_" not in report.nodeid:
        return
    if report.when == "call" or report.outcome == "failed":
        name = report.nodeid.split("::")[-1]
        prev = _acceptance.get(name)
        if prev != "FAIL":
            _acceptance[name] = "PASS" if report.outcome == "passed" else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_acceptance):
        terminalreporter.write_line(f"{name}: {_acceptance[name]}")
