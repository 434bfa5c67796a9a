import os

import numpy as np
import pytest

from hquandle import _pykernels, kernels
from hquandle.algebra import make_constant_family, make_dihedral, make_trivial
from hquandle.coloring import _crossing_arrays, _hierarchical_tables, _quandle_tables, enumerate_qcolorings
from hquandle.diagram import random_moves

from conftest import load_diagram, shipped_diagrams

try:
    from hquandle import _ckernels
except ImportError:
    _ckernels = None

needs_c = pytest.mark.skipif(_ckernels is None, reason="compiled kernels not built")


def test_backend_name():
    forced = bool(os.environ.get("HQUANDLE_PURE_PYTHON"))
    assert kernels.BACKEND == ("cython" if _ckernels is not None and not forced else "python")


def _search_args(d, q):
    ins, overs, outs, _ = _crossing_arrays(d)
    fwd, bwd = _quandle_tables(d, q)
    return ins, overs, outs, fwd, bwd, d.arc_count, q.size


@needs_c
@pytest.mark.parametrize("name", sorted(shipped_diagrams()))
@pytest.mark.parametrize("n", [3, 4, 5])
def test_search_backends_agree(name, n):
    d = shipped_diagrams()[name]
    args = _search_args(d, make_dihedral(n))
    cp, sp = _pykernels.search_colorings(*args)
    cc, sc = _ckernels.search_colorings(*args)
    assert cp == cc
    assert np.array_equal(sp, sc)
    assert _ckernels.search_colorings(*args, count_only=True)[0] == cp


@needs_c
def test_search_backends_agree_hierarchical():
    base = make_trivial(2)
    h = make_constant_family(base, make_dihedral(3))
    d = random_moves(load_diagram("hopf"), 1, 2, seed=3)
    ins, overs, outs, _ = _crossing_arrays(d)
    for xi in enumerate_qcolorings(d, base):
        fwd, bwd = _hierarchical_tables(d, base, h, xi)
        a = _pykernels.search_colorings(ins, overs, outs, fwd, bwd, d.arc_count, h.size)
        b = _ckernels.search_colorings(ins, overs, outs, fwd, bwd, d.arc_count, h.size)
        assert a[0] == b[0] and np.array_equal(a[1], b[1])


def test_search_solutions_are_lexicographic():
    d = load_diagram("unlink3")
    count, sols = kernels.search_colorings(*_search_args(d, make_trivial(2)))
    assert count == 8
    assert sols.tolist() == sorted(sols.tolist())


@needs_c
@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_rref_backends_agree(p):
    rng = np.random.default_rng(p)
    for shape in [(1, 1), (4, 7), (9, 3), (12, 12), (0, 3)]:
        A = rng.integers(-4, 5, size=shape)
        Rp, pp = _pykernels.rref_mod_p(A, p)
        Rc, pc = _ckernels.rref_mod_p(A, p)
        assert list(pp) == list(pc)
        assert np.array_equal(np.asarray(Rp) % p, np.asarray(Rc) % p)


def test_rref_is_reduced(backend):
    A = np.array([[2, 4, 1], [1, 2, 0], [0, 0, 3]])
    R, piv = kernels.rref_mod_p(A, 5)
    R = np.asarray(R)
    assert list(piv) == [0, 2]
    assert R[0, 0] == 1 and R[1, 2] == 1 and R[1, 0] == 0 and R[0, 2] == 0
    assert not R[2].any()
