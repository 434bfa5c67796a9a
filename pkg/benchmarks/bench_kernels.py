"""Time the compiled kernels against the pure-Python fallback.

Usage::

    python benchmarks/bench_kernels.py [--repeat N]

Both backends must return identical results; the script exits non-zero
otherwise.  Without a built extension only the Python timings are shown.
"""

import argparse
import sys
import timeit

import numpy as np

from hquandle import _pykernels
from hquandle.algebra import make_constant_family, make_dihedral, make_trivial
from hquandle.coloring import _crossing_arrays, _quandle_tables
from hquandle.diagram import Diagram, braid_closure, disjoint_union, random_moves
from hquandle.homology import boundary_matrix

try:
    from hquandle import _ckernels
except ImportError:
    _ckernels = None


def colouring_cases():
    trefoil = braid_closure([1, 1, 1], 2)
    yield "trefoil+moves / R5", random_moves(trefoil, r1=4, r2=6, seed=11), make_dihedral(5)
    yield "7-crossing braid / R7", braid_closure([1, -2, 1, -2, 1, 3, -2], 4), make_dihedral(7)
    yield "unlink(2) u hopf / T4", disjoint_union([Diagram.unlink(2), braid_closure([1, 1], 2)]), make_trivial(4)


def rref_cases():
    t2 = make_trivial(2)
    h = make_constant_family(t2, make_dihedral(3))
    yield "boundary deg 3 (T2, R3)", boundary_matrix(t2, h, 3).dense().T, 3
    rng = np.random.default_rng(0)
    yield "random 200x300 mod 7", rng.integers(0, 7, size=(200, 300)), 7


def timed(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    impls = [("python", _pykernels)] + ([("cython", _ckernels)] if _ckernels else [])
    print(f"{'case':34} " + " ".join(f"{n:>10}" for n, _ in impls) + ("    speedup" if len(impls) == 2 else ""))

    ok = True
    for label, d, q in colouring_cases():
        ins, overs, outs, _ = _crossing_arrays(d)
        fwd, bwd = _quandle_tables(d, q)
        call = lambda m: m.search_colorings(ins, overs, outs, fwd, bwd, d.arc_count, q.size)
        results = [call(m) for _, m in impls]
        ok &= all(r[0] == results[0][0] and np.array_equal(r[1], results[0][1]) for r in results)
        times = [timed(lambda m=m: call(m), args.repeat) for _, m in impls]
        report(f"colour {label}", times)

    for label, A, p in rref_cases():
        results = [m.rref_mod_p(A, p) for _, m in impls]
        ok &= all(list(r[1]) == list(results[0][1]) for r in results)
        times = [timed(lambda m=m: m.rref_mod_p(A, p), args.repeat) for _, m in impls]
        report(f"rref {label}", times)

    if not ok:
        print("backends disagree", file=sys.stderr)
        return 1
    return 0


def report(label, times):
    cells = " ".join(f"{t * 1e3:8.2f}ms" for t in times)
    extra = f"  {times[0] / times[1]:8.1f}x" if len(times) == 2 else ""
    print(f"{label:34} {cells}{extra}")


if __name__ == "__main__":
    sys.exit(main())
