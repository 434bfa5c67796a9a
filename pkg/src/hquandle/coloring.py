"""Quandle colourings and hierarchical colourings of diagrams.

Colourings are tuples of element indices, one entry per arc, and every
enumeration returns them in lexicographic order.  Both layers run the same
backtracking kernel (:func:`hquandle.kernels.search_colorings`); they only
differ in the per-crossing lookup tables handed to it.

For a hierarchical colouring ``zeta`` over a base colouring ``xi``:

* positive crossing: ``zeta(out) = zeta(in) *_{xi(in)}^{xi(over)} zeta(over)``
* negative crossing: ``zeta(out) = zeta(in) /_{xi(out)}^{xi(over)} zeta(over)``
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .algebra import HierarchicalQuandle, Quandle
from .diagram import Diagram
from .errors import ColoringError, StructuralError


@dataclass(frozen=True, order=True)
class Multiset:
    """Sorted ``(value, multiplicity)`` pairs with distinct values.

    Values may themselves be :class:`Multiset` instances, which compare by
    their item tuples, so multisets of multisets have a canonical order.
    """

    items: tuple = ()

    @classmethod
    def of(cls, values: Iterable) -> "Multiset":
        return cls(tuple(sorted(Counter(values).items())))

    def __len__(self):
        return sum(k for _, k in self.items)

    def __iter__(self):
        for v, k in self.items:
            for _ in range(k):
                yield v

    def to_dict(self) -> dict:
        return {str(v): k for v, k in self.items}

    def __repr__(self):
        return "{" + ", ".join(f"{v!r}: {k}" for v, k in self.items) + "}"


def _crossing_arrays(d: Diagram):
    ins = np.array([c.under_in for c in d.crossings], dtype=np.int64)
    overs = np.array([c.over for c in d.crossings], dtype=np.int64)
    outs = np.array([c.under_out for c in d.crossings], dtype=np.int64)
    signs = np.array([c.sign for c in d.crossings], dtype=np.int64)
    return ins, overs, outs, signs


def _quandle_tables(d: Diagram, q: Quandle):
    _, _, _, signs = _crossing_arrays(d)
    pos = (signs > 0)[:, None, None]
    fwd = np.where(pos, q.table, q.div_table)
    bwd = np.where(pos, q.div_table, q.table)
    return fwd.reshape(len(signs), q.size, q.size), bwd.reshape(len(signs), q.size, q.size)


def _run(d: Diagram, fwd, bwd, ncolors, count_only):
    ins, overs, outs, _ = _crossing_arrays(d)
    return kernels.search_colorings(ins, overs, outs, fwd, bwd, d.arc_count, ncolors, count_only)


def enumerate_qcolorings(d: Diagram, q: Quandle) -> list:
    fwd, bwd = _quandle_tables(d, q)
    _, sols = _run(d, fwd, bwd, q.size, False)
    return [tuple(int(v) for v in row) for row in sols]


def count_qcolorings(d: Diagram, q: Quandle) -> int:
    fwd, bwd = _quandle_tables(d, q)
    count, _ = _run(d, fwd, bwd, q.size, True)
    return count


def check_qcoloring(d: Diagram, q: Quandle, xi: Sequence[int]) -> int | None:
    """Index of the first crossing whose rule ``xi`` breaks, or ``None``."""
    t = q.table
    for k, c in enumerate(d.crossings):
        if c.sign > 0:
            ok = t[xi[c.under_in], xi[c.over]] == xi[c.under_out]
        else:
            ok = t[xi[c.under_out], xi[c.over]] == xi[c.under_in]
        if not ok:
            return k
    return None


def check_hcoloring(d: Diagram, base: Quandle, h: HierarchicalQuandle,
                    xi: Sequence[int], zeta: Sequence[int]) -> int | None:
    """Index of the first crossing where ``(xi, zeta)`` breaks the hierarchical rule, or ``None``."""
    t = h.tables
    for k, c in enumerate(d.crossings):
        if c.sign > 0:
            ok = t[xi[c.under_in], xi[c.over], zeta[c.under_in], zeta[c.over]] == zeta[c.under_out]
        else:
            ok = t[xi[c.under_out], xi[c.over], zeta[c.under_out], zeta[c.over]] == zeta[c.under_in]
        if not ok:
            return k
    return None


def _hierarchical_tables(d: Diagram, base: Quandle, h: HierarchicalQuandle, xi: Sequence[int]):
    if h.base_size != base.size:
        raise StructuralError("hierarchical quandle does not match the base quandle")
    if len(xi) != d.arc_count:
        raise StructuralError(f"base colouring has {len(xi)} entries for {d.arc_count} arcs")
    bad = check_qcoloring(d, base, xi)
    if bad is not None:
        raise ColoringError(f"base colouring violates crossing {bad}", crossing=bad)
    ncross = len(d.crossings)
    n = h.size
    fwd = np.empty((ncross, n, n), dtype=np.int64)
    bwd = np.empty((ncross, n, n), dtype=np.int64)
    div = h.div_tables
    for k, c in enumerate(d.crossings):
        if c.sign > 0:
            x1 = xi[c.under_in]
            fwd[k] = h.tables[x1, xi[c.over]]
            bwd[k] = div[x1, xi[c.over]]
        else:
            x1 = xi[c.under_out]
            fwd[k] = div[x1, xi[c.over]]
            bwd[k] = h.tables[x1, xi[c.over]]
    return fwd, bwd


def enumerate_hcolorings(d: Diagram, xi: Sequence[int], base: Quandle, h: HierarchicalQuandle) -> list:
    fwd, bwd = _hierarchical_tables(d, base, h, xi)
    _, sols = _run(d, fwd, bwd, h.size, False)
    return [tuple(int(v) for v in row) for row in sols]


def count_hcolorings(d: Diagram, xi: Sequence[int], base: Quandle, h: HierarchicalQuandle) -> int:
    fwd, bwd = _hierarchical_tables(d, base, h, xi)
    count, _ = _run(d, fwd, bwd, h.size, True)
    return count


def hcoloring_spectrum(d: Diagram, base: Quandle, h: HierarchicalQuandle) -> Multiset:
    """Multiset of ``|C_Y(D, xi)|`` over all base colourings ``xi``."""
    return Multiset.of(count_hcolorings(d, xi, base, h) for xi in enumerate_qcolorings(d, base))
