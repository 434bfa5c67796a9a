"""Cocycle weights of coloured diagrams and the multiset invariants built from them.

For a 2-cocycle ``omega`` the weight of a crossing is

* positive: ``+omega((y_in, y_over)^{x_in, x_over})``
* negative: ``-omega((y_out, y_over)^{x_out, x_over})``

where ``in``/``out`` are the under-arcs and ``over`` the over-arc.  The state
sum adds the weights of all crossings in the coefficient ring.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .algebra import HierarchicalQuandle, Quandle, RingSpec
from .coloring import Multiset, enumerate_hcolorings, enumerate_qcolorings
from .cohomology import Cochain
from .diagram import Crossing, Diagram
from .errors import RingMismatchError, StructuralError


def _check_ring(omega: Cochain, ring: RingSpec | None) -> RingSpec:
    if omega.degree != 2:
        raise StructuralError(f"weights need a degree-2 cochain, got degree {omega.degree}")
    if ring is not None and ring != omega.ring:
        raise RingMismatchError(f"cocycle is over {omega.ring}, requested {ring}")
    return omega.ring


def crossing_weight(omega: Cochain, crossing: Crossing, xi: Sequence[int], zeta: Sequence[int],
                    ring: RingSpec | None = None) -> int:
    ring = _check_ring(omega, ring)
    c = crossing
    under = c.under_in if c.sign > 0 else c.under_out
    b = ((xi[under], zeta[under]), (xi[c.over], zeta[c.over]))
    return ring.reduce(c.sign * omega(b))


def state_sum_weight(omega: Cochain, d: Diagram, xi: Sequence[int], zeta: Sequence[int],
                     ring: RingSpec | None = None) -> int:
    ring = _check_ring(omega, ring)
    return ring.reduce(sum(crossing_weight(omega, c, xi, zeta) for c in d.crossings))


def weight_table(omega: Cochain, base_size: int, y_size: int) -> np.ndarray:
    """Dense ``W[x1, y1, x2, y2] = omega((y1, y2)^{x1, x2})`` (zero on degenerate pairs)."""
    W = np.zeros((base_size, y_size, base_size, y_size), dtype=np.int64)
    for ((x1, y1), (x2, y2)), v in omega.values.items():
        W[x1, y1, x2, y2] = v
    return W


def _state_sums(W: np.ndarray, d: Diagram, xi, zetas: np.ndarray, ring: RingSpec) -> np.ndarray:
    """Vectorized state sums for many hierarchical colourings (rows of ``zetas``)."""
    total = np.zeros(zetas.shape[0], dtype=np.int64)
    xi = np.asarray(xi, dtype=np.int64)
    for c in d.crossings:
        u = c.under_in if c.sign > 0 else c.under_out
        total += c.sign * W[xi[u], zetas[:, u], xi[c.over], zetas[:, c.over]]
        if ring.modulus:
            total %= ring.modulus
    return total


def invariant_for_coloring(omega: Cochain, d: Diagram, xi: Sequence[int], base: Quandle,
                           h: HierarchicalQuandle) -> Multiset:
    """Multiset of state sums over every hierarchical colouring above ``xi``."""
    ring = _check_ring(omega, None)
    zetas = np.array(enumerate_hcolorings(d, xi, base, h), dtype=np.int64).reshape(-1, d.arc_count)
    W = weight_table(omega, base.size, h.size)
    return Multiset.of(int(v) for v in _state_sums(W, d, xi, zetas, ring))


@dataclass(frozen=True)
class InvariantValue:
    """Per-base multisets, their canonical multiset, and the flattened multiset.

    ``per_base[k]`` is ``(xi, weights)`` for the ``k``-th base colouring in
    lexicographic order.
    """

    per_base: tuple
    full: Multiset
    flattened: Multiset

    def to_dict(self, flatten: bool = False) -> dict:
        out = {"flattened": self.flattened.to_dict()}
        if not flatten:
            out["per_base"] = [
                {"base_index": k, "coloring": list(xi), "weights": w.to_dict()}
                for k, (xi, w) in enumerate(self.per_base)
            ]
            out["full"] = [{"weights": w.to_dict(), "multiplicity": k} for w, k in self.full.items]
        return out


def full_invariant(omega: Cochain, d: Diagram, q: Quandle, h: HierarchicalQuandle) -> InvariantValue:
    per = []
    for xi in enumerate_qcolorings(d, q):
        per.append((xi, invariant_for_coloring(omega, d, xi, q, h)))
    full = Multiset.of(w for _, w in per)
    flat = Multiset.of(v for _, w in per for v in w)
    return InvariantValue(tuple(per), full, flat)


# ---------------------------------------------------------------------------
# classical state sums on a plain quandle


def pair_cocycle_table(omega: Cochain, y_size: int, size: int) -> np.ndarray:
    """``phi[a, b]`` on product elements ``a = x * y_size + y``."""
    phi = np.zeros((size, size), dtype=np.int64)
    for ((x1, y1), (x2, y2)), v in omega.values.items():
        phi[x1 * y_size + y1, x2 * y_size + y2] = v
    return phi


def classical_invariant(phi: np.ndarray, d: Diagram, q: Quandle, ring: RingSpec) -> Multiset:
    """Multiset of classical state sums ``sum sign * phi[under, over]`` over colourings by ``q``."""
    out = []
    for col in enumerate_qcolorings(d, q):
        s = 0
        for c in d.crossings:
            u = c.under_in if c.sign > 0 else c.under_out
            s += c.sign * int(phi[col[u], col[c.over]])
        out.append(ring.reduce(s))
    return Multiset.of(out)
