"""Exact linear algebra over the integers and over ``Z/p``.

The integer route is a Smith normal form with unimodular transforms, in
Python integers so entries never overflow.  The mod-``p`` route wraps the
row-reduction kernel.  The two are written independently so that each can
check the other.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

import numpy as np

from . import kernels


def _to_rows(A):
    A = _dense(A)
    if A.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    return A.tolist(), A.shape


@dataclass
class SmithForm:
    """``U @ A @ V == D`` with ``D`` diagonal and ``diag[k] | diag[k+1]``.

    Matrices are lists of rows of Python ints.  ``diag`` lists the nonzero
    diagonal entries (all positive), so ``rank == len(diag)``.
    """

    shape: tuple
    diag: list
    U: list | None
    Uinv: list | None
    V: list | None
    Vinv: list | None

    @property
    def rank(self) -> int:
        return len(self.diag)


def smith_normal_form(A, transforms: bool = True) -> SmithForm:
    """Smith normal form of an integer matrix.

    Pivots are chosen by minimal absolute value, which keeps entries small
    on the sparse, small-entried boundary matrices seen here.
    """
    M, (rows, cols) = _to_rows(A)
    if transforms:
        U = [[int(i == j) for j in range(rows)] for i in range(rows)]
        Uinv_t = [[int(i == j) for j in range(rows)] for i in range(rows)]  # transposed
        V_t = [[int(i == j) for j in range(cols)] for i in range(cols)]  # transposed
        Vinv = [[int(i == j) for j in range(cols)] for i in range(cols)]

    def row_add(dst, src, q):
        # row_dst -= q * row_src
        if not q:
            return
        rs, rd = M[src], M[dst]
        for j in range(cols):
            if rs[j]:
                rd[j] -= q * rs[j]
        if transforms:
            us, ud = U[src], U[dst]
            for j in range(rows):
                if us[j]:
                    ud[j] -= q * us[j]
            vs, vd = Uinv_t[dst], Uinv_t[src]
            for j in range(rows):
                if vs[j]:
                    vd[j] += q * vs[j]

    def col_add(dst, src, q):
        # col_dst -= q * col_src
        if not q:
            return
        for r in M:
            if r[src]:
                r[dst] -= q * r[src]
        if transforms:
            vs, vd = V_t[src], V_t[dst]
            for j in range(cols):
                if vs[j]:
                    vd[j] -= q * vs[j]
            ws, wd = Vinv[dst], Vinv[src]
            for j in range(cols):
                if ws[j]:
                    wd[j] += q * ws[j]

    def row_swap(i, k):
        if i == k:
            return
        M[i], M[k] = M[k], M[i]
        if transforms:
            U[i], U[k] = U[k], U[i]
            Uinv_t[i], Uinv_t[k] = Uinv_t[k], Uinv_t[i]

    def col_swap(i, k):
        if i == k:
            return
        for r in M:
            r[i], r[k] = r[k], r[i]
        if transforms:
            V_t[i], V_t[k] = V_t[k], V_t[i]
            Vinv[i], Vinv[k] = Vinv[k], Vinv[i]

    def row_neg(i):
        M[i] = [-v for v in M[i]]
        if transforms:
            U[i] = [-v for v in U[i]]
            Uinv_t[i] = [-v for v in Uinv_t[i]]

    diag = []
    t = 0
    while t < min(rows, cols):
        best = None
        for i in range(t, rows):
            r = M[i]
            for j in range(t, cols):
                v = r[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        row_swap(t, best[1])
        col_swap(t, best[2])
        while True:
            p = M[t][t]
            dirty = False
            for i in range(t + 1, rows):
                if M[i][t]:
                    row_add(i, t, M[i][t] // p)
                    if M[i][t]:
                        dirty = True
            for j in range(t + 1, cols):
                if M[t][j]:
                    col_add(j, t, M[t][j] // p)
                    if M[t][j]:
                        dirty = True
            if dirty:
                # move the smallest leftover in row/column t onto the pivot
                cand = [(abs(M[i][t]), i, t) for i in range(t + 1, rows) if M[i][t]]
                cand += [(abs(M[t][j]), t, j) for j in range(t + 1, cols) if M[t][j]]
                _, i, j = min(cand)
                if abs(M[i][j]) < abs(p):
                    row_swap(t, i)
                    col_swap(t, j)
                continue
            bad = None
            for i in range(t + 1, rows):
                r = M[i]
                for j in range(t + 1, cols):
                    if r[j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            row_add(t, bad, -1)
        if M[t][t] < 0:
            row_neg(t)
        diag.append(M[t][t])
        t += 1

    if not transforms:
        return SmithForm((rows, cols), diag, None, None, None, None)
    Uinv = [list(r) for r in zip(*Uinv_t)] if rows else []
    V = [list(r) for r in zip(*V_t)] if cols else []
    return SmithForm((rows, cols), diag, U, Uinv, V, Vinv)


def matmul(A: list, B: list) -> list:
    """Exact product of two list-of-rows integer matrices."""
    if not A:
        return []
    Bt = list(zip(*B)) if B else []
    if not Bt:
        return [[] for _ in A]
    return [[sum(a * b for a, b in zip(r, c) if a and b) for c in Bt] for r in A]


def column(A: list, j: int) -> list:
    return [r[j] for r in A]


def solve_mod(A, b: list, m: int | None):
    """One solution ``x`` of ``A x = b`` over ``Z`` (``m`` is None) or ``Z/m``, or ``None``.

    Solvability is decided exactly from the Smith form: with ``U A V = D``
    the system becomes ``D w = U b`` and ``x = V w``.
    """
    sf = smith_normal_form(A)
    rows, cols = sf.shape
    ub = [sum(u * v for u, v in zip(row, b)) for row in sf.U] if rows else []
    w = [0] * cols
    for i in range(rows):
        target = ub[i] % m if m else ub[i]
        if i < sf.rank:
            d = sf.diag[i]
            if m:
                g = gcd(d, m)
                if target % g:
                    return None
                mg = m // g
                w[i] = (target // g) * pow(d // g, -1, mg) % mg if mg > 1 else 0
            else:
                if target % d:
                    return None
                w[i] = target // d
        elif target:
            return None
    x = [sum(v * wi for v, wi in zip(row, w)) for row in sf.V] if cols else []
    return [xi % m for xi in x] if m else x


# ---------------------------------------------------------------------------
# mod p


def rank_mod_p(A, p: int) -> int:
    A = _dense(A)
    if A.size == 0:
        return 0
    _, piv = kernels.rref_mod_p(A, p)
    return len(piv)


def nullspace_mod_p(A, p: int) -> np.ndarray:
    """Basis of ``{x : A x = 0 mod p}`` as rows, in reduced echelon order."""
    A = _dense(A)
    rows, cols = A.shape
    if rows == 0:
        return np.eye(cols, dtype=np.int64)
    R, piv = kernels.rref_mod_p(A, p)
    free = [j for j in range(cols) if j not in set(piv)]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for r, pc in enumerate(piv):
            basis[k, pc] = (-R[r, f]) % p
    return basis


def column_space_mod_p(A, p: int) -> np.ndarray:
    """Basis of the column space of ``A`` mod ``p`` as rows (pivot columns of ``A``)."""
    A = _dense(A)
    if A.size == 0:
        return np.zeros((0, A.shape[0]), dtype=np.int64)
    _, piv = kernels.rref_mod_p(A, p)
    return (A[:, piv].T % p).astype(np.int64)


def extend_mod_p(span_rows: np.ndarray, candidates: np.ndarray, p: int) -> list:
    """Indices of candidate rows that extend a basis of ``span(span_rows)``, greedily in order."""
    k = span_rows.shape[0]
    M = np.vstack([span_rows, candidates]).T if k or len(candidates) else np.zeros((0, 0))
    if M.size == 0:
        return []
    _, piv = kernels.rref_mod_p(M, p)
    return [c - k for c in piv if c >= k]


def _dense(A) -> np.ndarray:
    if hasattr(A, "toarray"):
        A = A.toarray()
    return np.asarray(A, dtype=np.int64)
