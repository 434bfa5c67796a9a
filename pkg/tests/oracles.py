"""Brute-force reference implementations used only by the tests.

Everything here is written from the definitions with plain loops, sharing
no code with the package beyond the data classes.
"""

import itertools

import numpy as np


def brute_qcolorings(d, table):
    t = np.asarray(table)
    n = t.shape[0]
    out = []
    for col in itertools.product(range(n), repeat=d.arc_count):
        ok = True
        for c in d.crossings:
            a, b, o = col[c.under_in], col[c.over], col[c.under_out]
            if c.sign > 0 and t[a, b] != o:
                ok = False
            if c.sign < 0 and t[o, b] != a:
                ok = False
            if not ok:
                break
        if ok:
            out.append(col)
    return out


def brute_hcolorings(d, xi, tables):
    t = np.asarray(tables)
    n = t.shape[2]
    out = []
    for z in itertools.product(range(n), repeat=d.arc_count):
        ok = True
        for c in d.crossings:
            if c.sign > 0:
                ok = t[xi[c.under_in], xi[c.over], z[c.under_in], z[c.over]] == z[c.under_out]
            else:
                ok = t[xi[c.under_out], xi[c.over], z[c.under_out], z[c.over]] == z[c.under_in]
            if not ok:
                break
        if ok:
            out.append(z)
    return out


def is_quandle_table(t):
    n = len(t)
    for a in range(n):
        if t[a][a] != a:
            return False
    for b in range(n):
        if sorted(t[a][b] for a in range(n)) != list(range(n)):
            return False
    for a, b, c in itertools.product(range(n), repeat=3):
        if t[t[a][b]][c] != t[t[a][c]][t[b][c]]:
            return False
    return True


def all_quandle_tables(n):
    out = []
    for flat in itertools.product(range(n), repeat=n * n):
        t = [list(flat[i * n:(i + 1) * n]) for i in range(n)]
        if is_quandle_table(t):
            out.append(t)
    return out


def all_hquandles_brute(base_table, n):
    """Every family ``t[x1][x2]`` of ``n x n`` tables satisfying the three axioms."""
    b = np.asarray(base_table)
    m = b.shape[0]
    cells = m * m * n * n
    flat = np.array(list(itertools.product(range(n), repeat=cells)), dtype=np.int64)
    T = flat.reshape(-1, m, m, n, n)
    ok = np.ones(len(T), dtype=bool)
    for x in range(m):
        for y in range(n):
            ok &= T[:, x, x, y, y] == y
    for x1, x2 in itertools.product(range(m), repeat=2):
        for a in range(n):
            col = np.sort(T[:, x1, x2, :, a], axis=1)
            ok &= (col == np.arange(n)).all(axis=1)
    for x1, x2, x3 in itertools.product(range(m), repeat=3):
        for y1, y2, y3 in itertools.product(range(n), repeat=3):
            inner = T[:, x1, x2, y1, y2]
            lhs = T[np.arange(len(T)), b[x1, x2], x3, inner, y3]
            l13 = T[:, x1, x3, y1, y3]
            l23 = T[:, x2, x3, y2, y3]
            rhs = T[np.arange(len(T)), b[x1, x3], b[x2, x3], l13, l23]
            ok &= lhs == rhs
    return T[ok]


def dense_boundary(base_table, tables, n, basis_n, basis_lower, positive=False):
    """Boundary matrix from the tuple formula, element by element."""
    b = np.asarray(base_table)
    t = np.asarray(tables)
    index = {e: k for k, e in enumerate(basis_lower)}
    M = np.zeros((len(basis_lower), len(basis_n)), dtype=np.int64)
    for j, e in enumerate(basis_n):
        for i in range(n):
            s = (-1) ** i
            xi, yi = e[i]
            lam = tuple((int(b[x, xi]), int(t[x, xi, y, yi])) for x, y in e[:i]) + e[i + 1:]
            rho = e[:i] + e[i + 1:]
            for img, c in ((lam, s), (rho, s if positive else -s)):
                if img in index:
                    M[index[img], j] += c
    return M
