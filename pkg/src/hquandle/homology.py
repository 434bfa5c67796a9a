"""Chain groups, face maps and boundary matrices of the hierarchical complex.

A degree-``n`` basis element is a tuple of pairs ``((x1, y1), ..., (xn, yn))``.
It is degenerate when two adjacent pairs coincide.  The normalized complex
is free on the non-degenerate elements, so passing to the quotient just
means dropping degenerate terms.

Bases are ordered lexicographically on ``(x1, y1, ..., xn, yn)``.  A pair
``(x, y)`` is also encoded as the integer ``x * |Y| + y`` (the product
quandle element), and the ordering matches lexicographic order on codes.

Matrices are integer valued; reduction to a coefficient ring happens in
:mod:`hquandle.cohomology`.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import scipy.sparse as sp

from .algebra import HierarchicalQuandle, Quandle
from .errors import ResourceCapError, StructuralError

DEFAULT_CAP_COLUMNS = 10**6
DEFAULT_MAX_DEGREE = 4

STANDARD = "standard"
POSITIVE = "positive"


def is_degenerate(b) -> bool:
    return any(b[i] == b[i + 1] for i in range(len(b) - 1))


class ChainBasis:
    """Ordered basis of ``C_n`` (or of ``V_n`` when ``normalized`` is false)."""

    def __init__(self, base_size: int, y_size: int, degree: int, normalized: bool = True,
                 cap: int = DEFAULT_CAP_COLUMNS):
        if degree < 0:
            raise StructuralError("degree must be non-negative")
        self.base_size = base_size
        self.y_size = y_size
        self.degree = degree
        self.normalized = normalized
        N = base_size * y_size
        expected = self.dimension_for(N, degree, normalized)
        if expected > cap:
            raise ResourceCapError(f"degree-{degree} basis has {expected} elements, cap is {cap}",
                                   estimate=expected)
        if degree == 0:
            # C_0 = 0 by convention
            codes = np.zeros((0, 0), dtype=np.int64)
        else:
            grid = np.indices((N,) * degree).reshape(degree, -1).T
            if normalized and degree > 1:
                grid = grid[(grid[:, 1:] != grid[:, :-1]).all(axis=1)]
            codes = np.ascontiguousarray(grid, dtype=np.int64)
        self.codes = codes
        self.keys = self._encode(codes)

    @staticmethod
    def dimension_for(N: int, degree: int, normalized: bool) -> int:
        if degree <= 0:
            return 0
        return N * (N - 1) ** (degree - 1) if normalized else N**degree

    def _encode(self, codes: np.ndarray) -> np.ndarray:
        N = self.base_size * self.y_size
        key = np.zeros(codes.shape[0], dtype=np.int64)
        for j in range(codes.shape[1]):
            key = key * N + codes[:, j]
        return key

    def __len__(self):
        return self.codes.shape[0]

    def element(self, k: int) -> tuple:
        n = self.y_size
        return tuple((int(p) // n, int(p) % n) for p in self.codes[k])

    def elements(self) -> list:
        return [self.element(k) for k in range(len(self))]

    def index(self, b) -> int:
        """Ordinal of basis element ``b``; raises ``KeyError`` if absent."""
        n = self.y_size
        row = np.array([[x * n + y for x, y in b]], dtype=np.int64)
        key = self._encode(row)[0]
        k = int(np.searchsorted(self.keys, key))
        if k >= len(self.keys) or self.keys[k] != key:
            raise KeyError(b)
        return k

    def lookup(self, codes: np.ndarray) -> np.ndarray:
        """Ordinals of many code rows at once (all rows must be present)."""
        keys = self._encode(codes)
        k = np.searchsorted(self.keys, keys)
        if len(keys) and (k.max() >= len(self.keys) or not np.array_equal(self.keys[k], keys)):
            raise KeyError("code row not in basis")
        return k


# ---------------------------------------------------------------------------
# face maps on single basis elements


def lambda_face(b, i: int, base: Quandle, h: HierarchicalQuandle) -> tuple:
    """``lambda_{n,i}``: act by pair ``i`` (1-based) on the pairs before it, drop it."""
    n = len(b)
    if not 1 <= i <= n:
        raise StructuralError(f"face index {i} out of range for degree {n}")
    xi, yi = b[i - 1]
    head = tuple((int(base.table[x, xi]), int(h.tables[x, xi, y, yi])) for x, y in b[: i - 1])
    return head + tuple(b[i:])


def rho_face(b, i: int) -> tuple:
    """``rho_{n,i}``: drop pair ``i`` (1-based)."""
    n = len(b)
    if not 1 <= i <= n:
        raise StructuralError(f"face index {i} out of range for degree {n}")
    return tuple(b[: i - 1]) + tuple(b[i:])


def project(v: dict) -> dict:
    """Image in the normalized complex: drop degenerate terms and zeros."""
    return {b: c for b, c in v.items() if c and not is_degenerate(b)}


def boundary(v: dict, base: Quandle, h: HierarchicalQuandle, variant: str = STANDARD,
             normalized: bool = True) -> dict:
    """Apply ``l - r`` (standard) or ``l + r`` (positive) to a chain.

    ``v`` maps basis tuples to integer coefficients.  With ``normalized``
    the input and output are read in the quotient by degenerate elements.
    Chains of degree 1 map to zero.
    """
    if variant not in (STANDARD, POSITIVE):
        raise StructuralError(f"unknown boundary variant {variant!r}")
    rsign = -1 if variant == STANDARD else 1
    if normalized:
        v = project(v)
    out = defaultdict(int)
    for b, coef in v.items():
        n = len(b)
        if n <= 1:
            continue
        for i in range(1, n + 1):
            s = coef if i % 2 == 1 else -coef
            out[lambda_face(b, i, base, h)] += s
            out[rho_face(b, i)] += rsign * s
    result = {b: c for b, c in out.items() if c}
    return project(result) if normalized else result


# ---------------------------------------------------------------------------
# matrices


@dataclass
class BoundaryMatrix:
    """Sparse integer matrix of a map ``C_n -> C_{n-1}`` in the ordered bases."""

    degree: int
    variant: str
    matrix: sp.csr_matrix
    row_basis: ChainBasis
    col_basis: ChainBasis

    @property
    def shape(self):
        return self.matrix.shape

    def dense(self) -> np.ndarray:
        return self.matrix.toarray()

    def entries(self) -> list:
        coo = self.matrix.tocoo()
        trip = sorted(zip(coo.row.tolist(), coo.col.tolist(), coo.data.tolist()))
        return [[r, c, v] for r, c, v in trip if v]


def _check_degree(n: int, max_degree: int) -> None:
    if n < 1:
        raise StructuralError("boundary maps start in degree 1")
    if n > max_degree:
        raise ResourceCapError(f"degree {n} exceeds the degree cap {max_degree}", estimate=n)


def _face_triplets(base: Quandle, h: HierarchicalQuandle, n: int, which: str, normalized: bool,
                   cols: ChainBasis, rows: ChainBasis):
    """COO triplets of ``l_n`` or ``r_n`` restricted to the given bases."""
    ny = h.size
    P = cols.codes
    X, Y = P // ny, P % ny
    bt, ht = base.table, h.tables
    col_idx = np.arange(len(cols), dtype=np.int64)
    R, C, V = [], [], []
    for i in range(n):
        sign = 1 if i % 2 == 0 else -1
        if which == "l":
            xi, yi = X[:, i : i + 1], Y[:, i : i + 1]
            hx = bt[X[:, :i], xi]
            hy = ht[X[:, :i], xi, Y[:, :i], yi]
            head = hx * ny + hy
        else:
            head = P[:, :i]
        img = np.concatenate([head, P[:, i + 1 :]], axis=1)
        keep = np.ones(len(img), dtype=bool)
        if normalized and n - 1 > 1:
            keep = (img[:, 1:] != img[:, :-1]).all(axis=1)
        R.append(rows.lookup(img[keep]))
        C.append(col_idx[keep])
        V.append(np.full(int(keep.sum()), sign, dtype=np.int64))
    return np.concatenate(R), np.concatenate(C), np.concatenate(V)


def face_matrix(base: Quandle, h: HierarchicalQuandle, n: int, which: str, normalized: bool = True,
                cap: int = DEFAULT_CAP_COLUMNS, max_degree: int = DEFAULT_MAX_DEGREE) -> BoundaryMatrix:
    """Matrix of ``l_n`` (``which="l"``) or ``r_n`` (``which="r"``)."""
    if which not in ("l", "r"):
        raise StructuralError("which must be 'l' or 'r'")
    if h.base_size != base.size:
        raise StructuralError("hierarchical quandle does not match base size")
    _check_degree(n, max_degree)
    cols = ChainBasis(base.size, h.size, n, normalized, cap)
    rows = ChainBasis(base.size, h.size, n - 1, normalized, cap)
    if n == 1:
        mat = sp.csr_matrix((0, len(cols)), dtype=np.int64)
    else:
        r, c, v = _face_triplets(base, h, n, which, normalized, cols, rows)
        mat = sp.coo_matrix((v, (r, c)), shape=(len(rows), len(cols)), dtype=np.int64).tocsr()
        mat.eliminate_zeros()
    return BoundaryMatrix(n, which, mat, rows, cols)


def boundary_matrix(base: Quandle, h: HierarchicalQuandle, n: int, variant: str = STANDARD,
                    normalized: bool = True, cap: int = DEFAULT_CAP_COLUMNS,
                    max_degree: int = DEFAULT_MAX_DEGREE) -> BoundaryMatrix:
    """Sparse matrix of the degree-``n`` boundary (``l - r``, or ``l + r`` for the positive variant)."""
    if variant not in (STANDARD, POSITIVE):
        raise StructuralError(f"unknown boundary variant {variant!r}")
    lm = face_matrix(base, h, n, "l", normalized, cap, max_degree)
    rm = face_matrix(base, h, n, "r", normalized, cap, max_degree)
    mat = lm.matrix - rm.matrix if variant == STANDARD else lm.matrix + rm.matrix
    mat = sp.csr_matrix(mat, dtype=np.int64)
    mat.eliminate_zeros()
    return BoundaryMatrix(n, variant, mat, lm.row_basis, lm.col_basis)


# ---------------------------------------------------------------------------
# classical quandle complex, written directly from the tuple formula


@lru_cache(maxsize=None)
def _classical_basis(N: int, n: int, normalized: bool) -> tuple:
    if n <= 0:
        return ()
    out = []
    for t in itertools.product(range(N), repeat=n):
        if normalized and any(t[i] == t[i + 1] for i in range(n - 1)):
            continue
        out.append(t)
    return tuple(out)


def classical_boundary_matrix(q: Quandle, n: int, normalized: bool = True,
                              cap: int = DEFAULT_CAP_COLUMNS):
    """Boundary of the quandle complex of ``q`` on tuples of elements.

    ``d(x1..xn) = sum_{i=2}^{n} (-1)^i [(x1..^xi..xn) - (x1*xi, .., x_{i-1}*xi, x_{i+1}, .., xn)]``

    Returns ``(matrix, row_basis, col_basis)`` with bases as tuples of ints
    in lexicographic order.
    """
    N = q.size
    if ChainBasis.dimension_for(N, n, normalized) > cap:
        raise ResourceCapError(f"degree-{n} classical basis exceeds cap {cap}")
    cols = _classical_basis(N, n, normalized)
    rows = _classical_basis(N, n - 1, normalized)
    row_index = {t: k for k, t in enumerate(rows)}
    t = q.table.tolist()
    acc = defaultdict(int)
    for j, x in enumerate(cols):
        for i in range(2, n + 1):
            s = 1 if i % 2 == 0 else -1
            dropped = x[: i - 1] + x[i:]
            acted = tuple(t[a][x[i - 1]] for a in x[: i - 1]) + x[i:]
            for img, c in ((dropped, s), (acted, -s)):
                if img in row_index:
                    acc[row_index[img], j] += c
    entries = [(r, c, v) for (r, c), v in acc.items() if v]
    r = np.array([e[0] for e in entries], dtype=np.int64)
    c = np.array([e[1] for e in entries], dtype=np.int64)
    v = np.array([e[2] for e in entries], dtype=np.int64)
    mat = sp.coo_matrix((v, (r, c)), shape=(len(rows), len(cols)), dtype=np.int64).tocsr()
    return mat, list(rows), list(cols)
