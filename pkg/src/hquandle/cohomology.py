"""Cochains, cocycles, coboundaries and cohomology of the hierarchical complex.

A degree-``n`` cochain is a function on the non-degenerate degree-``n``
basis, so it vanishes on degenerate tuples by construction.  The
coboundary acts by the transpose of the boundary matrix:
``(d omega)(b) = omega(boundary(b))``.

Two routes compute cohomology:

* ``"snf"``: Smith normal forms over the integers, valid for ``Z`` and every
  ``Z/m``;
* ``"modp"``: row reduction over the field ``Z/p``.

For prime ``p`` both are available and are expected to agree.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

import numpy as np

from . import linalg
from .algebra import HierarchicalQuandle, Quandle, RingSpec
from .errors import ResourceCapError, RingMismatchError, StructuralError
from .homology import (
    DEFAULT_CAP_COLUMNS,
    DEFAULT_MAX_DEGREE,
    ChainBasis,
    boundary_matrix,
    classical_boundary_matrix,
    is_degenerate,
)

SNF = "snf"
MODP = "modp"


@dataclass(frozen=True)
class Cochain:
    """Sparse cochain: ``values`` maps non-degenerate basis tuples to ring elements.

    Values are stored reduced (least non-negative residue for ``Z/m``) and
    zeros are never stored.
    """

    degree: int
    ring: RingSpec
    values: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for b, v in self.values.items():
            b = tuple((int(x), int(y)) for x, y in b)
            if len(b) != self.degree:
                raise StructuralError(f"entry {b} has the wrong degree for a degree-{self.degree} cochain")
            v = self.ring.reduce(v)
            if is_degenerate(b):
                if v:
                    raise StructuralError(f"cochain is nonzero on the degenerate element {b}")
                continue
            if v:
                clean[b] = v
        object.__setattr__(self, "values", clean)

    def __call__(self, b) -> int:
        return self.values.get(tuple(b), 0)

    def __add__(self, other: "Cochain") -> "Cochain":
        _check_compatible(self, other)
        out = dict(self.values)
        for b, v in other.values.items():
            out[b] = out.get(b, 0) + v
        return Cochain(self.degree, self.ring, out)

    def __neg__(self) -> "Cochain":
        return Cochain(self.degree, self.ring, {b: -v for b, v in self.values.items()})

    def __sub__(self, other: "Cochain") -> "Cochain":
        return self + (-other)

    def scale(self, k: int) -> "Cochain":
        return Cochain(self.degree, self.ring, {b: k * v for b, v in self.values.items()})

    def is_zero(self) -> bool:
        return not self.values

    def __eq__(self, other):
        return (isinstance(other, Cochain) and self.degree == other.degree
                and self.ring == other.ring and self.values == other.values)

    def __hash__(self):
        return hash((self.degree, str(self.ring), tuple(sorted(self.values.items()))))

    def to_vector(self, basis: ChainBasis) -> list:
        vec = [0] * len(basis)
        for b, v in self.values.items():
            vec[basis.index(b)] = v
        return vec

    @classmethod
    def from_vector(cls, basis: ChainBasis, vec, ring: RingSpec) -> "Cochain":
        vals = {basis.element(k): int(v) for k, v in enumerate(vec) if ring.reduce(v)}
        return cls(basis.degree, ring, vals)

    @classmethod
    def zero(cls, degree: int, ring: RingSpec) -> "Cochain":
        return cls(degree, ring, {})


def _check_compatible(a: Cochain, b: Cochain) -> None:
    if a.ring != b.ring:
        raise RingMismatchError(f"cochains over {a.ring} and {b.ring}")
    if a.degree != b.degree:
        raise StructuralError(f"cochains of degree {a.degree} and {b.degree}")


class CochainSpace(list):
    """List of cochains generating a submodule.

    ``form`` is ``"basis"`` when the list is a free basis (over ``Z`` or a
    prime field) and ``"invariant-factor"`` for ``Z/m`` with composite ``m``,
    where ``orders[k]`` is the additive order of generator ``k``.
    """

    def __init__(self, items=(), form: str = "basis", orders=None):
        super().__init__(items)
        self.form = form
        self.orders = list(orders) if orders is not None else None


@dataclass
class CohomologyResult:
    """``H^n`` over a ring.

    Over ``Z``: ``betti`` and the ``torsion`` invariant factors.  Over ``Z/m``:
    ``invariant_factors`` (orders of the cyclic summands) and, when ``m`` is
    prime, ``dimension``.  ``representatives[k]`` generates summand ``k``;
    over ``Z`` the free generators come after the torsion ones.
    """

    degree: int
    ring: RingSpec
    method: str
    cochain_dim: int
    cocycle_dim: int | None = None
    coboundary_dim: int | None = None
    betti: int | None = None
    torsion: list = field(default_factory=list)
    invariant_factors: list = field(default_factory=list)
    dimension: int | None = None
    representatives: list = field(default_factory=list)

    @property
    def form(self) -> str:
        return "invariant-factor" if self.ring.kind == "zm" and not self.ring.is_prime_field else "basis"

    def to_dict(self, representatives: bool = False) -> dict:
        out = {
            "degree": self.degree,
            "ring": str(self.ring),
            "method": self.method,
            "form": self.form,
            "cochain_dim": self.cochain_dim,
        }
        if self.ring.kind == "z":
            out["betti"] = self.betti
            out["torsion"] = list(self.torsion)
        else:
            out["invariant_factors"] = list(self.invariant_factors)
            if self.dimension is not None:
                out["dimension"] = self.dimension
        if representatives:
            from .formats import cochain_to_json

            out["representatives"] = [cochain_to_json(c) for c in self.representatives]
        return out


# ---------------------------------------------------------------------------
# the two pairing matrices around degree n


@dataclass
class _Complex:
    """``A = d_{n+1}^T`` (cocycle test) and ``B = d_n^T`` (coboundaries) in degree ``n``."""

    degree: int
    basis: ChainBasis | None
    lower: object
    A: np.ndarray
    B: np.ndarray


def _hier_complex(base, h, n, cap, max_degree) -> _Complex:
    if n < 1:
        raise StructuralError("cochain degree must be at least 1")
    up = boundary_matrix(base, h, n + 1, cap=cap, max_degree=max_degree + 1)
    A = up.dense().T
    if n == 1:
        B = np.zeros((A.shape[1], 0), dtype=np.int64)
        lower = ChainBasis(base.size, h.size, 0)
    else:
        down = boundary_matrix(base, h, n, cap=cap, max_degree=max_degree + 1)
        B = down.dense().T
        lower = down.row_basis
    return _Complex(n, up.row_basis, lower, A, B)


def _classical_complex(q, n, cap) -> _Complex:
    up, _, _ = classical_boundary_matrix(q, n + 1, cap=cap)
    A = up.toarray().T
    if n == 1:
        B = np.zeros((A.shape[1], 0), dtype=np.int64)
    else:
        down, _, _ = classical_boundary_matrix(q, n, cap=cap)
        B = down.toarray().T
    return _Complex(n, None, None, A, B)


def _check_degree_cap(n: int, max_degree: int) -> None:
    if n > max_degree:
        raise ResourceCapError(f"cohomology degree {n} exceeds the degree cap {max_degree}", estimate=n)


# ---------------------------------------------------------------------------
# cores that work on plain integer vectors


def _normalize(vec: list, ring: RingSpec) -> list:
    m = ring.modulus
    vec = [v % m for v in vec] if m else list(vec)
    lead = next((v for v in vec if v), 0)
    if not lead:
        return vec
    if m is None:
        return [-v for v in vec] if lead < 0 else vec
    if ring.is_prime_field:
        inv = pow(lead, -1, m)
        return [v * inv % m for v in vec]
    return vec


def _kernel_lattice(A: np.ndarray, m: int | None):
    """Integer basis of the lifts of ``{w : A w = 0}`` (mod ``m``) and its coordinate map.

    Returns ``(Kb, coords)``: columns of ``Kb`` generate the lift lattice,
    ``coords(g)`` gives integer coordinates of a lattice vector ``g``.
    ``orders`` holds each generator's additive order mod ``m`` (None over Z).
    """
    c = A.shape[1]
    sf = linalg.smith_normal_form(A) if A.shape[0] else None
    if sf is None:
        V = Vinv = [[int(i == j) for j in range(c)] for i in range(c)]
        diag = []
    else:
        V, Vinv, diag = sf.V, sf.Vinv, sf.diag
    r = len(diag)
    if m is None:
        idx = list(range(r, c))
        scale = [1] * len(idx)
    else:
        idx = list(range(c))
        scale = [m // gcd(diag[i], m) if i < r else 1 for i in idx]
    Kb = [[V[row][i] * s for i, s in zip(idx, scale)] for row in range(c)]

    def coords(g: list) -> list:
        full = [sum(a * b for a, b in zip(Vinv[i], g) if a and b) for i in idx]
        out = []
        for v, s in zip(full, scale):
            assert v % s == 0
            out.append(v // s)
        return out

    orders = None if m is None else [m // s for s in scale]
    return Kb, coords, orders


def _snf_route(cx: _Complex, ring: RingSpec):
    m = ring.modulus
    c = cx.A.shape[1]
    Kb, coords, _ = _kernel_lattice(cx.A, m)
    k = len(Kb[0]) if Kb else 0
    gens = [list(map(int, cx.B[:, j])) for j in range(cx.B.shape[1])]
    if m is not None:
        gens += [[m if i == j else 0 for i in range(c)] for j in range(c)]
    if k == 0:
        return [], []
    C = np.array([coords(g) for g in gens], dtype=np.int64).reshape(len(gens), k).T
    sf = linalg.smith_normal_form(C)
    diag = sf.diag + [0] * (k - sf.rank)
    Uinv = sf.Uinv
    torsion, free = [], []
    for i, d in enumerate(diag):
        if d == 1:
            continue
        vec = [sum(Kb[row][j] * Uinv[j][i] for j in range(k)) for row in range(c)]
        (free if d == 0 else torsion).append((d, vec))
    return torsion, free


def _modp_route(cx: _Complex, p: int):
    null = linalg.nullspace_mod_p(cx.A, p)
    span = linalg.column_space_mod_p(cx.B, p)
    picks = linalg.extend_mod_p(span, null, p)
    reps = [list(map(int, null[i])) for i in picks]
    return reps, null.shape[0], span.shape[0]


def _result(cx: _Complex, ring: RingSpec, method: str, make) -> CohomologyResult:
    c = cx.A.shape[1]
    if method == MODP:
        if not ring.is_prime_field:
            raise StructuralError("the mod-p route needs a prime modulus")
        reps, zr, br = _modp_route(cx, ring.modulus)
        return CohomologyResult(
            cx.degree, ring, MODP, c, zr, br,
            invariant_factors=[ring.modulus] * len(reps), dimension=len(reps),
            representatives=[make(_normalize(v, ring)) for v in reps],
        )
    if method != SNF:
        raise StructuralError(f"unknown method {method!r}")
    torsion, free = _snf_route(cx, ring)
    if ring.kind == "z":
        reps = [make(_normalize(v, ring)) for _, v in torsion + free]
        return CohomologyResult(cx.degree, ring, SNF, c, betti=len(free),
                                torsion=[d for d, _ in torsion], representatives=reps)
    factors = [d for d, _ in torsion]
    return CohomologyResult(
        cx.degree, ring, SNF, c,
        invariant_factors=factors,
        dimension=len(factors) if ring.is_prime_field else None,
        representatives=[make(_normalize(v, ring)) for _, v in torsion],
    )


def _default_method(ring: RingSpec) -> str:
    return MODP if ring.is_prime_field else SNF


# ---------------------------------------------------------------------------
# public API


def coboundary(c: Cochain, base: Quandle, h: HierarchicalQuandle, cap: int = DEFAULT_CAP_COLUMNS) -> Cochain:
    """``(d c)(b) = c(boundary(b))`` on degree ``c.degree + 1`` elements."""
    n = c.degree + 1
    if c.degree < 1:
        return Cochain.zero(max(n, 1), c.ring)
    bm = boundary_matrix(base, h, n, cap=cap, max_degree=n)
    vec = np.array(c.to_vector(bm.row_basis), dtype=np.int64)
    out = bm.matrix.T @ vec if len(vec) else np.zeros(len(bm.col_basis), dtype=np.int64)
    return Cochain.from_vector(bm.col_basis, [int(v) for v in out], c.ring)


def cocycle_space(base: Quandle, h: HierarchicalQuandle, n: int, ring: RingSpec,
                  cap: int = DEFAULT_CAP_COLUMNS, max_degree: int = DEFAULT_MAX_DEGREE - 1) -> CochainSpace:
    """Generators of ``{omega in C^n : omega o boundary_{n+1} = 0}``."""
    _check_degree_cap(n, max_degree)
    cx = _hier_complex(base, h, n, cap, max_degree)
    make = lambda v: Cochain.from_vector(cx.basis, v, ring)
    if ring.is_prime_field:
        null = linalg.nullspace_mod_p(cx.A, ring.modulus)
        return CochainSpace([make(_normalize(list(map(int, r)), ring)) for r in null])
    Kb, _, orders = _kernel_lattice(cx.A, ring.modulus)
    cols = [[row[j] for row in Kb] for j in range(len(Kb[0]) if Kb else 0)]
    if ring.kind == "z":
        return CochainSpace([make(_normalize(v, ring)) for v in cols])
    keep = [(v, o) for v, o in zip(cols, orders) if o > 1]
    return CochainSpace([make(_normalize(v, ring)) for v, _ in keep], form="invariant-factor",
                        orders=[o for _, o in keep])


def coboundary_space(base: Quandle, h: HierarchicalQuandle, n: int, ring: RingSpec,
                     cap: int = DEFAULT_CAP_COLUMNS, max_degree: int = DEFAULT_MAX_DEGREE) -> CochainSpace:
    """Generators of the image of ``C^{n-1} -> C^n``; empty for ``n = 1``."""
    if n < 1:
        raise StructuralError("cochain degree must be at least 1")
    _check_degree_cap(n, max_degree)
    col_basis = ChainBasis(base.size, h.size, n, cap=cap)
    if n == 1:
        return CochainSpace()
    bm = boundary_matrix(base, h, n, cap=cap, max_degree=max_degree)
    B = bm.dense().T
    make = lambda v: Cochain.from_vector(col_basis, v, ring)
    if ring.is_prime_field:
        span = linalg.column_space_mod_p(B, ring.modulus)
        return CochainSpace([make(_normalize(list(map(int, r)), ring)) for r in span])
    sf = linalg.smith_normal_form(B)
    m = ring.modulus
    gens, orders = [], []
    for i, d in enumerate(sf.diag):
        vec = [row[i] * d for row in sf.Uinv]
        if m is not None:
            o = m // gcd(d, m)
            if o == 1:
                continue
            orders.append(o)
        gens.append(make(_normalize(vec, ring)))
    if m is None:
        return CochainSpace(gens)
    return CochainSpace(gens, form="invariant-factor", orders=orders)


def cohomology(base: Quandle, h: HierarchicalQuandle, n: int, ring: RingSpec, method: str | None = None,
               cap: int = DEFAULT_CAP_COLUMNS, max_degree: int = DEFAULT_MAX_DEGREE - 1) -> CohomologyResult:
    """``H^n`` of the normalized cochain complex with coefficients in ``ring``.

    Degree ``n`` needs the boundary out of degree ``n + 1``, so the default
    cap on ``n`` is one below the chain-level degree cap.
    """
    _check_degree_cap(n, max_degree)
    cx = _hier_complex(base, h, n, cap, max_degree)
    make = lambda v: Cochain.from_vector(cx.basis, v, ring)
    return _result(cx, ring, method or _default_method(ring), make)


def classical_cohomology(q: Quandle, n: int, ring: RingSpec, method: str | None = None,
                         cap: int = DEFAULT_CAP_COLUMNS) -> CohomologyResult:
    """``H^n`` of the classical quandle complex of ``q``, from its own boundary assembly.

    Representatives are returned as cochains over ``T1`` with ``y`` the
    element of ``q`` (the forgetful identification).
    """
    from .homology import _classical_basis

    cx = _classical_complex(q, n, cap)
    cols = _classical_basis(q.size, n, True)
    make = lambda v: Cochain(n, ring, {tuple((0, y) for y in t): x for t, x in zip(cols, v)})
    return _result(cx, ring, method or _default_method(ring), make)


def is_cocycle(c: Cochain, base: Quandle, h: HierarchicalQuandle, cap: int = DEFAULT_CAP_COLUMNS) -> bool:
    return coboundary(c, base, h, cap).is_zero()


def is_coboundary(c: Cochain, base: Quandle, h: HierarchicalQuandle, cap: int = DEFAULT_CAP_COLUMNS):
    """``(True, witness)`` with ``coboundary(witness) == c``, or ``(False, None)``."""
    n = c.degree
    if n < 1:
        raise StructuralError("cochain degree must be at least 1")
    if n == 1:
        return (True, Cochain.zero(1, c.ring)) if c.is_zero() else (False, None)
    bm = boundary_matrix(base, h, n, cap=cap, max_degree=n)
    g = c.to_vector(bm.col_basis)
    sol = linalg.solve_mod(bm.dense().T, g, c.ring.modulus)
    if sol is None:
        return False, None
    return True, Cochain.from_vector(bm.row_basis, sol, c.ring)
