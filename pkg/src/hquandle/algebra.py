"""Finite quandles and hierarchical quandles over them.

Elements are dense integers ``0 .. n-1`` and operations are stored as
Cayley tables in read-only numpy arrays.  A quandle table satisfies
``table[a, b] == a * b``; a hierarchical quandle over a base quandle ``X``
stores ``tables[x1, x2, y1, y2] == y1 *_{x1}^{x2} y2``.

Axiom checks are exhaustive.  Reports keep at most
:data:`MAX_VIOLATIONS` witnesses per axiom family.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterator, Mapping, NamedTuple, Sequence

import numpy as np

from .errors import DecompositionError, ResourceCapError, StructuralError, VerificationError

MAX_VIOLATIONS = 32

#: default refusal threshold for :func:`search_hquandles` (raw candidate count)
MAX_SEARCH_SPACE = 10**5


class Violation(NamedTuple):
    axiom: int
    witness: tuple


@dataclass
class VerificationReport:
    """Outcome of an exhaustive axiom check.

    ``violations`` holds ``(axiom, witness)`` pairs in lexicographic
    witness order, capped per axiom family.  ``truncated`` names the axiom
    families that had more violations than were recorded.
    """

    violations: list = field(default_factory=list)
    truncated: set = field(default_factory=set)

    @property
    def valid(self) -> bool:
        return not self.violations

    def axioms_failed(self) -> set:
        return {v.axiom for v in self.violations}

    def add(self, axiom: int, witnesses) -> None:
        witnesses = list(witnesses)
        if len(witnesses) > MAX_VIOLATIONS:
            self.truncated.add(axiom)
        for w in witnesses[:MAX_VIOLATIONS]:
            self.violations.append(Violation(axiom, tuple(int(i) for i in np.atleast_1d(w))))

    def to_dict(self) -> dict:
        return {
            "valid": self.valid,
            "violations": [{"axiom": v.axiom, "witness": list(v.witness)} for v in self.violations],
            "truncated": sorted(self.truncated),
        }


def _as_index_array(table, ndim: int, what: str) -> np.ndarray:
    try:
        arr = np.array(table, dtype=object)
    except ValueError as exc:  # ragged nesting
        raise StructuralError(f"{what}: ragged table") from exc
    if arr.ndim != ndim:
        raise StructuralError(f"{what}: expected a {ndim}-dimensional table, got {arr.ndim} dimensions")
    for v in arr.flat:
        if isinstance(v, bool) or not isinstance(v, (int, np.integer)):
            raise StructuralError(f"{what}: non-integer entry {v!r}")
    return arr.astype(np.int64)


def _bijective_columns(cols: np.ndarray) -> np.ndarray:
    """Boolean mask over the leading axes: is ``cols[..., :]`` a permutation?"""
    n = cols.shape[-1]
    return (np.sort(cols, axis=-1) == np.arange(n)).all(axis=-1)


class Quandle:
    """A finite quandle given by its Cayley table.

    Construction checks only structure (square shape, indices in range);
    call :func:`verify_quandle` for the axioms.
    """

    __slots__ = ("table", "_div")

    def __init__(self, table):
        arr = _as_index_array(table, 2, "quandle")
        n = arr.shape[0]
        if n < 1 or arr.shape != (n, n):
            raise StructuralError(f"quandle table must be square and non-empty, got shape {arr.shape}")
        if arr.min() < 0 or arr.max() >= n:
            raise StructuralError(f"quandle table entries must lie in [0, {n})")
        arr.setflags(write=False)
        self.table = arr
        self._div = None

    @property
    def size(self) -> int:
        return self.table.shape[0]

    @property
    def div_table(self) -> np.ndarray:
        """``div_table[b, a]`` is the unique ``x`` with ``x * a == b``."""
        if self._div is None:
            if not _bijective_columns(self.table.T).all():
                raise VerificationError("quandle is not right-invertible; division undefined")
            n = self.size
            div = np.empty((n, n), dtype=np.int64)
            for a in range(n):
                div[self.table[:, a], a] = np.arange(n)
            div.setflags(write=False)
            self._div = div
        return self._div

    def op(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def tolist(self) -> list:
        return self.table.tolist()

    def __eq__(self, other):
        return isinstance(other, Quandle) and np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash(self.table.tobytes())

    def __repr__(self):
        return f"Quandle(size={self.size}, table={self.tolist()})"


class HierarchicalQuandle:
    """A family of operations on ``Y`` indexed by pairs of base elements."""

    __slots__ = ("tables", "_div")

    def __init__(self, tables):
        arr = _as_index_array(tables, 4, "hierarchical quandle")
        m, m2, n, n2 = arr.shape
        if m < 1 or n < 1 or m != m2 or n != n2:
            raise StructuralError(f"hierarchical tables must have shape (m, m, n, n), got {arr.shape}")
        if arr.min() < 0 or arr.max() >= n:
            raise StructuralError(f"hierarchical table entries must lie in [0, {n})")
        arr.setflags(write=False)
        self.tables = arr
        self._div = None

    @property
    def base_size(self) -> int:
        return self.tables.shape[0]

    @property
    def size(self) -> int:
        return self.tables.shape[2]

    @property
    def div_tables(self) -> np.ndarray:
        """``div_tables[x1, x2, b, a]`` is the unique ``y`` with ``y *_{x1}^{x2} a == b``."""
        if self._div is None:
            cols = np.swapaxes(self.tables, 2, 3)
            if not _bijective_columns(cols).all():
                raise VerificationError("hierarchical quandle violates axiom 2; division undefined")
            m, n = self.base_size, self.size
            div = np.empty_like(self.tables)
            ys = np.arange(n)
            for x1, x2, a in itertools.product(range(m), range(m), range(n)):
                div[x1, x2, self.tables[x1, x2, :, a], a] = ys
            div.setflags(write=False)
            self._div = div
        return self._div

    def op(self, x1: int, x2: int, y1: int, y2: int) -> int:
        return int(self.tables[x1, x2, y1, y2])

    def tolist(self) -> list:
        return self.tables.tolist()

    def __eq__(self, other):
        return isinstance(other, HierarchicalQuandle) and np.array_equal(self.tables, other.tables)

    def __hash__(self):
        return hash(self.tables.tobytes())

    def __repr__(self):
        return f"HierarchicalQuandle(base_size={self.base_size}, size={self.size})"


@dataclass(frozen=True)
class RingSpec:
    """Coefficient ring: the integers or ``Z/m``."""

    kind: str = "z"
    modulus: int | None = None

    def __post_init__(self):
        if self.kind == "z":
            if self.modulus is not None:
                raise StructuralError("the integer ring takes no modulus")
        elif self.kind == "zm":
            if not isinstance(self.modulus, int) or self.modulus < 2:
                raise StructuralError(f"modulus must be an integer >= 2, got {self.modulus!r}")
        else:
            raise StructuralError(f"unknown ring kind {self.kind!r}")

    @classmethod
    def parse(cls, text: str) -> "RingSpec":
        text = text.strip().lower()
        if text == "z":
            return cls()
        if text.startswith("zm:"):
            try:
                m = int(text[3:])
            except ValueError:
                raise StructuralError(f"bad ring {text!r}") from None
            return cls("zm", m)
        raise StructuralError(f"bad ring {text!r}; expected 'z' or 'zm:<m>'")

    @property
    def is_prime_field(self) -> bool:
        m = self.modulus
        return m is not None and m > 1 and all(m % d for d in range(2, int(m**0.5) + 1))

    def reduce(self, value: int) -> int:
        value = int(value)
        return value % self.modulus if self.modulus else value

    def __str__(self):
        return "z" if self.kind == "z" else f"zm:{self.modulus}"


# ---------------------------------------------------------------------------
# verification


def verify_quandle(q: Quandle) -> VerificationReport:
    t = q.table
    n = q.size
    report = VerificationReport()
    report.add(1, np.flatnonzero(np.diag(t) != np.arange(n)))
    report.add(2, np.flatnonzero(~_bijective_columns(t.T)))
    a, b, c = np.indices((n, n, n))
    lhs = t[t[a, b], c]
    rhs = t[t[a, c], t[b, c]]
    report.add(3, np.argwhere(lhs != rhs))
    return report


def verify_hquandle(h: HierarchicalQuandle, base: Quandle) -> VerificationReport:
    """Exhaustively check the three hierarchical axioms against ``base``.

    Witnesses are ``(x, y)`` for axiom 1, ``(x1, x2, a)`` for axiom 2 and
    ``(x1, x2, x3, y1, y2, y3)`` for axiom 3.
    """
    if h.base_size != base.size:
        raise StructuralError(f"hierarchical quandle indexed by {h.base_size} elements, base has {base.size}")
    t = h.tables
    bt = base.table
    m, n = h.base_size, h.size
    report = VerificationReport()
    xs = np.arange(m)
    diag = t[xs, xs]  # (m, n, n)
    report.add(1, np.argwhere(diag[:, np.arange(n), np.arange(n)] != np.arange(n)))
    report.add(2, np.argwhere(~_bijective_columns(np.swapaxes(t, 2, 3))))
    x1, x2, x3, y1, y2, y3 = np.indices((m, m, m, n, n, n))
    lhs = t[bt[x1, x2], x3, t[x1, x2, y1, y2], y3]
    rhs = t[bt[x1, x3], bt[x2, x3], t[x1, x3, y1, y3], t[x2, x3, y2, y3]]
    report.add(3, np.argwhere(lhs != rhs))
    return report


def quandle_div(q: Quandle, b: int, a: int) -> int:
    """Return the unique ``x`` with ``x * a == b``."""
    return int(q.div_table[b, a])


def hquandle_div(h: HierarchicalQuandle, x1: int, x2: int, b: int, a: int) -> int:
    """Return the unique ``y`` with ``y *_{x1}^{x2} a == b``."""
    return int(h.div_tables[x1, x2, b, a])


# ---------------------------------------------------------------------------
# constructors


def make_trivial(n: int) -> Quandle:
    if n < 1:
        raise StructuralError("quandle size must be positive")
    return Quandle(np.tile(np.arange(n)[:, None], (1, n)))


def make_dihedral(n: int) -> Quandle:
    """Dihedral quandle on ``Z/n``: ``a * b = 2b - a (mod n)``."""
    if n < 1:
        raise StructuralError("quandle size must be positive")
    a, b = np.indices((n, n))
    return Quandle((2 * b - a) % n)


def _check_group(g: np.ndarray) -> tuple[int, np.ndarray]:
    n = g.shape[0]
    i, j, k = np.indices((n, n, n))
    if not (g[g[i, j], k] == g[i, g[j, k]]).all():
        raise StructuralError("group table is not associative")
    ar = np.arange(n)
    ids = [e for e in range(n) if (g[e] == ar).all() and (g[:, e] == ar).all()]
    if not ids:
        raise StructuralError("group table has no identity")
    e = ids[0]
    inv = np.full(n, -1)
    for a in range(n):
        hits = np.flatnonzero((g[a] == e) & (g[:, a] == e))
        if hits.size == 0:
            raise StructuralError(f"element {a} has no inverse")
        inv[a] = hits[0]
    return e, inv


def make_conjugation(group_table) -> Quandle:
    """Conjugation quandle ``g * h = h^-1 g h`` of a finite group."""
    g = _as_index_array(group_table, 2, "group")
    n = g.shape[0]
    if n < 1 or g.shape != (n, n) or g.min() < 0 or g.max() >= n:
        raise StructuralError("group table must be square with entries in range")
    _, inv = _check_group(g)
    a, b = np.indices((n, n))
    return Quandle(g[g[inv[b], a], b])


def symmetric_group_table(k: int) -> np.ndarray:
    """Cayley table of ``S_k`` with permutations in lexicographic order.

    ``table[i, j]`` is the index of ``p_i o p_j`` (apply ``p_j`` first).
    """
    perms = list(itertools.permutations(range(k)))
    index = {p: i for i, p in enumerate(perms)}
    table = np.empty((len(perms), len(perms)), dtype=np.int64)
    for i, p in enumerate(perms):
        for j, r in enumerate(perms):
            table[i, j] = index[tuple(p[r[s]] for s in range(k))]
    return table


def make_constant_family(base: Quandle, y_quandle: Quandle) -> HierarchicalQuandle:
    m = base.size
    return HierarchicalQuandle(np.broadcast_to(y_quandle.table, (m, m) + y_quandle.table.shape))


def make_projection_family(base: Quandle, y_size: int) -> HierarchicalQuandle:
    """The family with ``y1 *_{x1}^{x2} y2 = y1`` for every index pair."""
    m = base.size
    col = np.arange(y_size)[:, None]
    return HierarchicalQuandle(np.broadcast_to(col, (m, m, y_size, y_size)))


def product_quandle(base: Quandle, h: HierarchicalQuandle) -> Quandle:
    """Quandle on ``X x Y`` encoding ``(x, y)`` as ``x * |Y| + y``.

    ``(x1, y1) o (x2, y2) = (x1 * x2, y1 *_{x1}^{x2} y2)``.
    """
    if h.base_size != base.size:
        raise StructuralError("hierarchical quandle does not match base size")
    m, n = base.size, h.size
    x1, y1, x2, y2 = np.indices((m, n, m, n))
    table = base.table[x1, x2] * n + h.tables[x1, x2, y1, y2]
    q = Quandle(table.reshape(m * n, m * n))
    report = verify_quandle(q)
    if not report.valid:
        raise VerificationError("product of a quandle and a hierarchical quandle failed the quandle axioms",
                                witness=report.violations[0])
    return q


def decompose_over_projection(q: Quandle, m: int, n: int, pairing: Sequence | None = None):
    """Split ``q`` as a product quandle over its first-coordinate projection.

    ``pairing[e] = (x, y)`` labels element ``e``; the default is
    ``(e // n, e % n)``, the encoding used by :func:`product_quandle`.
    Returns ``(base, family)`` or raises :class:`DecompositionError`
    carrying a witness.
    """
    if q.size != m * n:
        raise StructuralError(f"quandle of size {q.size} cannot split as {m} x {n}")
    if pairing is None:
        pairing = [(e // n, e % n) for e in range(q.size)]
    pairing = [tuple(int(v) for v in p) for p in pairing]
    if len(pairing) != q.size or sorted(pairing) != [(x, y) for x in range(m) for y in range(n)]:
        raise StructuralError("pairing must be a bijection onto X x Y")
    px = np.array([p[0] for p in pairing])
    py = np.array([p[1] for p in pairing])
    elem = np.empty((m, n), dtype=np.int64)
    elem[px, py] = np.arange(q.size)

    base = np.full((m, m), -1, dtype=np.int64)
    seen = {}
    for a in range(q.size):
        for b in range(q.size):
            key = (px[a], px[b])
            val = px[q.table[a, b]]
            if base[key] < 0:
                base[key] = val
                seen[key] = (a, b)
            elif base[key] != val:
                raise DecompositionError("first-coordinate projection is not a homomorphism",
                                         witness=(seen[key], (a, b)))
    base_q = Quandle(base)
    report = verify_quandle(base_q)
    if not report.valid:
        raise DecompositionError("projected base is not a quandle", witness=report.violations[0])

    x1, x2, y1, y2 = np.indices((m, m, n, n))
    family = HierarchicalQuandle(py[q.table[elem[x1, y1], elem[x2, y2]]])
    report = verify_hquandle(family, base_q)
    if not report.valid:
        raise DecompositionError("extracted family violates a hierarchical axiom", witness=report.violations[0])
    return base_q, family


# ---------------------------------------------------------------------------
# brute-force search


def _candidate_tables(n: int, idempotent: bool) -> list:
    """All ``n x n`` tables whose columns are permutations (optionally fixing the diagonal)."""
    perms = list(itertools.permutations(range(n)))
    columns = [[p for p in perms if p[a] == a] if idempotent else perms for a in range(n)]
    out = []
    for cols in itertools.product(*columns):
        arr = np.array(cols, dtype=np.int64).T  # arr[y, a] = cols[a][y]
        out.append(arr)
    return out


def search_space_size(base: Quandle, y_size: int, fixed: Mapping | None = None) -> int:
    fixed = fixed or {}
    n = y_size
    diag = math.factorial(n - 1) ** n
    off = math.factorial(n) ** n
    total = 1
    for x1 in range(base.size):
        for x2 in range(base.size):
            if (x1, x2) in fixed:
                continue
            total *= diag if x1 == x2 else off
    return total


def search_hquandles(base: Quandle, y_size: int, limit: int | None = None,
                     fixed: Mapping | None = None,
                     max_space: int = MAX_SEARCH_SPACE) -> Iterator[HierarchicalQuandle]:
    """Enumerate hierarchical quandles over ``base`` on ``y_size`` elements.

    Tables are assigned in lexicographic ``(x1, x2)`` order.  Candidates
    already satisfy axioms 1 and 2 (permutation columns, idempotent
    diagonal tables); each axiom-3 instance is checked as soon as the five
    tables it mentions are all assigned.

    Parameters
    ----------
    fixed : mapping ``(x1, x2) -> table``, optional
        Tables pinned in advance.  Pinning the diagonal tables is the usual
        way to bring larger searches under ``max_space``.
    max_space : int
        Refuse with :class:`ResourceCapError` when the raw candidate count
        exceeds this.
    """
    if y_size < 1:
        raise StructuralError("y_size must be positive")
    fixed = {tuple(k): np.asarray(v, dtype=np.int64) for k, v in (fixed or {}).items()}
    estimate = search_space_size(base, y_size, fixed)
    if estimate > max_space:
        raise ResourceCapError(
            f"search space of about {estimate} families exceeds the cap of {max_space}; "
            "pin some tables (e.g. the diagonal ones) to narrow it", estimate=estimate)
    m, n = base.size, y_size
    bt = base.table
    order = [(x1, x2) for x1 in range(m) for x2 in range(m)]
    slot = {k: i for i, k in enumerate(order)}

    for key, tab in fixed.items():
        if tab.shape != (n, n) or not _bijective_columns(tab.T).all():
            return
        if key[0] == key[1] and not (np.diag(tab) == np.arange(n)).all():
            return

    # axiom-3 instances grouped by the step at which they become checkable
    checks = [[] for _ in order]
    for x1, x2, x3 in itertools.product(range(m), repeat=3):
        refs = [(x1, x2), (int(bt[x1, x2]), x3), (x1, x3), (int(bt[x1, x3]), int(bt[x2, x3])), (x2, x3)]
        checks[max(slot[r] for r in refs)].append((x1, x2, x3))

    y1, y2, y3 = np.indices((n, n, n))
    tables = np.zeros((m, m, n, n), dtype=np.int64)
    cand_diag = _candidate_tables(n, True)
    cand_off = _candidate_tables(n, False)
    emitted = 0

    def consistent(step):
        for x1, x2, x3 in checks[step]:
            lhs = tables[bt[x1, x2], x3][tables[x1, x2][y1, y2], y3]
            rhs = tables[bt[x1, x3], bt[x2, x3]][tables[x1, x3][y1, y3], tables[x2, x3][y2, y3]]
            if not np.array_equal(lhs, rhs):
                return False
        return True

    def extend(step):
        nonlocal emitted
        if step == len(order):
            emitted += 1
            yield HierarchicalQuandle(tables.copy())
            return
        key = order[step]
        options = [fixed[key]] if key in fixed else (cand_diag if key[0] == key[1] else cand_off)
        for tab in options:
            tables[key] = tab
            if consistent(step):
                yield from extend(step + 1)
                if limit is not None and emitted >= limit:
                    return

    if limit is not None and limit <= 0:
        return
    yield from extend(0)
