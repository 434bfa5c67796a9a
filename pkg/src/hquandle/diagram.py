"""Oriented link diagrams as signed crossings over arcs.

An arc is a stretch of the diagram between two consecutive under-passes.
Each crossing records the arc entering under it, the arc passing over it,
and the arc leaving under it.  The colouring rule is the same for both
signs once stored this way:

* sign ``+1``: ``colour(under_out) = colour(under_in) * colour(over)``
* sign ``-1``: ``colour(under_out) = colour(under_in) / colour(over)``

Components without under-passes are single closed arcs; they may still
pass over other strands.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .algebra import VerificationReport
from .errors import ParseError, StructuralError


@dataclass(frozen=True)
class Crossing:
    sign: int
    under_in: int
    over: int
    under_out: int

    def arcs(self) -> tuple:
        return (self.under_in, self.over, self.under_out)


@dataclass(frozen=True)
class Diagram:
    arc_count: int
    crossings: tuple
    component_of: tuple

    def __post_init__(self):
        object.__setattr__(self, "crossings", tuple(self.crossings))
        object.__setattr__(self, "component_of", tuple(int(c) for c in self.component_of))

    @property
    def component_count(self) -> int:
        return len(set(self.component_of))

    @classmethod
    def unlink(cls, k: int = 1) -> "Diagram":
        """Crossing-free diagram of the ``k``-component unlink."""
        return cls(k, (), tuple(range(k)))


def writhe(d: Diagram) -> int:
    return sum(c.sign for c in d.crossings)


def validate(d: Diagram) -> VerificationReport:
    """Check the structural invariants of a diagram.

    Violations are reported with axiom codes:

    1. an index, sign or table length out of range
    2. an arc entering or leaving under-passes the wrong number of times
    3. ``component_of`` disagrees with the under-strand succession
    """
    report = VerificationReport()
    bad_range, bad_count, bad_comp = [], [], []
    A = d.arc_count
    if A < 0 or len(d.component_of) != A:
        bad_range.append((-1,))
    for k, c in enumerate(d.crossings):
        if c.sign not in (1, -1) or not all(0 <= a < A for a in c.arcs()):
            bad_range.append((k,))
    report.add(1, bad_range)
    if bad_range:
        return report

    n_in = [0] * A
    n_out = [0] * A
    for c in d.crossings:
        n_in[c.under_in] += 1
        n_out[c.under_out] += 1
    for a in range(A):
        if not ((n_in[a] == n_out[a] == 1) or (n_in[a] == n_out[a] == 0)):
            bad_count.append((a,))
    report.add(2, bad_count)
    if bad_count:
        return report

    # each component is one cycle of the succession under_out -> next under_in,
    # or a single arc with no under-passes
    comp_ids = sorted(set(d.component_of))
    if comp_ids != list(range(len(comp_ids))):
        bad_comp.append((-1,))
    # under_in and under_out of one crossing are consecutive arcs on a strand
    for k, c in enumerate(d.crossings):
        if d.component_of[c.under_in] != d.component_of[c.under_out]:
            bad_comp.append((k,))
    seen = [False] * A
    members = {}
    for a, comp in enumerate(d.component_of):
        members.setdefault(comp, []).append(a)
    out_of = {c.under_in: c.under_out for c in d.crossings}
    for comp, arcs in sorted(members.items()):
        start = arcs[0]
        if n_in[start] == 0:
            if len(arcs) != 1:
                bad_comp.append((start,))
            continue
        cycle = []
        a = start
        while not seen[a]:
            seen[a] = True
            cycle.append(a)
            a = out_of[a]
        if a != start or sorted(cycle) != arcs:
            bad_comp.append((start,))
    report.add(3, bad_comp)
    return report


# ---------------------------------------------------------------------------
# PD codes

_TERM = re.compile(r"X\[\s*([^\]]*)\]")


class _UnionFind:
    def __init__(self, items):
        self.parent = {i: i for i in items}

    def find(self, a):
        while self.parent[a] != a:
            self.parent[a] = self.parent[self.parent[a]]
            a = self.parent[a]
        return a

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


def parse_pd(text: str, unknots: int = 0) -> Diagram:
    """Parse planar-diagram notation into a :class:`Diagram`.

    Terms are ``X[a,b,c,d]`` listed counter-clockwise from the incoming
    under-edge ``a``; ``c`` is the outgoing under-edge.  Edges are numbered
    consecutively along each oriented component.  The over-strand runs
    ``d -> b`` at a positive crossing and ``b -> d`` at a negative one.

    Arc ids are assigned in order of each arc's smallest edge label and
    components in order of their smallest edge label; ``unknots``
    crossing-free components are appended after them.
    """
    stripped = _TERM.sub("", text)
    if stripped.replace(",", " ").strip():
        raise ParseError("unexpected text outside X[...] terms", term=stripped.strip()[:40])
    terms = []
    for match in _TERM.finditer(text):
        raw = match.group(0)
        parts = [p.strip() for p in match.group(1).split(",")]
        if len(parts) != 4 or not all(p.isdigit() for p in parts):
            raise ParseError("a PD term needs four positive integer labels", term=raw)
        labels = tuple(int(p) for p in parts)
        if min(labels) < 1:
            raise ParseError("edge labels must be positive", term=raw)
        terms.append((raw, labels))

    occurrences = {}
    for raw, labels in terms:
        for e in labels:
            occurrences[e] = occurrences.get(e, 0) + 1
    for e, k in sorted(occurrences.items()):
        if k != 2:
            term = next(raw for raw, labels in terms if e in labels)
            raise ParseError(f"edge {e} appears {k} times, expected 2", term=term)

    edges = sorted(occurrences)
    comp_uf = _UnionFind(edges)
    for _, (a, b, c, d) in terms:
        comp_uf.union(a, c)
        comp_uf.union(b, d)
    comp_edges = {}
    for e in edges:
        comp_edges.setdefault(comp_uf.find(e), []).append(e)
    succ = {}
    for group in comp_edges.values():
        lo, hi = group[0], group[-1]
        if group != list(range(lo, hi + 1)):
            raise ParseError(f"edges {group} of one component are not numbered consecutively")
        for e in group:
            succ[e] = e + 1 if e < hi else lo

    under_incoming = set()
    for raw, (a, b, c, d) in terms:
        if succ[a] != c:
            raise ParseError(f"under-strand does not continue from edge {a} to edge {c}", term=raw)
        under_incoming.add(a)

    # The over-strand direction: each edge ends at exactly one crossing, so
    # an edge already ending as an under-strand cannot be the incoming
    # over-edge.  Remaining two-way ties are resolved by elimination.
    candidates = []
    for raw, (a, b, c, d) in terms:
        cand = set()
        if succ[d] == b and d not in under_incoming:
            cand.add(d)
        if succ[b] == d and b not in under_incoming:
            cand.add(b)
        if not cand:
            raise ParseError("over-strand orientation is undetermined: neither edge continues into the other",
                             term=raw)
        candidates.append(cand)
    changed = True
    while changed:
        changed = False
        taken = {next(iter(c)) for c in candidates if len(c) == 1}
        for cand in candidates:
            if len(cand) > 1 and cand & taken:
                cand -= taken
                changed = True
                if not cand:
                    break
    signs = []
    claimed = set()
    for (raw, (a, b, c, d)), cand in zip(terms, candidates):
        if len(cand) != 1 or b == d:
            raise ParseError("over-strand orientation is ambiguous", term=raw)
        e = next(iter(cand))
        if e in claimed:
            raise ParseError(f"edge {e} would end at two crossings", term=raw)
        claimed.add(e)
        signs.append(1 if e == d else -1)

    arc_uf = _UnionFind(edges)
    for _, (a, b, c, d) in terms:
        arc_uf.union(b, d)
    roots = sorted({arc_uf.find(e) for e in edges})  # roots are minimal labels
    arc_id = {r: i for i, r in enumerate(roots)}
    comp_roots = sorted(comp_edges)
    comp_id = {r: i for i, r in enumerate(comp_roots)}

    component_of = [0] * len(roots)
    for e in edges:
        component_of[arc_id[arc_uf.find(e)]] = comp_id[comp_uf.find(e)]
    crossings = [
        Crossing(s, arc_id[arc_uf.find(a)], arc_id[arc_uf.find(b)], arc_id[arc_uf.find(c)])
        for s, (_, (a, b, c, d)) in zip(signs, terms)
    ]
    k = len(comp_roots)
    component_of += list(range(k, k + unknots))
    return Diagram(len(roots) + unknots, tuple(crossings), tuple(component_of))


# ---------------------------------------------------------------------------
# braid closures


def braid_closure(word: Sequence[int], strands: int) -> Diagram:
    """Closure of a braid word; ``+i`` / ``-i`` is the generator / inverse on strands ``i, i+1``.

    Strands run upward.  At ``+i`` the strand from position ``i`` passes
    over the one from ``i+1`` (a positive crossing); at ``-i`` the strand
    from ``i+1`` passes over.
    """
    if strands < 1:
        raise StructuralError("a braid needs at least one strand")
    fresh = list(range(strands))  # arc id entering each bottom position
    at = list(fresh)
    strand_at = list(range(strands))  # bottom position each strand started from
    arc_strand = list(range(strands))
    next_id = strands
    raw = []
    for g in word:
        i = abs(g) - 1
        if g == 0 or i + 1 >= strands:
            raise StructuralError(f"generator {g} out of range for {strands} strands")
        if g > 0:
            over_pos, under_pos = i, i + 1
        else:
            over_pos, under_pos = i + 1, i
        new = next_id
        next_id += 1
        arc_strand.append(strand_at[under_pos])
        raw.append((1 if g > 0 else -1, at[under_pos], at[over_pos], new))
        at[under_pos] = new
        at[i], at[i + 1] = at[i + 1], at[i]
        strand_at[i], strand_at[i + 1] = strand_at[i + 1], strand_at[i]
    uf = _UnionFind(range(next_id))
    perm_uf = _UnionFind(range(strands))
    for p in range(strands):
        uf.union(at[p], fresh[p])
        perm_uf.union(strand_at[p], p)
    comp_root = {}
    for p in range(strands):
        comp_root.setdefault(perm_uf.find(p), len(comp_root))
    roots = sorted({uf.find(a) for a in range(next_id)})
    relabel = {r: k for k, r in enumerate(roots)}
    component_of = [0] * len(roots)
    for a in range(next_id):
        component_of[relabel[uf.find(a)]] = comp_root[perm_uf.find(arc_strand[a])]
    crossings = tuple(Crossing(s, relabel[uf.find(a)], relabel[uf.find(b)], relabel[uf.find(c)])
                      for s, a, b, c in raw)
    return Diagram(len(roots), crossings, tuple(component_of))


# ---------------------------------------------------------------------------
# Reidemeister moves


def _check_arc(d: Diagram, arc: int) -> None:
    if not 0 <= arc < d.arc_count:
        raise StructuralError(f"arc {arc} out of range [0, {d.arc_count})")


def _retarget_end(crossings: list, arc: int, new: int) -> bool:
    """Make the crossing where ``arc`` ends under take ``new`` as incoming arc."""
    for k, c in enumerate(crossings):
        if c.under_in == arc:
            crossings[k] = Crossing(c.sign, new, c.over, c.under_out)
            return True
    return False


def r1_add(d: Diagram, arc: int, chirality: int = 1, over_first: bool = False) -> Diagram:
    """Insert a kink of sign ``chirality`` at the end of ``arc``.

    The kink sits just before the under-pass where ``arc`` ends, so every
    over-pass of ``arc`` stays on the first half.  With ``over_first``
    false the strand goes under first and then over itself (crossing
    ``(A, B, B)``); otherwise over first (``(A, A, B)``).  A crossing-free
    arc becomes a single kinked arc ``(A, A, A)``.
    """
    _check_arc(d, arc)
    if chirality not in (1, -1):
        raise StructuralError("chirality must be +1 or -1")
    crossings = list(d.crossings)
    component_of = list(d.component_of)
    new = d.arc_count
    if _retarget_end(crossings, arc, new):
        over = arc if over_first else new
        crossings.append(Crossing(chirality, arc, over, new))
        component_of.append(component_of[arc])
        return Diagram(d.arc_count + 1, tuple(crossings), tuple(component_of))
    crossings.append(Crossing(chirality, arc, arc, arc))
    return Diagram(d.arc_count, tuple(crossings), tuple(component_of))


def r2_add(d: Diagram, arc_over: int, arc_under: int, first_sign: int = 1) -> Diagram:
    """Push ``arc_over`` across the end of ``arc_under``, creating two crossings.

    The under-strand passes under at a crossing of sign ``first_sign`` and
    then under again at one of the opposite sign.  ``arc_over == arc_under``
    is a self-poke.
    """
    _check_arc(d, arc_over)
    _check_arc(d, arc_under)
    if first_sign not in (1, -1):
        raise StructuralError("first_sign must be +1 or -1")
    crossings = list(d.crossings)
    component_of = list(d.component_of)
    comp = component_of[arc_under]
    mid = d.arc_count
    last = d.arc_count + 1
    if _retarget_end(crossings, arc_under, last):
        crossings.append(Crossing(first_sign, arc_under, arc_over, mid))
        crossings.append(Crossing(-first_sign, mid, arc_over, last))
        component_of += [comp, comp]
        return Diagram(d.arc_count + 2, tuple(crossings), tuple(component_of))
    crossings.append(Crossing(first_sign, arc_under, arc_over, mid))
    crossings.append(Crossing(-first_sign, mid, arc_over, arc_under))
    component_of.append(comp)
    return Diagram(d.arc_count + 1, tuple(crossings), tuple(component_of))


class Lcg64:
    """64-bit linear congruential generator with fixed constants.

    ``state <- state * 6364136223846793005 + 1442695040888963407 (mod 2**64)``;
    :meth:`below` uses the top 32 bits of the advanced state.
    """

    MULTIPLIER = 6364136223846793005
    INCREMENT = 1442695040888963407
    MASK = (1 << 64) - 1

    def __init__(self, seed: int = 0):
        self.state = seed & self.MASK

    def next(self) -> int:
        self.state = (self.state * self.MULTIPLIER + self.INCREMENT) & self.MASK
        return self.state

    def below(self, n: int) -> int:
        if n < 1:
            raise ValueError("bound must be positive")
        return (self.next() >> 32) % n


def random_moves(d: Diagram, r1: int = 0, r2: int = 0, seed: int = 0) -> Diagram:
    """Apply ``r1`` random kinks, then ``r2`` random pokes, driven by :class:`Lcg64`.

    Each kink draws ``arc``, then chirality (``+1`` on 0), then
    ``over_first`` (on 1).  Each poke draws ``arc_over``, ``arc_under``,
    then ``first_sign`` (``+1`` on 0).
    """
    rng = Lcg64(seed)
    for _ in range(r1):
        if d.arc_count == 0:
            break
        arc = rng.below(d.arc_count)
        chirality = 1 if rng.below(2) == 0 else -1
        d = r1_add(d, arc, chirality, over_first=rng.below(2) == 1)
    for _ in range(r2):
        if d.arc_count == 0:
            break
        over = rng.below(d.arc_count)
        under = rng.below(d.arc_count)
        d = r2_add(d, over, under, first_sign=1 if rng.below(2) == 0 else -1)
    return d


def disjoint_union(diagrams: Iterable[Diagram]) -> Diagram:
    arcs, comps = 0, 0
    crossings, component_of = [], []
    for d in diagrams:
        crossings += [Crossing(c.sign, c.under_in + arcs, c.over + arcs, c.under_out + arcs) for c in d.crossings]
        component_of += [c + comps for c in d.component_of]
        arcs += d.arc_count
        comps += d.component_count
    return Diagram(arcs, tuple(crossings), tuple(component_of))
