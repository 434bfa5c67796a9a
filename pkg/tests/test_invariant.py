import numpy as np
import pytest

from hquandle.algebra import (
    RingSpec,
    make_constant_family,
    make_dihedral,
    make_projection_family,
    make_trivial,
    product_quandle,
)
from hquandle.coloring import Multiset, count_hcolorings, count_qcolorings, enumerate_hcolorings, enumerate_qcolorings
from hquandle.cohomology import Cochain, coboundary, cohomology
from hquandle.diagram import Crossing, Diagram, r1_add, r2_add, random_moves
from hquandle.errors import RingMismatchError, StructuralError
from hquandle.homology import ChainBasis
from hquandle.invariant import (
    classical_invariant,
    crossing_weight,
    full_invariant,
    invariant_for_coloring,
    pair_cocycle_table,
    state_sum_weight,
)

from conftest import load_diagram, r3_pairs, shipped_diagrams

T1, T2, R3 = make_trivial(1), make_trivial(2), make_dihedral(3)
Z3 = RingSpec("zm", 3)

CASES = [
    (T2, make_constant_family(T2, R3), 3),
    (T2, make_projection_family(T2, 2), 2),
    (R3, make_projection_family(R3, 2), 2),
]


def reps(base, h, p):
    return cohomology(base, h, 2, RingSpec("zm", p)).representatives


def test_zero_cocycle_weights():
    d = load_diagram("trefoil")
    h = make_constant_family(T1, R3)
    zero = Cochain.zero(2, Z3)
    for z in enumerate_hcolorings(d, (0, 0, 0), T1, h):
        assert all(crossing_weight(zero, c, (0, 0, 0), z) == 0 for c in d.crossings)
    assert invariant_for_coloring(zero, d, (0, 0, 0), T1, h) == Multiset(((0, 9),))


def test_weight_conventions():
    omega = Cochain(2, Z3, {((0, 1), (1, 2)): 1, ((1, 0), (1, 2)): 2})
    xi, zeta = (0, 1, 1), (1, 2, 0)
    assert crossing_weight(omega, Crossing(1, 0, 1, 2), xi, zeta) == 1
    # negative crossings read the colour pair of the outgoing under-arc
    assert crossing_weight(omega, Crossing(-1, 2, 1, 0), xi, zeta) == (-1) % 3
    assert crossing_weight(omega, Crossing(-1, 0, 1, 2), xi, zeta) == (-2) % 3


def test_sign_flip_negates_weight():
    omega = Cochain(2, Z3, {((0, 1), (1, 2)): 1})
    xi, zeta = (0, 1, 0), (1, 2, 1)
    pos = crossing_weight(omega, Crossing(1, 0, 1, 2), xi, zeta)
    neg = crossing_weight(omega, Crossing(-1, 2, 1, 0), xi, zeta)
    assert (pos + neg) % 3 == 0


def test_ring_and_degree_checks():
    omega = Cochain(2, Z3, {})
    with pytest.raises(RingMismatchError):
        crossing_weight(omega, Crossing(1, 0, 0, 0), (0,), (0,), ring=RingSpec("zm", 5))
    with pytest.raises(StructuralError):
        state_sum_weight(Cochain(1, Z3, {}), Diagram.unlink(1), (0,), (0,))


def test_kink_weight_vanishes():
    for base, h, p in CASES:
        d = r1_add(Diagram.unlink(1), 0, 1)
        for omega in reps(base, h, p):
            for xi in enumerate_qcolorings(d, base):
                for z in enumerate_hcolorings(d, xi, base, h):
                    assert crossing_weight(omega, d.crossings[0], xi, z) == 0


def test_r2_crossings_have_opposite_weights():
    base, h, p = CASES[1]
    d0 = load_diagram("hopf")
    d = r2_add(d0, 0, 1)
    new = d.crossings[-2:]
    for omega in reps(base, h, p):
        for xi in enumerate_qcolorings(d, base):
            for z in enumerate_hcolorings(d, xi, base, h):
                a, b = (crossing_weight(omega, c, xi, z) for c in new)
                assert (a + b) % p == 0


def test_empty_diagram_sum_is_zero():
    base, h, p = CASES[0]
    for omega in reps(base, h, p):
        assert state_sum_weight(omega, Diagram.unlink(1), (0,), (0,)) == 0


@pytest.mark.parametrize("base,h,p", CASES)
def test_coboundaries_give_zero_state_sums(base, h, p):
    ring = RingSpec("zm", p)
    rng = np.random.default_rng(p)
    basis = ChainBasis(base.size, h.size, 1)
    for _ in range(5):
        omega = coboundary(Cochain.from_vector(basis, rng.integers(0, p, len(basis)), ring), base, h)
        for d in shipped_diagrams().values():
            for xi in enumerate_qcolorings(d, base):
                for z in enumerate_hcolorings(d, xi, base, h):
                    assert state_sum_weight(omega, d, xi, z) == 0


def test_vectorized_and_scalar_state_sums_agree():
    for base, h, p in CASES:
        d = random_moves(load_diagram("trefoil"), 1, 2, seed=p)
        for omega in reps(base, h, p):
            for xi in enumerate_qcolorings(d, base):
                scalar = Multiset.of(state_sum_weight(omega, d, xi, z) for z in enumerate_hcolorings(d, xi, base, h))
                assert invariant_for_coloring(omega, d, xi, base, h) == scalar


def test_unknot_full_invariant():
    for base, h, p in CASES:
        for omega in reps(base, h, p):
            v = full_invariant(omega, Diagram.unlink(1), base, h)
            assert v.full == Multiset(((Multiset(((0, h.size),)), base.size),))


def test_cardinalities():
    for base, h, p in CASES:
        for d in shipped_diagrams().values():
            omega = reps(base, h, p)[0]
            v = full_invariant(omega, d, base, h)
            assert len(v.full) == count_qcolorings(d, base)
            for xi, w in v.per_base:
                assert len(w) == count_hcolorings(d, xi, base, h)


def test_nontrivial_on_hopf_link():
    base, h, p = CASES[0]
    values = {full_invariant(w, load_diagram("hopf"), base, h).full for w in reps(base, h, p)}
    unlink = {full_invariant(w, Diagram.unlink(2), base, h).full for w in reps(base, h, p)}
    assert values != unlink


@pytest.mark.parametrize("seed", range(8))
def test_invariant_under_moves(seed):
    for base, h, p in CASES:
        for name in ("trefoil", "hopf", "figure_eight"):
            d = load_diagram(name)
            moved = random_moves(d, 2, 2, seed)
            for omega in reps(base, h, p):
                assert full_invariant(omega, moved, base, h).full == full_invariant(omega, d, base, h).full


def test_invariant_across_r3_pairs():
    for left, right in r3_pairs():
        for base, h, p in CASES:
            for omega in reps(base, h, p):
                assert full_invariant(omega, left, base, h).full == full_invariant(omega, right, base, h).full


def test_cohomologous_cocycles_agree():
    rng = np.random.default_rng(11)
    for base, h, p in CASES:
        ring = RingSpec("zm", p)
        basis = ChainBasis(base.size, h.size, 1)
        for omega in reps(base, h, p):
            shift = coboundary(Cochain.from_vector(basis, rng.integers(0, p, len(basis)), ring), base, h)
            for d in (load_diagram("hopf"), load_diagram("trefoil")):
                a = full_invariant(omega, d, base, h)
                b = full_invariant(omega + shift, d, base, h)
                assert a == b


def test_flattened_equals_classical_on_product():
    for base, h, p in CASES:
        ring = RingSpec("zm", p)
        q = product_quandle(base, h)
        for omega in reps(base, h, p):
            phi = pair_cocycle_table(omega, h.size, q.size)
            for d in shipped_diagrams().values():
                assert full_invariant(omega, d, base, h).flattened == classical_invariant(phi, d, q, ring)


def test_singleton_base_matches_classical_state_sum():
    h = make_constant_family(T1, R3)
    d = load_diagram("trefoil")
    ring = Z3
    omega = coboundary(Cochain(1, ring, {((0, 1),): 1}), T1, h)
    phi = pair_cocycle_table(omega, 3, 3)
    for z in enumerate_hcolorings(d, (0, 0, 0), T1, h):
        classical = sum(c.sign * phi[z[c.under_in if c.sign > 0 else c.under_out], z[c.over]] for c in d.crossings)
        assert state_sum_weight(omega, d, (0, 0, 0), z) == classical % 3


def test_to_dict_shapes():
    base, h, p = CASES[0]
    v = full_invariant(reps(base, h, p)[0], load_diagram("hopf"), base, h)
    out = v.to_dict()
    assert set(out) == {"per_base", "flattened", "full"}
    assert out["per_base"][0]["base_index"] == 0
    assert set(v.to_dict(flatten=True)) == {"flattened"}
