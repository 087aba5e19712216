from fractions import Fraction

import pytest

from qhowe.oqn import l_adjacent
from qhowe.oscalg import commutator, ground_expectation
from qhowe.qscalar import ONE, Q, q_bracket, qpow
from qhowe.uqsu import (IndexRange, casimir, casimir_centrality, coproduct_range,
                        couple_coproduct, intermediate_casimir, metaplectic_site,
                        paired_triple, su_relations, tilde_relations)

HALF = Fraction(1, 2)


def all_zero(d):
    return {k: len(v) for k, v in d.items() if not v.is_zero()} == {}


def test_index_range():
    r = IndexRange.of((2, 4))
    assert len(r) == 3 and list(r) == [2, 3, 4] and str(r) == "[2;4]"
    assert IndexRange(3, 2).empty and len(IndexRange(3, 2)) == 0
    with pytest.raises(ValueError):
        IndexRange(0, 2)


def test_metaplectic_relations_and_ground():
    t = metaplectic_site(1)
    assert all_zero(su_relations(t))
    assert all_zero(tilde_relations(t))
    assert ground_expectation(t.q_j0(2)) == qpow(HALF)
    assert ground_expectation(t.jm * t.jm) == 0


@pytest.mark.parametrize("hi", range(1, 7))
def test_coproduct_is_a_morphism(hi):
    t = coproduct_range((1, hi))
    assert all_zero(su_relations(t))
    assert all_zero(tilde_relations(t))


def test_coproduct_closed_form():
    # J+ over [1;2] = ((A+_1)^2 q^{A0_2 + 1/2} + (A+_2)^2) / [2]_{q^1/2}
    from qhowe.oscalg import gen_a_plus, gen_weight
    t = coproduct_range((1, 2))
    expect = (ONE / q_bracket(2, HALF)) * (
        qpow(HALF) * (gen_a_plus(1) ** 2 * gen_weight(2, 4)) + gen_a_plus(2) ** 2)
    assert t.jp == expect
    assert coproduct_range((1, 1)).jp == metaplectic_site(1).jp


def test_paired_and_nested_coproducts():
    assert paired_triple(1).jp == coproduct_range((1, 2)).jp
    assert commutator(paired_triple(1).jp, paired_triple(2).jm).is_zero()
    for hi in (2, 3):
        a, b = couple_coproduct((1, hi)), coproduct_range((1, 2 * hi))
        assert a.jp == b.jp and a.jm == b.jm and a.j0 == b.j0


@pytest.mark.parametrize("make", [lambda: metaplectic_site(1), lambda: coproduct_range((1, 2)),
                                  lambda: coproduct_range((1, 4))])
def test_casimir_centrality(make):
    assert all_zero(casimir_centrality(make()))


def test_casimir_ground_values():
    assert ground_expectation(casimir(paired_triple(1))) == ONE / (ONE + Q) ** 2
    for m in range(1, 5):
        g = ground_expectation((ONE + Q) ** 2 * intermediate_casimir((1, m)))
        assert g == -q_bracket(m, HALF) * q_bracket(m - 2, HALF)


def test_intermediate_casimir_commutant_behaviour():
    c12, c1 = intermediate_casimir((1, 2)), intermediate_casimir((1, 1))
    assert commutator(c12, c1).is_zero()
    assert not commutator(c12, intermediate_casimir((2, 3))).is_zero()
    total = coproduct_range((1, 6))
    for x in (total.jp, total.jm):
        assert commutator(c12, x).is_zero()
        assert commutator(c1, x).is_zero()


def test_casimir_classical_limit():
    # at q -> 1 the Casimir approaches J+J- - J0^2 + J0 on each state
    from qhowe.focknum import LAZY, FockEvaluator
    t = metaplectic_site(1, LAZY)
    c = casimir(t)
    classical = t.jp * t.jm - t.j0_op * t.j0_op + t.j0_op
    for tv, tol in ((0.999, 2e-2), (0.9999, 2e-3)):
        ev = FockEvaluator(1, tv)
        for n in range(4):
            a, b = ev.apply_basis(c, (n,)), ev.apply_basis(classical, (n,))
            assert a.get((n,), 0) == pytest.approx(b.get((n,), 0), abs=tol)


@pytest.mark.parametrize("n", [2, 3])
def test_howe_commuting_actions(n):
    t = coproduct_range((1, 2 * n))
    for i in range(1, 2 * n):
        el = l_adjacent(i)
        assert commutator(t.j0_op, el).is_zero()
        assert commutator(t.jp, el).is_zero()
        assert commutator(t.jm, el).is_zero()


def test_empty_ranges_rejected():
    with pytest.raises(ValueError):
        coproduct_range((2, 1))
    with pytest.raises(ValueError):
        intermediate_casimir((3, 2))
