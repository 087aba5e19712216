import math

import pytest

from qhowe.focknum import (LAZY, CutoffError, FockVector, apply, interior_states, margin,
                           required_cutoff, residual, spectrum)
from qhowe.oqn import l_adjacent, l_extended, lambda_single
from qhowe.oscalg import AlgebraElement, gen_a_minus, gen_a_plus, gen_weight, identity
from qhowe.qscalar import ONE, Q, qpow
from qhowe.uqsu import coproduct_range, intermediate_casimir


def test_ladder_actions():
    v = apply(gen_a_plus(1), FockVector.basis((0,), 4))
    assert v.amplitudes == {(1,): pytest.approx(1.0)}
    assert apply(gen_a_minus(1), FockVector.basis((0,), 4)).amplitudes == {}
    t = 0.9
    q = t ** 4
    for n in range(4):
        out = apply(gen_weight(1, 4), FockVector.basis((n,), 5), t)
        assert out.amplitudes[(n,)] == pytest.approx(q ** n)


def test_overflow_is_tracked_not_dropped():
    v = apply(gen_a_plus(1) ** 2, FockVector.basis((3,), 4))
    assert v.amplitudes == {} and set(v.overflow) == {(5,)}
    assert v.norm() > 0


def test_oscillator_relation_residual_small():
    e = gen_a_minus(1) * gen_a_plus(1) - Q * (gen_a_plus(1) * gen_a_minus(1)) - identity()
    for d in (3, 6, 9):
        assert residual(e, d, 0.95) <= 1e-12


def test_lazy_relation_residual_small():
    x = LAZY.a_minus(1) * LAZY.a_plus(1) - Q * (LAZY.a_plus(1) * LAZY.a_minus(1)) - LAZY.one()
    assert residual(x, 6, 0.95) <= 1e-12


def test_commuting_action_residual():
    t = coproduct_range((1, 4), LAZY)
    e = t.j0_op * l_adjacent(1, LAZY) - l_adjacent(1, LAZY) * t.j0_op
    assert residual(e, 8, 0.95, n_sites=4) <= 1e-10


def test_wrong_pluecker_is_detected():
    h = qpow(__import__("fractions").Fraction(1, 2))
    L = lambda a, b: l_extended(a, b, 1, None, LAZY)
    wrong = (h * (L(1, 2) * L(3, 4)) - L(1, 3) * L(2, 4) + (ONE / h) * (L(1, 4) * L(2, 3)))
    assert residual(wrong, None, 0.95, n_sites=4) > 1e-3


def test_cutoff_error_names_minimum():
    e = gen_a_plus(1) ** 3
    with pytest.raises(CutoffError, match="at least 3"):
        residual(e, 2)
    assert required_cutoff(gen_a_minus(1) ** 2) == 3


def test_margin_reach():
    assert margin(gen_a_plus(1) ** 2 * gen_a_minus(2)).reach == {1: 2, 2: 0}
    prod = LAZY.a_minus(1) * LAZY.a_plus(1) * LAZY.a_plus(1)
    assert margin(prod).reach == {1: 2}


def test_interior_states():
    st = interior_states(2, 3)
    assert (0, 0) in st and (2, 0) in st and (1, 1) in st and (2, 1) not in st
    assert len(st) == 6


def test_enlarging_cutoff_keeps_interior_residuals():
    e = intermediate_casimir((1, 1), LAZY) * l_adjacent(1, LAZY) - l_adjacent(1, LAZY) * intermediate_casimir((1, 1), LAZY)
    small = residual(e, 4, 0.9, n_sites=2)
    big = residual(e, 7, 0.9, n_sites=2)
    assert small <= 1e-12 and big <= 1e-11


def test_spectrum_examples():
    assert spectrum(AlgebraElement(), 3, 0.9, n_sites=1) == [0.0, 0.0, 0.0]
    q = 0.9 ** 4
    vals = spectrum(gen_weight(1, 4), 4, 0.9, n_sites=1)
    assert vals == pytest.approx([q ** 3, q ** 2, q, 1.0])
    with pytest.raises(ValueError):
        spectrum(gen_a_plus(1), 3, 0.9, n_sites=1)


def test_spectra_of_paired_casimir_and_lambda_agree():
    c = spectrum(intermediate_casimir((1, 1)), 12, 0.9, n_sites=2)
    lam = ((lambda_single(1) + identity()) * (ONE / (ONE + Q) ** 2))
    s = spectrum(lam, 12, 0.9, n_sites=2)
    assert c == pytest.approx(s, abs=1e-9)


def test_q_one_uses_integer_ladder():
    v = apply(gen_a_plus(1), FockVector.basis((3,), 6), 1.0)
    assert v.amplitudes[(4,)] == pytest.approx(2.0)


def test_random_nonzero_elements_are_detected(rng):
    # normal-form elements are nonzero iff their Fock action is nonzero
    for _ in range(25):
        e = AlgebraElement()
        for _ in range(rng.randint(1, 4)):
            site = rng.randint(1, 2)
            a, b = (rng.randint(0, 2), 0) if rng.random() < 0.5 else (0, rng.randint(0, 2))
            e = e + AlgebraElement.monomial([(site, a, rng.randint(-4, 4), b)], rng.randint(1, 5))
        if e.is_zero():
            continue
        assert residual(e, None, 0.95, n_sites=2) > 1e-6
