import math

import pytest
from hypothesis import given, strategies as st

from qhowe.focknum import FockEvaluator
from qhowe.oqn import l_adjacent
from qhowe.oscalg import (AlgebraElement, NotDiagonal, commutator, gen_a_minus, gen_a_plus,
                          gen_weight, ground_expectation, identity, normal_form, q_commutator,
                          support_degree)
from qhowe.qscalar import ONE, Q, QScalar, tpow

Ap, Am, W = gen_a_plus, gen_a_minus, gen_weight


# -- independent oracle: letter-by-letter R1-R3 on single-site words ---------

def rewrite_site(word, coeff=ONE):
    """Reduce a word over 'P', 'M', ('W', s) by R1-R3 one rule at a time.

    R1-R3 alone leave A+ w^s A- stuck, so the consequence
    A+ w^s A- -> q^{-s/4} A+ A- w^s of R2 is applied as well.

    Returns {(a, s, b): coeff}.
    """
    out = {}
    todo = [(coeff, tuple(word))]
    while todo:
        c, w = todo.pop()
        for k in range(len(w) - 1):
            x, y = w[k], w[k + 1]
            pre, post = w[:k], w[k + 2:]
            if isinstance(x, tuple) and isinstance(y, tuple):
                s = x[1] + y[1]
                todo.append((c, pre + ((("W", s),) if s else ()) + post))
                break
            if x == "M" and y == "P":
                todo.append((c * Q, pre + ("P", "M") + post))
                todo.append((c, pre + post))
                break
            if isinstance(x, tuple) and y == "P":
                todo.append((c * tpow(x[1]), pre + ("P", x) + post))
                break
            if x == "M" and isinstance(y, tuple):
                todo.append((c * tpow(y[1]), pre + (y, "M") + post))
                break
            if (x == "P" and isinstance(y, tuple) and k + 2 < len(w)
                    and w[k + 2] == "M"):
                # A+ w^s A- = q^{-s/4} A+ A- w^s, from R2
                todo.append((c * tpow(-y[1]), pre + ("P", "M", y) + w[k + 3:]))
                break
            if x == "P" and y == "M":
                inv = ONE / (Q - ONE)
                todo.append((c * inv, pre + (("W", 4),) + post))
                todo.append((-c * inv, pre + post))
                break
        else:
            a = sum(1 for z in w if z == "P")
            b = sum(1 for z in w if z == "M")
            s = sum(z[1] for z in w if isinstance(z, tuple))
            key = (a, s, b)
            out[key] = out.get(key, QScalar(0)) + c
    return {k: v for k, v in out.items() if not v.is_zero()}


def as_site_terms(e: AlgebraElement, site=1):
    out = {}
    for m, c in e.terms.items():
        f = {x[0]: x[1:] for x in m}
        out[f.get(site, (0, 0, 0))] = c
    return out


letter = st.one_of(st.just("P"), st.just("M"), st.integers(-4, 4).filter(bool).map(lambda s: ("W", s)))
words = st.lists(letter, max_size=7)


def tokens(word, site=1):
    return [("Ap", site) if z == "P" else ("Am", site) if z == "M" else ("W", site, z[1])
            for z in word]


@given(words)
def test_closed_form_matches_letter_rewriting(word):
    assert as_site_terms(normal_form([(1, tokens(word))])) == rewrite_site(word)


@given(words)
def test_left_and_right_folding_agree(word):
    raw = [(1, tokens(word))]
    assert normal_form(raw) == normal_form(raw, right_to_left=True)


site_word = st.lists(st.tuples(st.sampled_from(["Ap", "Am", "W"]), st.integers(1, 2),
                               st.integers(-3, 3)), max_size=5)


def build(word):
    e = identity()
    for kind, i, s in word:
        e = e * (Ap(i) if kind == "Ap" else Am(i) if kind == "Am" else W(i, s))
    return e


@given(site_word, site_word, site_word)
def test_associativity(x, y, z):
    a, b, c = build(x), build(y), build(z)
    assert (a * b) * c == a * (b * c)


def lazy_word(word):
    from qhowe.focknum import LAZY
    e = LAZY.one()
    for kind, i, s in word:
        e = e * (LAZY.a_plus(i) if kind == "Ap" else LAZY.a_minus(i) if kind == "Am"
                 else LAZY.weight(i, s))
    return e


@given(site_word)
def test_normal_form_agrees_with_fock_action(word):
    exact, lazy = build(word), lazy_word(word)
    ev = FockEvaluator(2, 0.93)
    for state in [(0, 0), (1, 0), (2, 3), (4, 1)]:
        a = ev.apply_basis(exact, state)
        b = ev.apply_basis(lazy, state)
        for k in set(a) | set(b):
            assert a.get(k, 0.0) == pytest.approx(b.get(k, 0.0), abs=1e-10)


def test_defining_relations():
    one = identity()
    assert (W(1, 1) * Ap(1) - tpow(1) * (Ap(1) * W(1, 1))).is_zero()
    assert (Am(1) * W(1, 1) - tpow(1) * (W(1, 1) * Am(1))).is_zero()
    assert (Am(1) * Ap(1) - Q * (Ap(1) * Am(1)) - one).is_zero()
    assert (commutator(Am(1), Ap(1)) - W(1, 4)).is_zero()
    assert (W(1, 4) - (Q - ONE) * (Ap(1) * Am(1)) - one).is_zero()


def test_generator_examples():
    assert W(1, 0) == identity()
    e = Ap(1) * Am(1)
    assert len(e) == 2
    assert e == (ONE / (Q - ONE)) * (W(1, 4) - identity())
    assert Am(1) * Ap(2) == Ap(2) * Am(1)
    assert len(Am(1) * Ap(2)) == 1
    assert Am(1) * Ap(1) == (ONE / (Q - ONE)) * (Q * W(1, 4) - identity())
    assert W(1, 4) * Ap(1) == Q * (Ap(1) * W(1, 4))
    assert Ap(1).scale(0).is_zero()


def test_q_commutator_of_element_with_itself():
    x = Ap(1) + W(2, -1)
    assert q_commutator(x, x, 3) == (tpow(3) - tpow(-3)) * (x * x)


def test_distinct_sites_commute():
    for a in (Ap(1), Am(1), W(1, 3)):
        for b in (Ap(2), Am(2), W(2, -5)):
            assert commutator(a, b).is_zero()


def test_ground_expectation():
    assert ground_expectation(identity()) == ONE
    assert ground_expectation(W(1, 7)) == ONE
    assert ground_expectation(Am(1) * Am(1)) == QScalar(0)
    nd = ground_expectation(Ap(1) + identity())
    assert isinstance(nd, NotDiagonal) and not nd


def test_support_degree():
    assert support_degree(identity()) == {}
    el = l_adjacent(1)
    assert support_degree(el) == {1: (1, 1, 2), 2: (1, 1, 0)}
    sq = support_degree(el * el)
    assert sq[1][:2] == (2, 2) and sq[2][:2] == (2, 2)


def test_text_round_trip():
    e = 3 * identity() + Ap(1) * W(1, -2) * Am(2) - Am(3) * Am(3)
    s = str(e)
    assert AlgebraElement.parse(s) == e
    assert str(AlgebraElement()) == "0"
    assert str(identity()) == "(1*t^0)/(1*t^0) * 1"


def test_monomial_rejects_mixed_pairs():
    with pytest.raises(ValueError):
        AlgebraElement.monomial([(1, 1, 0, 1)])


def test_normal_form_monomials_are_independent_on_fock_states():
    # Gram-type check: distinct normal-form monomials give linearly
    # independent action vectors on occupations 0..D-1.
    import numpy as np
    mons = [(a, s, 0) for a in range(3) for s in (-4, 0, 4)] + \
           [(0, s, b) for b in (1, 2) for s in (-4, 0, 4)]
    ev = FockEvaluator(1, 0.9)
    D = 12
    rows = []
    for a, s, b in mons:
        e = AlgebraElement.monomial([(1, a, s, b)])
        row = []
        for n in range(D):
            out = ev.apply_basis(e, (n,))
            row.extend(out.get((m,), 0.0) for m in range(D + 3))
        rows.append(row)
    assert np.linalg.matrix_rank(np.array(rows)) == len(mons)
