"""U_q(su(1,1)) in the q-oscillator realization.

Single sites carry the metaplectic generators

    J0 = (A0 + 1/2)/2,    J+- = (A+-)^2 / [2]_{q^(1/2)},

and copies over consecutive site ranges are obtained by iterating the
coproduct ``D(J+-) = J+- (x) q^{2 J0} + 1 (x) J+-``.  Every builder takes a
``gens`` factory: :data:`qhowe.oscalg.EXACT` yields normal-ordered elements,
:data:`qhowe.focknum.LAZY` yields unevaluated expressions for the Fock oracle.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .oscalg import EXACT, Cartan, commutator
from .qscalar import ONE, Q, q_bracket

__all__ = [
    "IndexRange",
    "SuTriple",
    "metaplectic_site",
    "coproduct",
    "coproduct_range",
    "paired_triple",
    "couple_coproduct",
    "casimir",
    "intermediate_casimir",
    "tilde_triple",
    "su_relations",
    "tilde_relations",
    "casimir_centrality",
]

_HALF = Fraction(1, 2)
_INV_BRACKET2_HALF = ONE / q_bracket(2, _HALF)


@dataclass(frozen=True)
class IndexRange:
    """Consecutive integers ``[lo; hi]``; empty when ``hi < lo``."""

    lo: int
    hi: int

    def __post_init__(self):
        if self.lo < 1:
            raise ValueError(f"index range must start at 1 or above, got {self.lo}")

    @classmethod
    def of(cls, r) -> "IndexRange":
        if isinstance(r, IndexRange):
            return r
        lo, hi = r
        return cls(int(lo), int(hi))

    @property
    def empty(self) -> bool:
        return self.hi < self.lo

    def __len__(self) -> int:
        return max(0, self.hi - self.lo + 1)

    def __iter__(self):
        return iter(range(self.lo, self.hi + 1))

    def within(self, n: int) -> bool:
        return self.empty or (1 <= self.lo and self.hi <= n)

    def __str__(self):
        return f"[{self.lo};{self.hi}]"


@dataclass(frozen=True, eq=False)
class SuTriple:
    """(J0, J+, J-).  ``j0`` is always a :class:`Cartan`; ``jp``/``jm`` are
    elements of whatever backend ``gens`` produces."""

    j0: Cartan
    jp: object
    jm: object
    gens: object = EXACT

    @property
    def j0_op(self):
        return self.gens.cartan(self.j0)

    def q_j0(self, k):
        """q^{k J0}."""
        return self.j0.q_power(k, self.gens)


@lru_cache(maxsize=None)
def metaplectic_site(i: int, gens=EXACT) -> SuTriple:
    if i < 1:
        raise ValueError("site index must be >= 1")
    ap, am = gens.a_plus(i), gens.a_minus(i)
    return SuTriple(
        j0=Cartan.of({i: _HALF}, Fraction(1, 4)),
        jp=_INV_BRACKET2_HALF * (ap * ap),
        jm=_INV_BRACKET2_HALF * (am * am),
        gens=gens,
    )


def coproduct(triples) -> SuTriple:
    """Iterated coproduct of commuting copies listed left to right."""
    triples = list(triples)
    if not triples:
        raise ValueError("coproduct of an empty list")
    gens = triples[0].gens
    j0 = triples[0].j0
    for t in triples[1:]:
        j0 = j0 + t.j0
    jp = jm = None
    for k, t in enumerate(triples):
        tail = None
        for later in triples[k + 1:]:
            w = later.q_j0(2)
            tail = w if tail is None else tail * w
        p = t.jp if tail is None else t.jp * tail
        m = t.jm if tail is None else t.jm * tail
        jp = p if jp is None else jp + p
        jm = m if jm is None else jm + m
    return SuTriple(j0, jp, jm, gens)


@lru_cache(maxsize=None)
def _coproduct_range(lo: int, hi: int, gens) -> SuTriple:
    return coproduct(metaplectic_site(i, gens) for i in range(lo, hi + 1))


def coproduct_range(r, gens=EXACT) -> SuTriple:
    """U_q(su(1,1)) embedded diagonally over the oscillator sites ``r``."""
    r = IndexRange.of(r)
    if r.empty:
        raise ValueError(f"empty site range {r}")
    return _coproduct_range(r.lo, r.hi, gens)


def paired_triple(i: int, gens=EXACT) -> SuTriple:
    """Copy attached to the couple of sites (2i-1, 2i)."""
    if i < 1:
        raise ValueError("couple index must be >= 1")
    return coproduct_range((2 * i - 1, 2 * i), gens)


def couple_coproduct(r, gens=EXACT) -> SuTriple:
    """Coproduct over the couples in ``r`` built from the paired copies."""
    r = IndexRange.of(r)
    if r.empty:
        raise ValueError(f"empty couple range {r}")
    return coproduct(paired_triple(i, gens) for i in r)


def casimir(t: SuTriple):
    """C = J+ J- q^{-2J0+1} + (J0)_{q^2} (1 - J0)_{q^2}.

    The q-parentheses are expanded with the group-like weight q^{2J0}:
    (1 - q^{2J0}) (1 - q^2 q^{-2J0}) / (1 - q^2)^2.
    """
    up = t.q_j0(2)
    down = t.q_j0(-2)
    one = t.gens.one()
    norm = ONE / (ONE - Q * Q) ** 2
    return Q * (t.jp * t.jm * down) + norm * ((one - up) * (one - (Q * Q) * down))


@lru_cache(maxsize=None)
def _intermediate_casimir(lo: int, hi: int, gens):
    return casimir(coproduct_range((2 * lo - 1, 2 * hi), gens))


def intermediate_casimir(couples, gens=EXACT):
    """C^{i..j} for a consecutive couple range (sites 2i-1 .. 2j)."""
    r = IndexRange.of(couples)
    if r.empty:
        raise ValueError(f"empty couple range {r}")
    return _intermediate_casimir(r.lo, r.hi, gens)


def tilde_triple(t: SuTriple) -> SuTriple:
    """Standard presentation: J+ q^{-J0}, q^{-J0} J-."""
    w = t.q_j0(-1)
    return SuTriple(t.j0, t.jp * w, w * t.jm, t.gens)


def su_relations(t: SuTriple) -> dict:
    """Defining relations; each value must vanish."""
    j0 = t.j0_op
    rhs = (ONE / (Q - ONE / Q)) * (t.q_j0(4) - t.gens.one())
    return {
        "[J0,J+]-J+": commutator(j0, t.jp) - t.jp,
        "[J0,J-]+J-": commutator(j0, t.jm) + t.jm,
        "J-J+-q^2J+J--q^{2J0}[2J0]": t.jm * t.jp - (Q * Q) * (t.jp * t.jm) - rhs,
    }


def tilde_relations(t: SuTriple) -> dict:
    s = tilde_triple(t)
    j0 = s.j0_op
    rhs = (ONE / (Q - ONE / Q)) * (s.q_j0(2) - s.q_j0(-2))
    return {
        "[J0~,J+~]-J+~": commutator(j0, s.jp) - s.jp,
        "[J0~,J-~]+J-~": commutator(j0, s.jm) + s.jm,
        "[J-~,J+~]-[2J0~]": commutator(s.jm, s.jp) - rhs,
    }


def casimir_centrality(t: SuTriple) -> dict:
    c = casimir(t)
    return {
        "[C,J0]": commutator(c, t.j0_op),
        "[C,J+]": commutator(c, t.jp),
        "[C,J-]": commutator(c, t.jm),
    }

