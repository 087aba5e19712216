"""The nonstandard deformation o_{q^(1/2)}(N) in the q-oscillator realization.

Adjacent generators

    L_{i,i+1} = q^{-(A0_i - 1/2)/2} (q^{1/4} A+_i A-_{i+1} - q^{-1/4} A-_i A+_{i+1})

are extended to all pairs by q^{+-1/4}-commutators, and the commutant of
o(2)^{+n} (the Lambda elements) is assembled from them.  Couples are the site
pairs (2i-1, 2i).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .oscalg import EXACT, commutator, q_commutator
from .qscalar import ONE, Q, QScalar, q_bracket, qpow, tpow
from .uqsu import IndexRange

__all__ = [
    "OqRealization",
    "PRESETS",
    "DEFAULT_PRESET",
    "l_adjacent",
    "l_extended",
    "casimir_full",
    "lambda_single",
    "lambda_pair",
    "lambda_range",
    "lambda_pair_from_ranges",
    "range_shift",
    "tilde_factor",
    "lambda_tilde",
    "serre_relations",
    "pluecker_relations",
    "splitting_relations",
]

_HALF = Fraction(1, 2)
_SQRTQ_GAP = tpow(2) - tpow(-2)  # q^{1/2} - q^{-1/2}

# Multiplicative normalization of the affine map Lambda -> Lambda~.
PRESETS = {
    "sec41": -(_SQRTQ_GAP / (ONE + Q)) ** 2,
    "casmap": -(_SQRTQ_GAP ** 2),
}
DEFAULT_PRESET = "casmap"


@lru_cache(maxsize=None)
def l_adjacent(i: int, gens=EXACT):
    if i < 1:
        raise ValueError("site index must be >= 1")
    # prefactor q^{-(A0-1/2)/2}; with q^{-(A0+1/2)/2} the cubic relations close
    # on -q^{-1} L instead of -L and the Casimir pairing is off by q
    pref = tpow(1) * gens.weight(i, -2)
    body = (tpow(1) * (gens.a_plus(i) * gens.a_minus(i + 1))
            - tpow(-1) * (gens.a_minus(i) * gens.a_plus(i + 1)))
    return pref * body


@lru_cache(maxsize=None)
def l_extended(i: int, k: int, sign: int = 1, split: int | None = None, gens=EXACT):
    """L^{+-}_{ik} via [L_ij, L_jk]_{q^{+-1/4}}; ``split`` is j (default i+1)."""
    if not i < k:
        raise ValueError(f"need i < k, got ({i}, {k})")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if k == i + 1:
        return l_adjacent(i, gens)
    j = i + 1 if split is None else split
    if not i < j < k:
        raise ValueError(f"split {j} not strictly between {i} and {k}")
    return q_commutator(l_extended(i, j, sign, None, gens),
                        l_extended(j, k, sign, None, gens), sign)


def _ll(i: int, k: int, gens):
    """L^+_{ik} L^-_{ik}."""
    return l_extended(i, k, 1, None, gens) * l_extended(i, k, -1, None, gens)


@lru_cache(maxsize=None)
def _casimir_full(lo: int, hi: int, gens):
    size = hi - lo + 1
    total = None
    for a in range(1, size + 1):
        for b in range(a + 1, size + 1):
            term = qpow(Fraction(-size + a + b - 1, 2)) * _ll(lo - 1 + a, lo - 1 + b, gens)
            total = term if total is None else total + term
    return total


def casimir_full(window, gens=EXACT):
    """Quadratic Casimir of o_{q^(1/2)}(2n) on a window of 2n sites.

    Exponents use window-relative positions, so shifted windows carry the
    same pattern as sites 1..2n.
    """
    r = IndexRange.of(window)
    if len(r) < 2 or len(r) % 2:
        raise ValueError(f"window {r} must have even length >= 2")
    return _casimir_full(r.lo, r.hi, gens)


@lru_cache(maxsize=None)
def lambda_single(i: int, gens=EXACT):
    el = l_adjacent(2 * i - 1, gens)
    return el * el


@lru_cache(maxsize=None)
def lambda_pair(i: int, j: int, gens=EXACT):
    if not 1 <= i < j:
        raise ValueError(f"need 1 <= i < j, got ({i}, {j})")
    a, b, c, d = 2 * i - 1, 2 * i, 2 * j - 1, 2 * j
    return (qpow(-1) * lambda_single(i, gens)
            + _ll(b, c, gens)
            + Q * lambda_single(j, gens)
            + qpow(-_HALF) * _ll(a, c, gens)
            + qpow(_HALF) * _ll(b, d, gens)
            + _ll(a, d, gens))


def _check_range(r: IndexRange, n):
    if n is not None and not r.within(n):
        raise ValueError(f"range {r} not contained in [1;{n}]")


@lru_cache(maxsize=None)
def _lambda_range(lo: int, hi: int, gens):
    length = hi - lo + 1
    if length == 1:
        return lambda_single(lo, gens)
    if length == 2:
        return lambda_pair(lo, hi, gens)
    total = None
    for a in range(1, length + 1):
        for b in range(a + 1, length + 1):
            term = qpow(a + b - (length + 1)) * lambda_pair(lo - 1 + a, lo - 1 + b, gens)
            total = term if total is None else total + term
    coef = q_bracket(length - 2, _HALF)
    for a in range(1, length + 1):
        total = total - (coef * qpow(a - Fraction(length + 1, 2))) * lambda_single(lo - 1 + a, gens)
    return total


def lambda_range(r, n=None, gens=EXACT):
    """Lambda^{[k;l]} over consecutive couples; the empty range gives 0."""
    r = IndexRange.of(r)
    _check_range(r, n)
    if r.empty:
        return gens.zero()
    return _lambda_range(r.lo, r.hi, gens)


def lambda_pair_from_ranges(i: int, j: int, gens=EXACT):
    """Inverse change of basis: Lambda_{ij} rebuilt from Lambda^{[.;.]}."""
    if not 1 <= i < j:
        raise ValueError(f"need 1 <= i < j, got ({i}, {j})")
    lr = lambda rr: lambda_range(rr, None, gens)
    return (lr((i, j)) + qpow(-1) * lr((i, i)) + lr((i + 1, j - 1)) + Q * lr((j, j))
            - qpow(-1) * lr((i, j - 1)) - Q * lr((i + 1, j)))


def range_shift(r) -> QScalar:
    """[l]_{q^(1/2)} [l-2]_{q^(1/2)} for a range of length l."""
    length = len(IndexRange.of(r))
    return q_bracket(length, _HALF) * q_bracket(length - 2, _HALF)


def tilde_factor(preset: str) -> QScalar:
    try:
        return PRESETS[preset]
    except KeyError:
        raise ValueError(f"unknown normalization preset {preset!r}; "
                         f"choose from {sorted(PRESETS)}") from None


def lambda_tilde(r, n=None, preset: str = DEFAULT_PRESET, gens=EXACT):
    """[2]_q + u (Lambda^r - shift(r)), u the preset normalization."""
    u = tilde_factor(preset)
    r = IndexRange.of(r)
    lam = lambda_range(r, n, gens)
    return q_bracket(2) * gens.one() + u * (lam - range_shift(r) * gens.one())


def serre_relations(n_sites: int, gens=EXACT) -> dict:
    """Cubic relations and far commutativity of the adjacent generators."""
    out = {}
    br = qpow(_HALF) + qpow(-_HALF)
    for i in range(2, n_sites):
        x, y = l_adjacent(i - 1, gens), l_adjacent(i, gens)
        out[f"serre-a[{i}]"] = x * y * y - br * (y * x * y) + y * y * x + x
        out[f"serre-b[{i}]"] = y * x * x - br * (x * y * x) + x * x * y + y
    for i in range(1, n_sites):
        for j in range(i + 2, n_sites):
            out[f"far[{i},{j}]"] = commutator(l_adjacent(i, gens), l_adjacent(j, gens))
    return out


def splitting_relations(n_sites: int, gens=EXACT) -> dict:
    """L^{+-}_{ik} is independent of the intermediate index."""
    out = {}
    for i in range(1, n_sites + 1):
        for k in range(i + 3, n_sites + 1):
            base = {s: l_extended(i, k, s, None, gens) for s in (1, -1)}
            for j in range(i + 2, k):
                for s, tag in ((1, "+"), (-1, "-")):
                    out[f"split[{i},{j},{k}]{tag}"] = l_extended(i, k, s, j, gens) - base[s]
    return out


def pluecker_relations(n_sites: int, gens=EXACT) -> dict:
    out = {}
    h, mh = qpow(_HALF), qpow(-_HALF)
    for i in range(1, n_sites + 1):
        for j in range(i + 1, n_sites + 1):
            for k in range(j + 1, n_sites + 1):
                for l in range(k + 1, n_sites + 1):
                    def L(a, b, s):
                        return l_extended(a, b, s, None, gens)
                    out[f"pluecker+[{i},{j},{k},{l}]"] = (
                        mh * (L(i, j, 1) * L(k, l, 1)) - L(i, k, 1) * L(j, l, 1)
                        + h * (L(i, l, 1) * L(j, k, 1)))
                    out[f"pluecker-[{i},{j},{k},{l}]"] = (
                        h * (L(i, j, -1) * L(k, l, -1)) - L(i, k, -1) * L(j, l, -1)
                        + mh * (L(i, l, -1) * L(j, k, -1)))
    return out


@dataclass
class OqRealization:
    """Adjacent generators L_{i,i+1}, i = 1..N-1, on N oscillator sites."""

    n_sites: int
    gens: object = EXACT
    adjacent: list = field(init=False)

    def __post_init__(self):
        if self.n_sites < 2:
            raise ValueError("need at least two sites")
        self.adjacent = [l_adjacent(i, self.gens) for i in range(1, self.n_sites)]

    def relations(self) -> dict:
        return serre_relations(self.n_sites, self.gens)
