"""Normal-ordered algebra of N commuting q-oscillator sites.

Per site the generators are ``A+``, ``A-`` and the invertible weight
``w = q^(A0/4)``.  Elements are stored in the basis

    (A+)^a  w^s  (A-)^b      with min(a, b) == 0,

obtained by exhaustive rewriting with

    R1  A- A+ -> q A+ A- + 1
    R2  w A+  -> q^(1/4) A+ w,      A- w -> q^(1/4) w A-
    R3  A+ A- -> (w^4 - 1) / (q - 1)

applied independently on each site.  Distinct sites commute.  Rather than
rewriting letter by letter, the product of two single-site monomials is
computed in closed form: with N the number operator and
``[N+k] = (q^k w^4 - 1)/(q - 1)``, one has ``A- A+ = [N+1]``,
``A+ A- = [N]`` and ``f(N) A+ = A+ f(N+1)``.  The closed form is the unique
normal form of R1-R3 (checked in the test-suite against letter-by-letter
reduction and against the Fock representation).

A :class:`Monomial` is a tuple of ``(site, a, s, b)`` entries sorted by site,
identity factors omitted.  Monomials are ordered as Python tuples
(lexicographic by site, then ``(a, s, b)``), which fixes printing order.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product as _cartesian
from typing import Iterable, Sequence

from .qscalar import ONE, ZERO, QScalar, tpow

__all__ = [
    "AlgebraElement",
    "Cartan",
    "NotDiagonal",
    "EXACT",
    "gen_a_plus",
    "gen_a_minus",
    "gen_weight",
    "identity",
    "normal_form",
    "commutator",
    "q_commutator",
    "ground_expectation",
    "support_degree",
]

Monomial = tuple  # tuple[tuple[int, int, int, int], ...]

_Q_MINUS_1_INV = ONE / (tpow(4) - ONE)


@lru_cache(maxsize=None)
def _number_bracket(k: int) -> tuple:
    """[N+k] as a w-polynomial ``((s, coeff), ...)``."""
    return ((4, tpow(4 * k) * _Q_MINUS_1_INV), (0, -_Q_MINUS_1_INV))


def _wpoly_mul(p: dict, r: Iterable) -> dict:
    out: dict = {}
    for s1, c1 in p.items():
        for s2, c2 in r:
            s = s1 + s2
            c = c1 * c2
            if s in out:
                out[s] = out[s] + c
            else:
                out[s] = c
    return out


@lru_cache(maxsize=None)
def _site_product(x: tuple, y: tuple) -> tuple:
    """Normal form of ``x*y`` for single-site triples ``(a, s, b)``.

    Returns ``((coeff, (a, s, b)), ...)`` with nonzero coefficients.
    """
    a1, s1, b1 = x
    a2, s2, b2 = y
    if b1 <= a2:
        c = a2 - b1
        poly = {s1 + s2: tpow(s1 * c)}
        for k in range(1, b1 + 1):
            poly = _wpoly_mul(poly, _number_bracket(c + k))
        a, b = a1 + c, b2
    else:
        c = b1 - a2
        poly = {s1 + s2: tpow(s2 * c)}
        for k in range(1, a2 + 1):
            poly = _wpoly_mul(poly, _number_bracket(c + k))
        a, b = a1, c + b2
    m = min(a, b)
    if m:
        # A+^m P(N) A-^m = P(N-m) [N][N-1]...[N-m+1]
        poly = {s: cf * tpow(-m * s) for s, cf in poly.items()}
        for k in range(m):
            poly = _wpoly_mul(poly, _number_bracket(-k))
        a -= m
        b -= m
    return tuple((cf, (a, s, b)) for s, cf in sorted(poly.items()) if cf)


def _merge(m1: Monomial, m2: Monomial):
    """Multiply two monomials; returns list of ``(coeff or None, monomial)``.

    ``None`` stands for the coefficient 1 (no shared sites).
    """
    i = j = 0
    n1, n2 = len(m1), len(m2)
    head: list = []
    shared: list = []
    while i < n1 and j < n2:
        f1, f2 = m1[i], m2[j]
        if f1[0] < f2[0]:
            head.append(f1)
            i += 1
        elif f2[0] < f1[0]:
            head.append(f2)
            j += 1
        else:
            shared.append((len(head), f1[0], _site_product(f1[1:], f2[1:])))
            head.append(None)
            i += 1
            j += 1
    head.extend(m1[i:])
    head.extend(m2[j:])
    if not shared:
        return [(None, tuple(head))]
    out = []
    for choice in _cartesian(*(opts for _, _, opts in shared)):
        factors = list(head)
        coeff = None
        for (pos, site, _), (cf, triple) in zip(shared, choice):
            factors[pos] = (site,) + triple if triple != (0, 0, 0) else None
            coeff = cf if coeff is None else coeff * cf
        out.append((coeff, tuple(f for f in factors if f is not None)))
    return out


def _coerce_scalar(c) -> QScalar:
    return QScalar.coerce(c)


class AlgebraElement:
    """Sparse sum of normal-ordered monomials with QScalar coefficients.

    Instances are treated as immutable values.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms = {} if terms is None else terms

    # -- construction ---------------------------------------------------

    @classmethod
    def scalar(cls, c) -> "AlgebraElement":
        c = _coerce_scalar(c)
        return cls({(): c} if c else {})

    @classmethod
    def monomial(cls, factors: Sequence[tuple], coeff=1) -> "AlgebraElement":
        """Single term from ``(site, a, s, b)`` factors (must be canonical)."""
        coeff = _coerce_scalar(coeff)
        facs = tuple(sorted(f for f in factors if tuple(f[1:]) != (0, 0, 0)))
        for site, a, s, b in facs:
            if a and b:
                raise ValueError("mixed raising/lowering factor is not normal-ordered")
            if a < 0 or b < 0 or site < 1:
                raise ValueError(f"invalid site factor {(site, a, s, b)}")
        if len({f[0] for f in facs}) != len(facs):
            raise ValueError("repeated site in monomial")
        return cls({facs: coeff} if coeff else {})

    # -- inspection -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self) -> int:
        return len(self.terms)

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda kv: kv[0])

    def sites(self) -> set:
        return {f[0] for m in self.terms for f in m}

    def coefficient(self, monomial: Monomial) -> QScalar:
        return self.terms.get(monomial, ZERO)

    # -- arithmetic -----------------------------------------------------

    def _lift(self, other):
        if isinstance(other, AlgebraElement):
            return other
        try:
            return AlgebraElement.scalar(other)
        except TypeError:
            return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            if m in out:
                v = out[m] + c
                if v:
                    out[m] = v
                else:
                    del out[m]
            else:
                out[m] = c
        return AlgebraElement(out)

    __radd__ = __add__

    def __neg__(self):
        return AlgebraElement({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def scale(self, c) -> "AlgebraElement":
        c = _coerce_scalar(c)
        if not c:
            return AlgebraElement()
        if c.is_one():
            return self
        return AlgebraElement({m: v * c for m, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return mul(self, other)
        if isinstance(other, Cartan):
            return NotImplemented
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __rmul__(self, other):
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __truediv__(self, other):
        return self.scale(ONE / _coerce_scalar(other))

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        out = identity()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None

    # -- text form ------------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{c} * {_format_monomial(m)}" for m, c in self.sorted_terms())

    def __repr__(self) -> str:
        return f"AlgebraElement({len(self.terms)} terms)"

    @classmethod
    def parse(cls, text: str) -> "AlgebraElement":
        text = text.strip()
        if text == "0":
            return cls()
        out = cls()
        for chunk in _split_terms(text):
            m = re.fullmatch(r"(\(.*?\)/\(.*?\))\s*\*\s*(.+)", chunk.strip())
            if m is None:
                raise ValueError(f"bad term {chunk!r}")
            out = out + cls.monomial(_parse_monomial(m.group(2)), QScalar.parse(m.group(1)))
        return out


def _format_monomial(m: Monomial) -> str:
    if not m:
        return "1"
    parts = []
    for site, a, s, b in m:
        if a:
            parts.append(f"Ap[{site}]^{a}")
        if s:
            parts.append(f"W[{site}]^{s}")
        if b:
            parts.append(f"Am[{site}]^{b}")
    return " ".join(parts)


_FACTOR = re.compile(r"(Ap|W|Am)\[(\d+)\]\^(-?\d+)")


def _parse_monomial(text: str) -> list:
    text = text.strip()
    if text == "1":
        return []
    by_site: dict = {}
    for tok in text.split():
        m = _FACTOR.fullmatch(tok)
        if m is None:
            raise ValueError(f"bad factor {tok!r}")
        kind, site, power = m.group(1), int(m.group(2)), int(m.group(3))
        entry = by_site.setdefault(site, [0, 0, 0])
        entry[{"Ap": 0, "W": 1, "Am": 2}[kind]] = power
    return [(site, *v) for site, v in by_site.items()]


def _split_terms(text: str) -> list:
    chunks, depth, start, i = [], 0, 0, 0
    while i < len(text):
        ch = text[i]
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif depth == 0 and text.startswith(" + ", i):
            chunks.append(text[start:i])
            start = i + 3
            i += 3
            continue
        i += 1
    chunks.append(text[start:])
    return chunks


def mul(e1: AlgebraElement, e2: AlgebraElement) -> AlgebraElement:
    """Normal-ordered product."""
    if not e1.terms or not e2.terms:
        return AlgebraElement()
    acc: dict = {}
    for m1, c1 in e1.terms.items():
        for m2, c2 in e2.terms.items():
            c12 = c1 * c2
            for cf, m in _merge(m1, m2):
                c = c12 if cf is None else c12 * cf
                if m in acc:
                    acc[m].append(c)
                else:
                    acc[m] = [c]
    out = {}
    for m, cs in acc.items():
        c = cs[0]
        for extra in cs[1:]:
            c = c + extra
        if c:
            out[m] = c
    return AlgebraElement(out)


def identity() -> AlgebraElement:
    return AlgebraElement({(): ONE})


def gen_a_plus(i: int) -> AlgebraElement:
    return AlgebraElement.monomial([(i, 1, 0, 0)])


def gen_a_minus(i: int) -> AlgebraElement:
    return AlgebraElement.monomial([(i, 0, 0, 1)])


def gen_weight(i: int, s: int = 1) -> AlgebraElement:
    """q^{(s/4) A0_i}, i.e. w_i^s."""
    return AlgebraElement.monomial([(i, 0, s, 0)])


_TOKENS = {"Ap": gen_a_plus, "Am": gen_a_minus}


def normal_form(raw: Iterable, *, right_to_left: bool = False) -> AlgebraElement:
    """Normal form of a raw sum of words.

    ``raw`` is an iterable of ``(coeff, word)`` where ``word`` is a sequence of
    generator tokens ``("Ap", i)``, ``("Am", i)`` or ``("W", i, s)``.  The
    product in each word is accumulated left-to-right, or right-to-left when
    requested (both must agree).
    """
    total = AlgebraElement()
    for coeff, word in raw:
        letters = [_letter(tok) for tok in word]
        if right_to_left:
            acc = identity()
            for g in reversed(letters):
                acc = g * acc
        else:
            acc = identity()
            for g in letters:
                acc = acc * g
        total = total + acc.scale(coeff)
    return total


def _letter(tok) -> AlgebraElement:
    if tok[0] == "W":
        return gen_weight(tok[1], tok[2])
    return _TOKENS[tok[0]](tok[1])


@dataclass(frozen=True)
class Cartan:
    """Diagonal element ``sum_i c_i A0_i + const`` (not a w-polynomial).

    Used for J0-type generators: it acts on normal-ordered elements through
    its adjoint action and exponentiates to weights.
    """

    coeffs: tuple  # ((site, Fraction), ...) sorted by site
    const: Fraction = Fraction(0)

    @classmethod
    def of(cls, coeffs: dict, const=0) -> "Cartan":
        items = tuple(sorted((i, Fraction(c)) for i, c in coeffs.items() if c))
        return cls(items, Fraction(const))

    def __add__(self, other: "Cartan") -> "Cartan":
        d = dict(self.coeffs)
        for i, c in other.coeffs:
            d[i] = d.get(i, 0) + c
        return Cartan.of(d, self.const + other.const)

    def weight_of(self, monomial: Monomial) -> Fraction:
        """Eigenvalue of ad(self) on a monomial."""
        coeffs = dict(self.coeffs)
        return sum((coeffs.get(site, 0) * (a - b) for site, a, _, b in monomial), Fraction(0))

    def ad(self, e: AlgebraElement) -> AlgebraElement:
        out = {}
        for m, c in e.terms.items():
            wt = self.weight_of(m)
            if wt:
                out[m] = c * QScalar.coerce(wt)
        return AlgebraElement(out)

    def value(self, occupations: dict) -> float:
        """Eigenvalue on a Fock basis state ``{site: n}``."""
        return float(self.const + sum(c * occupations.get(i, 0) for i, c in self.coeffs))

    def q_power_data(self, k) -> tuple:
        """``q^(k*self)`` as ``(t-exponent, {site: w-exponent})``."""
        k = Fraction(k)
        shift = 4 * k * self.const
        ws = {i: 4 * k * c for i, c in self.coeffs}
        if shift.denominator != 1 or any(v.denominator != 1 for v in ws.values()):
            raise ValueError(f"q^({k}*J) is not expressible with integer t and w powers")
        return int(shift), {i: int(v) for i, v in ws.items()}

    def q_power(self, k, gens=None) -> AlgebraElement:
        gens = EXACT if gens is None else gens
        shift, ws = self.q_power_data(k)
        out = gens.scalar(tpow(shift))
        for i, s in sorted(ws.items()):
            if s:
                out = out * gens.weight(i, s)
        return out


class _ExactGenerators:
    """Generator factory producing normal-ordered elements."""

    name = "exact"

    def a_plus(self, i):
        return gen_a_plus(i)

    def a_minus(self, i):
        return gen_a_minus(i)

    def weight(self, i, s=1):
        return gen_weight(i, s)

    def one(self):
        return identity()

    def zero(self):
        return AlgebraElement()

    def scalar(self, c):
        return AlgebraElement.scalar(c)

    def cartan(self, h: Cartan):
        return h


EXACT = _ExactGenerators()


def commutator(x, y):
    """[x, y] = xy - yx; a :class:`Cartan` argument acts by its adjoint."""
    if isinstance(x, Cartan):
        if isinstance(y, Cartan):
            return AlgebraElement()
        return x.ad(y)
    if isinstance(y, Cartan):
        return -y.ad(x)
    return x * y - y * x


def q_commutator(x, y, k: int):
    """q^{k/4} x y - q^{-k/4} y x  (k in quarter units)."""
    return tpow(k) * (x * y) - tpow(-k) * (y * x)


@dataclass(frozen=True)
class NotDiagonal:
    """Ground-state image is not a multiple of the ground state."""

    raising: tuple  # surviving monomials with a > 0 on some site

    def __bool__(self):
        return False


def ground_expectation(e: AlgebraElement):
    """Act on |0,...,0>; return the eigenvalue or a :class:`NotDiagonal`."""
    value = ZERO
    raising = []
    for m, c in e.terms.items():
        if any(b for _, _, _, b in m):
            continue
        if any(a for _, a, _, _ in m):
            raising.append(m)
            continue
        value = value + c
    if raising:
        return NotDiagonal(tuple(sorted(raising)))
    return value


def support_degree(e: AlgebraElement) -> dict:
    """Per-site ``(max a, max b, max |s|)`` over the stored monomials."""
    out: dict = {}
    for m in e.terms:
        for site, a, s, b in m:
            ma, mb, ms = out.get(site, (0, 0, 0))
            out[site] = (max(ma, a), max(mb, b), max(ms, abs(s)))
    return out
