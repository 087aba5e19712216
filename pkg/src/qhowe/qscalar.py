"""Exact arithmetic in the rational function field Q(t), with t = q^(1/4).

A :class:`QScalar` stores ``t**shift * num / den`` where ``num`` and ``den``
are integer polynomials (python-flint ``fmpz_poly``) kept in canonical form:

* ``gcd(num, den) == 1`` over Z (integer content included),
* ``den`` has positive leading coefficient and nonzero constant term,
* ``num`` has nonzero constant term (powers of t live in ``shift``),
* zero is ``num == 0, den == 1, shift == 0``.

Every q-power used by the oscillator realizations is an integer power of t,
so all structure constants are elements of this field.
"""
from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational

import flint

__all__ = [
    "QScalar",
    "PoleError",
    "T",
    "Q",
    "ONE",
    "ZERO",
    "tpow",
    "qpow",
    "q_bracket",
    "q_paren",
    "eval_numeric",
]

_fz = flint.fmpz_poly


class PoleError(ArithmeticError):
    """Raised when a QScalar is evaluated at a zero of its denominator."""


def _valuation(p: flint.fmpz_poly) -> int:
    k = 0
    while p[k] == 0:
        k += 1
    return k


def _drop_low(p: flint.fmpz_poly, k: int) -> flint.fmpz_poly:
    if k == 0:
        return p
    return _fz(p.coeffs()[k:])


def _shift_up(p: flint.fmpz_poly, k: int) -> flint.fmpz_poly:
    if k == 0:
        return p
    return _fz([0] * k + p.coeffs())


class QScalar:
    """Immutable element of Q(t)."""

    __slots__ = ("num", "den", "shift", "_hash")

    def __init__(self, num=0, den=1, shift: int = 0, *, _canonical: bool = False):
        if not isinstance(num, flint.fmpz_poly):
            num = _fz(num if isinstance(num, list) else [num])
        if not isinstance(den, flint.fmpz_poly):
            den = _fz(den if isinstance(den, list) else [den])
        self._hash = None
        if _canonical:
            self.num, self.den, self.shift = num, den, shift
            return
        if den.is_zero():
            raise ZeroDivisionError("QScalar with zero denominator")
        if num.is_zero():
            self.num, self.den, self.shift = _fz([]), _fz([1]), 0
            return
        vn = _valuation(num)
        vd = _valuation(den)
        num = _drop_low(num, vn)
        den = _drop_low(den, vd)
        shift += vn - vd
        if den.degree() > 0 or den[0] != 1:
            g = num.gcd(den)
            if not (g.degree() == 0 and g[0] == 1):
                num = num // g
                den = den // g
            if den[den.degree()] < 0:
                num = -num
                den = -den
        self.num, self.den, self.shift = num, den, shift

    # -- construction ---------------------------------------------------

    @classmethod
    def coerce(cls, x) -> "QScalar":
        if isinstance(x, QScalar):
            return x
        if isinstance(x, int):
            return _int_cache(x)
        if isinstance(x, Rational):
            x = Fraction(x)
            return cls(x.numerator, x.denominator)
        raise TypeError(f"cannot coerce {type(x).__name__} to QScalar")

    @classmethod
    def laurent(cls, coeffs: dict) -> "QScalar":
        """Build from a mapping ``{t_exponent: integer coefficient}``."""
        coeffs = {k: c for k, c in coeffs.items() if c}
        if not coeffs:
            return ZERO
        lo = min(coeffs)
        dense = [0] * (max(coeffs) - lo + 1)
        for k, c in coeffs.items():
            dense[k - lo] = c
        return cls(_fz(dense), _fz([1]), lo)

    # -- predicates -----------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def is_one(self) -> bool:
        return (self.shift == 0 and self.num.degree() == 0 and self.num[0] == 1
                and self.den.degree() == 0 and self.den[0] == 1)

    def is_laurent(self) -> bool:
        return self.den.degree() == 0 and self.den[0] == 1

    # -- arithmetic -----------------------------------------------------

    def __neg__(self) -> "QScalar":
        if self.is_zero():
            return self
        return QScalar(-self.num, self.den, self.shift, _canonical=True)

    def __add__(self, other) -> "QScalar":
        try:
            other = QScalar.coerce(other)
        except TypeError:
            return NotImplemented
        if self.num.is_zero():
            return other
        if other.num.is_zero():
            return self
        lo = min(self.shift, other.shift)
        n1 = _shift_up(self.num, self.shift - lo)
        n2 = _shift_up(other.num, other.shift - lo)
        if self.den == other.den:
            return QScalar(n1 + n2, self.den, lo)
        g = self.den.gcd(other.den)
        if g.degree() == 0 and g[0] == 1:
            return QScalar(n1 * other.den + n2 * self.den, self.den * other.den, lo)
        d1 = self.den // g
        d2 = other.den // g
        return QScalar(n1 * d2 + n2 * d1, d1 * other.den, lo)

    __radd__ = __add__

    def __sub__(self, other) -> "QScalar":
        try:
            other = QScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "QScalar":
        return QScalar.coerce(other) + (-self)

    def __mul__(self, other) -> "QScalar":
        try:
            other = QScalar.coerce(other)
        except TypeError:
            return NotImplemented
        if self.num.is_zero() or other.num.is_zero():
            return ZERO
        shift = self.shift + other.shift
        n1, d1, n2, d2 = self.num, self.den, other.num, other.den
        one1 = d1.degree() == 0 and d1[0] == 1
        one2 = d2.degree() == 0 and d2[0] == 1
        if one1 and one2:
            return QScalar(n1 * n2, d1, shift, _canonical=True)
        # cross-cancel: inputs are canonical, so only n1/d2 and n2/d1 can share factors
        if not one2:
            g = n1.gcd(d2)
            if not (g.degree() == 0 and g[0] == 1):
                n1, d2 = n1 // g, d2 // g
        if not one1:
            g = n2.gcd(d1)
            if not (g.degree() == 0 and g[0] == 1):
                n2, d1 = n2 // g, d1 // g
        num, den = n1 * n2, d1 * d2
        if den[den.degree()] < 0:
            num, den = -num, -den
        return QScalar(num, den, shift, _canonical=True)

    __rmul__ = __mul__

    def inverse(self) -> "QScalar":
        if self.num.is_zero():
            raise ZeroDivisionError("division by zero QScalar")
        num, den = self.den, self.num
        if den[den.degree()] < 0:
            num, den = -num, -den
        return QScalar(num, den, -self.shift, _canonical=True)

    def __truediv__(self, other) -> "QScalar":
        try:
            other = QScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other) -> "QScalar":
        return QScalar.coerce(other) * self.inverse()

    def __pow__(self, k: int) -> "QScalar":
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        if self.num.is_zero():
            return ONE if k == 0 else ZERO
        return QScalar(self.num ** k, self.den ** k, self.shift * k, _canonical=True)

    # -- comparison / hashing -------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, QScalar):
            try:
                other = QScalar.coerce(other)
            except TypeError:
                return NotImplemented
        return (self.shift == other.shift and self.num == other.num
                and self.den == other.den)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.shift, tuple(int(c) for c in self.num.coeffs()),
                               tuple(int(c) for c in self.den.coeffs())))
        return self._hash

    # -- text form ------------------------------------------------------

    def numerator_terms(self) -> dict:
        """Numerator as ``{t_exponent: int}`` including the t-shift."""
        return {k + self.shift: int(c) for k, c in enumerate(self.num.coeffs()) if c != 0}

    def denominator_terms(self) -> dict:
        return {k: int(c) for k, c in enumerate(self.den.coeffs()) if c != 0}

    def __str__(self) -> str:
        return f"({_format_poly(self.numerator_terms())})/({_format_poly(self.denominator_terms())})"

    def __repr__(self) -> str:
        return f"QScalar{self}"

    @classmethod
    def parse(cls, text: str) -> "QScalar":
        m = re.fullmatch(r"\s*\((.*)\)\s*/\s*\((.*)\)\s*", text)
        if m is None:
            raise ValueError(f"not a QScalar literal: {text!r}")
        num = cls.laurent(_parse_poly(m.group(1)))
        den = cls.laurent(_parse_poly(m.group(2)))
        return num / den

    def evaluate(self, t_value: float) -> float:
        return eval_numeric(self, t_value)


def _format_poly(terms: dict) -> str:
    if not terms:
        return "0"
    out = []
    for k in sorted(terms, reverse=True):
        c = terms[k]
        if not out:
            out.append(f"{c}*t^{k}")
        elif c < 0:
            out.append(f" - {-c}*t^{k}")
        else:
            out.append(f" + {c}*t^{k}")
    return "".join(out)


_TERM = re.compile(r"\s*([+-]?)\s*(\d+)\*t\^(-?\d+)")


def _parse_poly(text: str) -> dict:
    text = text.strip()
    if text == "0":
        return {}
    terms: dict = {}
    pos = 0
    while pos < len(text):
        m = _TERM.match(text, pos)
        if m is None:
            raise ValueError(f"bad polynomial term at {text[pos:]!r}")
        sign = -1 if m.group(1) == "-" else 1
        k = int(m.group(3))
        terms[k] = terms.get(k, 0) + sign * int(m.group(2))
        pos = m.end()
    return terms


_INTS: dict = {}


def _int_cache(n: int) -> QScalar:
    s = _INTS.get(n)
    if s is None:
        s = QScalar(n)
        if -64 <= n <= 64:
            _INTS[n] = s
    return s


ZERO = QScalar(0)
ONE = QScalar(1)
T = QScalar(1, 1, 1)
Q = QScalar(1, 1, 4)


def tpow(k: int) -> QScalar:
    """t**k."""
    return QScalar(_fz([1]), _fz([1]), k, _canonical=True)


def _t_exponent(x) -> int:
    k = Fraction(x) * 4
    if k.denominator != 1:
        raise ValueError(f"q^{x} is not an integer power of t = q^(1/4)")
    return int(k)


def qpow(x) -> QScalar:
    """q**x for x a multiple of 1/4."""
    return tpow(_t_exponent(x))


def q_bracket(x, base_exponent=1) -> QScalar:
    """[x]_{q^e} = (q^{e x} - q^{-e x}) / (q^e - q^{-e})."""
    k = _t_exponent(Fraction(x) * Fraction(base_exponent))
    e = _t_exponent(base_exponent)
    if e == 0:
        raise ValueError("base exponent must be nonzero")
    return (tpow(k) - tpow(-k)) / (tpow(e) - tpow(-e))


def q_paren(x, base_exponent=1) -> QScalar:
    """(x)_{q^e} = (1 - q^{e x}) / (1 - q^e)."""
    k = _t_exponent(Fraction(x) * Fraction(base_exponent))
    e = _t_exponent(base_exponent)
    if e == 0:
        raise ValueError("base exponent must be nonzero")
    return (ONE - tpow(k)) / (ONE - tpow(e))


def _horner(coeffs, x: float) -> float:
    acc = 0.0
    for c in reversed(coeffs):
        acc = acc * x + float(c)
    return acc


def eval_numeric(x: QScalar, t_value: float) -> float:
    """Evaluate at a real t. Raises PoleError on a vanishing denominator."""
    den = _horner(x.den.coeffs(), t_value)
    if den == 0.0:
        raise PoleError(f"{x} has a pole at t = {t_value}")
    if t_value == 0.0 and x.shift < 0:
        raise PoleError(f"{x} has a pole at t = 0")
    return _horner(x.num.coeffs(), t_value) * t_value ** x.shift / den
