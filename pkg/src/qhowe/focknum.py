"""Floating-point Fock-space oracle.

Operators are evaluated by acting on basis vectors of the q-oscillator Fock
module

    A+ |n> = sqrt((1 - q^(n+1))/(1 - q)) |n+1>,
    A- |n> = sqrt((1 - q^n)/(1 - q))     |n-1>,
    w^s |n> = q^(s n/4) |n>,

never by multiplying truncated matrices.  Products are applied factor by
factor, so intermediate occupations are never cut off; the cutoff only
selects which input states are tested.  This keeps the oracle independent
of the normal-ordering kernel: build an operator lazily from generator
leaves (see :data:`LAZY`) and it is evaluated without ever calling
:func:`qhowe.oscalg.mul`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from typing import Union

import numpy as np

from .oscalg import (AlgebraElement, Cartan, gen_a_minus, gen_a_plus, gen_weight,
                     identity)
from .qscalar import QScalar, eval_numeric

__all__ = [
    "Expr",
    "LAZY",
    "FockVector",
    "MarginInfo",
    "CutoffError",
    "FockEvaluator",
    "apply",
    "residual",
    "spectrum",
    "interior_states",
    "required_cutoff",
    "margin",
    "DEFAULT_T",
]

DEFAULT_T = 0.95


class CutoffError(ValueError):
    """Cutoff too small for the raising reach of an expression."""


# ---------------------------------------------------------------------------
# lazy operator expressions
# ---------------------------------------------------------------------------

class Expr:
    """Unevaluated operator expression (sum/product tree over leaves)."""

    __slots__ = ("_profile",)

    def __init__(self):
        self._profile = None

    @staticmethod
    def lift(x) -> "Expr":
        if isinstance(x, Expr):
            return x
        if isinstance(x, AlgebraElement):
            return Leaf(x)
        if isinstance(x, Cartan):
            return Diag(x)
        return Leaf(AlgebraElement.scalar(x))

    def __add__(self, other):
        other = Expr.lift(other)
        return Sum(_sum_items(self, 1) + _sum_items(other, 1))

    def __radd__(self, other):
        return Expr.lift(other) + self

    def __neg__(self):
        return Sum(_sum_items(self, -1))

    def __sub__(self, other):
        return self + (-Expr.lift(other))

    def __rsub__(self, other):
        return Expr.lift(other) + (-self)

    def __mul__(self, other):
        if isinstance(other, (Expr, AlgebraElement, Cartan)):
            other = Expr.lift(other)
            return Prod(_prod_items(self) + _prod_items(other))
        return Sum(_sum_items(self, QScalar.coerce(other)))

    def __rmul__(self, other):
        if isinstance(other, (AlgebraElement, Cartan)):
            return Expr.lift(other) * self
        return Sum(_sum_items(self, QScalar.coerce(other)))

    def __truediv__(self, other):
        return self * (1 / QScalar.coerce(other))

    def __pow__(self, k: int):
        if k == 0:
            return Leaf(identity())
        return Prod(tuple(f for _ in range(k) for f in _prod_items(self)))

    # reach bookkeeping: per-site (peak raise, max net raise, min net raise)
    def profile(self) -> dict:
        if self._profile is None:
            self._profile = self._compute_profile()
        return self._profile

    def sites(self) -> set:
        return set(self.profile())

    def reach(self) -> dict:
        return {i: p[0] for i, p in self.profile().items()}


class Leaf(Expr):
    __slots__ = ("element",)

    def __init__(self, element: AlgebraElement):
        super().__init__()
        self.element = element

    def _compute_profile(self):
        out: dict = {}
        for m in self.element.terms:
            for site, a, _, b in m:
                pk, hi, lo = out.get(site, (0, -math.inf, math.inf))
                out[site] = (max(pk, a - b), max(hi, a - b), min(lo, a - b))
        for m in self.element.terms:
            present = {f[0] for f in m}
            for site in out:
                if site not in present:
                    pk, hi, lo = out[site]
                    out[site] = (pk, max(hi, 0), min(lo, 0))
        return out


class Diag(Expr):
    __slots__ = ("cartan",)

    def __init__(self, cartan: Cartan):
        super().__init__()
        self.cartan = cartan

    def _compute_profile(self):
        return {i: (0, 0, 0) for i, _ in self.cartan.coeffs}


class Sum(Expr):
    __slots__ = ("items",)

    def __init__(self, items: tuple):
        super().__init__()
        self.items = tuple((c, e) for c, e in items if c)

    def _compute_profile(self):
        out: dict = {}
        for _, e in self.items:
            for site, (pk, hi, lo) in e.profile().items():
                p0, h0, l0 = out.get(site, (0, 0, 0))
                out[site] = (max(p0, pk), max(h0, hi), min(l0, lo))
        return out


class Prod(Expr):
    __slots__ = ("factors",)

    def __init__(self, factors: tuple):
        super().__init__()
        self.factors = factors

    def _compute_profile(self):
        out: dict = {}
        for f in reversed(self.factors):
            for site, (pk, hi, lo) in f.profile().items():
                p0, h0, l0 = out.get(site, (0, 0, 0))
                out[site] = (max(p0, h0 + pk), h0 + hi, l0 + lo)
        return out


def _sum_items(e: Expr, c) -> tuple:
    c = QScalar.coerce(c)
    if isinstance(e, Sum):
        return tuple((c * ci, ei) for ci, ei in e.items)
    return ((c, e),)


def _prod_items(e: Expr) -> tuple:
    if isinstance(e, Prod):
        return e.factors
    return (e,)


class _LazyGenerators:
    """Generator factory producing :class:`Expr` leaves."""

    name = "lazy"

    def a_plus(self, i):
        return Leaf(gen_a_plus(i))

    def a_minus(self, i):
        return Leaf(gen_a_minus(i))

    def weight(self, i, s=1):
        return Leaf(gen_weight(i, s))

    def one(self):
        return Leaf(identity())

    def zero(self):
        return Sum(())

    def scalar(self, c):
        return Leaf(AlgebraElement.scalar(c))

    def cartan(self, h: Cartan):
        return Diag(h)


LAZY = _LazyGenerators()

Operator = Union[Expr, AlgebraElement]


# ---------------------------------------------------------------------------
# vectors and evaluation
# ---------------------------------------------------------------------------

@dataclass
class MarginInfo:
    """Raising reach per site and the largest occupation actually visited."""

    reach: dict = field(default_factory=dict)
    max_visited: dict = field(default_factory=dict)


@dataclass
class FockVector:
    """Sparse vector; ``amplitudes`` holds states with every n_i < cutoff.

    Amplitudes landing beyond the cutoff are kept in ``overflow``.
    """

    n_sites: int
    cutoff: int
    amplitudes: dict = field(default_factory=dict)
    overflow: dict = field(default_factory=dict)

    @classmethod
    def basis(cls, state: tuple, cutoff: int) -> "FockVector":
        if any(n < 0 or n >= cutoff for n in state):
            raise ValueError(f"state {state} outside cutoff {cutoff}")
        return cls(len(state), cutoff, {tuple(state): 1.0})

    def norm(self) -> float:
        return math.sqrt(sum(a * a for a in self.amplitudes.values())
                         + sum(a * a for a in self.overflow.values()))


class FockEvaluator:
    """Applies operators to basis states at a fixed real ``t``; memoized."""

    def __init__(self, n_sites: int, t_value: float = DEFAULT_T):
        if t_value <= 0:
            raise ValueError("t must be positive")
        self.n_sites = n_sites
        self.t = float(t_value)
        self.q = self.t ** 4
        self._cache: dict = {}
        self._leaf_coeffs: dict = {}
        self._ladder: dict = {}
        self.max_visited: dict = {}

    def _ladder_amp(self, n: int) -> float:
        """sqrt((1 - q^n)/(1 - q)) for n >= 0."""
        v = self._ladder.get(n)
        if v is None:
            if self.q == 1.0:
                v = math.sqrt(n)
            else:
                v = math.sqrt((1.0 - self.q ** n) / (1.0 - self.q))
            self._ladder[n] = v
        return v

    def _coeffs(self, leaf_key, element: AlgebraElement) -> list:
        cs = self._leaf_coeffs.get(leaf_key)
        if cs is None:
            cs = [(eval_numeric(c, self.t), m) for m, c in element.terms.items()]
            self._leaf_coeffs[leaf_key] = cs
        return cs

    def _monomial_on(self, m, state: tuple):
        n = list(state)
        amp = 1.0
        for site, a, s, b in m:
            k = n[site - 1]
            if k < b:
                return None, 0.0
            for j in range(b):
                amp *= self._ladder_amp(k - j)
            k -= b
            if s:
                amp *= self.t ** (s * k)
            for j in range(1, a + 1):
                amp *= self._ladder_amp(k + j)
            k += a
            n[site - 1] = k
            if k > self.max_visited.get(site, -1):
                self.max_visited[site] = k
        return tuple(n), amp

    def _check_sites(self, element: AlgebraElement):
        bad = [i for i in element.sites() if i > self.n_sites]
        if bad:
            raise ValueError(f"operator acts on site {max(bad)} beyond n_sites={self.n_sites}")

    def apply_basis(self, op, state: tuple) -> dict:
        if isinstance(op, AlgebraElement):
            op = Leaf(op)
        key = (op, state)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        if isinstance(op, Leaf):
            self._check_sites(op.element)
            out = self._apply_element(op, op.element, state)
        elif isinstance(op, Diag):
            occ = {i + 1: n for i, n in enumerate(state)}
            v = op.cartan.value(occ)
            out = {state: v} if v else {}
        elif isinstance(op, Sum):
            out = {}
            for c, e in op.items:
                cf = self._scalar(c)
                for st, a in self.apply_basis(e, state).items():
                    out[st] = out.get(st, 0.0) + cf * a
        elif isinstance(op, Prod):
            vec = {state: 1.0}
            for f in reversed(op.factors):
                vec = self.apply_vector(f, vec)
                if not vec:
                    break
            out = vec
        else:
            raise TypeError(f"cannot apply {type(op).__name__}")
        self._cache[key] = out
        return out

    def _scalar(self, c: QScalar) -> float:
        v = self._leaf_coeffs.get(c)
        if v is None:
            v = eval_numeric(c, self.t)
            self._leaf_coeffs[c] = v
        return v

    def _apply_element(self, key, element, state) -> dict:
        out: dict = {}
        for cf, m in self._coeffs(key, element):
            st, amp = self._monomial_on(m, state)
            if st is None or amp == 0.0:
                continue
            out[st] = out.get(st, 0.0) + cf * amp
        return out

    def apply_vector(self, op, vec: dict) -> dict:
        out: dict = {}
        for st, a in vec.items():
            for st2, b in self.apply_basis(op, st).items():
                out[st2] = out.get(st2, 0.0) + a * b
        return out


def _as_op(e) -> Expr:
    if isinstance(e, Cartan):
        return Diag(e)
    if isinstance(e, AlgebraElement):
        return Leaf(e)
    return e


def _profile(e) -> dict:
    if isinstance(e, Expr):
        return e.profile()
    return Leaf(e).profile()


def margin(e) -> MarginInfo:
    return MarginInfo(reach={i: p[0] for i, p in _profile(_as_op(e)).items()})


def apply(e: Operator, v: FockVector, t_value: float = DEFAULT_T) -> FockVector:
    """Apply ``e`` to ``v``; out-of-cutoff amplitudes go to ``overflow``."""
    ev = FockEvaluator(v.n_sites, t_value)
    res = ev.apply_vector(_as_op(e), v.amplitudes)
    out = FockVector(v.n_sites, v.cutoff)
    for st, a in res.items():
        if a == 0.0:
            continue
        if all(n < v.cutoff for n in st):
            out.amplitudes[st] = a
        else:
            out.overflow[st] = a
    return out


def interior_states(n_sites: int, cutoff: int) -> list:
    """Basis states with total occupation below ``cutoff``."""
    states = []
    for total in range(cutoff):
        for combo in combinations_with_replacement(range(n_sites), total):
            n = [0] * n_sites
            for i in combo:
                n[i] += 1
            states.append(tuple(n))
    return sorted(set(states))


def _n_sites_of(e) -> int:
    sites = _profile(e).keys()
    return max(sites, default=1)


def _lowering_depth(e) -> int:
    """Largest total lowering degree of a normal-form monomial.

    Normal-form monomials act independently on the Fock module, but a term
    with lowering degree b is only seen by states holding at least b quanta,
    so a nonzero normal-form element needs a cutoff above this depth to be
    detected.  Composite expressions are only ever tested for vanishing and
    report depth 0.
    """
    if isinstance(e, AlgebraElement):
        e = Leaf(e)
    if not isinstance(e, Leaf):
        return 0
    return max((sum(b for *_, b in m) for m in e.element.terms), default=0)


def required_cutoff(e) -> int:
    """Smallest cutoff accepted by :func:`residual`.

    Application is never truncated, so any test set gives exact amplitudes;
    the floor only guarantees the test set is not trivially small: it must
    contain states as deep as the raising reach, and states able to feel
    every lowering monomial of a normal-form element.
    """
    reach = margin(e).reach
    return max(max(reach.values(), default=0), _lowering_depth(e) + 1, 1)


def residual(e: Operator, cutoff: int | None = None, t_value: float = DEFAULT_T,
             n_sites: int | None = None) -> float:
    """Max Euclidean norm of ``e|n>`` over interior basis states.

    For an operator whose exact normal form is zero this is pure rounding.
    The default cutoff is raising reach + 2.
    """
    e = _as_op(e)
    need = required_cutoff(e)
    if cutoff is None:
        cutoff = max(need, max(margin(e).reach.values(), default=0) + 2)
    if cutoff < need:
        raise CutoffError(f"cutoff {cutoff} too small: need at least {need}")
    n = n_sites or _n_sites_of(e)
    ev = FockEvaluator(n, t_value)
    worst = 0.0
    for st in interior_states(n, cutoff):
        out = ev.apply_basis(e, st)
        r = math.sqrt(sum(a * a for a in out.values()))
        if r > worst:
            worst = r
    return worst


def spectrum(e: Operator, cutoff: int, t_value: float = DEFAULT_T,
             n_sites: int | None = None) -> list:
    """Sorted eigenvalues on the span of states with total occupation < cutoff.

    ``e`` must conserve total occupation so this span is invariant.
    """
    e = _as_op(e)
    for site_prof in [_total_net(e)]:
        if site_prof != (0, 0):
            raise ValueError("operator changes total occupation; spectrum undefined on the truncation")
    n = n_sites or _n_sites_of(e)
    states = interior_states(n, cutoff)
    index = {s: k for k, s in enumerate(states)}
    ev = FockEvaluator(n, t_value)
    mat = np.zeros((len(states), len(states)))
    for k, st in enumerate(states):
        for st2, a in ev.apply_basis(e, st).items():
            mat[index[st2], k] += a
    vals = np.linalg.eigvals(mat)
    if np.max(np.abs(vals.imag), initial=0.0) > 1e-8 * max(1.0, np.max(np.abs(vals))):
        raise ValueError("spectrum is not real")
    return sorted(float(v) for v in vals.real)


def _total_net(e) -> tuple:
    """(max, min) change of total occupation over all monomials/paths."""
    if isinstance(e, AlgebraElement):
        e = Leaf(e)
    if isinstance(e, Leaf):
        nets = [sum(a - b for _, a, _, b in m) for m in e.element.terms] or [0]
        return max(nets), min(nets)
    if isinstance(e, Diag):
        return 0, 0
    if isinstance(e, Sum):
        parts = [_total_net(x) for _, x in e.items] or [(0, 0)]
        return max(p[0] for p in parts), min(p[1] for p in parts)
    hi = lo = 0
    for f in e.factors:
        h, l = _total_net(f)
        hi += h
        lo += l
    return hi, lo
