"""Askey-Wilson structures on both sides of the duality, and the verification
suites that decide every identity as a zero normal form.

A suite is a deterministic table ``relation id -> element that must vanish``.
In ``exact`` mode each element is built with :data:`qhowe.oscalg.EXACT` and
passes iff its normal form is empty.  In ``numeric`` mode the same builders
run over :data:`qhowe.focknum.LAZY` and the element is evaluated on Fock
basis states; it passes iff the residual is below ``tol``.
"""
from __future__ import annotations

import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from functools import lru_cache

from . import focknum
from .oscalg import (EXACT, AlgebraElement, commutator, gen_a_minus, gen_a_plus,
                     gen_weight, ground_expectation, identity)
from .oqn import (DEFAULT_PRESET, PRESETS, casimir_full, l_adjacent, lambda_pair,
                  lambda_pair_from_ranges, lambda_range, lambda_single, lambda_tilde,
                  pluecker_relations, range_shift, serre_relations, splitting_relations,
                  tilde_factor)
from .qscalar import ONE, Q, QScalar, q_bracket, qpow
from .uqsu import (IndexRange, casimir_centrality, coproduct_range, couple_coproduct,
                   intermediate_casimir, metaplectic_site, su_relations, tilde_relations)

__all__ = [
    "ZhedanovParams",
    "UniversalTriple",
    "RacahPresentation",
    "RelationResult",
    "VerificationReport",
    "SuiteError",
    "SUITES",
    "DEFAULT_TOL",
    "zhedanov_to_universal",
    "universal_to_zhedanov",
    "zhedanov_relations",
    "universal_relations",
    "universal_from_su",
    "universal_from_oq",
    "racah_presentation",
    "racah_relations",
    "classical_racah_residual",
    "gen_set_map",
    "ground_shift",
    "duality_pairing_check",
    "adjudicate",
    "run_suite",
]

DEFAULT_TOL = 1e-9

_Q2_GAP = Q * Q - ONE / (Q * Q)  # q^2 - q^-2
_Q_GAP = Q - ONE / Q
_BR2 = q_bracket(2)
# affine map C -> [2]_q - q (q - q^-1)^2 C taking shifted Casimirs to AW generators
_CAS_SCALE = -Q * _Q_GAP ** 2


class SuiteError(ValueError):
    """Unknown suite or parameters outside a suite's domain."""


def _qc(x, y):
    """[x, y]_q = q x y - q^-1 y x."""
    return Q * (x * y) - (ONE / Q) * (y * x)


# ---------------------------------------------------------------------------
# presentations
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class ZhedanovParams:
    """Structure constants of the K0/K1 presentation.

    ``b``, ``d0`` and ``d1`` may be scalars or central algebra elements; the
    square roots of ``c0`` and ``c1`` are supplied because Q(t) is not closed
    under square roots.
    """

    b: object
    c0: QScalar
    c1: QScalar
    d0: object
    d1: object
    sqrt_c0: QScalar
    sqrt_c1: QScalar

    def __post_init__(self):
        for name in ("c0", "c1", "sqrt_c0", "sqrt_c1"):
            object.__setattr__(self, name, QScalar.coerce(getattr(self, name)))
        if self.sqrt_c0 ** 2 != self.c0:
            raise ValueError(f"sqrt_c0^2 = {self.sqrt_c0 ** 2} differs from c0 = {self.c0}")
        if self.sqrt_c1 ** 2 != self.c1:
            raise ValueError(f"sqrt_c1^2 = {self.sqrt_c1 ** 2} differs from c1 = {self.c1}")
        if self.c0.is_zero() or self.c1.is_zero():
            raise ValueError("c0 and c1 must be nonzero")


@dataclass(frozen=True, eq=False)
class UniversalTriple:
    KA: object
    KB: object
    KC: object
    alpha: object
    beta: object
    gamma: object


@dataclass(frozen=True, eq=False)
class RacahPresentation:
    Q1: object
    Q2: object
    Q3: object
    r: QScalar
    xi1: QScalar
    xi2: QScalar
    xi3: object
    xi5: object
    xi7: object


def _k_from_ab(ka, kb, gamma):
    return (ONE / _BR2) * gamma - (ONE / _Q2_GAP) * _qc(ka, kb)


def zhedanov_to_universal(p: ZhedanovParams, K0, K1) -> UniversalTriple:
    """Rescale a K0/K1 pair to the Z3-symmetric presentation."""
    K2 = _qc(K0, K1)
    one = _one_like(K0)
    rt01 = p.sqrt_c0 * p.sqrt_c1
    ka = (-_Q2_GAP / p.sqrt_c1) * K0
    kb = (-_Q2_GAP / p.sqrt_c0) * K1
    kc = (-_Q2_GAP / rt01) * (K2 - (ONE / _Q_GAP) * _as_elem(p.b, one))
    br2sq = _BR2 ** 2
    alpha = (br2sq * _Q_GAP / (p.c0 * p.sqrt_c1)) * _as_elem(p.d0, one)
    beta = (br2sq * _Q_GAP / (p.c1 * p.sqrt_c0)) * _as_elem(p.d1, one)
    gamma = (br2sq / rt01) * _as_elem(p.b, one)
    return UniversalTriple(ka, kb, kc, alpha, beta, gamma)


def universal_to_zhedanov(u: UniversalTriple, sqrt_c0, sqrt_c1):
    """Inverse rescaling: returns ``(params, K0, K1)``."""
    sqrt_c0, sqrt_c1 = QScalar.coerce(sqrt_c0), QScalar.coerce(sqrt_c1)
    c0, c1 = sqrt_c0 ** 2, sqrt_c1 ** 2
    br2sq = _BR2 ** 2
    K0 = (-sqrt_c1 / _Q2_GAP) * u.KA
    K1 = (-sqrt_c0 / _Q2_GAP) * u.KB
    b = (sqrt_c0 * sqrt_c1 / br2sq) * u.gamma
    d0 = (c0 * sqrt_c1 / (br2sq * _Q_GAP)) * u.alpha
    d1 = (c1 * sqrt_c0 / (br2sq * _Q_GAP)) * u.beta
    return ZhedanovParams(b, c0, c1, d0, d1, sqrt_c0, sqrt_c1), K0, K1


def zhedanov_relations(p: ZhedanovParams, K0, K1) -> dict:
    one = _one_like(K0)
    K2 = _qc(K0, K1)
    b = _as_elem(p.b, one)
    return {
        "zh-12": _qc(K1, K2) - b * K1 - p.c0 * K0 - _as_elem(p.d0, one),
        "zh-20": _qc(K2, K0) - b * K0 - p.c1 * K1 - _as_elem(p.d1, one),
    }


def universal_relations(u: UniversalTriple) -> dict:
    inv = ONE / _Q2_GAP
    c = ONE / _BR2
    return {
        "aw-AB": inv * _qc(u.KA, u.KB) + u.KC - c * u.gamma,
        "aw-BC": inv * _qc(u.KB, u.KC) + u.KA - c * u.alpha,
        "aw-CA": inv * _qc(u.KC, u.KA) + u.KB - c * u.beta,
    }


def _centrality(u: UniversalTriple) -> dict:
    out = {}
    for cname in ("alpha", "beta", "gamma"):
        for kname in ("KA", "KB"):
            out[f"[{cname},{kname}]"] = commutator(getattr(u, cname), getattr(u, kname))
    return out


def _one_like(x):
    if isinstance(x, AlgebraElement):
        return identity()
    return focknum.LAZY.one()


def _as_elem(c, one):
    if isinstance(c, (int, Fraction, QScalar)):
        return QScalar.coerce(c) * one
    return c


def _su_window(first: int, gens):
    """Shifted intermediate Casimirs C_{...} on three consecutive couples."""
    def cs(lo, hi):
        r = (first + lo - 1, first + hi - 1)
        return _CAS_SCALE * intermediate_casimir(r, gens) + _BR2 * gens.one()
    return {
        "1": cs(1, 1), "2": cs(2, 2), "3": cs(3, 3),
        "12": cs(1, 2), "23": cs(2, 3), "123": cs(1, 3),
    }


def _assemble(c: dict) -> UniversalTriple:
    # Each constant pairs with the K over the same couples: alpha with the
    # {1,2} data, beta with {2,3}, gamma with {1,3}.
    alpha = c["1"] * c["2"] + c["3"] * c["123"]
    beta = c["2"] * c["3"] + c["1"] * c["123"]
    gamma = c["1"] * c["3"] + c["2"] * c["123"]
    ka, kb = c["12"], c["23"]
    return UniversalTriple(ka, kb, _k_from_ab(ka, kb, gamma), alpha, beta, gamma)


@lru_cache(maxsize=None)
def universal_from_su(first_couple: int = 1, gens=EXACT) -> UniversalTriple:
    """AW(3) from U_q(su(1,1)) intermediate Casimirs on couples
    ``first_couple .. first_couple + 2``."""
    if first_couple < 1:
        raise ValueError("couple index must be >= 1")
    return _assemble(_su_window(first_couple, gens))


@lru_cache(maxsize=None)
def universal_from_oq(preset: str = DEFAULT_PRESET, first_couple: int = 1,
                      gens=EXACT) -> UniversalTriple:
    """AW(3) from the affinely shifted Lambda elements of the o_q commutant."""
    tilde_factor(preset)
    f = first_couple
    c = {}
    for key, (lo, hi) in {"1": (1, 1), "2": (2, 2), "3": (3, 3),
                          "12": (1, 2), "23": (2, 3), "123": (1, 3)}.items():
        c[key] = lambda_tilde((f + lo - 1, f + hi - 1), None, preset, gens)
    return _assemble(c)


@lru_cache(maxsize=None)
def racah_presentation(gens=EXACT) -> RacahPresentation:
    def C(r):
        return intermediate_casimir(r, gens)
    c1, c2, c3, c123 = C((1, 1)), C((2, 2)), C((3, 3)), C((1, 3))
    q1, q2 = C((1, 2)), C((2, 3))
    r = -_Q_GAP ** 2
    xi = ONE + ONE / (Q * Q)
    xi3 = (-r) * (c1 * c3 + c2 * c123) - xi * (c1 + c2 + c3 + c123)
    xi5 = xi * ((c2 - c3) * (c1 - c123))
    xi7 = xi * ((c2 - c1) * (c3 - c123))
    return RacahPresentation(q1, q2, commutator(q1, q2), r, xi, xi, xi3, xi5, xi7)


def racah_relations(p: RacahPresentation) -> dict:
    """Both cubic relations; {x, y} = xy + yx."""
    anti = p.Q1 * p.Q2 + p.Q2 * p.Q1
    return {
        "racah-23": (commutator(p.Q2, p.Q3) - p.r * (p.Q2 * p.Q1 * p.Q2) - p.xi1 * anti
                     - p.xi2 * (p.Q2 * p.Q2) - p.xi3 * p.Q2 - p.xi5),
        "racah-31": (commutator(p.Q3, p.Q1) - p.r * (p.Q1 * p.Q2 * p.Q1) - p.xi1 * (p.Q1 * p.Q1)
                     - p.xi2 * anti - p.xi3 * p.Q1 - p.xi7),
    }


@lru_cache(maxsize=None)
def _classical_racah_exprs():
    lz = focknum.LAZY

    def C(r):
        return intermediate_casimir(r, lz)
    c1, c2, c3, c123 = C((1, 1)), C((2, 2)), C((3, 3)), C((1, 3))
    q1, q2 = C((1, 2)), C((2, 3))
    two = QScalar.coerce(2)
    xi3 = -two * (c1 + c2 + c3 + c123)
    p = RacahPresentation(q1, q2, commutator(q1, q2), QScalar.coerce(0), two, two, xi3,
                          two * ((c2 - c3) * (c1 - c123)), two * ((c2 - c1) * (c3 - c123)))
    return racah_relations(p)


def classical_racah_residual(t_value: float, cutoff: int = 6) -> float:
    """Residual of the q = 1 Racah relations (no cubic term, xi1 = xi2 = 2)
    evaluated on the q-Casimirs at ``t``; tends to 0 as t -> 1."""
    return max(focknum.residual(e, cutoff, t_value, n_sites=6)
               for e in _classical_racah_exprs().values())


def gen_set_map(r, n=None, gens=EXACT):
    """C_A = [2]_q - q (q - q^-1)^2 C^{A} for a consecutive couple range."""
    r = IndexRange.of(r)
    if n is not None and not r.within(n):
        raise ValueError(f"range {r} not contained in [1;{n}]")
    return _CAS_SCALE * intermediate_casimir(r, gens) + _BR2 * gens.one()


def ground_shift(m: int) -> QScalar:
    """Ground value of (1+q)^2 C over couples 1..m."""
    return ground_expectation((ONE + Q) ** 2 * intermediate_casimir((1, m)))


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------

@dataclass
class RelationResult:
    relation: str
    status: str
    residual: float | None
    terms: int
    ms: int


@dataclass
class VerificationReport:
    suite: str
    n: int
    mode: str
    preset: str | None
    results: list = field(default_factory=list)
    passed: bool | None = None

    def __post_init__(self):
        self.results = sorted(self.results, key=lambda r: r.relation)
        if self.passed is None:
            self.passed = all(r.status == "zero" for r in self.results)

    def to_dict(self, timing: bool = True) -> dict:
        res = []
        for r in self.results:
            d = asdict(r)
            if not timing:
                d["ms"] = 0
            res.append(d)
        return {"suite": self.suite, "n": self.n, "mode": self.mode,
                "preset": self.preset, "results": res}

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing), indent=2, sort_keys=False)

    def table(self) -> str:
        width = max([len(r.relation) for r in self.results] + [8])
        lines = [f"suite {self.suite}  n={self.n}  mode={self.mode}  preset={self.preset}"]
        for r in self.results:
            res = "" if r.residual is None else f"  residual={r.residual:.3e}"
            lines.append(f"  {r.relation:<{width}}  {r.status:<7}  terms={r.terms:<6}  {r.ms} ms{res}")
        ok = sum(r.status == "zero" for r in self.results)
        lines.append(f"{ok}/{len(self.results)} zero; {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines)


# ---------------------------------------------------------------------------
# suites
# ---------------------------------------------------------------------------

SUITES = (
    "oscillator", "su11", "howe", "oq-serre", "pluecker", "commutant",
    "aw3-universal", "aw3-central", "aw3-oq", "aw3-qracah", "duality",
    "basis-change", "normalization-adjudicate", "all",
)


def _oscillator(n, gens, cfg):
    sites = 2 * n
    out = {}
    for i in range(1, sites + 1):
        ap, am, w = gens.a_plus(i), gens.a_minus(i), gens.weight(i, 1)
        w4, one = gens.weight(i, 4), gens.one()
        out[f"w-raise[{i}]"] = w * ap - qpow(Fraction(1, 4)) * (ap * w)
        out[f"lower-w[{i}]"] = am * w - qpow(Fraction(1, 4)) * (w * am)
        out[f"q-comm[{i}]"] = am * ap - Q * (ap * am) - one
        out[f"comm[{i}]"] = commutator(am, ap) - w4
        out[f"weight-id[{i}]"] = w4 - one - (Q - ONE) * (ap * am)
        out[f"w-inverse[{i}]"] = gens.weight(i, 3) * gens.weight(i, -3) - one
        for j in range(i + 1, sites + 1):
            out[f"distinct[{i},{j}]"] = (commutator(ap, gens.a_minus(j))
                                         + commutator(am, gens.a_plus(j)))
    return out


def _triple_relations(prefix, t, out):
    for k, v in su_relations(t).items():
        out[f"{prefix}{k}"] = v
    for k, v in tilde_relations(t).items():
        out[f"{prefix}{k}"] = v
    for k, v in casimir_centrality(t).items():
        out[f"{prefix}{k}"] = v


def _su11(n, gens, cfg):
    sites = 2 * n
    out = {}
    _triple_relations("site[1]:", metaplectic_site(1, gens), out)
    for hi in range(2, sites + 1):
        _triple_relations(f"range[1;{hi}]:", coproduct_range((1, hi), gens), out)
    for hi in range(2, n + 1):
        a, b = couple_coproduct((1, hi), gens), coproduct_range((1, 2 * hi), gens)
        out[f"coassoc[1;{hi}]"] = (a.jp - b.jp) + (a.jm - b.jm)
    return out


def _howe(n, gens, cfg):
    t = coproduct_range((1, 2 * n), gens)
    out = {}
    for i in range(1, 2 * n):
        el = l_adjacent(i, gens)
        out[f"[J0,L{i},{i + 1}]"] = commutator(t.j0_op, el)
        out[f"[J+,L{i},{i + 1}]"] = commutator(t.jp, el)
        out[f"[J-,L{i},{i + 1}]"] = commutator(t.jm, el)
    return out


def _oq_serre(n, gens, cfg):
    out = dict(serre_relations(2 * n, gens))
    out.update(splitting_relations(2 * n, gens))
    return out


def _pluecker(n, gens, cfg):
    return pluecker_relations(2 * n, gens)


def _commutant(n, gens, cfg):
    out = {}
    for k in range(1, n + 1):
        el = l_adjacent(2 * k - 1, gens)
        for i in range(1, n + 1):
            out[f"[Lambda{i},L{2 * k - 1},{2 * k}]"] = commutator(lambda_single(i, gens), el)
            for j in range(i + 1, n + 1):
                out[f"[Lambda{i}{j},L{2 * k - 1},{2 * k}]"] = commutator(lambda_pair(i, j, gens), el)
        for i in range(1, n + 1):
            for j in range(i, n + 1):
                out[f"[C_[{i};{j}],L{2 * k - 1},{2 * k}]"] = commutator(gen_set_map((i, j), n, gens), el)
    for m in range(1, n + 1):
        out[f"window[1;{m}]"] = lambda_range((1, m), n, gens) - casimir_full((1, 2 * m), gens)
    return out


def _need_three(n, suite):
    if n < 3:
        raise SuiteError(f"suite {suite} requires n >= 3 couples, got n = {n}")


def _aw3_universal(n, gens, cfg):
    _need_three(n, "aw3-universal")
    out = {}
    for f in range(1, n - 1):
        for k, v in universal_relations(universal_from_su(f, gens)).items():
            out[f"[{f};{f + 2}]:{k}"] = v
    return out


def _aw3_central(n, gens, cfg):
    _need_three(n, "aw3-central")
    out = {}
    for f in range(1, n - 1):
        for k, v in _centrality(universal_from_su(f, gens)).items():
            out[f"[{f};{f + 2}]:{k}"] = v
    return out


def _aw3_oq(n, gens, cfg, preset=None):
    _need_three(n, "aw3-oq")
    preset = preset or cfg.get("preset") or DEFAULT_PRESET
    oq = universal_from_oq(preset, 1, gens)
    su = universal_from_su(1, gens)
    out = {k: v for k, v in universal_relations(oq).items()}
    out["KA(oq)-KA(su)"] = oq.KA - su.KA
    out["KB(oq)-KB(su)"] = oq.KB - su.KB
    for k in range(1, n + 1):
        el = l_adjacent(2 * k - 1, gens)
        out[f"[KA,L{2 * k - 1},{2 * k}]"] = commutator(oq.KA, el)
        out[f"[KB,L{2 * k - 1},{2 * k}]"] = commutator(oq.KB, el)
    return out


def _aw3_qracah(n, gens, cfg):
    _need_three(n, "aw3-qracah")
    return racah_relations(racah_presentation(gens))


def _duality(n, gens, cfg):
    out = {}
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            out[f"duality[{i};{j}]"] = ((ONE + Q) ** 2 * intermediate_casimir((i, j), gens)
                                        - lambda_range((i, j), n, gens)
                                        + range_shift((i, j)) * gens.one())
    return out


def _basis_change(n, gens, cfg):
    out = {}
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            out[f"inverse[{i},{j}]"] = lambda_pair_from_ranges(i, j, gens) - lambda_pair(i, j, gens)
    return out


_BUILDERS = {
    "oscillator": _oscillator,
    "su11": _su11,
    "howe": _howe,
    "oq-serre": _oq_serre,
    "pluecker": _pluecker,
    "commutant": _commutant,
    "aw3-universal": _aw3_universal,
    "aw3-central": _aw3_central,
    "aw3-oq": _aw3_oq,
    "aw3-qracah": _aw3_qracah,
    "duality": _duality,
    "basis-change": _basis_change,
}

# scalar checks decided exactly in either mode
_SCALAR_CHECKS = {
    "duality": lambda n: {f"ground[1;{m}]": ground_shift(m) + range_shift((1, m))
                          for m in range(1, n + 1)},
}


def _relations(suite: str, n: int, mode: str, cfg: dict) -> dict:
    gens = EXACT if mode == "exact" else focknum.LAZY
    if suite == "normalization-adjudicate":
        _need_three(n, suite)
        out = {}
        for preset in sorted(PRESETS):
            for k, v in universal_relations(universal_from_oq(preset, 1, gens)).items():
                out[f"{preset}:{k}"] = v
        return out
    return _BUILDERS[suite](n, gens, cfg)


def _decide(value, mode: str, n: int, cfg: dict):
    """Returns (status, residual, terms)."""
    if isinstance(value, QScalar):
        return ("zero" if value.is_zero() else "nonzero"), None, 0 if value.is_zero() else 1
    if mode == "exact":
        return ("zero" if value.is_zero() else "nonzero"), None, len(value)
    if isinstance(value, AlgebraElement):
        value = focknum.Leaf(value)
    res = focknum.residual(value, cfg.get("cutoff"), cfg.get("t", focknum.DEFAULT_T), n_sites=2 * n)
    return ("zero" if res <= cfg.get("tol", DEFAULT_TOL) else "nonzero"), res, 0


def _timed(rid, value_fn, mode, n, cfg):
    t0 = time.perf_counter()
    status, res, terms = _decide(value_fn(), mode, n, cfg)
    return RelationResult(rid, status, res, terms, int((time.perf_counter() - t0) * 1000))


def _table(suite, n, mode, cfg) -> dict:
    """relation id -> zero-argument callable producing the element."""
    rels = _relations(suite, n, mode, cfg)
    table = {k: (lambda v=v: v) for k, v in rels.items()}
    for k, v in _SCALAR_CHECKS.get(suite, lambda n: {})(n).items():
        table[k] = (lambda v=v: v)
    return table


def _worker(args):
    suite, n, mode, cfg, rid = args
    return _timed(rid, _table(suite, n, mode, cfg)[rid], mode, n, cfg)


def _threads(threads):
    if threads is None:
        env = os.environ.get("QHOWE_THREADS")
        threads = int(env) if env else (os.cpu_count() or 1)
    return max(1, int(threads))


def run_suite(suite: str, n: int = 3, mode: str = "exact", preset: str | None = None,
              cutoff: int | None = None, t: float = focknum.DEFAULT_T,
              tol: float = DEFAULT_TOL, threads: int | None = 1) -> VerificationReport:
    """Run one suite (or ``all``) and return a deterministic report."""
    if suite not in SUITES:
        raise SuiteError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    if mode not in ("exact", "numeric"):
        raise SuiteError(f"mode must be exact or numeric, got {mode!r}")
    if preset is not None:
        try:
            tilde_factor(preset)
        except ValueError as exc:
            raise SuiteError(str(exc)) from None
    if n < 0:
        raise SuiteError("n must be non-negative")
    if mode == "numeric" and cutoff is not None and cutoff < 1:
        raise SuiteError("cutoff must be positive")
    cfg = {"preset": preset, "cutoff": cutoff, "t": t, "tol": tol}
    if suite == "all":
        return _run_all(n, mode, preset, cfg, threads)
    if suite == "normalization-adjudicate":
        return adjudicate(n, mode, cfg, threads)
    if n == 0:
        return VerificationReport(suite, n, mode, preset, [])
    return _run(suite, n, mode, preset, cfg, threads)


def _run(suite, n, mode, preset, cfg, threads) -> VerificationReport:
    table = _table(suite, n, mode, cfg)
    threads = _threads(threads)
    if threads > 1 and len(table) > 1:
        with ProcessPoolExecutor(threads) as ex:
            results = list(ex.map(_worker, [(suite, n, mode, cfg, rid) for rid in sorted(table)]))
    else:
        results = [_timed(rid, table[rid], mode, n, cfg) for rid in sorted(table)]
    shown_preset = preset if suite in ("aw3-oq",) else None
    if suite == "aw3-oq" and shown_preset is None:
        shown_preset = DEFAULT_PRESET
    return VerificationReport(suite, n, mode, shown_preset, results)


def adjudicate(n: int = 3, mode: str = "exact", cfg: dict | None = None,
               threads: int | None = 1) -> VerificationReport:
    """Universal relations of the Lambda-side triple under every preset.

    ``passed`` is true iff exactly one preset makes all relations vanish.
    """
    cfg = dict(cfg or {})
    _need_three(n, "normalization-adjudicate")
    rep = _run("normalization-adjudicate", n, mode, None, cfg, threads)
    winners = passing_presets(rep)
    return VerificationReport(rep.suite, n, mode, None, rep.results, passed=len(winners) == 1)


def passing_presets(report: VerificationReport) -> list:
    ok = {p: True for p in PRESETS}
    for r in report.results:
        p = r.relation.split(":", 1)[0]
        if p in ok and r.status != "zero":
            ok[p] = False
    return sorted(p for p, v in ok.items() if v)


def duality_pairing_check(n: int, mode: str = "exact", **kw) -> VerificationReport:
    return run_suite("duality", n, mode, **kw)


def _run_all(n, mode, preset, cfg, threads) -> VerificationReport:
    results = []
    passed = True
    for suite in SUITES:
        if suite == "all":
            continue
        if suite.startswith("aw3") or suite == "normalization-adjudicate":
            if n < 3:
                continue
        rep = run_suite(suite, n, mode, preset, cfg["cutoff"], cfg["t"], cfg["tol"], threads)
        passed = passed and rep.passed
        for r in rep.results:
            results.append(RelationResult(f"{suite}/{r.relation}", r.status, r.residual, r.terms, r.ms))
    return VerificationReport("all", n, mode, preset, results, passed=passed)
