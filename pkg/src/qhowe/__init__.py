"""Exact normal-form engine for multi-site q-oscillator algebras.

Operators are sparse sums of normal-ordered monomials with coefficients in
Q(q^(1/4)); identities are decided by checking that a normal form is empty,
and cross-checked against a floating-point Fock-space oracle.
"""
from .qscalar import ONE, Q, T, ZERO, PoleError, QScalar, q_bracket, q_paren, qpow, tpow
from .oscalg import (EXACT, AlgebraElement, Cartan, commutator, gen_a_minus, gen_a_plus,
                     gen_weight, ground_expectation, identity, normal_form, q_commutator,
                     support_degree)
from .uqsu import IndexRange, SuTriple, coproduct_range, intermediate_casimir, metaplectic_site
from .oqn import (DEFAULT_PRESET, PRESETS, casimir_full, l_adjacent, l_extended, lambda_range,
                  lambda_tilde)
from .focknum import LAZY, residual, spectrum
from .awverify import SUITES, VerificationReport, run_suite

__version__ = "0.1.0"
