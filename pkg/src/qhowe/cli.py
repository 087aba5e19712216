"""Command line: ``qhowe verify|print|adjudicate|residual|spectrum``.

Exit codes: 0 when everything checked passes, 1 when something fails,
2 for usage errors.
"""
from __future__ import annotations

import argparse
import json
import os
import re
import sys
from fractions import Fraction

from . import awverify, focknum
from .awverify import SUITES, SuiteError
from .oqn import DEFAULT_PRESET, PRESETS, l_extended, lambda_pair, lambda_range, lambda_single
from .qscalar import ONE, Q, qpow
from .uqsu import intermediate_casimir

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

# Largest n run without --deep.  Exact suites stay in seconds up to n = 6;
# numeric cost grows with the number of Fock states on 2n sites.
SHALLOW_LIMIT = {"exact": 6, "numeric": 4}


class UsageError(Exception):
    pass


def _idx(text: str) -> list:
    """'13' -> [1, 3]; '[10][11]' -> [10, 11]."""
    if text.startswith("["):
        parts = re.findall(r"\[(\d+)\]", text)
        if "".join(f"[{p}]" for p in parts) != text:
            raise UsageError(f"bad index list {text!r}")
        return [int(p) for p in parts]
    if not text.isdigit():
        raise UsageError(f"bad index list {text!r}")
    return [int(c) for c in text]


def _need(cond, msg):
    if not cond:
        raise UsageError(msg)


def element(name: str, n: int = 3, preset: str = DEFAULT_PRESET):
    """Resolve an element id such as ``L12``, ``L13+``, ``Lambda12``,
    ``LambdaRange13``, ``C13``, ``KA`` or ``Q3``."""
    sites = 2 * n
    m = re.fullmatch(r"L(\d+|(?:\[\d+\])+)([+-])?", name)
    if m:
        ix = _idx(m.group(1))
        _need(len(ix) == 2, f"{name}: L needs two site indices")
        i, k = ix
        _need(1 <= i < k <= sites, f"{name}: need 1 <= i < k <= {sites}")
        sign = -1 if m.group(2) == "-" else 1
        _need(k == i + 1 or m.group(2), f"{name}: non-adjacent L needs a sign suffix + or -")
        return l_extended(i, k, sign)
    m = re.fullmatch(r"LambdaRange(\d+|(?:\[\d+\])+)", name)
    if m:
        ix = _idx(m.group(1))
        _need(len(ix) == 2, f"{name}: range needs two couple indices")
        _need(1 <= ix[0] <= ix[1] <= n, f"{name}: range not inside [1;{n}]")
        return lambda_range(tuple(ix), n)
    m = re.fullmatch(r"Lambda(\d+|(?:\[\d+\])+)", name)
    if m:
        ix = _idx(m.group(1))
        _need(all(1 <= i <= n for i in ix), f"{name}: couple index outside 1..{n}")
        if len(ix) == 1:
            return lambda_single(ix[0])
        if len(ix) == 2:
            _need(ix[0] < ix[1], f"{name}: need i < j")
            return lambda_pair(*ix)
        if len(ix) == 3 and ix == [1, 2, 3]:
            return lambda_range((1, 3), n)
        raise UsageError(f"{name}: use LambdaRange for longer ranges")
    m = re.fullmatch(r"C(\d+|(?:\[\d+\])+)", name)
    if m:
        ix = _idx(m.group(1))
        _need(len(ix) == 2 and 1 <= ix[0] <= ix[1] <= n,
              f"{name}: need a couple range C[i][j] inside [1;{n}]")
        return intermediate_casimir(tuple(ix))
    if name in ("KA", "KB", "KC"):
        _need(n >= 3, f"{name} needs n >= 3")
        return getattr(awverify.universal_from_oq(preset), name)
    if name in ("Q1", "Q2", "Q3"):
        _need(n >= 3, f"{name} needs n >= 3")
        return getattr(awverify.racah_presentation(), name)
    raise UsageError(f"unknown element id {name!r}")


def _threads(args):
    if args.threads is not None:
        return args.threads
    env = os.environ.get("QHOWE_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise UsageError(f"QHOWE_THREADS must be an integer, got {env!r}") from None
    return os.cpu_count() or 1


def _write_json(path, payload):
    if path == "-":
        sys.stdout.write(payload + "\n")
        return
    with open(path, "w") as fh:
        fh.write(payload + "\n")


def _scalar_identity_line() -> str:
    lhs = Q * (Q - ONE / Q) ** 2 / (ONE + Q) ** 2
    rhs = (qpow(Fraction(1, 2)) - qpow(Fraction(-1, 2))) ** 2
    return (f"context: q(q-q^-1)^2/(1+q)^2 = {lhs}; (q^1/2-q^-1/2)^2 = {rhs}; "
            f"{'equal' if lhs == rhs else 'DIFFERENT'}")


def cmd_verify(args) -> int:
    if args.suite is None:
        raise UsageError("verify needs --suite")
    limit = SHALLOW_LIMIT[args.mode]
    if args.n > limit and not args.deep:
        raise UsageError(f"n = {args.n} in {args.mode} mode is a long run; pass --deep")
    try:
        rep = awverify.run_suite(args.suite, args.n, args.mode, args.preset, args.cutoff,
                                 args.t, args.tol, _threads(args))
    except focknum.CutoffError as exc:
        raise UsageError(str(exc)) from None
    except SuiteError as exc:
        raise UsageError(str(exc)) from None
    print(rep.table())
    if args.suite == "normalization-adjudicate":
        _print_adjudication(rep)
    if args.json:
        _write_json(args.json, rep.to_json())
    return EXIT_OK if rep.passed else EXIT_FAIL


def _print_adjudication(rep):
    winners = awverify.passing_presets(rep)
    print(_scalar_identity_line())
    if len(winners) == 1:
        print(f"passing preset: {winners[0]}")
    else:
        print(f"ANOMALY: passing presets {winners or 'none'}; expected exactly one")


def cmd_adjudicate(args) -> int:
    if args.n < 3:
        raise UsageError("adjudicate needs n >= 3")
    rep = awverify.adjudicate(args.n, args.mode, {"cutoff": args.cutoff, "t": args.t,
                                                  "tol": args.tol}, _threads(args))
    print(rep.table())
    _print_adjudication(rep)
    if args.json:
        _write_json(args.json, rep.to_json())
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_print(args) -> int:
    e = element(args.name, args.n, args.preset or DEFAULT_PRESET)
    print(e)
    return EXIT_OK


def cmd_residual(args) -> int:
    e = element(args.name, args.n, args.preset or DEFAULT_PRESET)
    try:
        r = focknum.residual(e, args.cutoff, args.t, n_sites=2 * args.n)
    except focknum.CutoffError as exc:
        raise UsageError(str(exc)) from None
    print(f"{r:.6e}")
    if args.json:
        _write_json(args.json, json.dumps({"element": args.name, "cutoff": args.cutoff,
                                           "t": args.t, "residual": r}))
    return EXIT_OK


def cmd_spectrum(args) -> int:
    e = element(args.name, args.n, args.preset or DEFAULT_PRESET)
    cutoff = args.cutoff or 4
    try:
        vals = focknum.spectrum(e, cutoff, args.t, n_sites=2 * args.n)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.json:
        _write_json(args.json, json.dumps(vals))
    else:
        for v in vals:
            print(f"{v:.12g}")
    return EXIT_OK


def _common(p, *, suite=False):
    p.add_argument("--n", type=int, default=3, help="number of couples (2n sites), default 3")
    p.add_argument("--mode", choices=("exact", "numeric"), default="exact")
    p.add_argument("--cutoff", type=int, default=None, help="Fock cutoff D (default reach + 2)")
    p.add_argument("--t", type=float, default=focknum.DEFAULT_T, help="sample point t = q^(1/4)")
    p.add_argument("--tol", type=float, default=awverify.DEFAULT_TOL)
    p.add_argument("--preset", choices=sorted(PRESETS), default=None,
                   help=f"Lambda normalization (default {DEFAULT_PRESET})")
    p.add_argument("--json", metavar="PATH", default=None, help="write JSON ('-' for stdout)")
    p.add_argument("--threads", type=int, default=None,
                   help="worker processes (env QHOWE_THREADS; default all cores)")
    p.add_argument("--deep", action="store_true", help="allow long runs (large n)")
    if suite:
        p.add_argument("--suite", choices=SUITES, default=None)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qhowe", description="Exact q-oscillator identity checker")
    sub = ap.add_subparsers(dest="command", required=True)
    p = sub.add_parser("verify", help="run a relation suite")
    _common(p, suite=True)
    p.set_defaults(func=cmd_verify)
    p = sub.add_parser("print", help="print an element in canonical form")
    p.add_argument("name")
    _common(p)
    p.set_defaults(func=cmd_print)
    p = sub.add_parser("adjudicate", help="decide the Lambda normalization preset")
    _common(p)
    p.set_defaults(func=cmd_adjudicate)
    p = sub.add_parser("residual", help="Fock residual of an element")
    p.add_argument("name")
    _common(p)
    p.set_defaults(func=cmd_residual)
    p = sub.add_parser("spectrum", help="eigenvalues of an element on the truncation")
    p.add_argument("name")
    _common(p)
    p.set_defaults(func=cmd_spectrum)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.n < 0:
        print("error: --n must be non-negative", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
