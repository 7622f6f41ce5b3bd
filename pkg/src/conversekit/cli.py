"""Command-line front end.  Exit codes: 0 all checks pass, 1 some check fails, 2 usage or input error."""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .mat2 import InvalidTokenError, MatrixParseError, ProjMat, eval_word, find_word, load_matrix_list, parse_word
from .report import Check, Report, check, PASS


class UsageError(Exception):
    pass


def _matrix_or_word(args) -> ProjMat:
    if args.matrix is not None:
        return ProjMat.parse(args.matrix)
    return eval_word(parse_word(args.word))


# --------------------------------------------------------------------------
# handlers: each returns a list of checks


def cmd_verify_tables(args) -> list[Check]:
    from .groupring.tables import verify_tables

    if args.simplified and args.level != 20:
        raise UsageError("--simplified only applies to --level 20")
    return verify_tables(args.level, simplified=args.simplified, errata=args.errata)


def cmd_verify_certificates(args) -> list[Check]:
    from .groupring.certificates import check_certificate, load_certificate, shipped_certificate_paths

    paths = [Path(p) for p in args.file] if args.file else [Path(str(p)) for p in shipped_certificate_paths()]
    out = []
    for p in paths:
        c = load_certificate(p)
        res = check_certificate(c)
        out.append(check(f"certificate[{c.meta.get('name', p.stem)}]", res.valid, res.diagnostic))
    return out


def cmd_classify(args) -> list[Check]:
    from .elliptic import CannotNormalizeError, classify, first_scalar_power

    M = _matrix_or_word(args)
    try:
        cls = classify(M)
    except CannotNormalizeError as exc:
        return [check("classify", False, f"{M}: {exc}")]
    power = first_scalar_power(M, 100)
    details = f"{M}: {cls}; first power in +-I up to 100: {power if power else 'none'}"
    return [Check("classify", PASS, details)]


def cmd_subgroup(args) -> list[Check]:
    from .modgroup import Flavor, SubgroupFlavor, expected_index, schreier_generators, verify_generates

    flavor = Flavor(args.flavor)
    sub = SubgroupFlavor(flavor, args.level)
    if args.action == "index":
        return [Check("index", PASS, f"[{sub}] index {expected_index(sub)}", float(expected_index(sub)))]
    if args.action == "generators":
        gens = schreier_generators(sub)
        res = verify_generates(args.level, gens, flavor=flavor)
        lines = [Check(f"generator[{i}]", PASS, str(g)) for i, g in enumerate(gens, 1)]
        return lines + [check("generates", res.generates, f"{len(gens)} Schreier generators; index {res.index_found}")]
    if not args.file:
        raise UsageError("check-generates needs --file")
    mats = load_matrix_list(args.file)
    res = verify_generates(args.level, mats, flavor=flavor)
    details = f"[{sub}] index {res.index_found} (expected {res.expected_index})"
    if res.minus_identity:
        details += f"; -I: {res.minus_identity}"
    if res.diagnostics:
        details += "; " + "; ".join(res.diagnostics)
    return [check("generates", res.generates, details)]


def cmd_chars(args) -> list[Check]:
    from .characters import TwistSpec, additive_twist_residual, gauss_sum, primitive_chars
    from .numtheory import is_prime

    q = args.modulus
    if q < 1:
        raise UsageError("--modulus must be positive")
    if args.action == "gauss":
        out = []
        for psi in primitive_chars(q):
            tau = gauss_sum(psi)
            r1 = abs(abs(tau) ** 2 - q)
            r2 = abs(tau * gauss_sum(psi.conj()) - psi.parity * q)
            r = max(r1, r2)
            out.append(check(f"gauss[{psi.designation}]", r < 1e-10, f"tau = {tau:.12g}, parity {psi.parity:+d}", r, 1e-10))
        if not out:
            out.append(Check("gauss", "skip", f"no primitive characters mod {q}"))
        return out
    if not is_prime(q):
        raise UsageError("twist-identity needs a prime modulus")
    worst = 0.0
    for a in range(1, q):
        for m in range(4):
            spec = TwistSpec(q, a, m)
            for n in range(1, args.max_n + 1):
                worst = max(worst, additive_twist_residual(spec, n))
    return [check(f"twist-identity[q={q}]", worst < 1e-10, f"a < {q}, m <= 3, n <= {args.max_n}", worst, 1e-10)]


def cmd_special_prime(args) -> list[Check]:
    from .characters import check_special_prime, special_prime
    from .modgroup import Gamma1, schreier_generators

    gens = load_matrix_list(args.gens) if args.gens else schreier_generators(Gamma1(args.level))
    res = special_prime(args.level, gens, args.modulus_rule, args.bound, adapt=args.adapt)
    src = args.gens or f"Schreier generators of Gamma1({args.level})"
    if res.status == "found":
        bad = check_special_prime(res.q, res.generators, args.level, args.modulus_rule)
        details = f"q = {res.q} for {src}"
        if res.adapted:
            details += " after Nielsen adaptation; adapted list: " + " | ".join(map(str, res.generators))
        if bad:
            details += "; violated: " + "; ".join(map(str, bad))
        out = [check("special-prime", not bad, details)]
        if res.adapted and res.conflict:
            a, b = res.conflict
            out.append(Check("original-list", "skip", f"infeasible: {a} conflicts with {b}"))
        return out
    if res.status == "infeasible":
        a, b = res.conflict
        return [check("special-prime", False, f"infeasible CRT system for {src}: {a} conflicts with {b}")]
    return [check("special-prime", False, f"no admissible q <= {args.bound}; " + "; ".join(res.notes))]


def cmd_analytic(args) -> list[Check]:
    from .analytic.suite import EvalGrid, run_suite

    grid = EvalGrid.from_file(args.grid) if args.grid else EvalGrid()
    return run_suite(grid, h_mode=args.h_mode, tol=args.tol)


def cmd_decompose(args) -> list[Check]:
    from .elliptic import decompose_gamma

    g = ProjMat.parse(args.matrix)
    d = decompose_gamma(g, args.level, bound=args.bound, allow_zero_shift=not args.no_zero_shift)
    if d.trivial:
        return [Check("decompose", PASS, f"{g} = P{d.u} (upper triangular)")]
    rebuilt = ProjMat(1, d.u, 0, 1) * ProjMat(d.q, d.r, d.cN, d.s) * ProjMat(1, d.v, 0, 1)
    details = f"{g} = P{d.u} * ({d.q},{d.r};{d.cN},{d.s}) * P{d.v}; q = {d.q}, s = {d.s}"
    return [check("decompose", rebuilt == g, details)]


def cmd_find_word(args) -> list[Check]:
    target = ProjMat.parse(args.target)
    alphabet = [t.base() for t in parse_word(args.alphabet)]
    w = find_word(target, alphabet, args.max_len)
    if w is None:
        return [check("find-word", False, f"no word of length <= {args.max_len} gives {target}")]
    ok = eval_word(w) == target
    return [check("find-word", ok, f"{target} = {w} (length {len(w)})")]


# --------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", metavar="PATH", help="write the JSON report to PATH ('-' for stdout)")

    p = argparse.ArgumentParser(prog="conversekit", description=__doc__)
    p.add_argument("--version", action="version", version=f"conversekit {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="exact table and certificate checks")
    vsub = verify.add_subparsers(dest="what", required=True)
    vt = vsub.add_parser("tables", parents=[common])
    vt.add_argument("--level", type=int, required=True, choices=(11, 18, 20, 24))
    vt.add_argument("--simplified", action="store_true")
    vt.add_argument("--errata", action="store_true", help="certify the corrected explicit generator list")
    vt.set_defaults(func=cmd_verify_tables)
    vc = vsub.add_parser("certificates", parents=[common])
    vc.add_argument("--file", action="append", help="certificate file (repeatable; default: all shipped)")
    vc.set_defaults(func=cmd_verify_certificates)

    cl = sub.add_parser("classify", parents=[common])
    g = cl.add_mutually_exclusive_group(required=True)
    g.add_argument("--matrix")
    g.add_argument("--word")
    cl.set_defaults(func=cmd_classify)

    sg = sub.add_parser("subgroup", parents=[common])
    sg.add_argument("action", choices=("index", "generators", "check-generates"))
    sg.add_argument("--level", type=int, required=True)
    sg.add_argument("--flavor", choices=("gamma0", "gamma1"), default="gamma0")
    sg.add_argument("--file")
    sg.set_defaults(func=cmd_subgroup)

    ch = sub.add_parser("chars", parents=[common])
    ch.add_argument("action", choices=("gauss", "twist-identity"))
    ch.add_argument("--modulus", type=int, required=True)
    ch.add_argument("--max-n", type=int, default=200)
    ch.set_defaults(func=cmd_chars)

    sp = sub.add_parser("special-prime", parents=[common])
    sp.add_argument("--level", type=int, required=True)
    sp.add_argument("--gens")
    sp.add_argument("--modulus-rule", choices=("nC", "literal"), default="nC")
    sp.add_argument("--bound", type=int, required=True)
    sp.add_argument("--adapt", action="store_true", help="allow Nielsen moves on the generating set")
    sp.set_defaults(func=cmd_special_prime)

    an = sub.add_parser("analytic")
    asub = an.add_subparsers(dest="what", required=True)
    su = asub.add_parser("suite", parents=[common])
    su.add_argument("--grid")
    su.add_argument("--tol", type=float)
    su.add_argument("--h-mode", choices=("both", "dual", "literal"), default="both")
    su.set_defaults(func=cmd_analytic)

    de = sub.add_parser("decompose", parents=[common])
    de.add_argument("--level", type=int, required=True)
    de.add_argument("--matrix", required=True)
    de.add_argument("--bound", type=int, default=10**4)
    de.add_argument("--no-zero-shift", action="store_true")
    de.set_defaults(func=cmd_decompose)

    fw = sub.add_parser("find-word", parents=[common])
    fw.add_argument("--target", required=True)
    fw.add_argument("--alphabet", required=True)
    fw.add_argument("--max-len", type=int, required=True)
    fw.set_defaults(func=cmd_find_word)
    return p


_INPUT_ERRORS = (UsageError, MatrixParseError, InvalidTokenError, OSError, ValueError, LookupError)


def run(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        checks = args.func(args)
    except _INPUT_ERRORS as exc:
        print(f"conversekit: error: {exc}", file=sys.stderr)
        return 2
    report = Report(argv, checks, __version__)
    if args.json == "-":
        sys.stdout.write(report.dumps())
    else:
        print(report.render())
        if args.json:
            Path(args.json).write_text(report.dumps())
    return report.exit_code


def main() -> None:
    sys.exit(run())
