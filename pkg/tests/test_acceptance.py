"""Acceptance criteria, one printed pass/fail line each.

Run with ``pytest tests/test_acceptance.py -v`` or ``python3 tests/test_acceptance.py``.
Where the literal criterion is unattainable because of printed data, the
literal line fails and a separately labelled line reports the corrected form.
"""

from __future__ import annotations

import random
import sys
import time
from fractions import Fraction


from conversekit.analytic.suite import EvalGrid, run_suite
from conversekit.characters import (
    TwistSpec, additive_twist_residual, check_special_prime, gauss_sum, primitive_chars, special_prime,
)
from conversekit.elliptic import ELLIPTIC_INFINITE, classify, decompose_gamma, first_scalar_power, make_M_qsr
from conversekit.groupring.certificates import check_certificate, mutate, shipped_certificates
from conversekit.groupring.tables import (
    first_table, gamma0_11, second_table, simplified_20, step_identity_checks, word_match_checks,
)
from conversekit.mat2 import A, H, J, P, Q, W, ProjMat, eval_word, find_word, make_special, parse_word
from conversekit.modgroup import Gamma1, schreier_generators, verify_generates
from conversekit.numtheory import is_prime, primes_upto

LINES: list[str] = []


def emit(label: str, ok: bool, detail: str, elapsed: float | None = None, limit: float | None = None) -> bool:
    if elapsed is not None:
        detail += f" [{elapsed:.2f} s"
        detail += f", limit {limit:g} s]" if limit is not None else "]"
        ok = ok and (limit is None or elapsed < limit)
    line = f"[{'PASS' if ok else 'FAIL'}] {label}: {detail}"
    LINES.append(line)
    print(line, file=sys.__stdout__, flush=True)
    return ok


# -- 1. table verification


def _word_matches(corrected: bool):
    t0 = time.perf_counter()
    parts, ok = [], True
    for N, want in ((18, 8), (20, 8), (24, 11)):
        checks = word_match_checks(N)
        if corrected:
            words = second_table(N)
            good = sum(a == b for a, b in zip(first_table(N, corrected=True), words))
            bad = [str(i + 1) for i, (a, b) in enumerate(zip(first_table(N, corrected=True), words)) if a != b]
        else:
            good = sum(c.status == "pass" for c in checks)
            bad = [c.id.rsplit("row", 1)[1] for c in checks if c.status != "pass"]
        ok &= good == want == len(checks)
        parts.append(f"N={N} {good}/{want}" + (f" (rows {', '.join(bad)} differ)" if bad else ""))
    return ok, "; ".join(parts), time.perf_counter() - t0


def test_ac1_table_words_match_listed_generators():
    ok, detail, dt = _word_matches(corrected=False)
    assert emit("AC1 second-table words vs literal first table (exact)", ok, detail, dt, 1.0)


def test_ac1_errata_table_words_match_corrected_generators():
    ok, detail, dt = _word_matches(corrected=True)
    assert emit("AC1 (errata) second-table words vs corrected first table", ok, detail, dt, 1.0)


# -- 2. generation certification


def _generation_lines(corrected: bool):
    cases = [(f"N={N} first table", N, first_table(N, corrected=corrected), idx) for N, idx in ((18, 36), (20, 36), (24, 48))]
    cases += [("N=20 simplified", 20, simplified_20(), 36), ("Gamma0(11) standard", 11, gamma0_11(), 12)]
    ok, parts = True, []
    worst = 0.0
    for name, N, mats, idx in cases:
        t0 = time.perf_counter()
        res = verify_generates(N, mats)
        dt = time.perf_counter() - t0
        worst = max(worst, dt)
        good = res.generates and res.index_found == idx and dt < 5
        ok &= good
        parts.append(f"{name}: index {res.index_found}/{idx}" + ("" if good else " " + "; ".join(res.diagnostics)))
    return ok, "; ".join(parts), worst


def test_ac2_generation_certification():
    ok, detail, worst = _generation_lines(corrected=False)
    assert emit("AC2 Todd-Coxeter generation (literal lists)", ok, detail + f"; slowest run {worst:.2f} s (limit 5 s)")


def test_ac2_errata_generation_certification():
    ok, detail, worst = _generation_lines(corrected=True)
    assert emit("AC2 (errata) Todd-Coxeter generation (corrected lists)", ok, detail + f"; slowest run {worst:.2f} s (limit 5 s)")


# -- 3. step identities


def _steps(skip: str):
    checks = [c for N in (11, 18, 20, 24) for c in step_identity_checks(N) if skip not in c.id]
    checks = [c for c in checks if ".step." in c.id]
    bad = [c.id for c in checks if c.status != "pass"]
    return not bad, f"{len(checks) - len(bad)}/{len(checks)} exact" + (f"; failing: {', '.join(bad)}" if bad else "")


def test_ac3_step_identities_as_printed():
    ok, detail = _steps(skip="commutator-corrected")
    assert emit("AC3 step identities (N=11 commutator as printed)", ok, detail)


def test_ac3_step_identities_corrected_commutator():
    ok, detail = _steps(skip="commutator-printed")
    assert emit("AC3 (errata) step identities (N=11 commutator with X' = (2,-1;11,-5))", ok, detail)


# -- 4. ellipticity


def _admissible_pairs(N: int):
    bad = {2} | {p for p in primes_upto(N) if N % p == 0}
    ps = [p for p in primes_upto(1000) if p not in bad]
    for q in ps:
        for s in ps:
            if q != s and q * s <= 1000 and (q * s - 1) % N == 0:
                yield q, s


def test_ac4_ellipticity():
    named = [
        ("(1,-2/3;11/2,-8/3)", ProjMat(1, Fraction(-2, 3), Fraction(11, 2), Fraction(-8, 3)), Fraction(-5, 3)),
        ("C^-1 P1/3 L20^2", eval_word(parse_word("C^-1 P1/3 L20^2")), Fraction(5, 3)),
        ("D^-1 P3/5", eval_word(parse_word("D^-1 P3/5")), Fraction(-2, 5)),
    ]
    ok, parts = True, []
    for name, M, tr in named:
        c = classify(M)
        good = c.kind == ELLIPTIC_INFINITE and c.trace == tr and first_scalar_power(M, 100) is None
        ok &= good
        parts.append(f"{name} -> {c.kind} {c.trace}")
    count = 0
    for N in (11, 18, 20, 24):
        for q, s in _admissible_pairs(N):
            res = make_M_qsr(q, s, N)
            M = res.M
            good = (
                res.classification.kind == ELLIPTIC_INFINITE
                and res.classification.trace == -2 + Fraction(4, q * s)
                and first_scalar_power(M, 100) is None
            )
            ok &= good
            count += 1
    parts.append(f"M(q,s,N) for {count} admissible (q, s, N), N in {{11,18,20,24}}, qs <= 1000: trace -2+4/(qs)")
    assert emit("AC4 ellipticity and infinite order", ok and count > 0, "; ".join(parts))


# -- 5. certificates


def test_ac5_certificates():
    certs = shipped_certificates()
    valid = sum(check_certificate(c).valid for c in certs)
    flipped = sum(not check_certificate(mutate(c, "claim")).valid for c in certs)
    flipped_w = sum(not check_certificate(mutate(c, "witness")).valid for c in certs if c.witness)
    with_w = sum(1 for c in certs if c.witness)
    ok = valid == len(certs) == flipped and flipped_w == with_w
    detail = f"{valid}/{len(certs)} valid; claim mutation flips {flipped}/{len(certs)}; witness mutation flips {flipped_w}/{with_w}"
    assert emit("AC5 certificate suite", ok, detail)


# -- 6. characters


def test_ac6_characters():
    t0 = time.perf_counter()
    tau_err = 0.0
    nprim = 0
    for q in range(1, 51):
        for psi in primitive_chars(q):
            nprim += 1
            t = gauss_sum(psi)
            tau_err = max(tau_err, abs(abs(t) ** 2 - q), abs(t * gauss_sum(psi.conj()) - psi.parity * q))
    twist_err = 0.0
    for q in (p for p in range(2, 14) if is_prime(p)):
        for a in range(1, q):
            for m in range(4):
                spec = TwistSpec(q, a, m)
                for n in range(1, 201):
                    twist_err = max(twist_err, additive_twist_residual(spec, n))
    dt = time.perf_counter() - t0
    ok = tau_err < 1e-10 and twist_err < 1e-10
    detail = f"tau identities max err {tau_err:.1e} over {nprim} primitive chars (tol 1e-10); twist residual max {twist_err:.1e} (tol 1e-10)"
    assert emit("AC6 character suite", ok, detail, dt, 10.0)


# -- 7. analytic


def _analytic(mode: str):
    t0 = time.perf_counter()
    checks = run_suite(EvalGrid(), h_mode=mode)
    dt = time.perf_counter() - t0
    checks = [c for c in checks if c.status != "skip"]
    bad = [f"{c.id} ({c.value:.1e} vs {c.tolerance:g})" for c in checks if c.status == "fail"]
    worst_h = max((c.value for c in checks if c.id.startswith("h-identity")), default=float("nan"))
    detail = f"{len(checks) - len(bad)}/{len(checks)} checks; max H-identity residual {worst_h:.1e} (tol 1e-8)"
    if bad:
        detail += "; failing: " + ", ".join(bad)
    return not bad, detail, dt


def test_ac7_analytic_suite_literal_h_identity():
    ok, detail, dt = _analytic("literal")
    assert emit("AC7 analytic suite (H identity with the same (eps, nu) on both sides)", ok, detail, dt, 60.0)


def test_ac7_analytic_suite_dual_h_identity():
    ok, detail, dt = _analytic("dual")
    assert emit("AC7 (dual) analytic suite (H identity with nu -> -nu on the right)", ok, detail, dt, 60.0)


# -- 8. decomposition


def test_ac8_decomposition():
    rng = random.Random(2024)
    t0 = time.perf_counter()
    ok, total = True, 0
    for N in (11, 18, 20, 24):
        gens = gamma0_11() if N == 11 else second_table(N)
        gens = gens + [g.inverse() for g in gens]
        for _ in range(100):
            g = ProjMat.identity()
            for _ in range(rng.randint(3, 10)):
                g = g * rng.choice(gens)
            d = decompose_gamma(g, N)
            bad = {2} | {p for p in (3, 5, 11) if N % p == 0}
            if d.trivial:
                good = g.c == 0
            else:
                rebuilt = ProjMat(1, d.u, 0, 1) * ProjMat(d.q, d.r, d.cN, d.s) * ProjMat(1, d.v, 0, 1)
                good = rebuilt == g and d.q not in bad and d.s not in bad
            ok &= good
            total += 1
    dt = time.perf_counter() - t0
    assert emit("AC8 decomposition", ok, f"{total} random elements reconstructed exactly", dt, 5.0)


# -- 9. word search


def test_ac9_word_search():
    t0 = time.perf_counter()
    target = ProjMat(7, -2, 18, -5)
    w1 = find_word(target, [Q, W(18), J(18), A], 7)
    w2 = find_word(make_special(W(4)), [P(-1), H(4)], 7)
    dt = time.perf_counter() - t0
    ok = w1 is not None and eval_word(w1) == target and len(w1) <= 7
    ok &= w2 is not None and eval_word(w2) == make_special(W(4)) and len(w2) <= 7
    assert emit("AC9 word search", ok, f"(7,-2;18,-5) = {w1}; W4 = {w2}", dt, 30.0)


# -- 10. special prime


def test_ac10_special_prime_raw_schreier_lists():
    parts, ok = [], True
    for N in (5, 7, 11):
        res = special_prime(N, schreier_generators(Gamma1(N)), bound=10**6)
        good = res.status == "found" and not check_special_prime(res.q, res.generators, N)
        ok &= good
        parts.append(f"N={N}: {res.status}" + (f" q={res.q}" if res.q else ""))
    assert emit("AC10 special prime on raw Schreier lists", ok, "; ".join(parts))


def test_ac10_special_prime_conflict_detection():
    from conversekit.numtheory import crt_pair

    parts, ok = [], True
    for N in (5, 7, 11):
        res = special_prime(N, schreier_generators(Gamma1(N)), bound=10**6)
        if res.status == "infeasible":
            a, b = res.conflict
            really = crt_pair(a.residue, a.modulus(N), b.residue, b.modulus(N)) is None
            ok &= really
            parts.append(f"N={N}: conflict {a.generator} vs {b.generator}")
        else:
            parts.append(f"N={N}: {res.status}")
    assert emit("AC10 (detection) infeasible CRT inputs named", ok, "; ".join(parts))


def test_ac10_special_prime_adapted_lists():
    parts, ok = [], True
    for N in (5, 7, 11):
        res = special_prime(N, schreier_generators(Gamma1(N)), bound=10**6, adapt=True)
        good = res.status == "found" and not check_special_prime(res.q, res.generators, N)
        ok &= good
        parts.append(f"N={N}: q={res.q} re-satisfies {len(res.congruences)} congruences")
    assert emit("AC10 (adapted) special prime after Nielsen adaptation of the Schreier lists", ok, "; ".join(parts))


if __name__ == "__main__":
    failed = 0
    for name, fn in [(n, f) for n, f in globals().items() if n.startswith("test_ac")]:
        try:
            fn()
        except AssertionError:
            failed += 1
    print(f"{len(LINES) - failed}/{len(LINES)} acceptance lines pass")
