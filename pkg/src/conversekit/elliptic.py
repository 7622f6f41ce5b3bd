"""Elliptic / parabolic / hyperbolic classification of Moebius matrices,
the M(q, s, r) construction and decomposition of Gamma0(N) elements.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Iterable, Optional

from .mat2 import ProjMat
from .modgroup import Gamma0, is_member
from .numtheory import is_prime, prime_divisors

IDENTITY = "identity"
PARABOLIC = "parabolic"
HYPERBOLIC = "hyperbolic"
ELLIPTIC_FINITE = "elliptic-finite"
ELLIPTIC_INFINITE = "elliptic-infinite"

# Niven: rational 2cos(pi*theta) with theta rational and |.| < 2 is 0 or +-1.
_SL2_ORDER = {Fraction(-1): 3, Fraction(0): 4, Fraction(1): 6}


class CannotNormalizeError(ValueError):
    """det of the canonical representative is not a square and trace != 0."""


@dataclass(frozen=True)
class EllipticClass:
    kind: str
    trace: Fraction  # normalized: trace of the SL2(R) lift
    fixed_point: Optional[complex] = None
    order: Optional[int] = None  # order of the SL2 lift when elliptic-finite

    @property
    def cos_angle(self) -> Fraction:
        """cos(pi*theta) where the lift rotates by e^{+-i pi theta}."""
        return self.trace / 2

    @property
    def psl2_order(self) -> Optional[int]:
        return None if self.order is None else (self.order // 2 if self.order % 2 == 0 else self.order)

    def __str__(self) -> str:
        s = f"{self.kind}, normalized trace {self.trace}"
        if self.order is not None:
            s += f", order {self.order} in SL2"
        if self.fixed_point is not None:
            z = self.fixed_point
            s += f", fixed point {z.real:.12g}{z.imag:+.12g}i"
        return s


def normalized_trace(M: ProjMat) -> Fraction:
    det = M.det
    if M.trace == 0:
        return Fraction(0)
    r = isqrt(det)
    if r * r != det:
        raise CannotNormalizeError(f"{M}: det {det} is not a square")
    return Fraction(M.trace, r)


def fixed_point(M: ProjMat) -> complex:
    """Fixed point in the upper half plane of an elliptic matrix."""
    s = math.sqrt(M.det)
    a, b, c, d = (x / s for x in M.entries)
    disc = (a + d) ** 2 - 4.0
    if disc >= 0 or c == 0:
        raise ValueError(f"{M} is not elliptic")
    z = complex(a - d, math.sqrt(-disc)) / (2 * c)
    return z if z.imag > 0 else z.conjugate()


def fixed_point_residual(M: ProjMat, z: complex) -> float:
    s = math.sqrt(M.det)
    a, b, c, d = (x / s for x in M.entries)
    return abs(c * z * z + (d - a) * z - b)


def classify(M: ProjMat) -> EllipticClass:
    tr = normalized_trace(M)
    if M.is_pm_identity():
        return EllipticClass(IDENTITY, tr)
    if abs(tr) > 2:
        return EllipticClass(HYPERBOLIC, tr)
    if abs(tr) == 2:
        return EllipticClass(PARABOLIC, tr)
    z = fixed_point(M)
    if tr in _SL2_ORDER:
        return EllipticClass(ELLIPTIC_FINITE, tr, z, _SL2_ORDER[tr])
    return EllipticClass(ELLIPTIC_INFINITE, tr, z)


def first_scalar_power(M: ProjMat, limit: int = 100) -> Optional[int]:
    """Smallest j <= limit with M^j in the I or -I class, by repeated products."""
    P = M
    for j in range(1, limit + 1):
        if P.is_pm_identity():
            return j
        P = P * M
    return None


@dataclass
class HypothesisCheck:
    passed: bool
    details: list[str]


def same_fixed_point(E1: ProjMat, E2: ProjMat) -> bool:
    """Exact test whether E2 fixes the (non-real) fixed point of E1.

    The fixed point of E1 has minimal polynomial c z^2 + (d-a) z - b over Q, so
    E2 fixes it iff E2's fixed-point quadratic is proportional to E1's.
    """
    u = (E1.c, E1.d - E1.a, -E1.b)
    v = (E2.c, E2.d - E2.a, -E2.b)
    return (
        u[0] * v[1] - u[1] * v[0] == 0
        and u[0] * v[2] - u[2] * v[0] == 0
        and u[1] * v[2] - u[2] * v[1] == 0
    )


def moebius(M: ProjMat, z: complex) -> complex:
    return (M.a * z + M.b) / (M.c * z + M.d)


def check_lemma_hypotheses(k: int, E1: ProjMat, E2: Optional[ProjMat] = None) -> HypothesisCheck:
    """Hypotheses of the two-circles (k=0) and one-circle (k=1) lemmas."""
    if k not in (0, 1):
        raise ValueError("k must be 0 or 1")
    if k == 0 and E2 is None:
        raise ValueError("E2 is required when k = 0")
    cls1 = classify(E1)
    details = [f"E1 = {E1}: {cls1}"]
    ok = cls1.kind == ELLIPTIC_INFINITE
    if k == 0 and ok:
        exact_same = same_fixed_point(E1, E2)
        z = cls1.fixed_point
        moved = abs(moebius(E2, z) - z)
        numeric_same = moved < 1e-9
        details.append(f"E2 = {E2}: |E2.a - a| = {moved:.3e}")
        if exact_same != numeric_same:
            details.append("exact and numeric fixed-point tests disagree")
            ok = False
        elif exact_same:
            details.append("E2 fixes the fixed point of E1")
            ok = False
    return HypothesisCheck(ok, details)


# --------------------------------------------------------------------------
# M(q, s, r)


@dataclass(frozen=True)
class MqsrResult:
    q: int
    s: int
    N: int
    r: int
    r_tilde: int
    A_plus: ProjMat
    A_minus: ProjMat
    M: ProjMat
    classification: EllipticClass


def make_M_qsr(q: int, s: int, N: int, r: int | None = None, r_tilde: int | None = None) -> MqsrResult:
    """Build A_+-, M = A_+^-1 P(2r/s) A_- P(2r/q) and check its closed form.

    Default factorization qs = 1 + r * r_tilde * N uses r_tilde = 1.
    """
    if q == s or not (is_prime(q) and is_prime(s)):
        raise ValueError(f"q={q}, s={s} must be distinct primes")
    if math.gcd(q, N) != 1 or math.gcd(s, N) != 1:
        raise ValueError(f"q, s must be coprime to N={N}")
    if (q * s - 1) % N:
        raise ValueError(f"qs = {q * s} is not 1 mod {N}")
    if r is None and r_tilde is None:
        r_tilde = 1
    if r is None:
        r = (q * s - 1) // (r_tilde * N)
    elif r_tilde is None:
        r_tilde = (q * s - 1) // (r * N)
    if q * s != 1 + r * r_tilde * N:
        raise ValueError(f"qs != 1 + r r~ N for r={r}, r~={r_tilde}")
    Ap = ProjMat(q, r, r_tilde * N, s)
    Am = ProjMat(q, -r, -r_tilde * N, s)
    M = Ap.inverse() * ProjMat(1, Fraction(2 * r, s), 0, 1) * Am * ProjMat(1, Fraction(2 * r, q), 0, 1)
    closed = ProjMat(1, Fraction(2 * r, q), Fraction(-2 * r_tilde * N, s), Fraction(-3) + Fraction(4, q * s))
    if M != closed:
        raise AssertionError(f"M(q,s,r) = {M} differs from closed form {closed}")
    return MqsrResult(q, s, N, r, r_tilde, Ap, Am, M, classify(M))


# --------------------------------------------------------------------------
# decomposition of Gamma0(N) elements


@dataclass(frozen=True)
class Decomposition:
    trivial: bool
    u: int
    v: int
    q: Optional[int] = None
    s: Optional[int] = None
    r: Optional[int] = None
    cN: int = 0


def _shifts(bound: int, allow_zero: bool) -> Iterable[int]:
    if allow_zero:
        yield 0
    for k in range(1, bound + 1):
        yield k
        yield -k


def decompose_gamma(
    gamma: ProjMat,
    N: int,
    excluded: Optional[set[int]] = None,
    bound: int = 10**4,
    allow_zero_shift: bool = True,
) -> Decomposition:
    """Write gamma = P_u (q r; cN s) P_v with q, s distinct primes outside ``excluded``.

    Search order is |u| then |v| ascending, positive before negative.
    ``allow_zero_shift=False`` skips u = 0 and v = 0.
    """
    if not is_member(gamma, Gamma0(N)):
        raise ValueError(f"{gamma} is not in Gamma0({N})")
    excluded = set(excluded) if excluded is not None else ({2} | set(prime_divisors(N)))
    a, b, cN, d = gamma.entries
    if cN == 0:
        return Decomposition(True, b * a, 0, cN=0)

    def good(p: int) -> bool:
        return p > 1 and p not in excluded and is_prime(p)

    for u in _shifts(bound, allow_zero_shift):
        q = a - u * cN
        if not good(q):
            continue
        for v in _shifts(bound, allow_zero_shift):
            s = d - v * cN
            if s == q or not good(s):
                continue
            r = b - a * v + u * v * cN - u * d
            rebuilt = ProjMat(1, u, 0, 1) * ProjMat(q, r, cN, s) * ProjMat(1, v, 0, 1)
            if rebuilt != gamma or q * s - r * cN != 1:
                raise AssertionError(f"reconstruction failed for {gamma}")
            return Decomposition(False, u, v, q, s, r, cN)
    raise LookupError(f"no decomposition of {gamma} with |u|, |v| <= {bound}")
