"""Coefficient series, Euler-product expansion, truncated expansions and slash actions."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

from ..mat2 import ProjMat
from ..numtheory import factorize, primes_upto
from .special import gamma_factors, whittaker


@dataclass(frozen=True)
class AnalyticParams:
    eps: int = 1
    nu: complex = 0.25j
    N: int = 1
    k: int = 1
    sigma: float = 1.0
    C: float = 1.0
    allow_nu_zero: bool = False

    def __post_init__(self):
        if self.eps not in (1, -1):
            raise ValueError("eps must be +1 or -1")
        if not self.allow_nu_zero and self.nu == 0:
            raise ValueError("nu = 0 needs allow_nu_zero=True")

    @property
    def excluded_primes(self) -> set[int]:
        return {2} | set(factorize(self.N)) if self.N > 1 else {2}


MODES = ("k1", "eisenstein", "holomorphic")


@dataclass
class CoefficientSeries:
    """a_1..a_n (index 0 is a_1) plus power terms c * y^e for the constant term.

    Negative-index coefficients are never stored: a_{-n} = eps * nu * a_n.
    """

    a: list[complex]
    params: AnalyticParams = field(default_factory=AnalyticParams)
    constant_terms: list[tuple[complex, complex]] = field(default_factory=list)
    mode: str = "k1"
    mu: Optional[complex] = None  # Whittaker index for eisenstein mode

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")

    @property
    def n_max(self) -> int:
        return len(self.a)

    def negative(self, n: int) -> complex:
        return self.params.eps * self.params.nu * self.a[n - 1]

    def growth_ok(self) -> bool:
        return all(abs(x) <= self.params.C * n**self.params.sigma + 1e-12 for n, x in enumerate(self.a, 1))

    def scaled(self, c: complex) -> "CoefficientSeries":
        return CoefficientSeries(
            [c * x for x in self.a], self.params, [(c * a, e) for a, e in self.constant_terms], self.mode, self.mu
        )

    @classmethod
    def from_residues(cls, a, params: AnalyticParams, residue: complex = 0) -> "CoefficientSeries":
        """k = 1 series whose constant term is -residue * y^{1/2 - eps nu}."""
        terms = [(-residue, 0.5 - params.eps * params.nu)] if residue else []
        return cls(list(a), params, terms)


# --------------------------------------------------------------------------
# Euler products


@dataclass
class EulerExpansion:
    coeffs: list  # coeffs[n-1] = a_n
    meta: dict


def euler_expand(
    ap: Mapping[int, complex],
    N: int,
    n_max: int,
    variant: str = "maass",
    k: int = 2,
    convention: str = "literal",
) -> EulerExpansion:
    """Multiplicative coefficients from prime data.

    maass: a_{p^{m+1}} = a_p a_{p^m} - a_{p^{m-1}} for p not dividing N.
    holomorphic: the same with a_{p^{m-1}} weighted by p^{k+1} ("literal") or
    p^{k-1} ("classical"); p || N gives a_{p^m} = p^{m(k/2-1)}.
    p || N gives 1 in the maass variant; p^2 | N gives 0 for m >= 1.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    if variant not in ("maass", "holomorphic"):
        raise ValueError("variant must be maass or holomorphic")
    if convention not in ("literal", "classical"):
        raise ValueError("convention must be literal or classical")
    primes = primes_upto(n_max)
    missing = [p for p in primes if N % p and p not in ap]
    if missing:
        raise ValueError(f"missing a_p for primes {missing}")
    ppow: dict[int, list] = {}
    for p in primes:
        m_max = int(math.log(n_max, p) + 1e-9)
        vals = [1]
        if N % p == 0:
            if N % (p * p) == 0:
                vals += [0] * m_max
            elif variant == "maass":
                vals += [1] * m_max
            else:
                base = p ** (k // 2 - 1) if k >= 2 else 1 / p ** (1 - k // 2)
                vals += [base**m for m in range(1, m_max + 1)]
        else:
            t = 1
            if variant == "holomorphic":
                t = p ** (k + 1) if convention == "literal" else p ** (k - 1)
            vals.append(ap[p])
            for m in range(1, m_max):
                vals.append(ap[p] * vals[m] - t * vals[m - 1])
        ppow[p] = vals
    coeffs = []
    for n in range(1, n_max + 1):
        v = 1
        for p, e in factorize(n).items() if n > 1 else []:
            v *= ppow[p][e]
        coeffs.append(v)
    meta = {"variant": variant, "N": N}
    if variant == "holomorphic":
        meta.update(k=k, convention=convention, recursion_weight=f"p^{k + 1 if convention == 'literal' else k - 1}")
    return EulerExpansion(coeffs, meta)


# --------------------------------------------------------------------------
# evaluation


def e(x: float) -> complex:
    return cmath.exp(2j * math.pi * x)


def eval_expansion(series: CoefficientSeries, z: complex) -> complex:
    """f(z) = constant terms + truncated Fourier-Whittaker sum.

    k1: a_n/sqrt(pi n) (W_{1/2,nu}(4 pi n y) e(nx) + eps nu W_{-1/2,nu}(4 pi n y) e(-nx)).
    eisenstein: the same shape with W_{0,mu} and a_{-n} = a_n (weight 0 test vector).
    holomorphic: sum a_n e(n z).
    """
    x, y = z.real, z.imag
    if y <= 0:
        raise ValueError("z must lie in the upper half plane")
    total = sum((c * y**ex for c, ex in series.constant_terms), 0j)
    p = series.params
    for n, an in enumerate(series.a, 1):
        if an == 0:
            continue
        if series.mode == "holomorphic":
            total += an * e(n * z)
            continue
        Y = 4 * math.pi * n * y
        if series.mode == "k1":
            total += an / math.sqrt(math.pi * n) * (
                whittaker(0.5, p.nu, Y) * e(n * x) + p.eps * p.nu * whittaker(-0.5, p.nu, Y) * e(-n * x)
            )
        else:
            total += an / math.sqrt(math.pi * n) * whittaker(0, series.mu, Y) * 2 * math.cos(2 * math.pi * n * x)
    return total


def truncation_bound(series: CoefficientSeries, y: float) -> float:
    """Crude tail bound from the e^{-2 pi n y} decay of the Whittaker terms."""
    n = series.n_max + 1
    q = math.exp(-2 * math.pi * y)
    p = series.params
    return p.C * (n ** (p.sigma + 1)) * q**n / max(1 - q, 1e-300)


# --------------------------------------------------------------------------
# slash actions


def moebius(g: ProjMat, z: complex) -> complex:
    return (g.a * z + g.b) / (g.c * z + g.d)


def slash(f, g: ProjMat, z: complex, action: str = "unitary", k: int = 0) -> complex:
    """(f|g)(z) for the unitary weight-k or the holomorphic weight-k action."""
    j = g.c * z + g.d
    if action == "unitary":
        return cmath.exp(-1j * k * cmath.phase(j)) * f(moebius(g, z))
    if action == "holomorphic":
        return g.det ** (k / 2) * j ** (-k) * f(moebius(g, z))
    raise ValueError("action must be unitary or holomorphic")


@dataclass
class TransformResult:
    residual: float
    y_min: float
    tolerance_hint: float


def transform_residual(
    series: CoefficientSeries,
    g: ProjMat,
    z: complex,
    action: str = "unitary",
    k: int = 0,
    y_min: float = 0.2,
) -> TransformResult:
    """|(f|g)(z) - f(z)| / (1 + |f(z)|)."""
    w = moebius(g, z)
    lo = min(z.imag, w.imag)
    if lo < y_min:
        raise ValueError(f"Im z or Im gz below {y_min}; truncation unreliable, raise y or lower y_min")
    f = lambda u: eval_expansion(series, u)  # noqa: E731
    fz = f(z)
    val = slash(f, g, z, action, k)
    return TransformResult(abs(val - fz) / (1 + abs(fz)), lo, truncation_bound(series, lo))


def fricke_residual(f_series: CoefficientSeries, g_series: CoefficientSeries, N: int, z: complex) -> float:
    """|f(z) - (iz/|z|) g(-1/(Nz))|."""
    lhs = eval_expansion(f_series, z)
    rhs = 1j * z / abs(z) * eval_expansion(g_series, -1 / (N * z))
    return abs(lhs - rhs)


# --------------------------------------------------------------------------
# completed L-functions


@dataclass
class CompletedL:
    value: Optional[complex]
    gamma_arguments: tuple
    tail_bound: float
    pole: Optional[complex] = None


def completed_L(series: CoefficientSeries, psi, s: complex, variant: str = "thm1", k: int = 1) -> CompletedL:
    p = series.params
    if s.real < p.sigma + 2:
        raise ValueError(f"Re s must be >= sigma + 2 = {p.sigma + 2}")
    gf = gamma_factors(s, p.eps, p.nu, psi.parity, variant, k)
    L = sum(psi(n) * an * n ** (-s) for n, an in enumerate(series.a, 1))
    n = series.n_max
    tail = p.C * n ** (p.sigma + 1 - s.real) / (s.real - p.sigma - 1)
    if gf.values is None:
        return CompletedL(None, gf.arguments, tail, gf.pole)
    return CompletedL(gf.product * L, gf.arguments, tail)


# --------------------------------------------------------------------------
# Laplacian


def laplace_ratio(f, z: complex, k: int = 1, h: float = 1e-2) -> complex:
    """(Delta_k f)(z) / f(z) with fourth-order central differences."""

    def d2(g, t0):
        return (-g(t0 + 2 * h) + 16 * g(t0 + h) - 30 * g(t0) + 16 * g(t0 - h) - g(t0 - 2 * h)) / (12 * h * h)

    def d1(g, t0):
        return (-g(t0 + 2 * h) + 8 * g(t0 + h) - 8 * g(t0 - h) + g(t0 - 2 * h)) / (12 * h)

    x, y = z.real, z.imag
    fx = lambda t: f(complex(t, y))  # noqa: E731
    fy = lambda t: f(complex(x, t))  # noqa: E731
    lap = -(y**2) * (d2(fx, x) + d2(fy, y)) + 1j * k * y * d1(fx, x)
    return lap / f(z)


def sigma_power(n: int, s: complex) -> complex:
    return sum(d**s for d in range(1, n + 1) if n % d == 0)


def eisenstein_series(s: float, n_max: int = 30) -> CoefficientSeries:
    """Completed weight-0 Eisenstein series E*(z, s) as a test vector.

    Constant term xi(2s) y^s + xi(2-2s) y^{1-s}; a_n = sqrt(pi) n^{s-1/2} sigma_{1-2s}(n).
    """
    from scipy.special import zeta

    def xi(t):
        return math.pi ** (-t / 2) * math.gamma(t / 2) * zeta(t)

    a = [math.sqrt(math.pi) * n ** (s - 0.5) * sigma_power(n, 1 - 2 * s).real for n in range(1, n_max + 1)]
    params = AnalyticParams(eps=1, nu=s - 0.5, k=0, allow_nu_zero=True)
    consts = [(xi(2 * s), s), (xi(2 - 2 * s), 1 - s)]
    return CoefficientSeries(a, params, consts, mode="eisenstein", mu=s - 0.5)
