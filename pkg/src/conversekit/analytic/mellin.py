"""Mellin transform of the weight-1 expansion along rays and the H-functions."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Optional

from scipy.integrate import quad

from .series import AnalyticParams, CoefficientSeries, eval_expansion
from .special import AccuracyError, gamma_R, hyp2f1, inv_gamma_R, PoleError


def _sign(ell: int) -> int:
    # <l>: + for even l, - for odd l
    return 1 if ell % 2 == 0 else -1


def gamma_pm(s: complex, sign: int, eps: int, nu: complex, k: int = 1) -> complex:
    """gamma^{+-}(s) = G_R(s + nu + (1 -+ (-1)^k eps)/2) G_R(s - nu + (1 -+ eps)/2)."""
    return gamma_R(s + nu + (1 - sign * (-1) ** k * eps) / 2) * gamma_R(s - nu + (1 - sign * eps) / 2)


def inv_gamma_pm(s: complex, sign: int, eps: int, nu: complex, k: int = 1) -> complex:
    return inv_gamma_R(s + nu + (1 - sign * (-1) ** k * eps) / 2) * inv_gamma_R(s - nu + (1 - sign * eps) / 2)


def _hyp_params(s: complex, ell: int, eps: int, nu: complex):
    sg = (-1) ** ell
    a0 = (s + nu + (1 + sg * eps) / 2) / 2
    b0 = (s - nu + (1 - sg * eps) / 2) / 2
    a1 = (s + nu + (3 - sg * eps) / 2) / 2
    b1 = (s - nu + (3 + sg * eps) / 2) / 2
    return a0, b0, a1, b1


def H(s: complex, w: float, ell: int, eps: int, nu: complex) -> complex:
    """H^l(s, w) for the weight-1 gamma factors."""
    s = complex(s)
    a0, b0, a1, b1 = _hyp_params(s, ell, eps, nu)
    ratio = gamma_pm(s + 1, _sign(ell + 1), eps, nu) * inv_gamma_pm(s, _sign(ell), eps, nu)
    x = -w * w
    first = hyp2f1(a0, b0, 0.5, x)
    second = 2j * math.pi * w * ratio * hyp2f1(a1, b1, 1.5, x) if w else 0
    return (-1j) ** ell * (first + second)


def h_identity_sides(s: complex, w: float, ell: int, eps: int, nu: complex, mode: str = "dual"):
    """Both sides of H^l(1-s, w) = i (|w+i|/(w+i)) (1+w^2)^{s-1/2} H^l(s, -w).

    ``literal`` uses the same (eps, nu) on both sides; ``dual`` takes nu -> -nu
    on the right, which is the form that holds.
    """
    if mode not in ("dual", "literal"):
        raise ValueError("mode must be dual or literal")
    lhs = H(1 - s, w, ell, eps, nu)
    nu_r = -nu if mode == "dual" else nu
    factor = 1j * abs(w + 1j) / (w + 1j) * (1 + w * w) ** (s - 0.5)
    return lhs, factor * H(s, -w, ell, eps, nu_r)


def h_identity_residual(s: complex, w: float, params: AnalyticParams, ell: int, mode: str = "dual") -> Optional[float]:
    """Absolute residual of the H identity; None (skip) at gamma poles."""
    try:
        lhs, rhs = h_identity_sides(complex(s), w, ell, params.eps, params.nu, mode)
    except PoleError:
        return None
    return abs(lhs - rhs)


def h0_at_eps_nu(w: float, params: AnalyticParams) -> complex:
    return H(params.eps * params.nu, w, 0, params.eps, params.nu)


# --------------------------------------------------------------------------
# Mellin formula


def cos_derivative(ell: int, x: float) -> float:
    return math.cos(x + ell * math.pi / 2)


def mellin_rhs(series: CoefficientSeries, alpha: float, w: float, s: complex) -> complex:
    p = series.params
    total = 0j
    for n, an in enumerate(series.a, 1):
        if an == 0:
            continue
        inner = 0j
        for ell in (0, 1):
            c = cos_derivative(ell, 2 * math.pi * n * alpha)
            if c == 0:
                continue
            a0, b0, a1, b1 = _hyp_params(s, ell, p.eps, p.nu)
            term = gamma_pm(s, _sign(ell), p.eps, p.nu) * hyp2f1(a0, b0, 0.5, -w * w)
            if w:
                term += 2j * math.pi * w * gamma_pm(s + 1, _sign(ell + 1), p.eps, p.nu) * hyp2f1(a1, b1, 1.5, -w * w)
            inner += (-1j) ** ell * c * term
        total += an * n ** (-s) * inner
    return total


def _integration_window(series: CoefficientSeries, s: complex, w: float) -> tuple[float, float]:
    # upper end: e^{-2 pi y} y^{Re s} below 1e-16 of its peak scale
    sr = s.real
    y_hi = max(4.0, (40 + sr * math.log(max(sr, 1.0) + 10)) / (2 * math.pi))
    # lower end: integrand ~ y^{Re s - 1/2 - |Re nu|}
    expo = sr - 0.5 - abs(complex(series.params.nu).real)
    y_lo = 10 ** (-14 / max(expo, 1.0))
    return y_lo, y_hi


def mellin_lhs(series: CoefficientSeries, alpha: float, w: float, s: complex) -> complex:
    if series.constant_terms:
        series = CoefficientSeries(series.a, series.params, [], series.mode, series.mu)
    y_lo, y_hi = _integration_window(series, s, w)

    def integrand(y: float) -> complex:
        return eval_expansion(series, complex(w * y + alpha, y)) * y ** (s - 1.5)

    cache: dict[float, complex] = {}

    def cached(y: float) -> complex:
        v = cache.get(y)
        if v is None:
            v = cache[y] = integrand(y)
        return v

    pts = [y_lo, 0.05, 0.2, 0.5, 1.0, 2.0, y_hi]
    pts = sorted({p for p in pts if y_lo <= p <= y_hi})
    re = im = 0.0
    for lo, hi in zip(pts, pts[1:]):
        r, er = quad(lambda t: cached(t).real, lo, hi, limit=200, epsabs=1e-13, epsrel=1e-11)
        i, ei = quad(lambda t: cached(t).imag, lo, hi, limit=200, epsabs=1e-13, epsrel=1e-11)
        if not (math.isfinite(r) and math.isfinite(i)):
            raise AccuracyError("quadrature produced a non-finite value", math.inf)
        re += r
        im += i
    return complex(re, im)


@dataclass
class MellinResult:
    lhs: complex
    rhs: complex

    @property
    def residual(self) -> float:
        return abs(self.lhs - self.rhs) / (1 + abs(self.rhs))


def mellin_check(series: CoefficientSeries, alpha: float, w: float, s: complex) -> MellinResult:
    if series.mode != "k1":
        raise ValueError("the Mellin formula is for the weight-1 expansion")
    if series.n_max > 10:
        raise ValueError("truncate the series to n_max <= 10 for quadrature")
    if s.real < series.params.sigma + 3:
        raise ValueError(f"need Re s >= sigma + 3 = {series.params.sigma + 3}")
    return MellinResult(mellin_lhs(series, alpha, w, s), mellin_rhs(series, alpha, w, s))


def mellin_residual(series: CoefficientSeries, alpha: float, w: float, s: complex) -> float:
    return mellin_check(series, alpha, w, s).residual
