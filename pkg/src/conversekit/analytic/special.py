"""Gamma factors, Gauss 2F1 on x <= 0, and Whittaker functions W_{kappa,mu}."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.integrate import solve_ivp
from scipy.special import gamma as _gamma
from scipy.special import rgamma as _rgamma


class PoleError(ArithmeticError):
    def __init__(self, where: complex, what: str = "gamma factor"):
        super().__init__(f"{what} has a pole at {where}")
        self.where = where


class AccuracyError(ArithmeticError):
    def __init__(self, msg: str, achieved: float):
        super().__init__(f"{msg} (achieved {achieved:.2e})")
        self.achieved = achieved


def _is_pole(x: complex) -> bool:
    return abs(x.imag) < 1e-14 and x.real <= 0 and abs(x.real - round(x.real)) < 1e-14


def gamma_R(s: complex) -> complex:
    s = complex(s)
    if _is_pole(s / 2):
        raise PoleError(s, "Gamma_R")
    return complex(math.pi ** (-s / 2) * _gamma(s / 2))


def inv_gamma_R(s: complex) -> complex:
    """1 / Gamma_R(s); entire, zero at the poles of Gamma_R."""
    s = complex(s)
    return complex(math.pi ** (s / 2) * _rgamma(s / 2))


def gamma_C(s: complex) -> complex:
    s = complex(s)
    if _is_pole(s):
        raise PoleError(s, "Gamma_C")
    return complex((2 * math.pi) ** (-s) * _gamma(s))


VARIANTS = ("thm1", "thm2", "holomorphic")


@dataclass(frozen=True)
class GammaFactors:
    variant: str
    arguments: tuple[complex, ...]  # the Gamma_R (or Gamma_C) arguments
    values: Optional[tuple[complex, ...]]
    pole: Optional[complex] = None

    @property
    def product(self) -> complex:
        if self.values is None:
            raise PoleError(self.pole)
        out = 1 + 0j
        for v in self.values:
            out *= v
        return out


def gamma_shifts(eps: int, nu: complex, psi_parity: int, variant: str, k: int = 1) -> tuple[complex, ...]:
    """Shifts c_j with factors Gamma_R(s + c_j)."""
    if variant == "thm1":
        return ((1 + psi_parity * eps) / 2 + nu, (1 - psi_parity * eps) / 2 - nu)
    if variant == "thm2":
        return ((1 - (-1) ** k * psi_parity * eps) / 2 + nu, (1 - psi_parity * eps) / 2 - nu)
    if variant == "holomorphic":
        return (0,)
    raise ValueError(f"variant must be one of {VARIANTS}")


def gamma_factors(
    s: complex, eps: int, nu: complex, psi_parity: int = 1, variant: str = "thm1", k: int = 1
) -> GammaFactors:
    """Gamma factors of the completed L-function; poles are reported, not raised."""
    args = tuple(complex(s) + c for c in gamma_shifts(eps, nu, psi_parity, variant, k))
    fn = gamma_C if variant == "holomorphic" else gamma_R
    try:
        vals = tuple(fn(a) for a in args)
    except PoleError as exc:
        return GammaFactors(variant, args, None, exc.where)
    return GammaFactors(variant, args, vals)


# --------------------------------------------------------------------------
# 2F1


def _series_2f1(a: complex, b: complex, c: complex, t: float, max_terms: int) -> complex:
    term = 1 + 0j
    total = 1 + 0j
    for n in range(max_terms):
        term *= (a + n) * (b + n) / ((c + n) * (n + 1)) * t
        total += term
        if abs(term) <= 1e-17 * abs(total) and n > 2:
            return total
        if term == 0:
            return total
    raise AccuracyError(f"2F1 series did not converge at t={t}", abs(term / total))


def hyp2f1(a: complex, b: complex, c: complex, x: float, max_terms: int = 200000) -> complex:
    """Gauss 2F1(a, b; c; x) for real x <= 0 via the Pfaff transformation."""
    c = complex(c)
    if abs(c.imag) < 1e-15 and c.real <= 0 and abs(c.real - round(c.real)) < 1e-15:
        raise ValueError(f"c = {c} is a non-positive integer")
    if x > 0:
        raise ValueError("hyp2f1 is implemented for x <= 0 only")
    if x == 0:
        return 1 + 0j
    t = x / (x - 1)  # in (0, 1)
    return (1 - x) ** (-complex(a)) * _series_2f1(complex(a), c - b, c, t, max_terms)


# --------------------------------------------------------------------------
# Whittaker


def _asymptotic(kappa: float, mu: complex, y: float) -> tuple[complex, complex, float]:
    """W and W' from the large-y asymptotic series, with the size of the last used term."""
    a, b = 0.5 + mu - kappa, 0.5 - mu - kappa
    term = 1 + 0j
    s0 = 1 + 0j  # sum c_n (-y)^-n
    s1 = 0j  # d/dy of the sum
    last = 1.0
    for n in range(1, 200):
        nxt = term * (a + n - 1) * (b + n - 1) / (n * (-y))
        if abs(nxt) > abs(term):
            break
        term = nxt
        s0 += term
        s1 += -n * term / y
        last = abs(term)
        if last < 1e-18:
            break
    pref = cmath.exp(-y / 2) * y**kappa
    W = pref * s0
    dW = pref * ((-0.5 + kappa / y) * s0 + s1)
    return W, dW, last


class _WhittakerSolver:
    """Dense backward solution of the Whittaker ODE for one (kappa, mu)."""

    def __init__(self, kappa: float, mu: complex):
        self.kappa, self.mu = kappa, complex(mu)
        self.y_large = max(50.0, 10 * abs(self.mu) ** 2)
        self.y_min = math.inf
        self.sol = None
        W, dW, last = _asymptotic(kappa, self.mu, self.y_large)
        if last > 1e-13:
            raise AccuracyError("asymptotic seed not accurate enough", last)
        # integrate e^{y/2} W to keep magnitudes O(1)
        self.seed = np.array([W * math.exp(self.y_large / 2), (dW + W / 2) * math.exp(self.y_large / 2)])

    def _rhs(self, y, u):
        q = -0.25 + self.kappa / y + (0.25 - self.mu**2) / (y * y)
        # u = e^{y/2} W: u'' = u' - (1/4 + q) u ... derived from W = e^{-y/2} u
        return [u[1], u[1] - (0.25 + q) * u[0]]

    def _solve(self, y_min: float) -> None:
        self.sol = solve_ivp(
            self._rhs,
            (self.y_large, y_min),
            self.seed,
            method="DOP853",
            rtol=1e-13,
            atol=1e-300,
            dense_output=True,
        ).sol
        self.y_min = y_min

    def __call__(self, y: float) -> complex:
        if y >= self.y_large:
            return _asymptotic(self.kappa, self.mu, y)[0]
        if y < self.y_min:
            self._solve(min(y, self.y_min / 10 if math.isfinite(self.y_min) else y) * 0.5)
        u = self.sol(y)[0]
        return complex(u) * math.exp(-y / 2)


_SOLVERS: dict[tuple, _WhittakerSolver] = {}


def _solver(kappa: float, mu: complex) -> _WhittakerSolver:
    key = (float(kappa), complex(mu))
    s = _SOLVERS.get(key)
    if s is None:
        if len(_SOLVERS) > 256:
            _SOLVERS.clear()
        s = _SOLVERS[key] = _WhittakerSolver(kappa, mu)
    return s


def whittaker(kappa: float, mu: complex, y: float) -> complex:
    """W_{kappa,mu}(y) for kappa in {0, 1/2, -1/2}; stable for |Re mu| < 2."""
    if y <= 0:
        raise ValueError("y must be positive")
    if kappa not in (0, 0.5, -0.5):
        raise ValueError("kappa must be 0, 1/2 or -1/2")
    return _solver(kappa, mu)(y)


def whittaker_many(kappa: float, mu: complex, ys) -> np.ndarray:
    s = _solver(kappa, mu)
    return np.array([s(float(y)) for y in ys])
