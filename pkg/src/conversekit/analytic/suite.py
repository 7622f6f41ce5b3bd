"""Property-based analytic check suite and its evaluation grid."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Optional

import numpy as np
from scipy.special import kv

from ..mat2 import ProjMat
from ..report import Check, check, SKIP
from .mellin import h0_at_eps_nu, h_identity_residual, mellin_residual
from .series import (
    AnalyticParams,
    CoefficientSeries,
    eisenstein_series,
    eval_expansion,
    laplace_ratio,
    transform_residual,
)
from .special import whittaker

H_MODES = ("both", "dual", "literal")


@dataclass
class EvalGrid:
    """Sample points and tolerances; the default grid is generated from ``seed``."""

    seed: int = 20240
    h_points: list = field(default_factory=list)  # (s, w)
    nus: tuple = (0.3j,)
    z_points: list = field(default_factory=list)
    tol_h: float = 1e-8
    tol_mellin: float = 1e-5
    tol_bessel: float = 1e-8
    tol_h0: float = 1e-10
    tol_eisenstein: float = 1e-6
    tol_laplace: float = 1e-4
    series: Optional[CoefficientSeries] = None

    def __post_init__(self):
        rng = np.random.default_rng(self.seed)
        if not self.h_points:
            self.h_points = [
                (complex(rng.uniform(-2, 3), rng.uniform(-2, 2)), float(rng.uniform(-3, 3))) for _ in range(60)
            ]
            self.h_points += [(complex(0.3, 1.0), 0.0), (complex(2.5, -0.4), 0.0)]
        if not self.z_points:
            self.z_points = [complex(rng.uniform(-0.5, 0.5), rng.uniform(0.8, 1.5)) for _ in range(10)]

    @classmethod
    def from_file(cls, path) -> "EvalGrid":
        data = json.loads(Path(path).read_text())
        g = data.get("grid", {})
        kw = {}
        if "seed" in g:
            kw["seed"] = int(g["seed"])
        if "h_points" in g:
            kw["h_points"] = [(complex(a, b), float(w)) for a, b, w in g["h_points"]]
        if "z_points" in g:
            kw["z_points"] = [complex(x, y) for x, y in g["z_points"]]
        if "nu" in g:
            kw["nus"] = tuple(complex(*v) if isinstance(v, list) else complex(v) for v in g["nu"])
        for key in ("tol_h", "tol_mellin", "tol_bessel", "tol_h0", "tol_eisenstein", "tol_laplace"):
            if key in g:
                kw[key] = float(g[key])
        if "series" in data:
            s = data["series"]
            nu = s.get("nu", [0, 0.25])
            params = AnalyticParams(
                eps=int(s.get("eps", 1)),
                nu=complex(*nu) if isinstance(nu, list) else complex(nu),
                N=int(s.get("N", 1)),
                k=int(s.get("k", 1)),
                sigma=float(s.get("sigma", 1.0)),
            )
            a = [complex(*x) if isinstance(x, list) else complex(x) for x in s["a"]]
            kw["series"] = CoefficientSeries(a, params)
        return cls(**kw)


# the three fixed Mellin test series: (coefficients, eps, nu, alpha, w, s)
MELLIN_CASES = (
    ([1.0], 1, 0.25j, Fraction(0), 0.0, complex(4, 0)),
    ([1.0, 0.5, -0.3], 1, 0.25j, Fraction(1, 5), 0.3, complex(4, 0.7)),
    ([0.8, -0.2, 0.1, 0.05], -1, 0.4j, Fraction(2, 7), -1.1, complex(4.5, -1.3)),
)


def h_identity_checks(grid: EvalGrid, mode: str) -> list[Check]:
    out = []
    for nu in grid.nus:
        for eps in (1, -1):
            params = AnalyticParams(eps=eps, nu=nu)
            worst, skipped = 0.0, 0
            for s, w in grid.h_points:
                for ell in (0, 1):
                    r = h_identity_residual(s, w, params, ell, mode)
                    if r is None:
                        skipped += 1
                    else:
                        worst = max(worst, r)
            det = f"max residual over {2 * len(grid.h_points) - skipped} samples ({skipped} at gamma poles)"
            out.append(check(f"h-identity-{mode}[eps={eps:+d},nu={nu}]", worst < grid.tol_h, det, worst, grid.tol_h))
    return out


def h0_checks(grid: EvalGrid) -> list[Check]:
    worst = 0.0
    for nu in grid.nus:
        for eps in (1, -1):
            params = AnalyticParams(eps=eps, nu=nu)
            for w in (-2.0, -0.5, 0.0, 0.7, 3.0):
                worst = max(worst, abs(h0_at_eps_nu(w, params) - 1))
    return [check("h0-at-eps-nu", worst < grid.tol_h0, "max |H^0(eps nu, w) - 1|", worst, grid.tol_h0)]


def mellin_checks(grid: EvalGrid) -> list[Check]:
    out = []
    cases = list(MELLIN_CASES)
    for i, (a, eps, nu, alpha, w, s) in enumerate(cases, 1):
        series = CoefficientSeries(a, AnalyticParams(eps=eps, nu=nu))
        r = mellin_residual(series, float(alpha), w, s)
        out.append(check(f"mellin[{i}]", r < grid.tol_mellin, f"alpha={alpha}, w={w}, s={s}", r, grid.tol_mellin))
    if grid.series is not None:
        sr = grid.series.params.sigma + 3
        r = mellin_residual(grid.series, 0.2, 0.3, complex(sr + 0.5, 0.5))
        out.append(check("mellin[file]", r < grid.tol_mellin, "series from grid file", r, grid.tol_mellin))
    return out


def whittaker_bessel_checks(grid: EvalGrid) -> list[Check]:
    """W_{0,mu}(2y) = sqrt(2y/pi) K_mu(y)."""
    worst = 0.0
    for mu in (0.25, 0.0, 0.7):
        for y in (1.0, 5.0, 20.0):
            ref = math.sqrt(2 * y / math.pi) * kv(mu, y)
            worst = max(worst, abs(whittaker(0, mu, 2 * y) - ref) / abs(ref))
    return [check("whittaker-bessel", worst < grid.tol_bessel, "max relative difference", worst, grid.tol_bessel)]


def eisenstein_checks(grid: EvalGrid) -> list[Check]:
    E = eisenstein_series(0.75, 30)
    S = ProjMat(0, -1, 1, 0)
    out = []
    for z in (complex(0.3, 0.4), complex(-0.2, 0.9)):
        r = transform_residual(E, S, z, "unitary", 0, y_min=0.2).residual
        out.append(check(f"eisenstein-S[z={z}]", r < grid.tol_eisenstein, "weight-0 test vector", r, grid.tol_eisenstein))
    return out


def laplace_checks(grid: EvalGrid) -> list[Check]:
    rng = np.random.default_rng(grid.seed + 1)
    a = list(rng.uniform(-0.5, 0.5, 4))
    a[0] = 1.0
    params = AnalyticParams(eps=1, nu=0.3j)
    series = CoefficientSeries(a, params)
    f = lambda z: eval_expansion(series, z)  # noqa: E731
    ratios = [laplace_ratio(f, z, k=1) for z in grid.z_points]
    mean = sum(ratios) / len(ratios)
    spread = max(abs(r - mean) for r in ratios)
    det = f"common eigenvalue ~ {mean.real:.8f}{mean.imag:+.1e}i (1/4 - nu^2 = {0.25 - params.nu**2:.8f})"
    return [check("laplace-ratio-constancy", spread < grid.tol_laplace, det, spread, grid.tol_laplace)]


def run_suite(grid: Optional[EvalGrid] = None, h_mode: str = "both", tol: Optional[float] = None) -> list[Check]:
    """All analytic checks in canonical order; ``tol`` overrides every tolerance."""
    grid = grid or EvalGrid()
    if tol is not None:
        for key in ("tol_h", "tol_mellin", "tol_bessel", "tol_h0", "tol_eisenstein", "tol_laplace"):
            setattr(grid, key, tol)
    if h_mode not in H_MODES:
        raise ValueError(f"h_mode must be one of {H_MODES}")
    out: list[Check] = []
    for mode in ("literal", "dual"):
        if h_mode in (mode, "both"):
            out += h_identity_checks(grid, mode)
        else:
            out.append(Check(f"h-identity-{mode}", SKIP, "not requested"))
    out += h0_checks(grid)
    out += mellin_checks(grid)
    out += whittaker_bessel_checks(grid)
    out += eisenstein_checks(grid)
    out += laplace_checks(grid)
    return out
