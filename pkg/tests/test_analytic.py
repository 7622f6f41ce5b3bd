import cmath
import math

import mpmath
import pytest

from conversekit.analytic.mellin import H, h0_at_eps_nu, h_identity_residual, h_identity_sides, mellin_check, mellin_residual
from conversekit.analytic.series import (
    AnalyticParams, CoefficientSeries, completed_L, euler_expand, eval_expansion, eisenstein_series,
    laplace_ratio, transform_residual,
)
from conversekit.analytic.special import (
    PoleError, gamma_C, gamma_factors, gamma_R, hyp2f1, whittaker,
)
from conversekit.characters import enumerate_chars
from conversekit.mat2 import ProjMat

PARAMS = AnalyticParams(eps=1, nu=0.25j)


# -- gamma factors

def test_duplication():
    s = complex(2.3, 1.1)
    assert abs(gamma_R(s) * gamma_R(s + 1) - 2 * gamma_C(s)) < 1e-10 * abs(gamma_C(s))


def test_gamma_C_at_one():
    assert abs(gamma_C(1) - 1 / (2 * math.pi)) < 1e-15


def test_gamma_R_against_mpmath():
    for s in (complex(0.3, 2), complex(3.7, -1.2), complex(-1.5, 0.4)):
        ref = complex(mpmath.pi ** (-mpmath.mpc(s) / 2) * mpmath.gamma(mpmath.mpc(s) / 2))
        assert abs(gamma_R(s) - ref) < 1e-12 * abs(ref)


def test_thm2_weight0_shifts_coincide():
    gf = gamma_factors(2.0, 1, 0.3j, psi_parity=-1, variant="thm2", k=0)
    a, b = gf.arguments
    assert abs((a - 0.3j) - (b + 0.3j)) < 1e-15


def test_pole_reported():
    gf = gamma_factors(-1.5, 1, 0.5, psi_parity=1, variant="thm1")
    assert gf.values is None and gf.pole is not None
    with pytest.raises(PoleError):
        gf.product


# -- 2F1

def test_hyp2f1_trivial_cases():
    assert hyp2f1(0.3, 0.2, 1.5, 0) == 1
    assert abs(hyp2f1(0, 2.5 + 1j, 0.5, -7.0) - 1) < 1e-15


def test_hyp2f1_log():
    assert abs(hyp2f1(1, 1, 2, -1) - math.log(2)) < 1e-12


@pytest.mark.parametrize("a, b, c, x", [(0.5 + 1j, 1.2, 0.5, -0.3), (1.7, -0.4 + 0.2j, 1.5, -9.0), (2 + 0.3j, 1 - 0.3j, 1.5, -2.25)])
def test_hyp2f1_against_mpmath(a, b, c, x):
    ref = complex(mpmath.hyp2f1(a, b, c, x))
    assert abs(hyp2f1(a, b, c, x) - ref) < 1e-10 * abs(ref)


def test_hyp2f1_domain():
    with pytest.raises(ValueError):
        hyp2f1(1, 1, -2, -0.5)
    with pytest.raises(ValueError):
        hyp2f1(1, 1, 2, 0.5)


# -- Whittaker

def test_whittaker_closed_form():
    assert abs(whittaker(0.5, 0, 2.0) - math.sqrt(2) / math.e) < 1e-10
    assert abs(whittaker(0.5, 0, 2.0) - 0.5202600950228889) < 1e-12


@pytest.mark.parametrize("y", [1.0, 5.0, 20.0])
def test_whittaker_bessel(y):
    ref = math.sqrt(2 * y / math.pi) * float(mpmath.besselk(0.25, y))
    assert abs(whittaker(0, 0.25, 2 * y) - ref) < 1e-8 * ref


@pytest.mark.parametrize("kappa", [0.5, -0.5, 0])
@pytest.mark.parametrize("y", [0.3, 2.0, 11.0])
def test_whittaker_complex_index(kappa, y):
    ref = complex(mpmath.whitw(kappa, 0.3j, y))
    assert abs(whittaker(kappa, 0.3j, y) - ref) < 1e-8 * abs(ref)


def test_whittaker_growth():
    y = 80.0
    assert abs(whittaker(0.5, 0.25j, y) * math.exp(y / 2) * y ** -0.5 - 1) < 0.05


def test_whittaker_domain():
    with pytest.raises(ValueError):
        whittaker(0.5, 0.2, -1.0)


# -- Euler products and expansions

def test_euler_expand_maass():
    a = euler_expand({p: 0 for p in (2, 3, 5, 7)}, 1, 10).coeffs
    assert a[0] == 1 and a[3] == -1 and a[8] == -1
    b = euler_expand({2: 1.5, 3: -0.5, 5: 2.0, 7: 0.1, 11: 0, 13: 0, 17: 0, 19: 0, 23: 0}, 3, 27).coeffs
    assert all(b[3 ** m - 1] == 1 for m in range(1, 4))
    assert abs(b[5] - b[1] * b[2]) < 1e-15
    assert abs(b[7] - (1.5 * b[3] - b[1])) < 1e-15


def test_euler_expand_holomorphic_conventions():
    lit = euler_expand({2: 0, 3: 0}, 1, 4, variant="holomorphic", k=2)
    cls = euler_expand({2: 0, 3: 0}, 1, 4, variant="holomorphic", k=2, convention="classical")
    assert lit.coeffs[3] == -8 and cls.coeffs[3] == -2
    assert lit.meta["recursion_weight"] == "p^3"


def test_euler_expand_missing_prime():
    with pytest.raises(ValueError, match=r"\[5\]"):
        euler_expand({2: 0, 3: 0}, 1, 6)


def test_eval_expansion_zero_and_a1():
    assert eval_expansion(CoefficientSeries([0, 0], PARAMS), 0.2 + 1j) == 0
    # mpmath oracle, frozen: (W_{1/2,nu}(4 pi) + eps nu W_{-1/2,nu}(4 pi)) / sqrt(pi)
    want = complex(0.00371702263402624334887934280079, 0.0000688487685814008786024222485528)
    got = eval_expansion(CoefficientSeries([1], PARAMS), 1j)
    assert abs(got - want) < 1e-12


def test_eisenstein_value_and_symmetry():
    E = eisenstein_series(0.75, 30)
    z = complex(0.3, 0.4)
    # K-Bessel expansion evaluated in mpmath at 30 digits
    assert abs(eval_expansion(E, z) - (-2.54284456034327442714697416825)) < 1e-10
    assert transform_residual(E, ProjMat(0, -1, 1, 0), z).residual < 1e-6
    assert transform_residual(E, ProjMat(1, 1, 0, 2), z).residual > 1e-3


def test_transform_identity_and_translation():
    s = CoefficientSeries([1, 0.3, -0.2], PARAMS)
    assert transform_residual(s, ProjMat.identity(), 0.1 + 1j, "unitary", 1).residual == 0
    assert transform_residual(s, ProjMat(1, 1, 0, 1), 0.1 + 1j, "unitary", 1).residual < 1e-12


def test_transform_region_error():
    with pytest.raises(ValueError, match="y_min"):
        transform_residual(CoefficientSeries([1], PARAMS), ProjMat(0, -1, 1, 0), 0.1 + 0.05j)


def test_completed_L():
    series = CoefficientSeries([1, 0, 0], PARAMS)
    triv = enumerate_chars(1)[0]
    res = completed_L(series, triv, complex(3.5, 0))
    gf = gamma_factors(3.5, 1, 0.25j, 1, "thm1")
    assert abs(res.value - gf.product) < 1e-15
    odd = enumerate_chars(3)[1]
    odd_args = completed_L(series, odd, complex(3.5, 0)).gamma_arguments
    assert odd_args != res.gamma_arguments
    ap = euler_expand({2: 0, 3: 0, 5: 0, 7: 0}, 1, 10).coeffs
    assert math.isfinite(abs(completed_L(CoefficientSeries(ap, PARAMS), triv, complex(3, 0)).value))


def test_nu_zero_needs_opt_in():
    with pytest.raises(ValueError):
        AnalyticParams(nu=0)
    AnalyticParams(nu=0, allow_nu_zero=True)


def test_laplace_eigenvalue():
    s = CoefficientSeries([1, 0.2, -0.1], AnalyticParams(eps=1, nu=0.3j))
    f = lambda z: eval_expansion(s, z)  # noqa: E731
    ratios = [laplace_ratio(f, z) for z in (0.1 + 1j, -0.3 + 0.9j, 0.25 + 1.3j)]
    assert max(abs(r - ratios[0]) for r in ratios) < 1e-4
    assert abs(ratios[0] - (0.25 + 0.09)) < 1e-4


# -- Mellin formula and H

def test_mellin_pure_gamma_pair():
    r = mellin_check(CoefficientSeries([1], PARAMS), 0.0, 0.0, complex(4, 0))
    # mpmath quadrature of the same integral, frozen
    want = complex(0.0076268822013877094242, 0.00026698903411718151216)
    assert abs(r.lhs - want) < 1e-12 and abs(r.rhs - want) < 1e-15
    assert r.residual < 1e-6


def test_mellin_three_terms_and_scaling():
    s = CoefficientSeries([1, 0.5, -0.3], PARAMS)
    r1 = mellin_residual(s, 0.2, 0.3, complex(4, 0.7))
    r2 = mellin_residual(s.scaled(2), 0.2, 0.3, complex(4, 0.7))
    assert r1 < 1e-5 and r2 < 1e-5


def test_mellin_preconditions():
    with pytest.raises(ValueError):
        mellin_residual(CoefficientSeries([1] * 11, PARAMS), 0, 0, complex(5, 0))
    with pytest.raises(ValueError):
        mellin_residual(CoefficientSeries([1], PARAMS), 0, 0, complex(3, 0))


def test_h_identity_at_w0_reduces_to_equality():
    for ell in (0, 1):
        lhs, rhs = h_identity_sides(complex(0.3, 1.0), 0.0, ell, 1, 0.25j, "literal")
        assert abs(lhs - (-1j) ** ell) < 1e-15 and abs(lhs - rhs) < 1e-10


def test_h_identity_dual_holds_literal_does_not():
    p = AnalyticParams(eps=-1, nu=0.3j)
    s, w = complex(0.7, -1.2), 1.4
    assert h_identity_residual(s, w, p, 0, "dual") < 1e-8
    assert h_identity_residual(s, w, p, 1, "dual") < 1e-8
    assert h_identity_residual(s, w, p, 0, "literal") > 1e-3


def test_h0_is_one_at_eps_nu():
    for eps in (1, -1):
        for w in (-3.0, 0.0, 1.5):
            assert abs(h0_at_eps_nu(w, AnalyticParams(eps=eps, nu=0.3j)) - 1) < 1e-10


def test_H_against_mpmath():
    s, w, nu, eps = complex(1.3, 0.4), 0.8, 0.3j, 1
    m = mpmath.mpc
    a0 = (m(s) + nu + 1) / 2
    b0 = (m(s) - nu) / 2
    a1 = (m(s) + nu + 1) / 2
    b1 = (m(s) - nu + 2) / 2
    gR = lambda t: mpmath.pi ** (-t / 2) * mpmath.gamma(t / 2)  # noqa: E731
    # gamma^-(s+1) / gamma^+(s) for k = 1, eps = 1
    ratio = gR(m(s) + 1 + nu) * gR(m(s) + 1 - nu + 1) / (gR(m(s) + nu + 1) * gR(m(s) - nu))
    ref = mpmath.hyp2f1(a0, b0, 0.5, -w * w) + 2j * mpmath.pi * w * ratio * mpmath.hyp2f1(a1, b1, 1.5, -w * w)
    assert abs(H(s, w, 0, eps, nu) - complex(ref)) < 1e-12 * abs(complex(ref))
