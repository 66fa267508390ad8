import math

import mpmath as mp
import numpy as np
import pytest
import scipy.special as sp

from hypcircle.errors import ArgumentOutOfRange, DomainError, PoleProximity
from hypcircle.specfun import (
    bessel_k_imag,
    bessel_k_imag_scaled,
    complex_gamma,
    gauss_2f1,
    integrate_doubling,
    lower_incomplete_exp,
    zeta_line,
)


class TestComplexGamma:
    def test_classical_values(self):
        assert complex_gamma(1.0) == pytest.approx(1.0, rel=1e-14)
        assert complex_gamma(0.5).real == pytest.approx(math.sqrt(math.pi), rel=1e-14)

    @pytest.mark.parametrize("t", [1.0, 5.0, 20.0])
    def test_imaginary_axis_modulus(self, t):
        # |Gamma(it)|^2 t sinh(pi t) / pi = 1, checked against the closed form
        g = complex_gamma(1j * t)
        assert abs(g) ** 2 * t * math.sinh(math.pi * t) / math.pi == pytest.approx(
            1.0, abs=1e-10)

    def test_functional_equation_random(self):
        rng = np.random.default_rng(3)
        for _ in range(50):
            z = complex(rng.uniform(-20, 20), rng.uniform(-20, 20))
            if abs(z - round(z.real)) < 0.1 and z.real <= 0.5:
                continue
            lhs = complex_gamma(z + 1)
            rhs = z * complex_gamma(z)
            assert abs(lhs - rhs) <= 1e-11 * abs(lhs)

    def test_against_scipy(self):
        rng = np.random.default_rng(4)
        for _ in range(40):
            z = complex(rng.uniform(-10, 10), rng.uniform(-30, 30))
            if z.real <= 0.5 and abs(z.imag) < 0.2:
                continue
            ref = sp.gamma(z)
            assert abs(complex_gamma(z) - ref) <= 1e-12 * abs(ref)

    def test_pole_raises(self):
        with pytest.raises(PoleProximity):
            complex_gamma(0.0)
        with pytest.raises(PoleProximity):
            complex_gamma(-3.0 + 1e-14j)


class TestBesselKImag:
    def test_k0_reference(self):
        # classical K_0(1)
        assert bessel_k_imag(0.0, 1.0).value == pytest.approx(0.4210244382407085, rel=1e-12)

    def test_against_mpmath_grid(self):
        mp.mp.dps = 30
        rng = np.random.default_rng(11)
        pts = [(1.0, 0.5), (13.78, 6.28), (26.0, 30.0), (26.0, 1.36), (60.0, 0.001),
               (60.0, 119.0), (45.0, 45.0), (9.53, 3.0)]
        pts += [(float(rng.uniform(0, 61)), float(10 ** rng.uniform(-3, 2.05)))
                for _ in range(20)]
        for t, x in pts:
            ref = float(mp.re(mp.besselk(mp.mpc(0, t), mp.mpf(x)) * mp.exp(0.5 * mp.pi * t)))
            got = bessel_k_imag_scaled(t, x)
            # relative where the value is on the oscillation scale, absolute near zeros
            assert abs(got - ref) <= 1e-10 * (abs(ref) + 1e-2)

    def test_even_in_t(self):
        assert bessel_k_imag_scaled(5.0, 2.0) == bessel_k_imag_scaled(-5.0, 2.0)

    def test_dominated_by_k0(self):
        for t in (0.5, 3.0, 10.0):
            for x in (0.1, 1.0, 5.0):
                assert abs(bessel_k_imag(t, x).value) <= bessel_k_imag(0.0, x).value + 1e-300

    def test_positive_at_zero_order(self):
        assert bessel_k_imag(0.0, 2.5).value > 0

    def test_underflow_flagged(self):
        res = bessel_k_imag(0.0, 800.0)
        assert res.value == 0.0 and res.underflowed

    def test_moderate_decay_value(self):
        # far tail but still representable: must be accurate, not zeroed
        mp.mp.dps = 40
        ref = float(mp.besselk(mp.mpc(0, 5.0), mp.mpf(60.0)).real)
        got = bessel_k_imag(5.0, 60.0)
        assert not got.underflowed
        assert got.value == pytest.approx(ref, rel=1e-9)

    def test_domain_error(self):
        with pytest.raises(DomainError):
            bessel_k_imag(1.0, 0.0)

    def test_quadrature_node_doubling(self):
        # halving the step of the cosine-integral rule moves nothing at the
        # 1e-10 level
        from hypcircle.specfun import _besselk_cosint_scaled

        for (t, x) in [(3.0, 9.0), (12.0, 70.0), (26.0, 45.0)]:
            v0 = _besselk_cosint_scaled(t, x)
            v1 = _besselk_cosint_scaled(t, x, refine=1)
            assert abs(v0 - v1) <= 1e-10 * max(abs(v0), 1e-4)

    def test_transition_band_accuracy(self):
        # independent arbitrary-precision values across path switches
        mp.mp.dps = 30
        for (t, x) in [(3.0, 9.0), (12.0, 70.0), (26.0, 28.0), (26.0, 35.0)]:
            ref = float(mp.re(mp.besselk(mp.mpc(0, t), mp.mpf(x)) * mp.exp(0.5 * mp.pi * t)))
            assert bessel_k_imag_scaled(t, x) == pytest.approx(ref, rel=1e-9, abs=1e-14)


class TestGauss2F1:
    def test_at_zero(self):
        assert gauss_2f1(-0.5, 1.5, 2.0 - 4.0j, 0.0) == 1.0

    def test_series_oracle(self):
        # direct slow summation at modest argument
        a, b, c, x = -0.5, 1.5, 2.0, -0.5
        term, acc = 1.0, 1.0
        for k in range(200):
            term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * x
            acc += term
        assert gauss_2f1(a, b, c, x) == pytest.approx(acc, rel=1e-12)

    def test_against_mpmath(self):
        mp.mp.dps = 30
        for x in (-0.95, -0.6, -0.2, -0.01):
            for tc in (0.7, 4.0, 31.0):
                got = gauss_2f1(-0.5, 1.5, 1.0 - 1j * tc, x)
                ref = complex(mp.hyp2f1(-0.5, 1.5, mp.mpc(1.0, -tc), x))
                assert abs(got - ref) <= 1e-10 * abs(ref)

    def test_domain_errors(self):
        with pytest.raises(ArgumentOutOfRange):
            gauss_2f1(-0.5, 1.5, 2.0, -1.5)
        with pytest.raises(ArgumentOutOfRange):
            gauss_2f1(-0.5, 1.5, 2.0, 0.5)


class TestLowerIncompleteExp:
    def test_zero(self):
        assert lower_incomplete_exp(0.5, 0.0) == 0.0

    def test_order_one(self):
        # integral_0^2 e^{u/2} du = 2(e - 1)
        assert lower_incomplete_exp(1.0, 2.0) == pytest.approx(2.0 * (math.e - 1.0), rel=1e-13)

    def test_quadrature_oracle(self):
        # substitution u = v^(1/alpha) removes the endpoint singularity so the
        # reference quadrature is trustworthy
        mp.mp.dps = 30
        for alpha, X in [(0.5, 1.0), (0.25, 7.0), (0.8, 14.0)]:
            ref = float(mp.quad(lambda v: mp.e ** (v ** (1.0 / alpha) / 2), [0, X ** alpha])
                        / alpha)
            assert lower_incomplete_exp(alpha, X) == pytest.approx(ref, rel=1e-11)

    def test_vectorized_matches_scalar(self):
        X = np.array([0.0, 0.3, 2.0, 11.0])
        vec = lower_incomplete_exp(0.4, X)
        for i, x in enumerate(X):
            assert vec[i] == pytest.approx(lower_incomplete_exp(0.4, float(x)), rel=1e-14)


class TestZetaLine:
    def test_classical_values(self):
        assert zeta_line(2.0, 0.0).real == pytest.approx(math.pi ** 2 / 6.0, rel=1e-12)
        assert zeta_line(3.0, 0.0).real == pytest.approx(1.2020569031595943, rel=1e-12)

    def test_self_convergence(self):
        v1 = zeta_line(1.0, 2.0)
        v2 = zeta_line(1.0, 2.0, n_terms=64)
        assert abs(v1 - v2) <= 1e-10 * abs(v1)

    def test_against_mpmath(self):
        mp.mp.dps = 30
        for (sig, t) in [(1.0, 2.0), (0.5, 14.13), (1.0, 60.0), (2.0, -7.0)]:
            ref = complex(mp.zeta(complex(sig, t)))
            assert abs(zeta_line(sig, t) - ref) <= 1e-10 * abs(ref)

    def test_pole(self):
        with pytest.raises(PoleProximity):
            zeta_line(1.0, 0.0)
        with pytest.raises(DomainError):
            zeta_line(-0.5, 3.0)


def test_integrate_doubling_smoke():
    val = integrate_doubling(lambda x: np.exp(-x * x), 0.0, 5.0, rel_tol=1e-12)
    assert val == pytest.approx(math.sqrt(math.pi) / 2.0, rel=1e-11)
