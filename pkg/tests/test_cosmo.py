import json
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.optimize import minimize_scalar

from collapsenoise import cosmo
from collapsenoise.params import PhysicalConstants

K = PhysicalConstants()


def sig(x, n=2):
    return float(f"{x:.{n - 1}e}")


class TestCounting:
    def test_de_sitter_count(self):
        assert sig(cosmo.de_sitter_count(K)) == 2.3e122

    def test_per_mode_energy_over_hubble_quantum(self):
        r = cosmo.per_mode_energy(K) / (K.hbar * K.H0)
        assert sig(r, 1) == 0.1

    def test_per_mode_energy_value(self):
        # rho_Lambda (4 pi/3)(c/H0)^3 / N_dS with the pinned constants
        assert cosmo.per_mode_energy(K) == pytest.approx(2.54e-53, rel=5e-3)

    def test_holographic_mass(self):
        assert sig(cosmo.match_report(K).m_R_hol) == 1.4e-69


class TestRates:
    @pytest.mark.parametrize("C, lam", [(1.0, 2.18e-18), (1e-8, 2.18e-26), (1e-12, 2.18e-30)])
    def test_lambda_natural(self, C, lam):
        assert cosmo.lambda_natural(K, C) == pytest.approx(lam, rel=1e-12)

    def test_lambda_bench(self):
        assert cosmo.lambda_bench(K) == pytest.approx(K.alpha_em**2 * K.H0, rel=1e-15)
        assert sig(cosmo.lambda_bench(K), 3) == 1.16e-22

    @given(C=st.floats(1e-20, 1e3), s=st.floats(0.1, 10))
    def test_linear_in_C(self, C, s):
        assert cosmo.lambda_natural(K, s * C) == pytest.approx(s * cosmo.lambda_natural(K, C), rel=1e-14)

    def test_lambda_natural_rejects(self):
        with pytest.raises(ValueError):
            cosmo.lambda_natural(K, 0.0)

    @pytest.mark.parametrize("lam, n, m", [(2.18e-18, 6.8e8, 1.1e-18), (1.16e-22, 9.3e10, 1.6e-16)])
    def test_threshold_rows(self, lam, n, m):
        n_star, mass = cosmo.amplification_threshold(lam, K.m_nucleon)
        assert sig(n_star) == n and sig(mass) == m

    def test_threshold_unit(self):
        assert cosmo.amplification_threshold(1.0, K.m_nucleon) == (1.0, K.m_nucleon)

    @given(lam=st.floats(1e-40, 1e10))
    def test_threshold_invariant(self, lam):
        n_star, mass = cosmo.amplification_threshold(lam, K.m_nucleon)
        assert n_star**2 * lam * 1.0 == pytest.approx(1.0, rel=1e-14)
        assert mass == pytest.approx(n_star * K.m_nucleon, rel=1e-15)


class TestMarkovSurrogate:
    def rate(self, g):
        return cosmo.markov_surrogate_rate(1.0, 1.0, g, 1.0, 1.0, 1.0, 1.0)

    def test_peak_at_two_omega0(self):
        res = minimize_scalar(lambda lg: -self.rate(np.exp(lg)), bracket=(-3, 0, 3), method="golden", tol=1e-10)
        assert np.exp(res.x) == pytest.approx(2.0, rel=1e-6)

    def test_small_gamma_linear(self):
        slope = math.log(self.rate(2e-6) / self.rate(1e-6)) / math.log(2)
        assert slope == pytest.approx(1.0, abs=1e-6)

    def test_large_gamma_inverse(self):
        slope = math.log(self.rate(2e6) / self.rate(1e6)) / math.log(2)
        assert slope == pytest.approx(-1.0, abs=1e-6)

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError, match="gamma"):
            cosmo.markov_surrogate_rate(1, 1, 0, 1, 1, 1, 1)


class TestScalings:
    @given(N1=st.floats(1, 1e30))
    def test_quarter_is_finite(self, N1):
        r = cosmo.am_scaling(0.25, N1)
        assert r.classification == "finite" and r.factor == 1.0

    def test_rows(self):
        assert cosmo.am_scaling(0.0, 100).factor == pytest.approx(100)
        r = cosmo.am_scaling(0.5, 100)
        assert r.factor == pytest.approx(1e-2) and r.classification == "vanishing"
        assert cosmo.am_scaling(0.1, 100).classification == "divergent"
        assert cosmo.am_scaling(0.0, 100).eta == pytest.approx(0.1)

    def test_rejects_small_N1(self):
        with pytest.raises(ValueError):
            cosmo.am_scaling(0.25, 0.5)


class TestDopplerT1:
    def test_doppler(self):
        assert sig(cosmo.doppler_shift(2 * K.H0, K.v_cmb_over_c)) == 5.4e-21
        assert cosmo.doppler_shift(2 * K.H0, 0.0) == 0.0

    @given(v=st.floats(-0.9, 0.9))
    def test_doppler_linear(self, v):
        assert cosmo.doppler_shift(3.0, v) == pytest.approx(3.0 * v)

    def test_doppler_rejects(self):
        with pytest.raises(ValueError):
            cosmo.doppler_shift(1.0, 1.0)

    def test_t1_benchmark(self):
        e = cosmo.t1_exponent(1.16e-22, 1e-22, K.m_nucleon, 1.0)
        assert 1e-13 < e < 1e-12
        assert e == pytest.approx(4.15e-13, rel=2e-3)

    def test_t1_trivial_and_quadratic(self):
        assert cosmo.t1_exponent(2.0, 3.0, 3.0, 1.0) == 2.0
        assert cosmo.t1_exponent(1.0, 2.0, 1.0, 1.0) == 4.0 * cosmo.t1_exponent(1.0, 1.0, 1.0, 1.0)


class TestCounterfactual:
    def test_planck_mass(self):
        r = cosmo.planck_counterfactual_ratio(K)
        for key in ("amplitude_ratio", "hubble_quantum_ratio"):
            assert 0.1 < r[key] / 1e-122 < 10
        assert r["amplitude_ratio"] == pytest.approx(r["one_over_N_dS"], rel=1e-10)


class TestMatchReport:
    def test_rows_and_serialization(self):
        rep = cosmo.match_report(K)
        assert [r.label for r in rep.thresholds] == ["1", "alpha_em^2", "1e-8", "1e-12"]
        for r in rep.thresholds:
            assert r.N_star**2 * r.lam == pytest.approx(1.0, rel=1e-14)
        d = json.loads(rep.to_json())
        assert d["C_match"] == pytest.approx(K.alpha_em**2)
        lines = rep.to_csv().splitlines()
        assert lines[0] == "C_match,lambda,N_star,mass" and len(lines) == 5
