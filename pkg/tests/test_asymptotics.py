import math

import numpy as np
import pytest

from casthermo import asymptotics
from casthermo.casimir import ThermoPoint, eta_f_resummed
from casthermo.mirror import MirrorModel, Pol
from casthermo.numkit import QuadSpec
from casthermo.specfun import zeta

AP = 46.2
G = 0.125


class TestClosedForms:
    def test_high_t_linear(self):
        z3 = zeta(3.0)
        assert asymptotics.high_t_eta(z3 / 2.0, 1.0) == pytest.approx(
            60.0 * z3 / math.pi**3, rel=1e-12
        )
        assert asymptotics.high_t_eta(0.3, 0.0) == 0.0
        assert asymptotics.high_t_eta(0.3, 2.0) == pytest.approx(
            2.0 * asymptotics.high_t_eta(0.3, 1.0)
        )

    def test_plasma_te_coefficient(self):
        assert asymptotics.low_t_plasma_te(0.0) == 0.0
        assert asymptotics.low_t_plasma_te(1.0) == pytest.approx(8.0 / 3.0)

    def test_plasma_tm_coefficient(self):
        assert asymptotics.low_t_plasma_tm(0.0, 1.0) == 0.0
        expect = 240.0 * zeta(3.0) / math.pi**3
        assert asymptotics.low_t_plasma_tm(1.0, 1.0) == pytest.approx(expect, rel=1e-12)

    def test_drude_te_coefficient(self):
        assert asymptotics.low_t_drude_te(0.0, 1.0) == 0.0
        expect = -15.0 / math.pi**4 * math.sqrt(math.pi / 2.0) * zeta(2.5)
        assert asymptotics.low_t_drude_te(1.0, 1.0) == pytest.approx(expect, rel=1e-12)
        assert expect == pytest.approx(-0.2589036, rel=1e-6)

    def test_drude_tm_shape(self):
        assert asymptotics.low_t_drude_tm(0.0, 1.0, AP, -2.58) == 0.0
        # positive while the log factor dominates the constant
        for tau in (1e-4, 1e-3, 1e-2):
            assert asymptotics.low_t_drude_tm(tau, 100.0, AP, -2.58) > 0.0

    def test_free_energy_coefficients(self):
        assert asymptotics.low_t_free_energy_drude_te(0.0, 1.0) == 0.0
        first = -15.0 / math.pi**2 * (2.0 * math.log(2.0) - 1.0)
        assert first == pytest.approx(-0.5871237, rel=1e-6)
        small = 1e-8
        assert asymptotics.low_t_free_energy_drude_te(small, 1.0) == pytest.approx(
            first * small**2, rel=1e-3
        )

    def test_force_energy_tau52_consistency(self):
        # the tau^(5/2) free-energy term maps onto the force term through
        # the L-derivative: for A s0^(3/2) tau^(5/2), eta_F = eta_E / 3
        e_coef = -45.0 / (2.0 * math.pi**4) * math.sqrt(2.0 * math.pi) * zeta(2.5)
        f_coef = -15.0 / math.pi**4 * math.sqrt(math.pi / 2.0) * zeta(2.5)
        assert f_coef == pytest.approx(e_coef / 3.0, rel=1e-12)


class TestAppendixConstants:
    def test_i_te(self):
        assert asymptotics.appendix_i_te() == pytest.approx(1.0 / 12.0, abs=1e-10)

    def test_i_te_integrand_endpoint(self):
        # integrand tends to u/4 at the origin: finite, no singularity
        import numpy as np

        u = np.array([1e-8])
        s = np.sqrt(u * u + 1.0)
        den = s + u
        r = 1.0 / den**2
        val = u * u * r * r / ((2.0 * u / den) * (1.0 + r))
        assert np.isfinite(val[0])
        assert val[0] == pytest.approx(1e-8 / 4.0, rel=1e-6)

    def test_i_te_tail_bound(self):
        # r ~ 1/(4u^2): the integrand tail is ~ 1/(16 u^2)
        from casthermo import numkit

        def integrand(u):
            u = np.asarray(u, dtype=float)
            s = np.sqrt(u * u + 1.0)
            den = s + u
            r = 1.0 / den**2
            return u * u * r * r / ((2.0 * u / den) * (1.0 + r))

        tail = numkit.integrate_semi_inf(
            lambda t: integrand(t + 100.0), vectorized=True
        )
        assert tail.value < 1e-3 / 16.0 + 1e-9

    def test_cos_moment(self):
        exact = -0.375 * math.sqrt(2.0 * math.pi)
        assert asymptotics.appendix_cos_moment() == pytest.approx(exact, abs=1e-4)

    def test_c_partial_value(self):
        assert asymptotics.appendix_c_partial() == pytest.approx(1.1564, abs=2e-3)

    def test_c_partial_closed_form(self):
        # independent closed form: -zeta'(5/2)/zeta(5/2) + pi/2 - psi(5/2)
        from casthermo.specfun import EULER_GAMMA, digamma

        psi52 = digamma(2.5)
        exact = (
            asymptotics.specfun.zeta_log_sum(2.5) / zeta(2.5)
            + math.pi / 2.0
            - psi52
        )
        assert exact == pytest.approx(1.1563804, abs=1e-6)
        assert asymptotics.appendix_c_partial() == pytest.approx(exact, abs=5e-5)


class TestEngineCrossChecks:
    """The closed forms as oracles for the engines, inside their windows."""

    def test_plasma_te_window(self):
        spec = QuadSpec(rel_tol=1e-9, abs_tol=3e-16, max_evals=400000)
        model = MirrorModel.plasma(AP)
        for tau in (1e-3, 3e-3):
            got = eta_f_resummed(model, Pol.TE, ThermoPoint(tau), spec).etaT
            assert got == pytest.approx(asymptotics.low_t_plasma_te(tau), rel=0.05)

    def test_plasma_tm_window(self):
        spec = QuadSpec(rel_tol=1e-9, abs_tol=3e-13, max_evals=400000)
        model = MirrorModel.plasma(AP)
        for tau in (3e-4, 1e-3):
            got = eta_f_resummed(model, Pol.TM, ThermoPoint(tau), spec).etaT
            assert got == pytest.approx(
                asymptotics.low_t_plasma_tm(tau, AP), rel=0.05
            )

    def test_drude_te_asymptotic_window(self):
        # the tau^(5/2) law needs 2 pi tau well below g/alpha_p^2, so it is
        # probed at small alpha_p^2/g; slope and prefactor both converge
        model = MirrorModel.drude(2.0, 1.0)
        s0 = model.sigma0
        spec = QuadSpec(rel_tol=1e-7, abs_tol=1e-12)
        taus = (1e-3, 2e-3, 5e-3)
        vals = [
            eta_f_resummed(model, Pol.TE, ThermoPoint(t), spec).etaT for t in taus
        ]
        slope = np.polyfit(np.log(taus), np.log(np.abs(vals)), 1)[0]
        assert 2.3 <= slope <= 2.6
        ratios = [v / asymptotics.low_t_drude_te(t, s0) for v, t in zip(vals, taus)]
        assert all(r > 0 for r in ratios)
        assert abs(ratios[0] - 1.0) <= 0.25
        # the formula becomes exact as tau drops: ratios approach 1 monotonely
        gaps = [abs(r - 1.0) for r in ratios]
        assert gaps == sorted(gaps)

    def test_drude_te_regression_values(self):
        # frozen from an independent scipy.quad Matsubara evaluation
        model = MirrorModel.drude(2.0, 1.0)
        spec = QuadSpec(rel_tol=1e-7, abs_tol=1e-12)
        expect = {1e-3: -5.7343e-8, 2e-3: -3.0818e-7, 5e-3: -2.76334e-6}
        for tau, ref in expect.items():
            got = eta_f_resummed(model, Pol.TE, ThermoPoint(tau), spec).etaT
            assert got == pytest.approx(ref, rel=1e-3)

    def test_drude_tm_log_shape(self):
        # tau^(5/2) log(alpha_p/tau) shape with the constant fitted freely
        model = MirrorModel.drude(2.0, 1.0)
        s0 = model.sigma0
        spec = QuadSpec(rel_tol=1e-7, abs_tol=1e-13)
        taus = np.array([5e-4, 1e-3, 2e-3, 4e-3])
        vals = np.array(
            [eta_f_resummed(model, Pol.TM, ThermoPoint(t), spec).etaT for t in taus]
        )
        pref = 90.0 / math.pi**4 * math.sqrt(2.0 * math.pi) * zeta(2.5) * s0**-0.5
        # fit C in vals = pref tau^(5/2)(log(alpha_p/tau) + C)
        y = vals / (pref * taus**2.5) - np.log(2.0 / taus)
        c_fit = float(np.mean(y))
        resid = np.abs(y - c_fit) / np.abs(np.log(2.0 / taus) + c_fit)
        assert np.all(resid < 0.12)
        model_vals = [
            asymptotics.low_t_drude_tm(t, s0, 2.0, c_fit) for t in taus
        ]
        for got, law in zip(vals, model_vals):
            assert got == pytest.approx(law, rel=0.12)
