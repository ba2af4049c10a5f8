import cmath
import math

import numpy as np
import pytest

from casthermo import brownian, numkit
from casthermo.brownian import (
    BrownianParams,
    cutoff_roots,
    entropy_cutoff,
    entropy_ohmic,
    entropy_zero_T,
    has_entropy_dip,
    log_z_reduced,
    specific_heat,
)
from casthermo.errors import ConsistencyError
from casthermo.numkit import QuadSpec

EULER_GAMMA = 0.5772156649015329


class TestParams:
    def test_validation(self):
        with pytest.raises(ValueError):
            BrownianParams(-1.0)
        with pytest.raises(ValueError):
            BrownianParams(1.0, cutoff_ratio=0.0)
        with pytest.raises(ValueError):
            BrownianParams(1.0, box_const=-2.0)

    def test_infinite_cutoff_allowed(self):
        p = BrownianParams(1.0)
        assert math.isinf(p.cutoff_ratio)


class TestRoots:
    def test_sum_and_product(self):
        for w in (0.01, 0.5, 3.9, 4.0, 4.1, 100.0):
            lp, lm = cutoff_roots(w)
            assert abs(lp + lm - w) < 1e-12 * max(1.0, w)
            assert abs(lp * lm - w) < 1e-12 * max(1.0, w)

    def test_conjugate_below_four(self):
        lp, lm = cutoff_roots(2.0)
        assert lp.imag > 0.0
        assert lp == lm.conjugate()

    def test_real_above_four(self):
        lp, lm = cutoff_roots(9.0)
        assert lp.imag == 0.0 and lm.imag == 0.0
        assert lp.real == pytest.approx(7.854101966249685)

    def test_dip_predicate(self):
        assert has_entropy_dip(0.5)
        assert not has_entropy_dip(1.0)
        assert not has_entropy_dip(10.0)


class TestLogZ:
    def test_infinite_cutoff_rejected(self):
        with pytest.raises(ValueError):
            log_z_reduced(BrownianParams(1.0))

    def test_free_particle_limit(self):
        # theta -> 0: the damping product goes to 1, only log(b/theta)/2 stays
        for b in (1.0, 7.0):
            p = BrownianParams(1e-8, 1.0, b)
            expect = 0.5 * math.log(b / 1e-8)
            assert log_z_reduced(p) == pytest.approx(expect, abs=1e-6)

    def test_identity_roots_drop_out(self):
        # roots {w, 0} make the product identically one
        w = 3.0
        a = 0.7 / (2.0 * math.pi)
        from casthermo import specfun

        val = (
            specfun.ln_gamma(1.0 + a * w)
            + specfun.ln_gamma(1.0)
            - specfun.ln_gamma(1.0 + a * w)
        )
        assert abs(val) < 1e-14

    def test_regression_value(self):
        # frozen against the truncated-product oracle at w=1, theta=1, b=1
        p = BrownianParams(1.0, 1.0, 1.0)
        oracle = brownian._log_product_truncated(1.0, 1.0)
        assert log_z_reduced(p) == pytest.approx(oracle, abs=1e-10)
        assert log_z_reduced(p) == pytest.approx(-0.0371651942287, abs=1e-9)

    def test_product_oracle_brute_force(self):
        # direct 10^6-term product against the tail-corrected sum
        theta, w = 1.0, 1.0
        a = theta / (2.0 * math.pi)
        bigw = a * w
        prod = a * a * w
        n = np.arange(1.0, 1e6)
        terms = np.log(n * (n + bigw)) - np.log(n * n + n * bigw + prod)
        brute = float(np.sum(terms[::-1]))
        assert brownian._log_product_truncated(theta, w) == pytest.approx(
            brute, abs=1e-5
        )


class TestEntropyOhmic:
    def test_theta_two_pi(self):
        expect = EULER_GAMMA + 0.5 - 0.5 * math.log(2.0 * math.pi)
        assert entropy_ohmic(2.0 * math.pi) == pytest.approx(expect, rel=1e-12)

    def test_high_temperature_form(self):
        theta = 0.01
        law = 0.5 * (math.log(1.0 / theta) + 1.0)
        # the leading correction is theta/(2 pi); relative deviation ~ 5.7e-4
        assert abs(entropy_ohmic(theta) - law) <= 1e-3 * law
        assert abs(entropy_ohmic(theta) - law) == pytest.approx(
            theta / (2.0 * math.pi), rel=0.02
        )

    def test_low_temperature_form(self):
        theta = 1000.0
        law = math.pi / (3.0 * theta)
        assert abs(entropy_ohmic(theta) - law) <= 0.01 * law

    def test_positive_and_decreasing(self):
        thetas = np.geomspace(1e-3, 1e4, 40)
        vals = [entropy_ohmic(float(t)) for t in thetas]
        assert all(v > 0.0 for v in vals)
        assert all(a > b for a, b in zip(vals, vals[1:]))

    def test_asymptotic_pinning(self):
        for theta in (1e-3, 5e-3, 0.01):
            law = 0.5 * (math.log(1.0 / theta) + 1.0)
            assert abs(entropy_ohmic(theta) - law) <= 0.01
        for theta in (200.0, 1e3, 1e4):
            law = math.pi / (3.0 * theta)
            assert abs(entropy_ohmic(theta) - law) <= 0.01 * law

    def test_depends_only_on_theta(self):
        # two (T, gamma) pairs with the same product give identical floats
        hbar_over_kb = 7.638e-12
        pairs = [(2.0, 2e12), (1.0, 1e12), (0.5, 5e11)]
        thetas = {hbar_over_kb * g / t for t, g in pairs}
        assert len(thetas) == 1
        vals = {entropy_ohmic(th) for th in thetas}
        assert len(vals) == 1


class TestEntropyCutoff:
    def test_reduces_to_ohmic(self):
        for theta in (0.1, 1.0, 10.0, 100.0):
            a = entropy_cutoff(BrownianParams(theta, 1e6))
            assert abs(a - entropy_ohmic(theta)) < 1e-4

    def test_negative_region_small_cutoff(self):
        thetas = np.geomspace(0.5, 500.0, 20)
        vals = [entropy_cutoff(BrownianParams(float(t), 0.1)) for t in thetas]
        assert min(vals) < 0.0

    def test_curves_deepen_with_smaller_cutoff(self):
        thetas = np.geomspace(0.5, 500.0, 20)
        m1 = min(entropy_cutoff(BrownianParams(float(t), 0.1)) for t in thetas)
        m2 = min(entropy_cutoff(BrownianParams(float(t), 0.01)) for t in thetas)
        assert m2 < m1

    def test_nonmonotonic_profile_small_cutoff(self):
        thetas = np.geomspace(0.1, 1000.0, 25)
        vals = [entropy_cutoff(BrownianParams(float(t), 0.5)) for t in thetas]
        diffs = np.diff(vals)
        assert (diffs > 0).any() and (diffs < 0).any()

    def test_real_complex_crossover_continuity(self):
        a = entropy_cutoff(BrownianParams(3.0, 4.0 - 1e-9))
        b = entropy_cutoff(BrownianParams(3.0, 4.0 + 1e-9))
        assert abs(a - b) <= 1e-8

    def test_analytic_vs_numeric_paths(self):
        # the sanctioned cross-check, run explicitly on a parameter grid
        for theta in (0.01, 0.1, 1.0, 10.0, 100.0):
            for w in (0.01, 0.1, 1.0, 10.0):
                p = BrownianParams(theta, w)
                analytic = entropy_cutoff(p)

                def logz(th, w=w):
                    return log_z_reduced(BrownianParams(th, w))

                d = numkit.derivative(
                    logz, theta, spec=QuadSpec(rel_tol=1e-7, abs_tol=1e-13)
                )
                numeric = logz(theta) - theta * d.value
                assert abs(analytic - numeric) <= 1e-6

    def test_infinite_cutoff_rejected(self):
        with pytest.raises(ValueError):
            entropy_cutoff(BrownianParams(1.0))


class TestZeroT:
    def test_values(self):
        assert entropy_zero_T(1.0) == 0.0
        assert entropy_zero_T(math.e**2) == pytest.approx(1.0, rel=1e-14)
        assert entropy_zero_T(100.0) == pytest.approx(0.5 * math.log(100.0))

    def test_domain(self):
        with pytest.raises(ValueError):
            entropy_zero_T(0.0)


class TestSpecificHeat:
    def test_classical_limit(self):
        assert specific_heat(BrownianParams(1e-4)) == pytest.approx(0.5, abs=1e-3)

    def test_quantum_limit_linear_in_t(self):
        theta = 1000.0
        c = specific_heat(BrownianParams(theta))
        assert c == pytest.approx(math.pi / (3.0 * theta), rel=1e-2)

    def test_negative_for_small_cutoff(self):
        vals = [specific_heat(BrownianParams(t, 0.1)) for t in (1.0, 3.0, 10.0, 30.0)]
        assert min(vals) < 0.0
