import math

import pytest

from casthermo.mirror import ImFreqPoint, Kind, MirrorModel, Pol, closed_loop, eps_im, q_te, r_te, r_tm

AP = 46.2
G = 0.125


@pytest.fixture
def drude():
    return MirrorModel.drude(AP, G)


@pytest.fixture
def plasma():
    return MirrorModel.plasma(AP)


@pytest.fixture
def ideal():
    return MirrorModel.ideal()


class TestModel:
    def test_validation(self):
        with pytest.raises(ValueError):
            MirrorModel.plasma(-1.0)
        with pytest.raises(ValueError):
            MirrorModel.drude(AP, -1.0)
        with pytest.raises(ValueError):
            MirrorModel(Kind.IDEAL, alpha_p=1.0)
        with pytest.raises(ValueError):
            MirrorModel(Kind.PLASMA, alpha_p=AP, g=G)

    def test_derived_quantities(self, drude):
        assert drude.lambda_ratio == pytest.approx(2.0 * math.pi / AP)
        assert drude.sigma0 == pytest.approx(AP * AP / G)

    def test_point_validation(self):
        with pytest.raises(ValueError):
            ImFreqPoint(-1.0, 1.0)


class TestEps:
    def test_plasma_doubling_point(self):
        # eps = 1 + (alpha_p/y)^2 doubles the vacuum value at y = alpha_p
        assert eps_im(MirrorModel.plasma(AP), AP) == pytest.approx(2.0, rel=1e-14)

    def test_drude_value(self, drude):
        y = 0.125
        expect = 1.0 + AP * AP / (y * (y + G))
        assert eps_im(drude, y) == pytest.approx(expect, rel=1e-14)

    def test_drude_approaches_plasma_at_high_frequency(self, drude, plasma):
        for y in (50.0, 200.0, 1000.0):
            ed = eps_im(drude, y)
            ep = eps_im(plasma, y)
            assert abs(ed - ep) / (ep - 1.0) <= G / y

    def test_ideal(self, ideal):
        assert math.isinf(eps_im(ideal, 1.0))

    def test_domain(self, drude):
        with pytest.raises(ValueError):
            eps_im(drude, 0.0)


class TestReflection:
    def test_te_vacuum_limit(self, drude):
        # Drude q(0) = 0: TE reflection vanishes at zero frequency
        assert r_te(drude, ImFreqPoint(0.0, 1.0)) == 0.0

    def test_te_plasma_zero_frequency(self, plasma):
        # q = alpha_p^2 and v = alpha_p gives (sqrt(2)-1)/(sqrt(2)+1)
        expect = 3.0 - 2.0 * math.sqrt(2.0)
        assert r_te(plasma, ImFreqPoint(0.0, AP)) == pytest.approx(expect, rel=1e-14)

    def test_ideal(self, ideal):
        assert r_te(ideal, ImFreqPoint(1.0, 1.0)) == 1.0
        assert r_tm(ideal, ImFreqPoint(1.0, 1.0)) == -1.0

    def test_tm_zero_frequency_is_perfect(self, drude, plasma):
        for model in (drude, plasma):
            assert r_tm(model, ImFreqPoint(0.0, 0.7)) == -1.0

    def test_tm_large_eps_limit(self):
        # eps -> infinity at fixed (y, v) drives r_tm to -1
        y, v = 0.5, 1.0
        vals = [r_tm(MirrorModel.plasma(a), ImFreqPoint(y, v)) for a in (1e2, 1e4, 1e6)]
        gaps = [abs(v0 + 1.0) for v0 in vals]
        assert gaps == sorted(gaps, reverse=True)
        assert gaps[-1] < 1e-6

    def test_bounds_on_physical_domain(self, drude, plasma):
        for model in (drude, plasma):
            for y in (0.0, 0.01, 0.5, 3.0):
                for v in (max(y, 1e-3), y + 0.5, y + 5.0, y + 60.0):
                    te = r_te(model, ImFreqPoint(y, v))
                    tm = r_tm(model, ImFreqPoint(y, v))
                    assert 0.0 <= te < 1.0
                    assert -1.0 <= tm <= 0.0

    def test_drude_to_plasma_pointwise(self):
        y, v = 0.8, 1.3
        plasma = MirrorModel.plasma(AP)
        rp = r_te(plasma, ImFreqPoint(y, v))
        gaps = []
        for g in (1e-2, 1e-4, 1e-6):
            rd = r_te(MirrorModel.drude(AP, g), ImFreqPoint(y, v))
            gaps.append(abs(rd - rp))
        assert gaps == sorted(gaps, reverse=True)
        assert gaps[-1] < 1e-6

    def test_noncommuting_zero_frequency_limit(self):
        # the g -> 0 and y -> 0 limits do not commute for the TE mode
        for g in (1e-2, 1e-6):
            assert r_te(MirrorModel.drude(AP, g), ImFreqPoint(0.0, 1.0)) == 0.0
        assert r_te(MirrorModel.plasma(AP), ImFreqPoint(0.0, 1.0)) > 0.0


class TestClosedLoop:
    def test_ideal_value(self, ideal):
        v = 0.5 * math.log(2.0)
        assert closed_loop(ideal, Pol.TE, ImFreqPoint(0.0, v)) == pytest.approx(
            1.0, rel=1e-12
        )

    def test_zero_reflection(self, drude):
        assert closed_loop(drude, Pol.TE, ImFreqPoint(0.0, 2.0)) == 0.0

    def test_both_is_sum(self, drude):
        pt = ImFreqPoint(0.3, 1.1)
        s = closed_loop(drude, Pol.TE, pt) + closed_loop(drude, Pol.TM, pt)
        assert closed_loop(drude, Pol.BOTH, pt) == pytest.approx(s, rel=1e-14)

    def test_large_v_overflow_safe(self, plasma):
        f = closed_loop(plasma, Pol.BOTH, ImFreqPoint(1.0, 500.0))
        assert 0.0 <= f < 1e-300 or f == 0.0

    def test_ideal_bound(self, drude, plasma, ideal):
        for model in (drude, plasma):
            for y, v in ((0.0, 0.2), (0.5, 0.9), (2.0, 2.5)):
                f = closed_loop(model, Pol.BOTH, ImFreqPoint(y, v))
                bound = closed_loop(ideal, Pol.BOTH, ImFreqPoint(y, v))
                assert 0.0 <= f <= bound

    def test_te_scaling_in_x(self):
        # Drude TE closed loop depends on (y/g, v) only
        x, v = 3.7, 0.9
        vals = []
        for g in (0.01, 0.1, 1.0):
            model = MirrorModel.drude(AP, g)
            vals.append(closed_loop(model, Pol.TE, ImFreqPoint(x * g, v)))
        assert vals[0] == pytest.approx(vals[1], rel=1e-14)
        assert vals[1] == pytest.approx(vals[2], rel=1e-14)

    def test_q_te_limits(self, drude, plasma):
        assert q_te(drude, 0.0) == 0.0
        assert q_te(plasma, 0.0) == pytest.approx(AP * AP)
        assert q_te(drude, 1.0) == pytest.approx(AP * AP / (1.0 + G), rel=1e-14)
