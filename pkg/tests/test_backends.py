"""Compiled and pure-python kernels must agree to rounding."""

import numpy as np
import pytest

from casthermo import _kernels_py as pyk

cyk = pytest.importorskip("casthermo._kernels_cy")

CASES = [
    # (kind, alpha_p, g, y)
    (pyk.KIND_PLASMA, 46.2, 0.0, 0.0),
    (pyk.KIND_PLASMA, 46.2, 0.0, 0.7),
    (pyk.KIND_DRUDE, 46.2, 0.125, 0.0),
    (pyk.KIND_DRUDE, 46.2, 0.125, 3e-5),
    (pyk.KIND_DRUDE, 46.2, 0.125, 2.0),
    (pyk.KIND_DRUDE, 2.0, 1.0, 0.01),
    (pyk.KIND_IDEAL, 0.0, 0.0, 0.5),
]

V = np.geomspace(1e-4, 50.0, 40)


@pytest.mark.parametrize("kind,ap,g,y", CASES)
def test_scalar_functions_agree(kind, ap, g, y):
    for v in (1e-3, 0.3, 1.7, 20.0):
        if kind != pyk.KIND_IDEAL:
            assert cyk.q_te(kind, ap, g, y) == pytest.approx(
                pyk.q_te(kind, ap, g, y), rel=1e-14, abs=1e-300
            )
            if y > 0:
                assert cyk.eps_im(kind, ap, g, y) == pytest.approx(
                    pyk.eps_im(kind, ap, g, y), rel=1e-14
                )
        assert cyk.r_te(kind, ap, g, y, v) == pytest.approx(
            pyk.r_te(kind, ap, g, y, v), rel=1e-13, abs=1e-300
        )
        assert cyk.r_tm(kind, ap, g, y, v) == pytest.approx(
            pyk.r_tm(kind, ap, g, y, v), rel=1e-13, abs=1e-300
        )
        for pol in (pyk.POL_TE, pyk.POL_TM, pyk.POL_BOTH):
            assert cyk.clp(kind, pol, ap, g, y, v) == pytest.approx(
                pyk.clp(kind, pol, ap, g, y, v), rel=1e-12, abs=1e-300
            )


@pytest.mark.parametrize("kind,ap,g,y", CASES)
@pytest.mark.parametrize("pol", [pyk.POL_TE, pyk.POL_TM, pyk.POL_BOTH])
def test_phi_integrand_agree(kind, ap, g, y, pol):
    a = pyk.phi_integrand(kind, pol, ap, g, y, V)
    b = cyk.phi_integrand(kind, pol, ap, g, y, V)
    np.testing.assert_allclose(b, a, rtol=1e-12, atol=1e-300)


@pytest.mark.parametrize("kind,ap,g,y", CASES)
@pytest.mark.parametrize("pol", [pyk.POL_TE, pyk.POL_TM, pyk.POL_BOTH])
def test_psi_integrand_agree(kind, ap, g, y, pol):
    a = pyk.psi_integrand(kind, pol, ap, g, y, V)
    b = cyk.psi_integrand(kind, pol, ap, g, y, V)
    np.testing.assert_allclose(b, a, rtol=1e-12, atol=1e-300)


@pytest.mark.parametrize("x", [0.0, 0.03, 1.0, 40.0])
def test_delta_clp_agree(x):
    u = np.geomspace(1e-3, 2.0, 30)
    a = pyk.delta_clp_te(46.2, x, u)
    b = cyk.delta_clp_te(46.2, x, u)
    np.testing.assert_allclose(b, a, rtol=1e-12, atol=1e-300)


def test_array_matches_scalar_path():
    # within one backend the array kernels must follow the scalar ones
    kind, ap, g, y = pyk.KIND_DRUDE, 46.2, 0.125, 0.4
    t = np.array([0.1, 0.9, 4.0])
    arr = pyk.phi_integrand(kind, pyk.POL_BOTH, ap, g, y, t)
    for ti, ai in zip(t, arr):
        v = y + ti
        f = pyk.clp(kind, pyk.POL_BOTH, ap, g, y, v)
        assert ai == pytest.approx(v * v * f, rel=1e-13)
