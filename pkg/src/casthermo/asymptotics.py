"""Closed-form low- and high-temperature laws, used as independent
oracles for the Casimir engines, plus the constants entering the
low-temperature TM analysis.

All formulas are dimensionless; s0 = alpha_p^2/g is the dc
conductivity group and tau the temperature.  The low-temperature
Drude forms hold asymptotically for 2 pi tau well below g/alpha_p^2
(the frequency scale of the TE reflection boundary layer); see the
tests for measured agreement windows.
"""

from __future__ import annotations

import math

import numpy as np

from . import numkit, specfun
from .errors import NumericalError
from .numkit import DEFAULT_SPEC, QuadSpec

__all__ = [
    "high_t_eta",
    "low_t_plasma_te",
    "low_t_plasma_tm",
    "low_t_drude_te",
    "low_t_drude_tm",
    "low_t_free_energy_drude_te",
    "appendix_i_te",
    "appendix_cos_moment",
    "appendix_c_partial",
    "EPS_LADDER",
]

_PI = math.pi

# regularization ladder for the conditionally convergent cosine moments
EPS_LADDER = (1e-1, 3e-2, 1e-2, 3e-3)


def high_t_eta(phi0: float, tau: float) -> float:
    """Classical (n = 0 dominated) force factor (120/pi^3) Phi(0) tau."""
    return 120.0 / _PI**3 * phi0 * tau


def low_t_plasma_te(tau: float) -> float:
    """Leading TE thermal correction for plasma mirrors, (8/3) tau^4."""
    return 8.0 / 3.0 * tau**4


def low_t_plasma_tm(tau: float, alpha_p: float) -> float:
    """Leading TM thermal correction for plasma mirrors, ~ tau^3/alpha_p."""
    return 240.0 / _PI**3 * specfun.zeta(3.0) / alpha_p * tau**3


def low_t_drude_te(tau: float, s0: float) -> float:
    """Leading TE thermal correction for Drude mirrors, ~ -s0^(3/2) tau^(5/2)."""
    return (
        -15.0
        / _PI**4
        * math.sqrt(_PI / 2.0)
        * specfun.zeta(2.5)
        * s0**1.5
        * tau**2.5
    )


def low_t_drude_tm(tau: float, s0: float, alpha_p: float, c_const: float) -> float:
    """Leading TM thermal correction for Drude mirrors.

    Carries a logarithmic factor log(alpha_p/tau) + C; the constant is
    a caller input because two inequivalent values are in circulation
    (a fitted -2.58 and the partial analytic ~1.155, see
    appendix_c_partial).
    """
    if tau == 0.0:
        return 0.0  # tau^(5/2) log tau -> 0
    return (
        90.0
        / _PI**4
        * math.sqrt(2.0 * _PI)
        * specfun.zeta(2.5)
        * s0**-0.5
        * tau**2.5
        * (math.log(alpha_p / tau) + c_const)
    )


def low_t_free_energy_drude_te(tau: float, s0: float) -> float:
    """Leading TE free-energy corrections for Drude mirrors.

    The tau^2 term is separation-independent before normalization and
    therefore drops out of the force; the tau^(5/2) term matches
    low_t_drude_te through the L-derivative.
    """
    return (
        -15.0 / _PI**2 * (2.0 * math.log(2.0) - 1.0) * s0 * tau**2
        - 45.0
        / (2.0 * _PI**4)
        * math.sqrt(2.0 * _PI)
        * specfun.zeta(2.5)
        * s0**1.5
        * tau**2.5
    )


def _r_te_unit(u: np.ndarray) -> np.ndarray:
    # r(u) = (sqrt(u^2+1) - u)/(sqrt(u^2+1) + u) = 1/(sqrt(u^2+1) + u)^2
    return 1.0 / (np.sqrt(u * u + 1.0) + u) ** 2


def appendix_i_te(spec: QuadSpec = DEFAULT_SPEC) -> float:
    """int_0^inf du u^2 r(u)^2/(1 - r(u)^2) for the unit TE reflection.

    Exact value 1/12; evaluated numerically as a self-test of the
    quadrature stack.  The u -> 0 endpoint is finite (integrand ~ u/4)
    and the tail decays like 1/(16 u^2).
    """

    def integrand(u):
        u = np.asarray(u, dtype=float)
        s = np.sqrt(u * u + 1.0)
        den = s + u
        r = 1.0 / (den * den)
        one_m_r2 = (2.0 * u / den) * (1.0 + r)
        out = np.empty_like(u)
        small = u < 1e-12
        out[small] = u[small] / 4.0
        ns = ~small
        out[ns] = u[ns] * u[ns] * r[ns] * r[ns] / one_m_r2[ns]
        return out

    r = numkit.integrate_semi_inf(
        integrand, spec, vectorized=True, points=[0.3, 1.0, 3.0, 10.0]
    )
    if not r.converged:
        raise NumericalError("appendix TE integral did not converge")
    return r.value


def _cos_moment_ladder(extra: float, spec: QuadSpec) -> float:
    """epsilon-regularized cosine moments extrapolated to epsilon = 0.

    extra = 0 gives int cos(x) x^(3/2) dx, extra = 1 the same with an
    additional log(x) factor.
    """
    values = []
    for eps in EPS_LADDER:

        def envelope(x, eps=eps):
            x = np.asarray(x, dtype=float)
            out = x**1.5 * np.exp(-eps * x)
            if extra:
                out = out * np.where(x > 0.0, np.log(np.maximum(x, 1e-300)), 0.0)
            return out

        r = numkit.integrate_cosine(
            envelope, 1.0, spec, vectorized=True, decay_hint=30.0 / eps
        )
        if not r.converged:
            raise NumericalError(f"regularized cosine moment failed at eps={eps}")
        values.append(r.value)
    value, _ = numkit.extrapolate_to_zero(EPS_LADDER, values)
    return value


def appendix_cos_moment(spec: QuadSpec = DEFAULT_SPEC) -> float:
    """int_0^inf dx cos(x) x^(3/2) under vanishing exponential regularization.

    Exact value -(3/8) sqrt(2 pi) ~ -0.9399856.
    """
    return _cos_moment_ladder(0.0, spec)


def appendix_c_partial(spec: QuadSpec = DEFAULT_SPEC) -> float:
    """Partial analytic constant of the Drude TM logarithm, ~ 1.155.

    Sum of log(n)/n^(5/2) normalized by zeta(5/2) plus the regularized
    log-weighted cosine moment.
    """
    first = specfun.zeta_log_sum(2.5) / specfun.zeta(2.5)
    second = 8.0 / (3.0 * math.sqrt(2.0 * _PI)) * _cos_moment_ladder(1.0, spec)
    return first + second
