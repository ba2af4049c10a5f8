"""Pure-python (numpy) closed-loop kernels.

Reference implementation of the per-point mirror optics used inside
the quadrature loops; ``casthermo._kernels_cy`` provides the same
functions compiled.  All reflection math goes through
q = y^2 (eps(iy) - 1), whose y -> 0 limit distinguishes the plasma
model (q -> alpha_p^2) from the Drude model (q -> 0).

Frequencies and wave numbers are dimensionless: y = xi L / c, v = kappa L.
"""

from __future__ import annotations

import math

import numpy as np

KIND_IDEAL, KIND_PLASMA, KIND_DRUDE = 0, 1, 2
POL_TE, POL_TM, POL_BOTH = 0, 1, 2

COMPILED = False


def q_te(kind, alpha_p, g, y):
    """q = y^2 (eps(iy) - 1) with its analytic y = 0 limits."""
    if kind == KIND_PLASMA:
        return alpha_p * alpha_p
    if kind == KIND_DRUDE:
        if y == 0.0:
            return 0.0
        return alpha_p * alpha_p * y / (y + g)
    raise ValueError("q_te is defined for plasma and drude mirrors only")


def eps_im(kind, alpha_p, g, y):
    """Relative permittivity at imaginary frequency, eps(iy); y > 0."""
    if y <= 0.0:
        raise ValueError("eps_im requires y > 0; the y=0 limits live in q_te")
    if kind == KIND_IDEAL:
        return math.inf
    if kind == KIND_PLASMA:
        return 1.0 + (alpha_p / y) ** 2
    if kind == KIND_DRUDE:
        return 1.0 + alpha_p * alpha_p / (y * (y + g))
    raise ValueError(f"unknown mirror kind {kind}")


def r_te(kind, alpha_p, g, y, v):
    """TE reflection coefficient, in [0, 1)."""
    if kind == KIND_IDEAL:
        return 1.0
    q = q_te(kind, alpha_p, g, y)
    s = math.sqrt(v * v + q)
    return q / ((s + v) * (s + v))


def r_tm(kind, alpha_p, g, y, v):
    """TM reflection coefficient; 0 at eps = 1, -1 as eps -> inf."""
    if kind == KIND_IDEAL:
        return -1.0
    if y == 0.0:
        return -1.0  # eps -> inf for both plasma and drude
    q = q_te(kind, alpha_p, g, y)
    s = math.sqrt(v * v + q)
    y2 = y * y
    num = q * (y2 * y2 - v * v * (2.0 * y2 + q))
    den = y2 * s + (y2 + q) * v
    return num / (den * den)


def clp(kind, pol, alpha_p, g, y, v):
    """Closed-loop function f = r^2 / (exp(2v) - r^2); BOTH sums TE+TM."""
    if v <= 0.0:
        raise ValueError("closed-loop function requires v > 0")
    e = math.exp(-2.0 * v)
    out = 0.0
    if pol in (POL_TE, POL_BOTH):
        r = r_te(kind, alpha_p, g, y, v)
        out += r * r * e / (1.0 - r * r * e)
    if pol in (POL_TM, POL_BOTH):
        r = r_tm(kind, alpha_p, g, y, v)
        out += r * r * e / (1.0 - r * r * e)
    return out


def _r2_te_arr(q, v):
    s = np.sqrt(v * v + q)
    r = q / ((s + v) * (s + v))
    return r * r


def _r2_tm_arr(q, y, v):
    if y == 0.0:
        return np.ones_like(v)
    s = np.sqrt(v * v + q)
    y2 = y * y
    num = q * (y2 * y2 - v * v * (2.0 * y2 + q))
    den = y2 * s + (y2 + q) * v
    r = num / (den * den)
    return r * r


def phi_integrand(kind, pol, alpha_p, g, y, t):
    """v^2 f(y, v) at v = y + t, elementwise over t."""
    t = np.asarray(t, dtype=float)
    v = y + t
    e = np.exp(-2.0 * v)
    if kind == KIND_IDEAL:
        f = e / (1.0 - e)
        n = 2.0 if pol == POL_BOTH else 1.0
        return n * v * v * f
    q = q_te(kind, alpha_p, g, y)
    out = np.zeros_like(v)
    if pol in (POL_TE, POL_BOTH):
        r2 = _r2_te_arr(q, v)
        out += r2 * e / (1.0 - r2 * e)
    if pol in (POL_TM, POL_BOTH):
        r2 = _r2_tm_arr(q, y, v)
        out += r2 * e / (1.0 - r2 * e)
    return v * v * out


def psi_integrand(kind, pol, alpha_p, g, y, t):
    """v log(1 - r^2 exp(-2v)) at v = y + t, summed over polarizations."""
    t = np.asarray(t, dtype=float)
    v = y + t
    e = np.exp(-2.0 * v)
    if kind == KIND_IDEAL:
        l = np.log1p(-e)
        n = 2.0 if pol == POL_BOTH else 1.0
        return n * v * l
    q = q_te(kind, alpha_p, g, y)
    out = np.zeros_like(v)
    if pol in (POL_TE, POL_BOTH):
        out += np.log1p(-_r2_te_arr(q, v) * e)
    if pol in (POL_TM, POL_BOTH):
        out += np.log1p(-_r2_tm_arr(q, y, v) * e)
    return v * out


def delta_clp_te(alpha_p, x, u):
    """-(kappa L)^2 [f_TE(drude) - f_TE(plasma)] on the (x, u) grid axes.

    x = xi/gamma, u = c kappa/omega_P; in these variables the Drude
    TE closed-loop function is independent of gamma (q = alpha_p^2
    x/(x+1)), which is the scaling behind the collapse plots.
    """
    u = np.asarray(u, dtype=float)
    v = alpha_p * u
    e = np.exp(-2.0 * v)
    q_p = alpha_p * alpha_p
    q_d = q_p * x / (x + 1.0) if x > 0.0 else 0.0
    r2p = _r2_te_arr(q_p, v)
    fp = r2p * e / (1.0 - r2p * e)
    if q_d == 0.0:
        fd = np.zeros_like(v)
    else:
        r2d = _r2_te_arr(q_d, v)
        fd = r2d * e / (1.0 - r2d * e)
    return -v * v * (fd - fp)
