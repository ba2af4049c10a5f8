"""Thermodynamics of the free Brownian particle.

Everything is expressed in units of the ohmic damping rate gamma:
theta = hbar*beta*gamma is the dimensionless inverse temperature,
w = omega_c/gamma the cutoff ratio, b = 2*pi*M*L^2*gamma/hbar the box
constant that only enters the zero-temperature entropy offset.

The damping-dependent part of the reduced partition function is the
product over Matsubara frequencies xi_n = 2*pi*n/theta of
xi(xi+w)/((xi+lam_plus)(xi+lam_minus)), where lam_plus/minus are the
roots of xi^2 + w*xi + w (a conjugate pair for w < 4).  The product has
the closed form Gamma(1+a*lam_p)Gamma(1+a*lam_m)/Gamma(1+a*w) with
a = theta/(2*pi); log_z_reduced evaluates both the closed form and the
truncated product with an Euler-Maclaurin tail and insists they agree.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from . import numkit, specfun
from .errors import ConsistencyError
from .numkit import QuadSpec

__all__ = [
    "BrownianParams",
    "cutoff_roots",
    "log_z_reduced",
    "entropy_ohmic",
    "entropy_cutoff",
    "entropy_zero_T",
    "specific_heat",
    "has_entropy_dip",
]

_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class BrownianParams:
    theta: float  # hbar * beta * gamma
    cutoff_ratio: float = math.inf  # omega_c / gamma
    box_const: float = 1.0  # 2 pi M L^2 gamma / hbar

    def __post_init__(self):
        if not (self.theta > 0.0 and math.isfinite(self.theta)):
            raise ValueError("theta must be finite and > 0")
        if not (self.cutoff_ratio > 0.0):
            raise ValueError("cutoff_ratio must be > 0 (inf allowed)")
        if not (self.box_const > 0.0 and math.isfinite(self.box_const)):
            raise ValueError("box_const must be finite and > 0")


def cutoff_roots(w: float) -> tuple[complex, complex]:
    """Roots of xi^2 + w*xi + w = 0 in units of gamma.

    Sum and product both equal w; the pair is complex conjugate for
    w < 4.  A single complex code path keeps the w = 4 crossover
    continuous.
    """
    if not (w > 0.0 and math.isfinite(w)):
        raise ValueError("cutoff ratio w must be finite and > 0")
    disc = cmath.sqrt(complex(w * w - 4.0 * w, 0.0))
    lam_p = 0.5 * (w + disc)
    lam_m = 0.5 * (w - disc)
    return lam_p, lam_m


def has_entropy_dip(w: float) -> bool:
    """True when the damping kernel makes S - S0 dip below zero.

    The criterion is gamma_hat'(0) < -1, which for the Drude-type
    cutoff kernel reduces to w < 1.
    """
    return w < 1.0


def _log_product_closed(theta: float, w: float) -> float:
    """Closed form of the damping product via log-gamma factors."""
    a = theta / _TWO_PI
    lam_p, lam_m = cutoff_roots(w)
    if lam_p.imag != 0.0:
        lg = 2.0 * specfun.ln_gamma_complex(1.0 + a * lam_p).real
    else:
        lg = specfun.ln_gamma(1.0 + a * lam_p.real) + specfun.ln_gamma(
            1.0 + a * lam_m.real
        )
    return lg - specfun.ln_gamma(1.0 + a * w)


def _log_product_truncated(theta: float, w: float, n_terms: int = 2000) -> float:
    """Oracle route: truncated product plus Euler-Maclaurin tail.

    Term n is log[n(n+W)] - log[n^2 + n*W + P] with W = a*w and
    P = a^2*w; the quadratic is the (n+A)(n+B) root pair combined, so
    the oracle needs no complex arithmetic.  The tail integral has the
    closed form -F(N) with F(x) = x log x + (x+W)log(x+W)
    - (x+A)log(x+A) - (x+B)log(x+B) -> 0 at infinity.
    """
    a = theta / _TWO_PI
    bigw = a * w
    prod = a * a * w  # A*B
    lam_p, lam_m = cutoff_roots(w)
    aa, bb = a * lam_p, a * lam_m

    def term(n: float) -> float:
        return math.log(n * (n + bigw)) - math.log(n * n + n * bigw + prod)

    n0 = float(n_terms)
    partial = math.fsum(term(float(n)) for n in range(1, n_terms))

    def xlnx(x):
        return x * cmath.log(x)

    f_n = (
        xlnx(complex(n0)) + xlnx(complex(n0 + bigw)) - xlnx(n0 + aa) - xlnx(n0 + bb)
    ).real
    h_n = term(n0)
    hp_n = (
        1.0 / n0 + 1.0 / (n0 + bigw) - (1.0 / (n0 + aa) + 1.0 / (n0 + bb)).real
    )
    h3_n = 2.0 * (
        1.0 / n0**3
        + 1.0 / (n0 + bigw) ** 3
        - (1.0 / (n0 + aa) ** 3 + 1.0 / (n0 + bb) ** 3).real
    )
    tail = -f_n + 0.5 * h_n - hp_n / 12.0 + h3_n / 720.0
    return partial + tail


def log_z_reduced(p: BrownianParams) -> float:
    """log of the reduced partition function.

    The free-particle prefactor contributes log(b/theta)/2; the damping
    product is evaluated both ways (closed form and truncated product
    with tail) and the closed form is returned.  The infinite-cutoff
    limit diverges and is rejected.
    """
    if math.isinf(p.cutoff_ratio):
        raise ValueError("log Z diverges for infinite cutoff; use a finite w")
    closed = _log_product_closed(p.theta, p.cutoff_ratio)
    oracle = _log_product_truncated(p.theta, p.cutoff_ratio)
    scale = max(abs(closed), 1.0)
    if abs(closed - oracle) > 1e-6 * scale:
        raise ConsistencyError(
            f"damping product mismatch: closed={closed!r} truncated={oracle!r} "
            f"at theta={p.theta}, w={p.cutoff_ratio}"
        )
    return 0.5 * math.log(p.box_const / p.theta) + closed


def entropy_zero_T(box_const: float) -> float:
    """S0/k_B = log(b)/2, the box-size-dependent zero-temperature offset."""
    if not (box_const > 0.0):
        raise ValueError("box_const must be > 0")
    return 0.5 * math.log(box_const)


def entropy_ohmic(theta: float) -> float:
    """(S - S0)/k_B for strictly ohmic damping (infinite cutoff)."""
    if not (theta > 0.0 and math.isfinite(theta)):
        raise ValueError("theta must be finite and > 0")
    x = theta / _TWO_PI
    return (
        specfun.ln_gamma(1.0 + x)
        - x * specfun.digamma(x)
        - 0.5 * math.log(theta)
        + x
        - 0.5
    )


def _entropy_cutoff_analytic(theta: float, w: float) -> float:
    a = theta / _TWO_PI
    lam_p, lam_m = cutoff_roots(w)
    if lam_p.imag != 0.0:
        lg = 2.0 * specfun.ln_gamma_complex(1.0 + a * lam_p).real
        dsum = 2.0 * (lam_p * specfun.digamma(1.0 + a * lam_p)).real
    else:
        lp, lm = lam_p.real, lam_m.real
        lg = specfun.ln_gamma(1.0 + a * lp) + specfun.ln_gamma(1.0 + a * lm)
        dsum = lp * specfun.digamma(1.0 + a * lp) + lm * specfun.digamma(1.0 + a * lm)
    lg -= specfun.ln_gamma(1.0 + a * w)
    dsum -= w * specfun.digamma(1.0 + a * w)
    return -0.5 * math.log(theta) + 0.5 + lg - a * dsum


def entropy_cutoff(p: BrownianParams) -> float:
    """(S - S0)/k_B for ohmic damping with a finite Drude-type cutoff.

    Computed analytically by differentiating the gamma closed form
    (digamma of the possibly complex roots; imaginary parts cancel in
    the conjugate sum) and cross-checked against a numerical
    temperature derivative of T log Z.
    """
    if math.isinf(p.cutoff_ratio):
        raise ValueError("entropy_cutoff requires a finite cutoff; see entropy_ohmic")
    analytic = _entropy_cutoff_analytic(p.theta, p.cutoff_ratio)

    # S/k_B = d/dT [T log Z]; with theta ~ 1/T this is
    # log Z - theta dlogZ/dtheta, and S0 drops out as log(b)/2.
    def logz(theta: float) -> float:
        return log_z_reduced(
            BrownianParams(theta, p.cutoff_ratio, p.box_const)
        )

    d = numkit.derivative(logz, p.theta, spec=QuadSpec(rel_tol=1e-6, abs_tol=1e-13))
    numeric = logz(p.theta) - p.theta * d.value - 0.5 * math.log(p.box_const)
    # the log-gamma pieces cancel down from this magnitude; the numeric
    # route inherits that roundoff amplified by the derivative step
    cancel = abs(
        specfun.ln_gamma(1.0 + p.theta / _TWO_PI * p.cutoff_ratio)
    )
    tol = max(1e-6 * max(1.0, abs(analytic)), 3e-12 * cancel)
    if abs(analytic - numeric) > tol:
        raise ConsistencyError(
            f"entropy routes disagree at theta={p.theta}, w={p.cutoff_ratio}: "
            f"analytic={analytic!r} numeric={numeric!r}"
        )
    return analytic


def specific_heat(p: BrownianParams) -> float:
    """C/k_B = -theta d/dtheta [(S-S0)/k_B].

    T d/dT = -theta d/dtheta, so the temperature derivative of the
    entropy reduces to a theta derivative with a sign flip.
    """
    if math.isinf(p.cutoff_ratio):
        f = entropy_ohmic
    else:

        def f(theta: float) -> float:
            return _entropy_cutoff_analytic(theta, p.cutoff_ratio)

    d = numkit.derivative(f, p.theta, spec=QuadSpec(rel_tol=1e-9, abs_tol=1e-13))
    return -p.theta * d.value
