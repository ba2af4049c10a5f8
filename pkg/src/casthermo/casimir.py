"""Casimir force, free energy and entropy engines.

Two independent spectral representations are implemented for each
quantity.  The Matsubara route sums the spectral density over the
discrete frequencies y_n = 2 pi n tau (n = 0 counted half); the
resummed route integrates cos(n y / tau) against the density, which
natively separates the zero-temperature part (n = 0) from the thermal
part (n >= 1).  Poisson resummation makes them equal; the library
treats that equality as a cross-validation target, not an assumption.

Normalizations, with tau = k_B T L / (hbar c):

    eta_F = (240/pi^3) tau [Phi(0)/2 + sum_n Phi(2 pi n tau)]
    eta_F = (120/pi^4) int Phi dy  +  (240/pi^4) sum_n int cos(ny/tau) Phi dy
    eta_E = -(360/pi^3) tau [Psi(0)/2 + sum_n Psi(2 pi n tau)]
    eta_E = -(180/pi^4) int Psi dy -  (360/pi^4) sum_n int cos(ny/tau) Psi dy

where Phi(y) = int_y^inf dv v^2 f(y, v) and
Psi(y) = int_y^inf dv v log[1 - r^2 exp(-2v)], both summed over the
selected polarizations.  Ideal mirrors at tau -> 0 give exactly 1.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from . import numkit
from .backend import kernels
from .errors import NumericalError
from .mirror import Kind, MirrorModel, Pol
from .numkit import DEFAULT_SPEC, QuadResult, QuadSpec

__all__ = [
    "Method",
    "ThermoPoint",
    "EtaResult",
    "phi",
    "psi_kernel",
    "eta_f_matsubara",
    "eta_f_resummed",
    "eta_e",
    "entropy_dimensionless",
    "eta_f_from_free_energy",
    "delta_eta_ft",
    "delta_clp_grid",
    "delta_phi_te",
    "ENTROPY_METHOD_SWITCH",
]

_PI = math.pi
_F_MATS = 240.0 / _PI**3
_F_RES = 240.0 / _PI**4
_E_MATS = 360.0 / _PI**3
_E_RES = 360.0 / _PI**4

# Matsubara sums are cheap and smooth above this temperature; the
# resummed form is numerically preferable below it.
ENTROPY_METHOD_SWITCH = 0.05

# Phi and Psi decay like exp(-2y); beyond y ~ 10 they are negligible
# relative to any tolerance used here.
_DECAY_SCALE = 10.0


class Method(enum.Enum):
    MATSUBARA = "matsubara"
    RESUMMED = "resummed"
    AUTO = "auto"


@dataclass(frozen=True)
class ThermoPoint:
    """Dimensionless temperature tau = k_B T L / (hbar c)."""

    tau: float

    def __post_init__(self):
        if not (self.tau > 0.0 and math.isfinite(self.tau)):
            raise ValueError("tau must be finite and > 0")

    def hbar_beta_gamma(self, model: MirrorModel) -> float:
        """The quantum/classical crossover group g / tau."""
        if model.kind is not Kind.DRUDE:
            raise ValueError("hbar beta gamma needs a Drude relaxation frequency")
        return model.g / self.tau


@dataclass(frozen=True)
class EtaResult:
    """Normalized force or free-energy factor, split as eta0 + etaT.

    The split is native to the resummed representation only; the
    Matsubara route reports the combined value in etaT with eta0 = 0.
    """

    eta0: float
    etaT: float
    err: float
    method: Method

    @property
    def total(self) -> float:
        return self.eta0 + self.etaT


def _inner_spec(spec: QuadSpec) -> QuadSpec:
    return QuadSpec(
        rel_tol=max(spec.rel_tol * 0.05, 1e-13),
        abs_tol=max(spec.abs_tol * 0.02, 1e-17),
        max_evals=spec.max_evals,
    )


def _v_breaks(model: MirrorModel, y: float) -> list[float]:
    """Interior v-scales of the closed-loop integrand at fixed y."""
    pts = [0.25, 1.0, 4.0, 12.0]
    if model.kind is not Kind.IDEAL:
        q = kernels.q_te(model.code, model.alpha_p, model.g or 0.0, y)
        if q > 0.0:
            rq = math.sqrt(q)
            pts += [0.3 * rq, rq, 3.0 * rq]
    return sorted(p - y for p in pts if p > y)


def _y_breaks(model: MirrorModel) -> list[float]:
    """Interior y-scales of Phi/Psi (boundary layer and Drude crossover)."""
    pts = [0.3, 1.0, 3.0]
    if model.kind is Kind.DRUDE:
        s0 = model.sigma0
        pts += [0.1 / s0, 1.0 / s0, 10.0 / s0, model.g, 10.0 * model.g]
    return sorted(p for p in pts if p > 0.0)


def _phi_q(model: MirrorModel, pol: Pol, y: float, spec: QuadSpec) -> QuadResult:
    kind, ap, g = model._args()
    pc = pol.code

    def integrand(t):
        return kernels.phi_integrand(kind, pc, ap, g, y, t)

    return numkit.integrate_semi_inf(
        integrand, spec, vectorized=True, points=_v_breaks(model, y)
    )


def _psi_q(model: MirrorModel, pol: Pol, y: float, spec: QuadSpec) -> QuadResult:
    kind, ap, g = model._args()
    pc = pol.code

    def integrand(t):
        return kernels.psi_integrand(kind, pc, ap, g, y, t)

    return numkit.integrate_semi_inf(
        integrand, spec, vectorized=True, points=_v_breaks(model, y)
    )


def phi(model: MirrorModel, pol: Pol, y: float, spec: QuadSpec = DEFAULT_SPEC) -> float:
    """Spectral density Phi(y) = int_y^inf dv v^2 f(y, v)."""
    if y < 0.0:
        raise ValueError("phi requires y >= 0")
    r = _phi_q(model, pol, y, spec)
    if not r.converged:
        raise NumericalError(f"phi({model.kind.value}, {pol.value}, y={y}) did not converge")
    return r.value


def psi_kernel(
    model: MirrorModel, pol: Pol, y: float, spec: QuadSpec = DEFAULT_SPEC
) -> float:
    """Free-energy density Psi(y) = int_y^inf dv v log[1 - r^2 e^(-2v)] <= 0."""
    if y < 0.0:
        raise ValueError("psi_kernel requires y >= 0")
    r = _psi_q(model, pol, y, spec)
    if not r.converged:
        raise NumericalError(
            f"psi_kernel({model.kind.value}, {pol.value}, y={y}) did not converge"
        )
    return r.value


def _matsubara(model, pol, t, spec, density_q, prefactor, sign):
    inner = _inner_spec(spec)
    d0 = density_q(model, pol, 0.0, inner)
    inner_err = [0.5 * d0.err_estimate]
    inner_evals = [d0.evals]

    def term(n: int) -> float:
        r = density_q(model, pol, 2.0 * _PI * n * t.tau, inner)
        inner_err.append(r.err_estimate)
        inner_evals.append(r.evals)
        return r.value

    series_spec = QuadSpec(
        rel_tol=spec.rel_tol,
        abs_tol=max(spec.abs_tol * 0.1, 1e-16),
        max_evals=max(spec.max_evals // 20, 2000),
    )
    s = numkit.sum_accelerated(term, series_spec, n0=1)
    if not s.converged:
        raise NumericalError(
            f"Matsubara sum for {model.kind.value}/{pol.value} at tau={t.tau} "
            f"did not converge ({s.evals} terms)"
        )
    scale = prefactor * t.tau
    value = sign * scale * (0.5 * d0.value + s.value)
    err = scale * (s.err_estimate + math.fsum(inner_err))
    return value, err, sum(inner_evals)


def eta_f_matsubara(
    model: MirrorModel, pol: Pol, t: ThermoPoint, spec: QuadSpec = DEFAULT_SPEC
) -> EtaResult:
    """Total eta_F from the Matsubara (Lifshitz) sum.

    The n = 0 term uses the analytic y -> 0 limit of q, which is where
    the Drude and plasma models part ways for the TE mode.
    """
    value, err, _ = _matsubara(model, pol, t, spec, _phi_q, _F_MATS, +1.0)
    return EtaResult(0.0, value, err, Method.MATSUBARA)


def _resummed_thermal(model, pol, t, spec, density_q):
    """Sum over n >= 1 of int cos(n y/tau) density(y) dy.

    Called per polarization: the TE and TM series have clean (and for
    Drude mirrors opposite) sign structure individually.  Fast-decaying
    series (plasma, or Drude well below the boundary-layer scale) are
    summed with the accelerated kernel.  The Drude series above that
    scale decays only like a small inverse power of n -- the Poisson
    dual of the TE zero-frequency anomaly -- so its tail is closed by
    Euler-Maclaurin over n, whose integral term is a sine transform of
    the same density plus the Dirichlet boundary value:

        sum_{n>N} C(n) = tau [ (pi/2) density(0+) - S1((N+1)/tau) ]
                         + C(N+1)/2 + S2/(12 tau) + S3/(720 tau^3)

    with S1, S2, S3 the sine transforms of density/y, y*density and
    y^3*density.  density(0+) is the analytic zero-frequency limit (the
    same limit the n = 0 Matsubara term uses, zero for the Drude TE
    mode).  The tail is evaluated at two anchors and their disagreement
    enters the error estimate.
    """
    inner = _inner_spec(spec)
    ybreaks = _y_breaks(model)

    def density(y: float) -> float:
        return density_q(model, pol, y, inner).value

    # per-term budget: the thermal series rarely needs more than a few
    # dozen terms, so each oscillatory integral gets ~1/30 of the target
    cos_spec = QuadSpec(
        rel_tol=max(spec.rel_tol * 0.3, 1e-12),
        abs_tol=max(spec.abs_tol * 0.03, 1e-16),
        max_evals=spec.max_evals,
    )
    osc_errs = []

    def cterm(n: int) -> float:
        r = numkit.integrate_cosine(
            density, n / t.tau, cos_spec, points=ybreaks, decay_hint=_DECAY_SCALE
        )
        if not r.converged:
            raise NumericalError(
                f"cosine integral n={n} for {model.kind.value}/{pol.value} at "
                f"tau={t.tau} did not converge"
            )
        osc_errs.append(r.err_estimate)
        return r.value

    def series_tol(value: float) -> float:
        return max(spec.rel_tol * abs(value), spec.abs_tol * 0.3, 1e-15)

    # fast path: steep power decay closes with a fitted tail model
    terms: list[float] = []
    for n in range(1, 17):
        terms.append(cterm(n))
        if n < 8:
            continue
        a1, a2, a3 = abs(terms[-1]), abs(terms[-2]), abs(terms[-3])
        same_sign = terms[-1] * terms[-2] > 0.0 and terms[-2] * terms[-3] > 0.0
        if not (same_sign and 0.0 < a1 < a2 < a3):
            continue
        p1 = math.log(a2 / a1) / math.log(n / (n - 1.0))
        p2 = math.log(a3 / a2) / math.log((n - 1.0) / (n - 2.0))
        if min(p1, p2) < 1.8:
            continue
        t1 = a1 * n**p1 * numkit._power_tail(n + 1, p1)
        t2 = a1 * n**p2 * numkit._power_tail(n + 1, p2)
        total = math.fsum(terms) + math.copysign(t1, terms[-1])
        terr = abs(t1 - t2)
        if terr <= series_tol(total):
            return total, terr + math.fsum(osc_errs)

    def sine_transform(env, omega):
        r = numkit.integrate_sine(
            env, omega, cos_spec, points=ybreaks, decay_hint=_DECAY_SCALE
        )
        if not r.converged:
            raise NumericalError(
                f"tail sine transform at omega={omega} for "
                f"{model.kind.value}/{pol.value} did not converge"
            )
        osc_errs.append(r.err_estimate)
        return r.value

    d0 = density_q(model, pol, 0.0, inner)
    osc_errs.append(0.5 * _PI * d0.err_estimate)

    def em_tail(n_next: int) -> float:
        om = n_next / t.tau
        s1 = sine_transform(lambda y: density(y) / y, om)
        s2 = sine_transform(lambda y: y * density(y), om)
        s3 = sine_transform(lambda y: y**3 * density(y), om)
        return (
            t.tau * (0.5 * _PI * d0.value - s1)
            + 0.5 * cterm(n_next)
            + s2 / (12.0 * t.tau)
            + s3 / (720.0 * t.tau**3)
        )

    n_a, n_b = 24, 32
    for n in range(len(terms) + 1, n_b + 1):
        terms.append(cterm(n))
    total_a = math.fsum(terms[:n_a]) + em_tail(n_a + 1)
    total_b = math.fsum(terms) + em_tail(n_b + 1)
    err = abs(total_a - total_b) + math.fsum(osc_errs)
    return total_b, err


def _resummed(model, pol, t, spec, density_q, pref0, prefT, sign):
    inner = _inner_spec(spec)
    ybreaks = _y_breaks(model)

    def density(y: float) -> float:
        return density_q(model, pol, y, inner).value

    zero = numkit.integrate_semi_inf(
        density,
        QuadSpec(
            rel_tol=max(spec.rel_tol * 0.3, 1e-12),
            abs_tol=max(spec.abs_tol * 0.3, 1e-15),
            max_evals=spec.max_evals,
        ),
        points=ybreaks,
    )
    if not zero.converged:
        raise NumericalError(
            f"zero-temperature integral for {model.kind.value}/{pol.value} "
            "did not converge"
        )
    eta0 = sign * pref0 * zero.value

    pols = (Pol.TE, Pol.TM) if pol is Pol.BOTH else (pol,)
    tsum = 0.0
    terr = 0.0
    for p in pols:
        v, e = _resummed_thermal(model, p, t, spec, density_q)
        tsum += v
        terr += e
    etaT = sign * prefT * tsum
    err = pref0 * zero.err_estimate + prefT * terr
    return eta0, etaT, err


def eta_f_resummed(
    model: MirrorModel, pol: Pol, t: ThermoPoint, spec: QuadSpec = DEFAULT_SPEC
) -> EtaResult:
    """eta_F from the cosine-resummed representation.

    eta0 is the n = 0 (zero-temperature) part; etaT collects the
    thermal corrections n >= 1 and is computed without subtracting
    large zero-temperature quantities, which is what makes this route
    preferable at low temperature.
    """
    eta0, etaT, err = _resummed(model, pol, t, spec, _phi_q, _F_RES / 2.0, _F_RES, +1.0)
    return EtaResult(eta0, etaT, err, Method.RESUMMED)


def eta_e(
    model: MirrorModel,
    pol: Pol,
    t: ThermoPoint,
    method: Method = Method.MATSUBARA,
    spec: QuadSpec = DEFAULT_SPEC,
) -> EtaResult:
    """Free energy normalized to the ideal zero-temperature value.

    eta_E(ideal, tau -> 0) = 1; the overall sign convention keeps
    eta_E positive for attractive configurations, matching eta_F.
    """
    if method is Method.AUTO:
        method = (
            Method.MATSUBARA if t.tau >= ENTROPY_METHOD_SWITCH else Method.RESUMMED
        )
    if method is Method.MATSUBARA:
        value, err, _ = _matsubara(model, pol, t, spec, _psi_q, _E_MATS, -1.0)
        return EtaResult(0.0, value, err, Method.MATSUBARA)
    eta0, etaT, err = _resummed(
        model, pol, t, spec, _psi_q, _E_RES / 2.0, _E_RES, -1.0
    )
    return EtaResult(eta0, etaT, err, Method.RESUMMED)


_ENTROPY_NORM = _PI**2 / 720.0


def entropy_dimensionless(
    model: MirrorModel,
    pol: Pol,
    t: ThermoPoint,
    spec: QuadSpec | None = None,
    method: Method = Method.AUTO,
) -> float:
    """s = S L^2 / (k_B A) = (pi^2/720) d eta_E / d tau.

    The representation is chosen once per evaluation point (Matsubara
    for tau >= 0.05, resummed below) and used for the whole derivative
    stencil so the difference quotient never straddles two methods.
    In the resummed branch only the thermal part is differentiated;
    the zero-temperature integral is tau-independent and would merely
    feed noise into the stencil.
    """
    if method is Method.AUTO:
        method = (
            Method.MATSUBARA if t.tau >= ENTROPY_METHOD_SWITCH else Method.RESUMMED
        )
    dspec = spec or QuadSpec(rel_tol=3e-5, abs_tol=1e-10, max_evals=DEFAULT_SPEC.max_evals)
    # the difference quotient only resolves eta_E to ~1e-5 * h anyway;
    # requesting much more than that from the inner engines is waste
    inner = QuadSpec(rel_tol=3e-6, abs_tol=1e-7, max_evals=DEFAULT_SPEC.max_evals)

    if method is Method.MATSUBARA:

        def f(tau: float) -> float:
            return eta_e(model, pol, ThermoPoint(tau), Method.MATSUBARA, inner).total

    else:

        def f(tau: float) -> float:
            tp = ThermoPoint(tau)
            pols = (Pol.TE, Pol.TM) if pol is Pol.BOTH else (pol,)
            acc = 0.0
            for p in pols:
                v, _ = _resummed_thermal(model, p, tp, inner, _psi_q)
                acc += v
            return -_E_RES * acc

    d = numkit.derivative(f, t.tau, spec=dspec)
    if not d.converged:
        raise NumericalError(
            f"entropy derivative at tau={t.tau} did not converge "
            f"(err={d.err_estimate:.2e})"
        )
    return _ENTROPY_NORM * d.value


def eta_f_from_free_energy(
    model: MirrorModel,
    pol: Pol,
    t: ThermoPoint,
    method: Method = Method.MATSUBARA,
    delta: float = 1e-4,
    spec: QuadSpec = DEFAULT_SPEC,
) -> float:
    """Force factor reconstructed from the free energy by an L-derivative.

    Rescaling the mirror separation L -> uL rescales every
    dimensionless group (tau, alpha_p, g scale with L), so
    eta_F = eta_E - (1/3) d eta_E(u)/du at u = 1, evaluated here by a
    central difference with step ``delta``.
    """

    def eta_e_scaled(u: float) -> float:
        if model.kind is Kind.IDEAL:
            m = model
        elif model.kind is Kind.PLASMA:
            m = MirrorModel.plasma(model.alpha_p * u)
        else:
            m = MirrorModel.drude(model.alpha_p * u, model.g * u)
        return eta_e(m, pol, ThermoPoint(t.tau * u), method, spec).total

    center = eta_e_scaled(1.0)
    slope = (eta_e_scaled(1.0 + delta) - eta_e_scaled(1.0 - delta)) / (2.0 * delta)
    return center - slope / 3.0


def delta_eta_ft(
    alpha_p: float,
    g: float,
    t: ThermoPoint,
    spec: QuadSpec = DEFAULT_SPEC,
    method: Method = Method.RESUMMED,
) -> float:
    """TE thermal-correction difference eta_F^T(drude) - eta_F^T(plasma).

    Both thermal parts come from the resummed representation at
    identical alpha_p and tau; the Matsubara route subtracts the
    zero-temperature part explicitly and is kept for cross-checks.
    """
    if not (g > 0.0):
        raise ValueError("delta_eta_ft requires g > 0")
    drude = MirrorModel.drude(alpha_p, g)
    plasma = MirrorModel.plasma(alpha_p)
    if method is Method.MATSUBARA:
        parts = []
        for m in (drude, plasma):
            tot = eta_f_matsubara(m, Pol.TE, t, spec).total
            r0 = eta_f_resummed(m, Pol.TE, t, spec)
            parts.append(tot - r0.eta0)
        return parts[0] - parts[1]
    rd = eta_f_resummed(drude, Pol.TE, t, spec)
    rp = eta_f_resummed(plasma, Pol.TE, t, spec)
    return rd.etaT - rp.etaT


def delta_clp_grid(alpha_p, g, x_grid, u_grid) -> np.ndarray:
    """-(kappa L)^2 [f_TE(drude) - f_TE(plasma)] over (x, u) grid axes.

    x = xi/gamma and u = c kappa/omega_P; in these variables the map is
    independent of g (the scaling statement behind the collapse), so g
    only tags the output.  Rows follow x_grid, columns u_grid.
    """
    u = np.asarray(list(u_grid), dtype=float)
    xs = [float(x) for x in x_grid]
    if (u <= 0.0).any() or any(x <= 0.0 for x in xs):
        raise ValueError("grids must be positive")
    del g  # the (x, u) parametrization absorbs the relaxation frequency
    out = np.empty((len(xs), u.size))
    for i, x in enumerate(xs):
        out[i] = kernels.delta_clp_te(alpha_p, x, u)
    return out


def delta_phi_te(
    alpha_p: float,
    g: float | None,
    x: float,
    spec: QuadSpec = DEFAULT_SPEC,
) -> float:
    """-L^3 Delta F_TE at frequency x = xi/gamma.

    With finite g this is -(Phi_TE^drude - Phi_TE^plasma) at y = g x.
    g = None takes the vanishing-relaxation limit, where the lower
    integration limit goes to zero and only x survives.
    """
    if x < 0.0:
        raise ValueError("delta_phi_te requires x >= 0")
    if g is not None:
        y = g * x
        drude = MirrorModel.drude(alpha_p, g)
        plasma = MirrorModel.plasma(alpha_p)
        return -(phi(drude, Pol.TE, y, spec) - phi(plasma, Pol.TE, y, spec))

    def integrand(u):
        return kernels.delta_clp_te(alpha_p, x, u)

    ubreaks = [0.3 / alpha_p, 1.0 / alpha_p, 4.0 / alpha_p, 1.0]
    r = numkit.integrate_semi_inf(integrand, spec, vectorized=True, points=ubreaks)
    if not r.converged:
        raise NumericalError(f"delta_phi_te limit integral at x={x} did not converge")
    return alpha_p * r.value
