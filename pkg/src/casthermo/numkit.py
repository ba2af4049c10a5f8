"""Numerical kernels shared by the physics modules.

Four primitives, all deterministic and pure:

* :func:`integrate_semi_inf` -- adaptive quadrature on (0, inf) via the
  rational map x = t/(1-t) onto (0, 1) plus Gauss-Kronrod 15(7) bisection.
* :func:`integrate_cosine` -- cosine-weight integrals on (0, inf) by
  panel integration between consecutive cosine zeros followed by
  repeated-averaging (Euler/van Wijngaarden) acceleration of the
  alternating panel sums.
* :func:`sum_accelerated` -- series summation with alternating-series
  acceleration or geometric / power-law tail models.
* :func:`derivative` -- central differences with one Richardson
  extrapolation level.

Every kernel returns a :class:`QuadResult`; non-convergence is reported
through the ``converged`` flag, never by silently returning garbage.
NaN from an integrand aborts with :class:`~casthermo.errors.IntegrandError`.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import IntegrandError

__all__ = [
    "QuadSpec",
    "QuadResult",
    "DEFAULT_SPEC",
    "integrate_semi_inf",
    "integrate_cosine",
    "integrate_sine",
    "sum_accelerated",
    "derivative",
    "extrapolate_to_zero",
]


@dataclass(frozen=True)
class QuadSpec:
    """Tolerance/budget contract accepted by every kernel."""

    rel_tol: float = 1e-9
    abs_tol: float = 1e-12
    max_evals: int = 200_000

    def __post_init__(self):
        if not (self.rel_tol > 0.0 or self.abs_tol > 0.0):
            raise ValueError("QuadSpec requires rel_tol > 0 or abs_tol > 0")
        if self.max_evals < 100:
            raise ValueError("QuadSpec requires max_evals >= 100")

    def tol(self, scale: float) -> float:
        return max(self.rel_tol * abs(scale), self.abs_tol)

    def scaled(self, factor: float, min_abs: float = 1e-16) -> "QuadSpec":
        """Child spec for an inner stage of a stacked computation."""
        return QuadSpec(
            rel_tol=max(self.rel_tol * factor, 1e-13),
            abs_tol=max(self.abs_tol * factor, min_abs),
            max_evals=self.max_evals,
        )


@dataclass(frozen=True)
class QuadResult:
    value: float
    err_estimate: float
    evals: int
    converged: bool


DEFAULT_SPEC = QuadSpec()

# Gauss-Kronrod 15(7) abscissae and weights (QUADPACK qk15 constants).
_XGK = (
    0.991455371120813,
    0.949107912342759,
    0.864864423359769,
    0.741531185599394,
    0.586087235467691,
    0.405845151377397,
    0.207784955007898,
)
_WGK = (
    0.022935322010529,
    0.063092092629979,
    0.104790010322250,
    0.140653259715525,
    0.169004726639267,
    0.190350578064785,
    0.204432940075298,
)
_WGK_C = 0.209482141084728
_WG = (0.129484966168870, 0.279705391489277, 0.381830050505119)
_WG_C = 0.417959183673469

# ascending 15-node layout: Gauss points sit at odd indices
_NODES15 = np.array([-x for x in _XGK] + [0.0] + [x for x in reversed(_XGK)])
_W15 = np.array(list(_WGK) + [_WGK_C] + list(reversed(_WGK)))
_W7 = np.zeros(15)
_W7[[1, 13]] = _WG[0]
_W7[[3, 11]] = _WG[1]
_W7[[5, 9]] = _WG[2]
_W7[7] = _WG_C


def _as_vectorized(f: Callable, vectorized: bool) -> Callable:
    if vectorized:
        return f

    def fvec(xs):
        return np.array([f(float(x)) for x in xs], dtype=float)

    return fvec


def _eval_panels(fvec, a, b):
    """Kronrod values and error estimates for a batch of intervals.

    ``a``, ``b`` are equal-length arrays; one integrand call evaluates
    all 15*len(a) nodes.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    c = 0.5 * (a + b)
    h = 0.5 * (b - a)
    xs = (c[:, None] + h[:, None] * _NODES15).ravel()
    fx = np.asarray(fvec(xs), dtype=float)
    if fx.shape != xs.shape:
        raise ValueError("vectorized integrand must return one value per node")
    bad = ~np.isfinite(fx)
    if bad.any():
        xb = xs[bad][0]
        raise IntegrandError(f"integrand returned a non-finite value at x={xb!r}", x=float(xb))
    fx = fx.reshape(len(a), 15)
    k15 = h * (fx @ _W15)
    g7 = h * (fx @ _W7)
    err_raw = np.abs(k15 - g7)
    # QUADPACK-style sharpening of the raw |K-G| estimate
    mean = k15 / np.where(h == 0.0, 1.0, 2.0 * h)
    resasc = np.abs(h) * (np.abs(fx - mean[:, None]) @ _W15)
    with np.errstate(divide="ignore", invalid="ignore"):
        scale = np.where(
            resasc > 0.0,
            np.minimum(1.0, (200.0 * err_raw / np.where(resasc > 0, resasc, 1.0)) ** 1.5),
            1.0,
        )
    err = np.where(resasc > 0.0, resasc * scale, err_raw)
    err = np.maximum(err, np.abs(k15) * 5e-16)
    return k15, err, xs.size


def _adaptive_finite(fvec, a, b, spec, points=()):
    """Adaptive GK15 on a finite interval; returns (value, err, evals, ok)."""
    cuts = sorted({float(p) for p in points if a < p < b})
    edges = [a] + cuts + [b]
    # keep the initial segment count bounded even with many break points
    while len(edges) > 33:
        edges = edges[::2] + ([b] if edges[-1] != b else [])
        edges = sorted(set(edges))
    lo = np.array(edges[:-1])
    hi = np.array(edges[1:])
    vals, errs, n = _eval_panels(fvec, lo, hi)
    evals = n

    heap = []
    serial = 0
    frozen_v = 0.0
    frozen_e = 0.0
    span = abs(b - a)
    total_v = float(vals.sum())
    total_e = float(errs.sum())
    for i in range(len(lo)):
        heapq.heappush(heap, (-errs[i], serial, lo[i], hi[i], vals[i], errs[i]))
        serial += 1

    while True:
        tol = spec.tol(total_v)
        if total_e <= tol or not heap:
            break
        if evals >= spec.max_evals:
            return total_v, total_e, evals, False
        batch = []
        while heap and len(batch) < 8:
            item = heapq.heappop(heap)
            width = item[3] - item[2]
            if width <= 1e-14 * span or item[5] <= tol * 1e-6:
                # cannot or need not refine further
                frozen_v += item[4]
                frozen_e += item[5]
                continue
            batch.append(item)
        if not batch:
            break
        mid = [0.5 * (it[2] + it[3]) for it in batch]
        lo2 = np.array([it[2] for it in batch] + mid)
        hi2 = np.array(mid + [it[3] for it in batch])
        vals2, errs2, n2 = _eval_panels(fvec, lo2, hi2)
        evals += n2
        for it in batch:
            total_v -= it[4]
            total_e -= it[5]
        total_v += float(vals2.sum())
        total_e += float(errs2.sum())
        for i in range(len(lo2)):
            heapq.heappush(heap, (-errs2[i], serial, lo2[i], hi2[i], vals2[i], errs2[i]))
            serial += 1

    # exact refresh of the accumulated totals before reporting
    total_v = frozen_v + math.fsum(item[4] for item in heap)
    total_e = frozen_e + math.fsum(item[5] for item in heap)
    return total_v, total_e, evals, total_e <= spec.tol(total_v)


def integrate_semi_inf(
    f: Callable,
    spec: QuadSpec = DEFAULT_SPEC,
    *,
    vectorized: bool = False,
    points: Sequence[float] = (),
) -> QuadResult:
    """Integrate ``f`` over (0, inf).

    The integrand must decay at least like an integrable power;
    integrable endpoint singularities at 0 are allowed.  ``points``
    are optional abscissae (in x-space) seeding the subdivision, used
    by callers that know internal scales of their integrand.  With
    ``vectorized=True`` the integrand receives ndarray arguments.
    """
    fvec = _as_vectorized(f, vectorized)

    def gvec(ts):
        ts = np.asarray(ts)
        om = 1.0 - ts
        xs = ts / om
        return np.asarray(fvec(xs), dtype=float) / (om * om)

    if points:
        cuts = {0.5, 0.95}
        for x in points:
            if x > 0.0 and math.isfinite(x):
                cuts.add(x / (1.0 + x))
    else:
        cuts = {0.2, 0.5, 0.8, 0.95}
    v, e, n, ok = _adaptive_finite(gvec, 0.0, 1.0, spec, points=sorted(cuts))
    return QuadResult(v, e, n, ok)


def _euler_estimate(psums, window=48):
    """Repeated-averaging limit of a sequence of partial sums.

    Returns (estimate, err); err is the smallest increment observed
    along the averaging cascade.
    """
    row = np.array(psums[-window:], dtype=float)
    best = row[-1]
    best_err = math.inf
    prev = row[-1]
    while len(row) > 1:
        row = 0.5 * (row[1:] + row[:-1])
        cur = row[-1]
        err = abs(cur - prev)
        if err < best_err:
            best_err = err
            best = cur
        prev = cur
    if not math.isfinite(best_err):
        best_err = abs(best)
    return float(best), float(best_err)


def _probe_decay_length(fvec, spec):
    """Geometric scan for the abscissa beyond which |f| is negligible."""
    xs = np.array([2.0**k for k in range(-1, 25)])
    fx = np.abs(np.asarray(fvec(xs), dtype=float))
    top = fx.max()
    if top == 0.0:
        return xs[0], xs.size
    thresh = max(1e-4 * top, spec.abs_tol)
    for x, v in zip(xs, fx):
        if v <= thresh and x >= xs[np.argmax(fx)]:
            return x, xs.size
    return xs[-1], xs.size


def integrate_cosine(
    f: Callable,
    omega: float,
    spec: QuadSpec = DEFAULT_SPEC,
    *,
    vectorized: bool = False,
    points: Sequence[float] = (),
    decay_hint: float | None = None,
) -> QuadResult:
    """Integrate cos(omega*x) * f(x) over (0, inf).

    Panels run between consecutive zeros of the cosine; their sums form
    an alternating sequence accelerated by repeated averaging, so the
    envelope does not have to be integrated out to its decay length.
    When the oscillation is slower than the decay of ``f`` the integral
    is delegated to :func:`integrate_semi_inf`.  ``decay_hint`` lets a
    caller that knows the envelope's decay length skip the probe scan.
    """
    return _integrate_oscillatory(
        f,
        omega,
        spec,
        sine=False,
        vectorized=vectorized,
        points=points,
        decay_hint=decay_hint,
    )


def integrate_sine(
    f: Callable,
    omega: float,
    spec: QuadSpec = DEFAULT_SPEC,
    *,
    vectorized: bool = False,
    points: Sequence[float] = (),
    decay_hint: float | None = None,
) -> QuadResult:
    """Integrate sin(omega*x) * f(x) over (0, inf); see integrate_cosine."""
    if omega == 0.0:
        return QuadResult(0.0, 0.0, 0, True)
    return _integrate_oscillatory(
        f,
        omega,
        spec,
        sine=True,
        vectorized=vectorized,
        points=points,
        decay_hint=decay_hint,
    )


def _integrate_oscillatory(
    f, omega, spec, *, sine, vectorized, points, decay_hint
):
    if omega < 0.0:
        raise ValueError("omega must be >= 0")
    fvec = _as_vectorized(f, vectorized)
    if omega == 0.0:
        return integrate_semi_inf(fvec, spec, vectorized=True, points=points)
    weight = np.sin if sine else np.cos

    if decay_hint is not None:
        decay, probe_evals = float(decay_hint), 0
    else:
        decay, probe_evals = _probe_decay_length(fvec, spec)
    if omega * decay < 1.0:

        def gvec(xs):
            xs = np.asarray(xs)
            return weight(omega * xs) * np.asarray(fvec(xs), dtype=float)

        r = integrate_semi_inf(gvec, spec, vectorized=True, points=points)
        return QuadResult(r.value, r.err_estimate, r.evals + probe_evals, r.converged)

    # Cache integrand values: the panel sums cancel, so a second pass at
    # tighter absolute tolerance may be needed, and it revisits the same
    # nodes.  Keys are exact float abscissae.
    cache: dict[float, float] = {}
    evals = probe_evals

    def gvec(xs):
        nonlocal evals
        xs = np.asarray(xs, dtype=float)
        miss = [x for x in xs if x not in cache]
        if miss:
            vals = np.asarray(fvec(np.array(miss)), dtype=float)
            evals += len(miss)
            for x, v in zip(miss, vals):
                cache[x] = float(v)
        fx = np.array([cache[x] for x in xs])
        return weight(omega * xs) * fx

    half = math.pi / omega
    panel_abs = max(spec.abs_tol * 0.02, 1e-18)
    best = None
    for attempt in range(3):
        # retry passes are purely absolute-driven: the panel sums cancel,
        # so per-panel relative accuracy says nothing about the total
        panel_tol = QuadSpec(
            rel_tol=min(spec.rel_tol, 1e-9) if attempt == 0 else 1e-13,
            abs_tol=panel_abs,
            max_evals=spec.max_evals,
        )
        psums = []
        panel_err = 0.0
        running = 0.0
        peak = 0.0
        stable = 0
        k = 0
        est = aerr = None
        while evals < spec.max_evals:
            # weight zeros: cos at (k+1/2) pi/omega (panel 0 half-width),
            # sin at (k+1) pi/omega
            if sine:
                lo = k * half
                hi = (k + 1) * half
            else:
                lo = 0.0 if k == 0 else (k - 0.5) * half
                hi = (k + 0.5) * half
            pts = [p for p in points if lo < p < hi]
            v, e, n, ok = _adaptive_finite(gvec, lo, hi, panel_tol, points=pts)
            running += v
            panel_err += e
            psums.append(running)
            peak = max(peak, abs(v))
            k += 1
            if k < 8:
                continue
            est, aerr = _euler_estimate(psums)
            tol = spec.tol(est)
            if aerr + panel_err <= tol:
                stable += 1
            else:
                stable = 0
            decayed = abs(v) <= 0.5 * peak or abs(v) <= tol
            # a still-growing envelope (regularized moments) is accepted
            # only once the accelerated estimate stays converged
            if stable >= 1 and (decayed or (stable >= 3 and k >= 16)):
                return QuadResult(est, aerr + panel_err, evals, True)
            if aerr <= 0.25 * tol and panel_err > 0.75 * tol and k >= 12 and decayed:
                break  # acceleration fine, panels too loose: tighten and redo
        if est is None:
            est, aerr = running, abs(running)
        best = (est, aerr + panel_err)
        if evals >= spec.max_evals:
            break
        panel_abs = max(spec.tol(est) / (4.0 * (k + 8)), 1e-18)
    est, err = best
    return QuadResult(est, err, evals, False)


def _power_tail(n_next: int, p: float) -> float:
    """Euler-Maclaurin estimate of sum_{m>=n_next} m**-p (p > 1)."""
    n = float(n_next)
    return (
        n ** (1.0 - p) / (p - 1.0)
        + 0.5 * n ** (-p)
        + p / 12.0 * n ** (-p - 1.0)
        - p * (p + 1.0) * (p + 2.0) / 720.0 * n ** (-p - 3.0)
    )


def sum_accelerated(
    term: Callable[[int], float],
    spec: QuadSpec = DEFAULT_SPEC,
    *,
    n0: int = 0,
) -> QuadResult:
    """Sum term(n0) + term(n0+1) + ... with tail estimation.

    The kernel sums exactly what it is given; index conventions (such
    as a halved first term) belong to the caller.  Alternating series
    are accelerated by repeated averaging; same-sign tails are closed
    with a geometric or fitted power-law model, whichever the last
    terms support.  |term(n)| must eventually decrease monotonically.
    """
    vals: list[float] = []
    psums: list[float] = []
    running = 0.0
    n = n0
    evals = 0
    best_val = 0.0
    best_err = math.inf

    while evals < spec.max_evals:
        a = term(n)
        if not math.isfinite(a):
            raise IntegrandError(f"series term {n} is non-finite", x=float(n))
        evals += 1
        n += 1
        vals.append(a)
        running += a
        psums.append(running)
        if len(vals) < 6:
            continue

        tail6 = vals[-6:]
        signs = [math.copysign(1.0, v) for v in tail6 if v != 0.0]
        alternating = len(signs) == 6 and all(
            signs[i] != signs[i + 1] for i in range(5)
        )
        if alternating:
            est, aerr = _euler_estimate(psums)
            if aerr <= spec.tol(est):
                return QuadResult(est, aerr, evals, True)
            if aerr < best_err:
                best_val, best_err = est, aerr
            continue

        a1, a2, a3 = abs(vals[-1]), abs(vals[-2]), abs(vals[-3])
        if a1 == 0.0:
            if all(v == 0.0 for v in vals[-4:]):
                total = math.fsum(vals)
                return QuadResult(total, abs(total) * 1e-15, evals, True)
            continue
        if a2 == 0.0 or a3 == 0.0 or a1 >= a2 or a2 >= a3:
            continue  # not yet in the monotone tail
        sign = math.copysign(1.0, vals[-1])
        r1, r2 = a1 / a2, a2 / a3
        k = n - 1  # index of vals[-1]
        if r1 < 0.9 and r2 < 0.9:
            t1 = a1 * r1 / (1.0 - r1)
            t2 = a1 * r2 / (1.0 - r2)
            tail, terr = t1, abs(t1 - t2)
        else:
            kk = float(k)
            p1 = math.log(a2 / a1) / math.log(kk / (kk - 1.0))
            p2 = math.log(a3 / a2) / math.log((kk - 1.0) / (kk - 2.0))
            if p1 <= 1.05 or p2 <= 1.05:
                continue
            t1 = a1 * kk**p1 * _power_tail(k + 1, p1)
            t2 = a1 * kk**p2 * _power_tail(k + 1, p2)
            tail, terr = t1, abs(t1 - t2)
        total = math.fsum(vals) + sign * tail
        err = terr + abs(total) * 1e-15
        if err <= spec.tol(total):
            return QuadResult(total, err, evals, True)
        if err < best_err:
            best_val, best_err = total, err

    if not math.isfinite(best_err):
        best_val, best_err = running, abs(vals[-1]) if vals else 0.0
    return QuadResult(best_val, best_err, evals, False)


def derivative(
    f: Callable[[float], float],
    x: float,
    order: int = 1,
    spec: QuadSpec = DEFAULT_SPEC,
) -> QuadResult:
    """First derivative by central differences plus one Richardson level.

    The step is h = x * rel_tol**(1/3), so rel_tol doubles as the step
    control; the achievable accuracy is O(rel_tol^(2/3)) and the
    convergence check uses sqrt(rel_tol) accordingly.  err_estimate is
    the disagreement between the Richardson value and the finer
    central difference.
    """
    if order != 1:
        raise ValueError("only order=1 derivatives are supported")
    if not (x > 0.0):
        raise ValueError("derivative requires x > 0")
    h = x * spec.rel_tol ** (1.0 / 3.0)
    d1 = (f(x + h) - f(x - h)) / (2.0 * h)
    d2 = (f(x + 0.5 * h) - f(x - 0.5 * h)) / h
    val = (4.0 * d2 - d1) / 3.0
    err = abs(val - d2)
    if not (math.isfinite(d1) and math.isfinite(d2)):
        raise IntegrandError("derivative stencil hit a non-finite value", x=x)
    tol = max(spec.abs_tol, math.sqrt(spec.rel_tol) * abs(val))
    return QuadResult(val, err, 4, err <= tol)


def extrapolate_to_zero(eps: Sequence[float], values: Sequence[float]):
    """Neville extrapolation of (eps, value) samples to eps = 0.

    Returns (value, err) with err the magnitude of the last correction;
    used for integrals defined through a vanishing regularization.
    """
    xs = [float(e) for e in eps]
    tab = [float(v) for v in values]
    m = len(xs)
    if m != len(tab) or m < 2:
        raise ValueError("need matching eps/value lists of length >= 2")
    prev = tab[0]
    for k in range(1, m):
        prev = tab[0]
        for i in range(m - k):
            tab[i] = (xs[i + k] * tab[i] - xs[i] * tab[i + 1]) / (xs[i + k] - xs[i])
    return tab[0], abs(tab[0] - prev)
