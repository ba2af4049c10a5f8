"""Self-contained special functions: log-gamma, digamma, Riemann zeta.

Log-gamma uses a Lanczos approximation (g = 7, 9 terms) valid in the
right half-plane; digamma uses upward recurrence to |z| >= 10 followed
by the Bernoulli asymptotic series; zeta uses Euler-Maclaurin-corrected
partial sums so that any real s > 1 is supported.

Only the right half-plane is covered for complex arguments; that is
the single complex need of the library (cutoff roots of the Brownian
damping kernel can form a conjugate pair).
"""

from __future__ import annotations

import cmath
import math

__all__ = ["ln_gamma", "ln_gamma_complex", "digamma", "zeta", "EULER_GAMMA"]

EULER_GAMMA = 0.5772156649015328606

_LANCZOS_G = 7.0
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)

# B_2, B_4, ..., B_26
_BERNOULLI2N = (
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
)


def _lanczos_ln_gamma(z):
    """Lanczos series; z may be float or complex with Re z >= 0.5."""
    zm1 = z - 1.0
    acc = _LANCZOS[0]
    for i in range(1, len(_LANCZOS)):
        acc = acc + _LANCZOS[i] / (zm1 + i)
    t = zm1 + _LANCZOS_G + 0.5
    log = cmath.log if isinstance(z, complex) else math.log
    return 0.5 * math.log(2.0 * math.pi) + (zm1 + 0.5) * log(t) - t + log(acc)


def ln_gamma(x: float) -> float:
    """log Gamma(x) for real x > 0."""
    x = float(x)
    if not (x > 0.0):
        raise ValueError(f"ln_gamma requires x > 0, got {x}")
    if x < 0.5:
        # one recurrence step keeps the Lanczos series in its sweet spot
        return _lanczos_ln_gamma(x + 1.0) - math.log(x)
    return _lanczos_ln_gamma(x)


def ln_gamma_complex(z: complex) -> complex:
    """log Gamma(z) for Re z > 0 (principal branch)."""
    z = complex(z)
    if not (z.real > 0.0):
        raise ValueError(f"ln_gamma_complex requires Re z > 0, got {z}")
    if z.real < 0.5:
        return _lanczos_ln_gamma(z + 1.0) - cmath.log(z)
    return _lanczos_ln_gamma(z)


def _digamma_asymptotic(z):
    log = cmath.log if isinstance(z, complex) else math.log
    inv = 1.0 / z
    inv2 = inv * inv
    acc = log(z) - 0.5 * inv
    term = inv2
    for n, b2n in enumerate(_BERNOULLI2N[:7], start=1):
        acc = acc - b2n / (2.0 * n) * term
        term = term * inv2
    return acc


def digamma(z):
    """psi(z) = d/dz log Gamma(z) for Re z > 0.

    Real input yields real output with an exactly zero imaginary part
    (complex input on the real axis returns complex(v, 0.0)).
    """
    if isinstance(z, complex):
        if not (z.real > 0.0):
            raise ValueError(f"digamma requires Re z > 0, got {z}")
        if z.imag == 0.0:
            return complex(digamma(z.real), 0.0)
        shift = 0.0 + 0.0j
        while abs(z) < 10.0:
            shift += 1.0 / z
            z = z + 1.0
        return _digamma_asymptotic(z) - shift
    x = float(z)
    if not (x > 0.0):
        raise ValueError(f"digamma requires x > 0, got {x}")
    shift = 0.0
    while x < 10.0:
        shift += 1.0 / x
        x += 1.0
    return _digamma_asymptotic(x) - shift


def zeta(s: float) -> float:
    """Riemann zeta for real s > 1 by Euler-Maclaurin summation."""
    s = float(s)
    if not (s > 1.0):
        raise ValueError(f"zeta requires s > 1, got {s}")
    n = 24
    acc = math.fsum(k ** (-s) for k in range(1, n))
    nf = float(n)
    acc += nf ** (1.0 - s) / (s - 1.0) + 0.5 * nf ** (-s)
    # correction sum_j B_2j/(2j)! * s(s+1)...(s+2j-2) * n^(-s-2j+1)
    poch = s
    npow = nf ** (-s - 1.0)
    fact = 2.0
    for j, b2j in enumerate(_BERNOULLI2N, start=1):
        term = b2j / fact * poch * npow
        acc += term
        if abs(term) < 1e-17 * abs(acc):
            break
        poch *= (s + 2.0 * j - 1.0) * (s + 2.0 * j)
        npow /= nf * nf
        fact *= (2.0 * j + 1.0) * (2.0 * j + 2.0)
    return acc


def zeta_log_sum(s: float) -> float:
    """sum_{n>=1} log(n)/n**s  (= -zeta'(s)) for s > 1, Euler-Maclaurin."""
    s = float(s)
    if not (s > 1.0):
        raise ValueError(f"zeta_log_sum requires s > 1, got {s}")
    n = 40
    acc = math.fsum(math.log(k) * k ** (-s) for k in range(2, n))
    nf = float(n)
    ln = math.log(nf)
    # integral_n^inf log(x) x^-s dx + trapezoid + first EM correction
    acc += nf ** (1.0 - s) * (ln / (s - 1.0) + 1.0 / (s - 1.0) ** 2)
    acc += 0.5 * ln * nf ** (-s)
    # -f'(n)/12 with f = log(x) x^-s
    acc += (s * ln - 1.0) * nf ** (-s - 1.0) / 12.0
    # +f'''(n)/720
    f3 = (-s * (s + 1.0) * (s + 2.0) * ln + 3.0 * s * s + 6.0 * s + 2.0) * nf ** (
        -s - 3.0
    )
    acc += f3 / 720.0
    return acc
