"""Dimensionless mirror optics: permittivities at imaginary frequency
and TE/TM reflection coefficients for ideal, plasma and Drude mirrors.

All quantities are dimensionless: y = xi L/c, v = kappa L,
alpha_p = omega_P L/c, g = gamma L/c.  The numerically load-bearing
object is q = y^2 (eps(iy) - 1) rather than eps itself: q stays finite
at y = 0 and cleanly separates the plasma limit (q -> alpha_p^2) from
the Drude limit (q -> 0).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from . import backend
from .backend import kernels


class Kind(enum.Enum):
    IDEAL = "ideal"
    PLASMA = "plasma"
    DRUDE = "drude"


class Pol(enum.Enum):
    TE = "te"
    TM = "tm"
    BOTH = "both"

    @property
    def code(self) -> int:
        return {"te": backend.POL_TE, "tm": backend.POL_TM, "both": backend.POL_BOTH}[
            self.value
        ]


@dataclass(frozen=True)
class MirrorModel:
    """Optical description of both (identical) mirrors."""

    kind: Kind
    alpha_p: float | None = None  # omega_P L / c
    g: float | None = None  # gamma L / c

    def __post_init__(self):
        if self.kind is Kind.IDEAL:
            if self.alpha_p is not None or self.g is not None:
                raise ValueError("ideal mirrors take no material parameters")
        elif self.kind is Kind.PLASMA:
            if self.alpha_p is None or not self.alpha_p > 0.0:
                raise ValueError("plasma model requires alpha_p > 0")
            if self.g is not None:
                raise ValueError("plasma model takes no relaxation frequency")
        elif self.kind is Kind.DRUDE:
            if self.alpha_p is None or not self.alpha_p > 0.0:
                raise ValueError("drude model requires alpha_p > 0")
            if self.g is None or not self.g > 0.0:
                raise ValueError("drude model requires g > 0")

    @classmethod
    def ideal(cls) -> "MirrorModel":
        return cls(Kind.IDEAL)

    @classmethod
    def plasma(cls, alpha_p: float) -> "MirrorModel":
        return cls(Kind.PLASMA, alpha_p=float(alpha_p))

    @classmethod
    def drude(cls, alpha_p: float, g: float) -> "MirrorModel":
        return cls(Kind.DRUDE, alpha_p=float(alpha_p), g=float(g))

    @property
    def lambda_ratio(self) -> float:
        """lambda_P / L = 2 pi / alpha_p."""
        if self.alpha_p is None:
            raise ValueError("ideal mirrors have no plasma wavelength")
        return 2.0 * math.pi / self.alpha_p

    @property
    def sigma0(self) -> float:
        """Dimensionless dc conductivity sigma_0 L/c = alpha_p^2 / g."""
        if self.kind is not Kind.DRUDE:
            raise ValueError("dc conductivity is a Drude-model quantity")
        return self.alpha_p**2 / self.g

    @property
    def code(self) -> int:
        return {
            Kind.IDEAL: backend.KIND_IDEAL,
            Kind.PLASMA: backend.KIND_PLASMA,
            Kind.DRUDE: backend.KIND_DRUDE,
        }[self.kind]

    def _args(self):
        return self.code, self.alpha_p or 0.0, self.g or 0.0


@dataclass(frozen=True)
class ImFreqPoint:
    """Imaginary-frequency point (y = xi L/c, v = kappa L)."""

    y: float
    v: float

    def __post_init__(self):
        if self.y < 0.0 or self.v < 0.0:
            raise ValueError("ImFreqPoint requires y >= 0 and v >= 0")


def eps_im(model: MirrorModel, y: float) -> float:
    """eps(iy) for y > 0; the ideal mirror returns +inf."""
    kind, ap, g = model._args()
    return kernels.eps_im(kind, ap, g, y)


def q_te(model: MirrorModel, y: float) -> float:
    """q = y^2 (eps(iy) - 1), defined down to y = 0 by its analytic limit."""
    kind, ap, g = model._args()
    if model.kind is Kind.IDEAL:
        raise ValueError("q_te is not defined for ideal mirrors")
    return kernels.q_te(kind, ap, g, y)


def r_te(model: MirrorModel, pt: ImFreqPoint) -> float:
    kind, ap, g = model._args()
    return kernels.r_te(kind, ap, g, pt.y, pt.v)


def r_tm(model: MirrorModel, pt: ImFreqPoint) -> float:
    kind, ap, g = model._args()
    return kernels.r_tm(kind, ap, g, pt.y, pt.v)


def closed_loop(model: MirrorModel, pol: Pol, pt: ImFreqPoint) -> float:
    """f_p = r_p^2/(exp(2v) - r_p^2); Pol.BOTH returns the TE+TM sum."""
    kind, ap, g = model._args()
    return kernels.clp(kind, pol.code, ap, g, pt.y, pt.v)
