"""casthermo: equilibrium thermodynamics of a damped quantum Brownian
particle and of the thermal Casimir effect between Drude/plasma mirrors.

Two independent spectral representations (Matsubara sum and cosine
resummation) are implemented for the Casimir force and free energy and
cross-validated against each other and against closed-form asymptotics.
"""

from .backend import COMPILED
from .brownian import BrownianParams, cutoff_roots, entropy_cutoff, entropy_ohmic
from .casimir import (
    EtaResult,
    Method,
    ThermoPoint,
    delta_eta_ft,
    entropy_dimensionless,
    eta_e,
    eta_f_matsubara,
    eta_f_resummed,
    phi,
    psi_kernel,
)
from .mirror import ImFreqPoint, Kind, MirrorModel, Pol
from .numkit import QuadResult, QuadSpec

__version__ = "0.1.0"

__all__ = [
    "COMPILED",
    "BrownianParams",
    "cutoff_roots",
    "entropy_cutoff",
    "entropy_ohmic",
    "EtaResult",
    "Method",
    "ThermoPoint",
    "delta_eta_ft",
    "entropy_dimensionless",
    "eta_e",
    "eta_f_matsubara",
    "eta_f_resummed",
    "phi",
    "psi_kernel",
    "ImFreqPoint",
    "Kind",
    "MirrorModel",
    "Pol",
    "QuadResult",
    "QuadSpec",
    "__version__",
]
