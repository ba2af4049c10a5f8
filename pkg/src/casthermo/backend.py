"""Kernel backend selection.

The compiled extension is preferred when importable; the pure-python
twin is used otherwise or when CASTHERMO_PURE_PYTHON=1 is set.  Both
expose the identical function set (see _kernels_py for the contract).
"""

from __future__ import annotations

import os

_force_pure = os.environ.get("CASTHERMO_PURE_PYTHON", "").strip().lower() in (
    "1",
    "true",
    "yes",
)

if _force_pure:
    from . import _kernels_py as kernels
else:
    try:
        from . import _kernels_cy as kernels  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_py as kernels

COMPILED: bool = bool(kernels.COMPILED)

KIND_IDEAL = kernels.KIND_IDEAL
KIND_PLASMA = kernels.KIND_PLASMA
KIND_DRUDE = kernels.KIND_DRUDE
POL_TE = kernels.POL_TE
POL_TM = kernels.POL_TM
POL_BOTH = kernels.POL_BOTH
