"""Kernel selection: compiled extension when built, pure Python otherwise.

Set HOLONORM_PURE_PYTHON=1 to force the fallback (used by the benchmark
and to test the pure path on machines with the extension built).
"""

import os

if os.environ.get("HOLONORM_PURE_PYTHON"):
    from . import _gauss as _kernel

    BACKEND = "python"
else:
    try:
        from . import _gauss_c as _kernel

        BACKEND = "compiled"
    except ImportError:  # extension not built on this install
        from . import _gauss as _kernel

        BACKEND = "python"

GaussRational = _kernel.GaussRational
as_gauss = _kernel.as_gauss
series_add = _kernel.series_add
series_neg = _kernel.series_neg
series_scale = _kernel.series_scale
series_mul = _kernel.series_mul
ZERO = _kernel.ZERO
ONE = _kernel.ONE
I = _kernel.I
