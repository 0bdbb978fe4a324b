"""Backend selection for the hot loops.

The compiled extension ``snfkit._kernels`` is used when it imports; otherwise,
or when ``SNFKIT_PURE=1`` is set, the pure-Python twins are used. Callers
reach kernels through this module's attributes (``kernels.axpy(...)``) so
that :func:`use` can swap backends at runtime, which the benchmark relies on.
"""

from __future__ import annotations

import os

from . import _pykernels

INF = _pykernels.INF
KERNEL_NAMES = ("axpy", "scan_region", "line_metrics", "l1_pair", "modp_echelon", "modp_det")

try:
    from . import _kernels as _ckernels
except ImportError:  # extension not built
    _ckernels = None

BACKEND = "python"


def available_backends() -> list[str]:
    return ["python"] + (["compiled"] if _ckernels is not None else [])


def use(backend: str) -> None:
    """Bind the kernel functions of ``backend`` ("python" or "compiled")."""
    global BACKEND
    if backend == "compiled":
        if _ckernels is None:
            raise RuntimeError("compiled kernels are not built")
        mod = _ckernels
    elif backend == "python":
        mod = _pykernels
    else:
        raise ValueError(f"unknown backend {backend!r}")
    g = globals()
    for name in KERNEL_NAMES:
        g[name] = getattr(mod, name)
    BACKEND = backend


axpy = _pykernels.axpy
scan_region = _pykernels.scan_region
line_metrics = _pykernels.line_metrics
l1_pair = _pykernels.l1_pair
modp_echelon = _pykernels.modp_echelon
modp_det = _pykernels.modp_det

if _ckernels is not None and os.environ.get("SNFKIT_PURE", "") not in ("1", "true", "yes"):
    use("compiled")
