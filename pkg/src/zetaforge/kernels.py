"""Backend selection for the fixed-point hot loops.

The compiled extension ``_ckernels`` is used when it imports; otherwise the
pure-Python module is.  Setting ``ZETAFORGE_PURE_PYTHON=1`` forces the
fallback.
"""

import os

from . import _kernels_py

BACKEND = "python"
_impl = _kernels_py

if os.environ.get("ZETAFORGE_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]
        BACKEND = "cython"
    except ImportError:
        pass

central_binomial_sums = _impl.central_binomial_sums
pslq_fixed = _impl.pslq_fixed


def get_backend(name):
    """Kernel module by name (``"python"`` or ``"cython"``)."""
    if name == "python":
        return _kernels_py
    if name == "cython":
        from . import _ckernels
        return _ckernels
    raise ValueError(f"unknown backend {name!r}")
