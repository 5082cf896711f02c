"""Kernel-evaluation backend selection.

The hot inner loops live in two interchangeable modules: ``_kernels_nb``
(numba @njit) and ``_kernels_np`` (pure numpy).  The environment variable
``SHEETBOX_BACKEND`` picks one at import time:

    SHEETBOX_BACKEND=numba   force the jitted backend (ImportError if absent)
    SHEETBOX_BACKEND=numpy   force the pure-numpy fallback
    unset / auto             numba when importable, numpy otherwise

The flag only swaps implementations of identical arithmetic; every result
is deterministic within a backend, and the two agree to rounding error
(see benchmarks/bench_backends.py).  All computational configuration
stays explicit in code and config files.
"""

import os

ENV_VAR = "SHEETBOX_BACKEND"


def _resolve():
    choice = os.environ.get(ENV_VAR, "auto").strip().lower()
    if choice not in ("auto", "numba", "numpy"):
        raise ValueError(f"{ENV_VAR} must be 'numba', 'numpy', or 'auto', got {choice!r}")
    if choice == "numpy":
        from . import _kernels_np as impl

        return impl, "numpy"
    if choice == "numba":
        from . import _kernels_nb as impl

        return impl, "numba"
    try:
        from . import _kernels_nb as impl

        return impl, "numba"
    except ImportError:
        from . import _kernels_np as impl

        return impl, "numpy"


_impl, _name = _resolve()

eval_kernel = _impl.eval_kernel


def active_backend() -> str:
    """Name of the backend in use: 'numba' or 'numpy'."""
    return _name
